import json
import math

import pytest

import charsums as cs


def test_arith():
    assert cs.primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert cs.friable_count(100, 10) == sum(
        1 for n in range(1, 101) if all(p <= 10 for p in _prime_factors(n))
    )
    assert cs.primitive_root(7) == 3


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def test_legendre_mod_7():
    chi = cs.Character(7, 2)
    assert chi.least_nonone() == 3
    assert [chi.exponent(n) for n in range(1, 7)] == [0, 0, 1, 0, 1, 1]


def test_mean_square_modes_agree():
    chi = cs.Character(31, 30)
    f = cs.MultFun.from_character(chi, 30)
    direct = f.mean_square(10, "direct")
    hist = f.mean_square(10, "histogram")
    assert direct == pytest.approx(hist, rel=1e-6)
    assert int(hist) == f.collision_count(10) == sum(c * c for c in f.level_counts(10))


def test_dickman():
    rho = cs.DickmanTable(10.0, 1e-4)
    assert rho.rho(1.0) == 1.0
    assert abs(rho.rho(2.0) - (1 - math.log(2))) < 1e-12
    with pytest.raises(IndexError):
        rho.rho(11.0)


def test_sumsets():
    assert cs.sumset(5, [0, 1], [0, 2]) == [0, 1, 2, 3]
    size, witness = cs.max_kl_set(12, 2, 1)
    assert size == cs.bhp_bound(12, 2, 1) == 6
    assert witness == [1, 3, 5, 7, 9, 11]
    with pytest.raises(ValueError):
        cs.bhp_bound(10, 2, 2)


def test_scan_roundtrip():
    cfg = json.loads(cs.default_config_json())
    cfg["q_list"] = [31]
    csv_text = cs.run_scan("meansquare-scan", json.dumps(cfg))
    lines = csv_text.strip().splitlines()
    assert lines[0].startswith("experiment,q,d,index,x,metric")
    assert all(",fail," not in line for line in lines)
    with pytest.raises(ValueError):
        cs.run_scan("pv-scan", json.dumps({"q_list": [31], "bogus": 1}))
