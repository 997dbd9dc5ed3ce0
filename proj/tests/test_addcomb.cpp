#include <doctest.h>

#include <cmath>

#include "charsums/addcomb.hpp"
#include "charsums/characters.hpp"
#include "charsums/error.hpp"
#include "oracles.hpp"

using namespace charsums;

namespace {

std::set<u64> as_set(const CyclicSubset& a) {
  const auto e = a.elements();
  return {e.begin(), e.end()};
}

CyclicSubset random_subset(oracle::Gen& gen, u64 d, double density) {
  CyclicSubset a(d);
  for (u64 i = 0; i < d; ++i) {
    if (gen.real(0, 1) < density) a.insert(i);
  }
  return a;
}

}  // namespace

TEST_CASE("bitset basics") {
  CyclicSubset a(130, {0, 64, 129});
  CHECK(a.size() == 3);
  CHECK(a.contains(129));
  CHECK(a.translate(1).elements() == std::vector<u64>{0, 1, 65});
  CHECK(a.negate().elements() == std::vector<u64>{0, 1, 66});
  CHECK(CyclicSubset::full(70).is_full());
  CHECK(CyclicSubset(6, {1, 5}).is_symmetric());
  CHECK(a.to_string() == "{0,64,129}");
}

TEST_CASE("sumset examples") {
  const CyclicSubset B(9, {2, 3, 7});
  CHECK(sumset(CyclicSubset(9, {0}), B) == B);
  CHECK(sumset(CyclicSubset(9), B).empty());
  CHECK(sumset(CyclicSubset(5, {1, 4}), CyclicSubset(5, {1, 4})).elements() == std::vector<u64>{0, 2, 3});
  CHECK_THROWS_AS(sumset(CyclicSubset(5), CyclicSubset(6)), DomainError);
}

TEST_CASE("sumsets match pairwise enumeration") {
  oracle::Gen gen(2);
  for (int trial = 0; trial < 400; ++trial) {
    const u64 d = gen.uniform(1, 200);
    const auto a = random_subset(gen, d, gen.real(0, 0.5));
    const auto b = random_subset(gen, d, gen.real(0, 0.5));
    REQUIRE(as_set(sumset(a, b)) == oracle::sumset(as_set(a), as_set(b), d));
  }
}

TEST_CASE("sumset algebra for d <= 12") {
  oracle::Gen gen(3);
  for (u64 d = 1; d <= 12; ++d) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = random_subset(gen, d, 0.3), b = random_subset(gen, d, 0.3), c = random_subset(gen, d, 0.3);
      REQUIRE(sumset(a, b) == sumset(b, a));
      REQUIRE(sumset(sumset(a, b), c) == sumset(a, sumset(b, c)));
    }
  }
}

TEST_CASE("iterated doubling") {
  const CyclicSubset a(5, {1, 4});
  CHECK(iterate_double(a, 0) == a);
  CHECK(iterate_double(a, 1).elements() == std::vector<u64>{0, 2, 3});
  CHECK(iterate_double(a, 2).is_full());
  CHECK(k_fold(a, 4) == iterate_double(a, 2));
  CHECK_THROWS_AS(k_fold(a, 0), DomainError);
}

TEST_CASE("symmetric sets: 2kA inside (2k+2)A, exhaustive for d <= 20") {
  for (u64 d = 1; d <= 20; ++d) {
    const u64 half = d / 2;
    for (u64 mask = 1; mask < (u64{1} << (half + 1)); ++mask) {
      CyclicSubset a(d);
      if (mask & 1) a.insert(0);
      for (u64 x = 1; x <= half; ++x) {
        if ((mask >> x) & 1) {
          a.insert(x);
          a.insert((d - x) % d);
        }
      }
      REQUIRE(a.is_symmetric());
      auto two = sumset(a, a);
      REQUIRE(two.contains(0));
      auto cur = two;
      for (u64 k = 1; k <= 3; ++k) {
        auto next = sumset(cur, two);
        REQUIRE(cur.subset_of(next));
        cur = next;
      }
    }
  }
}

TEST_CASE("doubling reaches the whole group") {
  CHECK(freiman_doubling_check(CyclicSubset::full(7), 0.5).first_full == 1u);
  const auto r = freiman_doubling_check(CyclicSubset(5, {1, 4}), 0.4);
  CHECK(r.ceiling == 3);
  CHECK(r.first_full == 2u);
  CHECK_FALSE(r.counterexample());
  try {
    freiman_doubling_check(CyclicSubset(6, {1}), 0.4);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("P^-(d)") != std::string::npos);
    CHECK(msg.find("symmetric") != std::string::npos);
    CHECK(msg.find("|A|") != std::string::npos);
  }
}

TEST_CASE("doubling ceiling, exhaustive over symmetric sets") {
  for (u64 d : {5u, 7u, 11u, 13u}) {
    for (double c : {0.3, 0.4, 0.5}) {
      const u64 half = d / 2;
      for (u64 mask = 0; mask < (u64{1} << (half + 1)); ++mask) {
        CyclicSubset a(d);
        if (mask & 1) a.insert(0);
        for (u64 x = 1; x <= half; ++x) {
          if ((mask >> x) & 1) a.insert(x), a.insert(d - x);
        }
        if (static_cast<double>(a.size()) < c * static_cast<double>(d)) continue;
        const auto r = freiman_doubling_check(a, c);
        REQUIRE_MESSAGE(!r.counterexample(), "d=" << d << " c=" << c << " A=" << a.to_string());
        REQUIRE(r.ceiling == static_cast<u64>(std::max(1.0, std::ceil(std::log(1 / c) / std::log(1.5)))));
      }
    }
  }
}

TEST_CASE("(k, l)-sets") {
  CyclicSubset odd(12);
  for (u64 a = 1; a < 12; a += 2) odd.insert(a);
  CHECK(is_kl_set(odd, 2, 1));
  CHECK_FALSE(is_kl_set(CyclicSubset(12, {0, 5}), 2, 1));
  CHECK_FALSE(is_kl_set(CyclicSubset(12, {5}), 1, 1));
  CHECK(is_kl_set(CyclicSubset(12), 3, 1));
  CHECK(is_kl_set(CyclicSubset(5, {1, 4}), 2, 1));
}

TEST_CASE("BHP bound") {
  CHECK(bhp_bound(12, 2, 1) == 6);
  CHECK(bhp_bound(1, 2, 1) == 0);
  for (u64 p : {5u, 7u, 11u, 13u, 101u}) {
    const std::int64_t expect = std::max<std::int64_t>(0, 1 + (static_cast<std::int64_t>(p) - 2) / 3);
    REQUIRE(bhp_bound(p, 2, 1) == expect);
  }
  CHECK_THROWS_AS(bhp_bound(10, 3, 3), DomainError);
}

TEST_CASE("brute-force maximal (k, l)-sets") {
  auto r = max_kl_set_bruteforce(12, 2, 1);
  CHECK(r.size == 6);
  CHECK(r.witness.elements() == std::vector<u64>{1, 3, 5, 7, 9, 11});
  auto r5 = max_kl_set_bruteforce(5, 2, 1);
  CHECK(r5.size == 2);
  CHECK(is_kl_set(r5.witness, 2, 1));
  CHECK(max_kl_set_bruteforce(2, 2, 1).size == 1);
  CHECK_THROWS_AS(max_kl_set_bruteforce(31, 2, 1), ResourceError);
  CHECK_THROWS_AS(max_kl_set_bruteforce(10, 2, 2), DomainError);

  // Full subset enumeration agrees for n <= 14.
  for (u64 n = 1; n <= 14; ++n) {
    for (auto [k, l] : std::vector<std::pair<u64, u64>>{{2, 1}, {3, 1}, {4, 1}, {3, 2}}) {
      const auto got = max_kl_set_bruteforce(n, k, l);
      REQUIRE_MESSAGE(got.size == oracle::max_kl_exhaustive(n, k, l), "n=" << n << " k=" << k << " l=" << l);
      REQUIRE(got.witness.size() == got.size);
      REQUIRE(is_kl_set(got.witness, k, l));
    }
  }
}

TEST_CASE("symmetric-only search") {
  for (u64 n = 3; n <= 20; ++n) {
    const auto sym = max_kl_set_bruteforce(n, 2, 1, true);
    REQUIRE(sym.witness.is_symmetric());
    REQUIRE(is_kl_set(sym.witness, 2, 1));
    REQUIRE(sym.size <= max_kl_set_bruteforce(n, 2, 1).size);
  }
}

TEST_CASE("BHP bound dominates the brute-force maximum for n <= 24") {
  for (u64 n = 1; n <= 24; ++n) {
    for (auto [k, l] : std::vector<std::pair<u64, u64>>{{2, 1}, {3, 1}, {4, 1}, {3, 2}}) {
      REQUIRE(static_cast<std::int64_t>(max_kl_set_bruteforce(n, k, l).size) <= bhp_bound(n, k, l));
    }
  }
}

TEST_CASE("approximate homomorphisms") {
  CHECK(approx_hom_defect(ApproxHom(std::vector<double>(7, 0.0))) == 0.0);
  std::vector<double> flat(7, -0.3);
  flat[0] = 0.0;
  CHECK(approx_hom_defect(ApproxHom(flat)) == doctest::Approx(0.6));
  CHECK_THROWS_AS(ApproxHom({0.1, 0.0}), DomainError);
  CHECK_THROWS_AS(ApproxHom(std::vector<double>{}), DomainError);

  // No non-zero homomorphism Z/dZ -> R, so sup <= (d - 1)/d * defect.
  oracle::Gen gen(8);
  for (int trial = 0; trial < 300; ++trial) {
    const u64 d = gen.uniform(2, 60);
    std::vector<double> phi(d, 0.0);
    const double slope = gen.real(-1, 1);
    for (u64 a = 1; a < d; ++a) phi[a] = slope * static_cast<double>(a) + gen.real(-0.1, 0.1);
    const ApproxHom h(phi);
    const double defect = approx_hom_defect(h);
    REQUIRE(approx_hom_sup(h) <= (static_cast<double>(d) - 1) / static_cast<double>(d) * defect + 1e-12);
  }
}

TEST_CASE("structure of large-sum index sets") {
  const auto chi = make_character(101, 100, 1);
  const auto empty = xi_structure_check(chi, 5.0, 1);
  CHECK(empty.xi.empty());
  CHECK(empty.disjoint);
  CHECK(empty.bhp_consistent());

  const auto r = xi_structure_check(chi, 0.5, 1);
  CHECK(r.symmetric);
  CHECK(r.bhp == bhp_bound(100, 2, 1));
  CHECK(r.prop_bound == doctest::Approx(100 * (1.0 + 0.5)));
  CHECK(r.bhp_consistent());
  CHECK(r.regime_threshold == doctest::Approx(std::pow(std::log(101.0), -1.0 / 27)));
  MESSAGE("q=101 d=100 eps=0.5: |Xi|=" << r.xi.size() << " disjoint=" << r.disjoint);

  for (u64 q : {211u, 421u, 631u}) {
    const auto c = make_character(q, q - 1, 1);
    const auto sums = max_sums_over_powers(c);
    for (double eps : {0.1, 0.2, 0.3}) {
      for (u64 k : {1u, 2u}) {
        const auto s = xi_structure_from_sums(c, sums, eps, k);
        REQUIRE(s.symmetric);
        REQUIRE(s.bhp_consistent());
      }
    }
  }
}
