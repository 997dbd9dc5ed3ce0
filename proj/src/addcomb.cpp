#include "charsums/addcomb.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "charsums/characters.hpp"
#include "charsums/error.hpp"

namespace charsums {

namespace {

using Words = std::vector<std::uint64_t>;

// dst bit i = src bit (i - s).
Words shift_up(const Words& src, u64 s) {
  Words dst(src.size(), 0);
  const std::size_t ws = s / 64, bs = s % 64;
  for (std::size_t w = ws; w < src.size(); ++w) {
    dst[w] = src[w - ws] << bs;
    if (bs != 0 && w > ws) dst[w] |= src[w - ws - 1] >> (64 - bs);
  }
  return dst;
}

// dst bit i = src bit (i + s).
Words shift_down(const Words& src, u64 s) {
  Words dst(src.size(), 0);
  const std::size_t ws = s / 64, bs = s % 64;
  for (std::size_t w = 0; w + ws < src.size(); ++w) {
    dst[w] = src[w + ws] >> bs;
    if (bs != 0 && w + ws + 1 < src.size()) dst[w] |= src[w + ws + 1] << (64 - bs);
  }
  return dst;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

CyclicSubset::CyclicSubset(u64 d) : d_(d), words_((d + 63) / 64, 0) {
  if (d < 1) throw DomainError("CyclicSubset: modulus must be >= 1");
}

CyclicSubset::CyclicSubset(u64 d, std::initializer_list<u64> elements) : CyclicSubset(d) {
  for (u64 a : elements) insert(a % d);
}

CyclicSubset::CyclicSubset(u64 d, const std::vector<u64>& elements) : CyclicSubset(d) {
  for (u64 a : elements) insert(a % d);
}

CyclicSubset CyclicSubset::full(u64 d) {
  CyclicSubset s(d);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.mask_tail();
  return s;
}

void CyclicSubset::mask_tail() {
  if (d_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (d_ % 64)) - 1;
}

std::size_t CyclicSubset::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<u64> CyclicSubset::elements() const {
  std::vector<u64> out;
  for (u64 a = 0; a < d_; ++a) {
    if (contains(a)) out.push_back(a);
  }
  return out;
}

CyclicSubset CyclicSubset::translate(u64 shift) const {
  shift %= d_;
  if (shift == 0) return *this;
  CyclicSubset out(d_);
  Words up = shift_up(words_, shift);
  Words down = shift_down(words_, d_ - shift);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = up[w] | down[w];
  out.mask_tail();
  return out;
}

CyclicSubset CyclicSubset::negate() const {
  CyclicSubset out(d_);
  for (u64 a = 0; a < d_; ++a) {
    if (contains(a)) out.insert((d_ - a) % d_);
  }
  return out;
}

bool CyclicSubset::is_symmetric() const { return negate() == *this; }

CyclicSubset& CyclicSubset::operator|=(const CyclicSubset& other) {
  if (other.d_ != d_) throw DomainError("CyclicSubset: modulus mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

bool CyclicSubset::intersects(const CyclicSubset& other) const {
  if (other.d_ != d_) throw DomainError("CyclicSubset: modulus mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & other.words_[w]) return true;
  }
  return false;
}

bool CyclicSubset::subset_of(const CyclicSubset& other) const {
  if (other.d_ != d_) throw DomainError("CyclicSubset: modulus mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

std::string CyclicSubset::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (u64 a : elements()) {
    if (!first) os << ',';
    os << a;
    first = false;
  }
  os << '}';
  return os.str();
}

CyclicSubset sumset(const CyclicSubset& A, const CyclicSubset& B) {
  if (A.modulus() != B.modulus()) {
    throw DomainError("sumset: modulus mismatch " + std::to_string(A.modulus()) + " vs " +
                      std::to_string(B.modulus()));
  }
  // Iterate over the smaller operand.
  const CyclicSubset& small = A.size() <= B.size() ? A : B;
  const CyclicSubset& large = A.size() <= B.size() ? B : A;
  CyclicSubset out(A.modulus());
  for (u64 a : small.elements()) {
    out |= large.translate(a);
    if (out.is_full()) break;
  }
  return out;
}

CyclicSubset iterate_double(const CyclicSubset& A, u64 j) {
  CyclicSubset B = A;
  for (u64 i = 0; i < j; ++i) B = sumset(B, B);
  return B;
}

CyclicSubset k_fold(const CyclicSubset& A, u64 k) {
  if (k < 1) throw DomainError("k_fold: k must be >= 1");
  CyclicSubset out = A;
  for (u64 i = 1; i < k; ++i) out = sumset(out, A);
  return out;
}

FreimanReport freiman_doubling_check(const CyclicSubset& A, double c) {
  const u64 d = A.modulus();
  std::vector<std::string> failures;
  if (!(c > 0.0)) failures.push_back("c must be positive");
  if (d < 2) {
    failures.push_back("d must be >= 2");
  } else if (!(static_cast<double>(least_prime_factor(d)) * c > 1.0)) {
    failures.push_back("P^-(d) = " + std::to_string(least_prime_factor(d)) + " <= 1/c");
  }
  if (!A.is_symmetric()) failures.push_back("A is not symmetric");
  if (static_cast<double>(A.size()) < c * static_cast<double>(d)) {
    failures.push_back("|A| = " + std::to_string(A.size()) + " < c d");
  }
  if (!failures.empty()) {
    std::string msg = "freiman_doubling_check: hypotheses violated:";
    for (const auto& f : failures) msg += " [" + f + "]";
    throw DomainError(msg);
  }
  FreimanReport r;
  const double raw = std::ceil(std::log(1.0 / c) / std::log(1.5) - 1e-12);
  r.ceiling = static_cast<u64>(std::max(1.0, raw));
  // Continue a little past the ceiling so a counterexample reports its true j.
  const u64 limit = r.ceiling + 2 + static_cast<u64>(std::bit_width(d));
  CyclicSubset B = A;
  for (u64 j = 1; j <= limit; ++j) {
    B = sumset(B, B);
    if (B.is_full()) {
      r.first_full = j;
      break;
    }
  }
  return r;
}

bool is_kl_set(const CyclicSubset& A, u64 k, u64 l) {
  if (k < 1 || l < 1) throw DomainError("is_kl_set: k and l must be >= 1");
  if (A.empty()) return true;
  return !k_fold(A, k).intersects(k_fold(A, l));
}

std::int64_t bhp_bound(u64 n, u64 k, u64 l) {
  if (k == l) throw DomainError("bhp_bound: requires k != l");
  if (n < 1 || k < 1 || l < 1) throw DomainError("bhp_bound: n, k, l must be >= 1");
  const auto kl = static_cast<std::int64_t>(k + l);
  std::int64_t best = 0;
  for (u64 f : divisors(n)) {
    std::int64_t term = static_cast<std::int64_t>(n / f) *
                        (1 + floor_div(static_cast<std::int64_t>(f) - 2, kl));
    best = std::max(best, term);
  }
  return best;
}

namespace {

class KlSearch {
 public:
  KlSearch(u64 n, u64 k, u64 l, bool symmetric_only)
      : n_(n), k_(k), l_(l), full_((std::uint64_t{1} << n) - 1) {
    // 0 lies in kA ∩ lA whenever 0 ∈ A, so units start at 1.
    for (u64 a = 1; a < n; ++a) {
      if (symmetric_only) {
        if (a > n - a) break;
        std::uint64_t unit = (std::uint64_t{1} << a) | (std::uint64_t{1} << (n - a));
        units_.push_back(unit);
      } else {
        units_.push_back(std::uint64_t{1} << a);
      }
    }
    suffix_.assign(units_.size() + 1, 0);
    for (std::size_t i = units_.size(); i-- > 0;) {
      suffix_[i] = suffix_[i + 1] + static_cast<u64>(std::popcount(units_[i]));
    }
  }

  void run() { dfs(0, 0, 0); }

  u64 best_size = 0;
  std::uint64_t best_mask = 0;
  u64 nodes = 0;

 private:
  std::uint64_t rotate(std::uint64_t mask, u64 s) const {
    if (s == 0) return mask;
    return ((mask << s) | (mask >> (n_ - s))) & full_;
  }

  std::uint64_t add(std::uint64_t A, std::uint64_t B) const {
    std::uint64_t out = 0;
    for (std::uint64_t m = A; m != 0; m &= m - 1) {
      out |= rotate(B, static_cast<u64>(std::countr_zero(m)));
      if (out == full_) break;
    }
    return out;
  }

  std::uint64_t fold(std::uint64_t A, u64 k) const {
    std::uint64_t out = A;
    for (u64 i = 1; i < k; ++i) out = add(out, A);
    return out;
  }

  bool valid(std::uint64_t A) const { return (fold(A, k_) & fold(A, l_)) == 0; }

  void dfs(std::size_t i, std::uint64_t mask, u64 size) {
    ++nodes;
    if (size > best_size) {
      best_size = size;
      best_mask = mask;
    }
    if (i == units_.size() || size + suffix_[i] <= best_size) return;
    const std::uint64_t with = mask | units_[i];
    if (valid(with)) dfs(i + 1, with, size + static_cast<u64>(std::popcount(units_[i])));
    if (size + suffix_[i + 1] > best_size) dfs(i + 1, mask, size);
  }

  u64 n_, k_, l_;
  std::uint64_t full_;
  std::vector<std::uint64_t> units_;
  std::vector<u64> suffix_;
};

}  // namespace

MaxKlResult max_kl_set_bruteforce(u64 n, u64 k, u64 l, bool symmetric_only) {
  if (n < 1) throw DomainError("max_kl_set_bruteforce: n must be >= 1");
  if (k == l) throw DomainError("max_kl_set_bruteforce: requires k != l");
  if (k < 1 || l < 1) throw DomainError("max_kl_set_bruteforce: k and l must be >= 1");
  if (n > kBruteforceMaxN) {
    throw ResourceError("max_kl_set_bruteforce: n = " + std::to_string(n) + " exceeds " +
                        std::to_string(kBruteforceMaxN));
  }
  KlSearch search(n, k, l, symmetric_only);
  search.run();
  MaxKlResult r{search.best_size, CyclicSubset(n), search.nodes};
  for (u64 a = 0; a < n; ++a) {
    if ((search.best_mask >> a) & 1u) r.witness.insert(a);
  }
  return r;
}

ApproxHom::ApproxHom(std::vector<double> phi) : phi_(std::move(phi)) {
  if (phi_.empty()) throw DomainError("ApproxHom: modulus must be >= 1");
  if (phi_[0] != 0.0) throw DomainError("ApproxHom: phi[0] must be 0");
}

double approx_hom_defect(const ApproxHom& phi) {
  const u64 d = phi.modulus();
  double defect = 0.0;
  for (u64 a = 0; a < d; ++a) {
    for (u64 b = a; b < d; ++b) {
      double v = std::abs(phi[(a + b) % d] - phi[a] - phi[b]);
      defect = std::max(defect, v);
    }
  }
  return defect;
}

double approx_hom_sup(const ApproxHom& phi) {
  double sup = 0.0;
  for (double v : phi.values()) sup = std::max(sup, std::abs(v));
  return sup;
}

XiStructureReport xi_structure_from_sums(const Character& chi,
                                         const std::vector<double>& max_sums,
                                         double epsilon, u64 k, double constant) {
  if (k < 1) throw DomainError("xi_structure_check: k must be >= 1");
  XiStructureReport r;
  r.q = chi.q();
  r.d = chi.d();
  r.k = k;
  r.epsilon = epsilon;
  const IndexSet xi = xi_set_from_sums(chi, max_sums, epsilon);
  r.xi = xi.elements();
  r.symmetric = xi.is_symmetric();
  const CyclicSubset A(r.d, r.xi);
  r.disjoint = is_kl_set(A, 2 * k, 1);
  r.bhp = bhp_bound(r.d, 2 * k, 1);
  const double dd = static_cast<double>(r.d);
  r.prop_bound = constant * dd *
                 (1.0 / static_cast<double>(k) + 1.0 / static_cast<double>(least_prime_factor(r.d)));
  const double lq = std::log(static_cast<double>(r.q));
  const double twok1 = 2.0 * static_cast<double>(k) + 1.0;
  r.regime_threshold = constant * std::pow(lq, -1.0 / (3.0 * twok1 * twok1));
  r.in_regime = epsilon >= r.regime_threshold;
  return r;
}

XiStructureReport xi_structure_check(const Character& chi, double epsilon, u64 k,
                                     double constant) {
  return xi_structure_from_sums(chi, max_sums_over_powers(chi), epsilon, k, constant);
}

}  // namespace charsums
