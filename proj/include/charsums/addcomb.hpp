#pragma once

// Sumset algebra in Z/dZ, (k, l)-sets and the Bajnok–Hamidoune–Plagne
// bound, iterated doubling and approximate homomorphisms Z/dZ -> R.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "charsums/arith.hpp"

namespace charsums {

class Character;

/// Subset of Z/dZ stored as a bitset.
class CyclicSubset {
 public:
  explicit CyclicSubset(u64 d);
  CyclicSubset(u64 d, std::initializer_list<u64> elements);
  CyclicSubset(u64 d, const std::vector<u64>& elements);

  static CyclicSubset full(u64 d);

  u64 modulus() const { return d_; }
  bool contains(u64 a) const { return (words_[a / 64] >> (a % 64)) & 1u; }
  void insert(u64 a) { words_[a / 64] |= std::uint64_t{1} << (a % 64); }
  void erase(u64 a) { words_[a / 64] &= ~(std::uint64_t{1} << (a % 64)); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool is_full() const { return size() == d_; }
  std::vector<u64> elements() const;

  /// {a + shift mod d : a in this}.
  CyclicSubset translate(u64 shift) const;
  /// {-a : a in this}.
  CyclicSubset negate() const;
  bool is_symmetric() const;

  CyclicSubset& operator|=(const CyclicSubset& other);
  bool intersects(const CyclicSubset& other) const;
  bool operator==(const CyclicSubset& other) const = default;
  bool subset_of(const CyclicSubset& other) const;

  std::string to_string() const;

 private:
  void mask_tail();

  u64 d_;
  std::vector<std::uint64_t> words_;
};

/// A + B; throws DomainError on a modulus mismatch.
CyclicSubset sumset(const CyclicSubset& A, const CyclicSubset& B);

/// B <- B + B applied j times, giving 2^j A.
CyclicSubset iterate_double(const CyclicSubset& A, u64 j);

/// kA = A + ... + A (k terms) by k-1 sumsets; k >= 1.
CyclicSubset k_fold(const CyclicSubset& A, u64 k);

struct FreimanReport {
  u64 ceiling = 0;                 // max(1, ceil(log(1/c) / log(3/2)))
  std::optional<u64> first_full;   // first j >= 1 with 2^j A = Z/dZ
  bool counterexample() const { return !first_full || *first_full > ceiling; }
};

/// Requires P^-(d) > 1/c, A symmetric and |A| >= c d; a DomainError lists
/// every violated hypothesis.
FreimanReport freiman_doubling_check(const CyclicSubset& A, double c);

/// kA ∩ lA = ∅. An empty A is vacuously a (k, l)-set.
bool is_kl_set(const CyclicSubset& A, u64 k, u64 l);

/// max_{f | n} (n/f)(1 + floor((f - 2)/(k + l))), floors toward -infinity.
std::int64_t bhp_bound(u64 n, u64 k, u64 l);

struct MaxKlResult {
  u64 size = 0;
  CyclicSubset witness;  // lexicographically smallest among maximum sets
  u64 nodes = 0;         // search-tree nodes visited
};

inline constexpr u64 kBruteforceMaxN = 30;

/// Exhaustive search for a largest (k, l)-set in Z/nZ by include-first DFS
/// with monotone pruning. `symmetric_only` restricts to sets closed under
/// negation (searching over pairs {a, -a}).
MaxKlResult max_kl_set_bruteforce(u64 n, u64 k, u64 l, bool symmetric_only = false);

/// phi: Z/dZ -> R with phi[0] = 0.
class ApproxHom {
 public:
  explicit ApproxHom(std::vector<double> phi);
  u64 modulus() const { return phi_.size(); }
  double operator[](u64 a) const { return phi_[a]; }
  const std::vector<double>& values() const { return phi_; }

 private:
  std::vector<double> phi_;
};

/// max_{a,b} |phi(a + b) - phi(a) - phi(b)|.
double approx_hom_defect(const ApproxHom& phi);

/// max_a |phi(a)|. Since Z/dZ has only the zero homomorphism to R, this is
/// at most (d-1)/d times the defect.
double approx_hom_sup(const ApproxHom& phi);

struct XiStructureReport {
  u64 q = 0, d = 0, k = 1;
  double epsilon = 0.0;
  std::vector<u64> xi;          // sorted elements of Xi_d(eps)
  bool symmetric = true;
  bool disjoint = true;         // 2k Xi ∩ Xi = ∅
  std::int64_t bhp = 0;         // bhp_bound(d, 2k, 1)
  double prop_bound = 0.0;      // C d (1/k + 1/P^-(d))
  double regime_threshold = 0.0;  // C (log q)^{-1/(3(2k+1)^2)}
  bool in_regime = false;       // epsilon >= regime_threshold
  bool bhp_consistent() const { return !disjoint || static_cast<std::int64_t>(xi.size()) <= bhp; }
};

XiStructureReport xi_structure_check(const Character& chi, double epsilon, u64 k,
                                     double constant = 1.0);
XiStructureReport xi_structure_from_sums(const Character& chi,
                                         const std::vector<double>& max_sums,
                                         double epsilon, u64 k, double constant = 1.0);

}  // namespace charsums
