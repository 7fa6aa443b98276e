#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace scfr {

/// Residue vector of a group element, one entry per cyclic factor.
using Residues = std::vector<int64_t>;

/// exp(2*pi*i*k/m); k is reduced mod m before any floating-point work so the
/// phase argument never grows.
std::complex<double> unit_root(int64_t k, int64_t m);

/// "[a,b,...]" rendering used by error messages and reports.
std::string element_str(const Residues& g);

/// Finite abelian group given as an explicit direct-sum factor list
/// Z_{n_1} x ... x Z_{n_r}.  No canonicalization across isomorphic
/// factorizations is performed: two factor lists are two different groups.
///
/// Elements are canonical (reduced mod factors) and enumeration is
/// lexicographic on residue vectors, so element_at(0) is the identity.
/// Instances are immutable and safe to share across threads.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<int64_t> factors);

  int64_t order() const { return order_; }
  size_t rank() const { return factors_.size(); }
  const std::vector<int64_t>& factors() const { return factors_; }

  Residues identity() const { return Residues(factors_.size(), 0); }
  bool is_identity(const Residues& g) const;

  /// Reduce mod factors; rejects rank mismatches naming `field`.
  Residues canonical(Residues g, const char* field = "element") const;

  Residues add(const Residues& g, const Residues& h) const;
  Residues negate(const Residues& g) const;
  int64_t element_order(const Residues& g) const;

  int64_t index_of(const Residues& g) const;
  Residues element_at(int64_t index) const;

  /// Phase numerator k of chi_z(g) = exp(2*pi*i*k/n) with 0 <= k < n.
  /// Exact integer arithmetic; the symmetry chi_z(g) == chi_g(z) is exact.
  int64_t character_phase(const Residues& z, const Residues& g) const;
  std::complex<double> character(const Residues& z, const Residues& g) const;

  /// Sum of chi_z over a duplicate-free subset.
  std::complex<double> character_sum(const Residues& z,
                                     const std::vector<Residues>& subset) const;

  bool operator==(const AbelianGroup& other) const {
    return factors_ == other.factors_;
  }

 private:
  std::vector<int64_t> factors_;
  std::vector<int64_t> weights_;  // n / n_s: common-denominator phase weights
  int64_t order_ = 1;
};

}  // namespace scfr
