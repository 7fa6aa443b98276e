#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "epsilon.hpp"
#include "graph.hpp"

namespace scfr {

enum class Sign { plus, minus };

/// Walk time, either exact (t = 2*pi*num/den) or a raw radian value.
/// The exact form drives drift-free phase evaluation on integral spectra.
struct RationalTime {
  int64_t num = 0;
  int64_t den = 1;

  static RationalTime reduced(int64_t num, int64_t den);
  double radians() const;
  std::string str() const;  // "num/den"
};

struct TimeSpec {
  std::optional<RationalTime> rational;
  double radians = 0.0;

  bool exact() const { return rational.has_value(); }
  static TimeSpec from_radians(double t);
  static TimeSpec from_rational(int64_t num, int64_t den);
  /// Accepts "k/m" (turns of 2*pi) or a plain radian literal.
  static TimeSpec parse(const std::string& text);
};

/// Closed-form spectral data of a semi-Cayley graph: for every group element
/// index z the eigenvalue pair, the branch weights that drive the four
/// orbit-pair transition formulas, and X membership (chi_z(S) == 0).
///
/// Weights follow from the 2x2 reduction of the adjacency over the character
/// basis.  With gap = sqrt(x^2 + 4|chi_S|^2):
///   c+ = (gap + x)/(2 gap), c- = (gap - x)/(2 gap), d+- = c-+,
///   e+- = +-conj(chi_S)/gap,
/// and in the decoupled case (z in X) the weight sits entirely on the branch
/// whose eigenvalue equals chi_R (orbit 0) resp. chi_L (orbit 1).
struct SpectralData {
  SpectralData(const SemiCayleyGraph& graph, const EpsilonProfile& eps);

  int64_t n = 0;
  std::vector<double> chi_r, chi_l, x;
  std::vector<std::complex<double>> chi_s;
  std::vector<double> gap;
  std::vector<double> lam_plus, lam_minus;
  std::vector<char> in_x;
  std::vector<double> c_plus, c_minus, d_plus, d_minus;
  std::vector<std::complex<double>> e_plus;  // e_minus = -e_plus

  // Integer spectrum, populated when every eigenvalue rounds within
  // eps.integral; the offender fields describe the first failure otherwise.
  bool integral = false;
  std::vector<int64_t> lam_plus_int, lam_minus_int;
  double worst_integral_defect = 0.0;
  int64_t offender_index = -1;
  double offender_lambda = 0.0;
  // Stronger integrality of the constituents (chi_R and |chi_S| themselves).
  bool chi_r_integral = false;
  bool chi_s_abs_integral = false;

  double lambda(int64_t zi, Sign s) const {
    return s == Sign::plus ? lam_plus[zi] : lam_minus[zi];
  }
  int64_t lambda_int(int64_t zi, Sign s) const {
    return s == Sign::plus ? lam_plus_int[zi] : lam_minus_int[zi];
  }
  std::complex<double> e(int64_t zi, Sign s) const {
    return s == Sign::plus ? e_plus[zi] : -e_plus[zi];
  }
};

/// Evaluates exp(i t lambda).  With an exact rational time over an integral
/// spectrum the phase is computed as a reduced root of unity, so equal phases
/// compare equal to machine precision.
class PhaseEvaluator {
 public:
  PhaseEvaluator(const SpectralData& sd, const TimeSpec& time);

  std::complex<double> at(int64_t zi, Sign s) const;

 private:
  const SpectralData& sd_;
  TimeSpec time_;
  bool exact_;
};

std::complex<double> transition_entry(const SemiCayleyGraph& graph,
                                      const SpectralData& sd, const Vertex& u,
                                      const Vertex& v, const TimeSpec& time);

/// Full row H(t)_{u,.} in vertex-index order; O(n) per entry.
Eigen::VectorXcd transition_row(const SemiCayleyGraph& graph,
                                const SpectralData& sd, const Vertex& u,
                                const TimeSpec& time);

/// H(t) assembled from the spectral decomposition (rank-1 projector
/// accumulation) -- an intentionally different code path from
/// transition_entry's character sums.
Eigen::MatrixXcd transition_matrix(const SemiCayleyGraph& graph,
                                   const SpectralData& sd,
                                   const TimeSpec& time);

/// Independent dense check: exp(itA) via a full symmetric eigendecomposition
/// of the adjacency matrix.  Rejects graphs larger than eps.oracle_cap.
Eigen::MatrixXcd transition_oracle(const SemiCayleyGraph& graph,
                                   const TimeSpec& time,
                                   const EpsilonProfile& eps);

/// Sorted adjacency spectrum from the dense solver (for multiset comparisons).
std::vector<double> oracle_eigenvalues(const SemiCayleyGraph& graph,
                                       const EpsilonProfile& eps);

/// Unit eigenvector for (z, sign); satisfies A xi = lambda xi.
Eigen::VectorXcd eigenvector(const SemiCayleyGraph& graph,
                             const SpectralData& sd, int64_t zi, Sign s);

/// Rank-1 Hermitian projector xi xi^H for (z, sign).
Eigen::MatrixXcd eigenprojector(const SemiCayleyGraph& graph,
                                const SpectralData& sd, int64_t zi, Sign s);

/// Element indices split by the value of chi_a: +1 (plus_class) or -1
/// (minus_class).  Exact integer classification; requires order(a) <= 2.
struct OrbitPartition {
  Residues a;
  std::vector<int64_t> plus_class, minus_class;
};
OrbitPartition orbit_partition(const AbelianGroup& group, const Residues& a);

/// Split of G by the sign of the spoke alignment product for the pairing a:
/// plus_class where the product equals +|chi_S|, minus_class where it equals
/// -|chi_S|.  Defined only when X is empty and every product is real.
/// The product is chi_S(z) * chi_a(z) for the orbit-1 -> orbit-0 pairing and
/// conj(chi_S(z)) * chi_a(z) for orbit-0 -> orbit-1 (`conjugate_spokes`).
struct SpokePartition {
  Residues a;
  std::vector<int64_t> plus_class, minus_class;
};
std::optional<SpokePartition> spoke_partition(const SemiCayleyGraph& graph,
                                              const SpectralData& sd,
                                              const Residues& a,
                                              const EpsilonProfile& eps,
                                              bool conjugate_spokes,
                                              std::string* why_not = nullptr);

}  // namespace scfr
