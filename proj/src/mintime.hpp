#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectral.hpp"

namespace scfr {

struct IntegralityReport {
  bool integral = false;
  double worst_defect = 0.0;
  int64_t offender_index = -1;  // element index of the first non-integer eigenvalue
  double offender_lambda = 0.0;
  bool chi_r_integral = false;
  bool chi_s_abs_integral = false;
  std::vector<int64_t> lam_plus, lam_minus;  // rounded values (valid when integral)
};

IntegralityReport integrality_check(const SemiCayleyGraph& graph,
                                    const SpectralData& sd,
                                    const EpsilonProfile& eps);

/// gcd over absolute values with gcd() = 0 and gcd(0, m) = m.
int64_t gcd_fold(const std::vector<int64_t>& values);

/// Minimum-time invariant for one pairing element: the gcd of the eigenvalue
/// difference families that quantize admissible revival times to multiples of
/// 2*pi/value.  value == 0 means the families impose no quantization.
struct MinTimeReport {
  Residues pairing;
  bool same_orbit = true;
  bool defined = true;
  std::string reason;  // set when !defined
  std::vector<std::pair<std::string, std::vector<int64_t>>> components;
  int64_t value = 0;
  bool divides_double_order = false;  // asserted only for value >= 1
  bool no_fr_certified = false;       // value == 1
};

/// Same-orbit invariant (four gcd families).  Requires R == L, an integral
/// spectrum and a pairing of order 2.  `z1_index`, when given, must lie in
/// the minus class; the result is provably independent of the choice.
MinTimeReport same_orbit_min_time(const SemiCayleyGraph& graph,
                                  const SpectralData& sd, const Residues& a,
                                  const EpsilonProfile& eps,
                                  std::optional<int64_t> z1_index = {});

/// Cross-orbit invariant (six gcd families over the spoke partition for the
/// orbit-1 -> orbit-0 pairing).  Requires R == L and an integral spectrum;
/// returns an undefined report with a reason when the partition does not
/// exist (cross-orbit revival is then impossible for this pairing).
MinTimeReport cross_orbit_min_time(const SemiCayleyGraph& graph,
                                   const SpectralData& sd, const Residues& a,
                                   const EpsilonProfile& eps,
                                   std::optional<int64_t> z1_index = {});

struct NoFrEntry {
  Residues pairing;
  bool same_orbit = true;
  std::string reason;
};

/// Advisory impossibility certificates: every pairing whose invariant equals
/// 1 admits no revival of its kind.  (Invariant > 1 proves nothing.)
std::vector<NoFrEntry> no_fr_certificates(const SemiCayleyGraph& graph,
                                          const SpectralData& sd,
                                          const EpsilonProfile& eps,
                                          std::vector<std::string>* notes);

enum class RootUnityAudit { pass, fail, informational };

/// Checks that exp(it) is a (2n)-th root of unity, the necessary condition
/// for revival times on graphs with R == L.  Vacuous quantization
/// (modulus == 0, revival families valid at every time) is reported as
/// informational rather than pass/fail.
RootUnityAudit root_of_unity_audit(const SemiCayleyGraph& graph,
                                   const TimeSpec& time,
                                   int64_t quantization_modulus,
                                   const EpsilonProfile& eps);

}  // namespace scfr
