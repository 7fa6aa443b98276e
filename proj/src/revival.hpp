#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mintime.hpp"

namespace scfr {

enum class RevivalKind { proper, pst, periodic };
const char* to_string(RevivalKind kind);

/// Amplitude pair of a revival H(t) e_u = alpha e_u + beta e_v.
struct RevivalPair {
  std::complex<double> alpha{0.0, 0.0};
  std::complex<double> beta{0.0, 0.0};

  double norm_defect() const;
  RevivalKind classify(const EpsilonProfile& eps) const;
};

/// A verified revival witness.  `residual` is the closed-form row deviation
/// from alpha e_u + beta e_v, `oracle_residual` the same deviation measured
/// against the dense matrix-exponential row.
struct RevivalCertificate {
  Vertex u, v;
  TimeSpec time;
  RevivalPair pair;
  RevivalKind kind = RevivalKind::proper;
  bool cross_orbit = false;
  int orbit = 0;  // same-orbit: source orbit; cross-orbit: 0 means orbit0 -> orbit1
  Residues pairing;
  int64_t quantization = 0;  // modulus behind the candidate time; 0 = every-time family
  bool every_time = false;
  bool both_orbits = false;  // same-orbit with R == L holds in either orbit
  double residual = 0.0;
  double oracle_residual = 0.0;
};

struct RowRefutation {
  Vertex witness;
  double violation = 0.0;
  std::string detail;
};

using VerifyOutcome = std::variant<RevivalCertificate, RowRefutation>;

/// Row-level check, independent of the characterization theorems: accepts iff
/// the full row H(t)_{u,.} equals alpha e_u + beta e_v within eps.residual,
/// then cross-checks the row against the dense oracle.  Works for any R, L, S.
VerifyOutcome verify_row(const SemiCayleyGraph& graph, const SpectralData& sd,
                         const Vertex& u, const Vertex& v,
                         const TimeSpec& time, const RevivalPair& pair,
                         const EpsilonProfile& eps);

struct CheckResult {
  bool accepted = false;
  std::string reason;  // first violated condition when rejected
};

/// Phase-equation check for revival inside one orbit with pairing a = v - u
/// (order 2 required).  Plus-class elements must carry the phase alpha+beta,
/// minus-class elements alpha-beta; decoupled elements (z in X) constrain
/// only the branch their orbit weight sits on.
CheckResult check_same_orbit(const SemiCayleyGraph& graph,
                             const SpectralData& sd, const Residues& a,
                             const TimeSpec& time, const RevivalPair& pair,
                             int orbit, const EpsilonProfile& eps);

/// Phase-equation check for revival between the orbits with pairing
/// a = v - u.  Requires X empty and the spoke alignment products to be real;
/// `from_left` selects the orbit1 -> orbit0 direction.
CheckResult check_cross_orbit(const SemiCayleyGraph& graph,
                              const SpectralData& sd, const Residues& a,
                              const TimeSpec& time, const RevivalPair& pair,
                              bool from_left, const EpsilonProfile& eps);

struct SearchOptions {
  bool same_orbit = true;
  bool cross_orbit = true;
};

struct SearchReport {
  std::vector<RevivalCertificate> certificates;  // all quantized hits, periodic included
  std::vector<std::string> diagnostics;
  bool unsupported = false;
  std::string unsupported_reason;
};

/// Quantized revival search.  Candidate times are T = k/modulus turns where
/// the modulus is the minimum-time gcd invariant; when that invariant is
/// degenerate (0) the residual within-phase-class eigenvalue differences
/// still quantize candidates, and when even those vanish the family is valid
/// at every time and a representative certificate is emitted.  Every hit is
/// confirmed by verify_row.  Requires an integral spectrum.
SearchReport search(const SemiCayleyGraph& graph, const SpectralData& sd,
                    const SearchOptions& options, const EpsilonProfile& eps);

/// One certificate per (kind of revival, pairing, orbit) family, keeping the
/// smallest positive time.
std::vector<RevivalCertificate> fold_minimal(
    const SemiCayleyGraph& graph, const std::vector<RevivalCertificate>& all);

/// Materializes H(t) through the oracle and asserts the full block shape the
/// certificate implies: alpha I + beta Q on the certificate's orbit block
/// (same-orbit, other block unitary, off-diagonal blocks zero) or
/// [[alpha I, beta Q], [beta Q^T, -conj(alpha) beta / conj(beta) I]]
/// (cross-orbit).
bool block_shape_audit(const SemiCayleyGraph& graph, const SpectralData& sd,
                       const RevivalCertificate& cert,
                       const EpsilonProfile& eps);

/// Time-independent feasibility screen for cross-orbit revival with pairing
/// a: X empty, alignment products real, and the derived amplitude-transport
/// ratio constant across the group.  A failure reason proves impossibility
/// at every time; std::nullopt means the screen passes.
std::optional<std::string> cross_orbit_obstruction(
    const SemiCayleyGraph& graph, const SpectralData& sd, const Residues& a,
    bool from_left, const EpsilonProfile& eps);

}  // namespace scfr
