#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "json_io.hpp"
#include "revival.hpp"

namespace scfr {

/// A parsed scenario file: either a direct semi-Cayley description
/// {"group", "R", "L", "S"} or a Cayley extension {"cayley": {...}} that is
/// converted on load.  An optional "epsilon" object overrides tolerances.
struct Scenario {
  SemiCayleyGraph graph;
  std::optional<CayleyConversion> conversion;
  EpsilonProfile eps;
};

EpsilonProfile epsilon_from_json(const nlohmann::json& overrides,
                                 EpsilonProfile base);

Scenario load_scenario(const nlohmann::json& doc,
                       const EpsilonProfile& base_eps);
Scenario load_scenario_text(const std::string& text,
                            const EpsilonProfile& base_eps);

/// Vertex literal "(g_1,...,g_r;orbit)"; the comma form "(g_1,...,g_r,orbit)"
/// is accepted when unambiguous.
Vertex parse_vertex(const std::string& text, const AbelianGroup& group);
/// Two vertex literals separated by whitespace.
std::pair<Vertex, Vertex> parse_vertex_pair(const std::string& text,
                                            const AbelianGroup& group);

nlohmann::json vertex_json(const Vertex& v);
nlohmann::json certificate_json(const RevivalCertificate& cert);

nlohmann::json spectrum_report(const SemiCayleyGraph& graph,
                               const SpectralData& sd,
                               const EpsilonProfile& eps);

struct DetectResult {
  nlohmann::json report;
  int hits = 0;  // proper-fr + pst certificates
};
/// mode is "same", "cross" or "both"; with all_times false the report keeps
/// one minimal-time certificate per revival family.
DetectResult run_detect(const SemiCayleyGraph& graph, const SpectralData& sd,
                        const std::string& mode, bool all_times,
                        const EpsilonProfile& eps);

struct MintimeResult {
  nlohmann::json report;
  int divisor_violations = 0;
};
MintimeResult run_mintime(const SemiCayleyGraph& graph, const SpectralData& sd,
                          const EpsilonProfile& eps);

struct VerifyResult {
  nlohmann::json report;
  bool certified = false;
};
VerifyResult run_verify(const SemiCayleyGraph& graph, const SpectralData& sd,
                        const Vertex& u, const Vertex& v, const TimeSpec& time,
                        const RevivalPair& pair, const EpsilonProfile& eps);

/// Row-major matrix CSV with "re+imj" cells.
std::string transition_csv(const SemiCayleyGraph& graph, const SpectralData& sd,
                           const TimeSpec& time);

/// Time grid: either "start:stop:count" (count >= 2, radians) or a
/// comma-separated list of time literals.  The result is strictly increasing.
std::vector<TimeSpec> parse_time_grid(const std::string& text);

/// CSV rows (t, |H(t)_{u,v}|^2) over the grid.
std::string fidelity_csv(const SemiCayleyGraph& graph, const SpectralData& sd,
                         const Vertex& u, const Vertex& v,
                         const std::vector<TimeSpec>& grid,
                         const EpsilonProfile& eps);

nlohmann::json convert_report(const CayleyConversion& conversion);

/// Bounded exhaustive enumeration over (group, R, L, S).
struct ScanSpec {
  int64_t max_order = 6;
  std::vector<std::vector<int64_t>> factor_shapes;  // empty: all shapes up to max_order
  bool require_rl = false;
  int64_t s_min = 0;
  int64_t s_max = -1;  // -1: no upper bound
  int workers = 1;

  static ScanSpec from_json(const nlohmann::json& doc);
};

/// Streams one JSON record per candidate in deterministic enumeration order;
/// candidates are processed by a worker pool when spec.workers > 1.  The sink
/// returns false to stop early.
void scan(const ScanSpec& spec, const EpsilonProfile& eps,
          const std::function<bool(const nlohmann::json&)>& sink);

}  // namespace scfr
