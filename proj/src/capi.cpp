#include "scfr/scfr.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "errors.hpp"
#include "scenario.hpp"

struct scfr_graph_t {
  scfr::SemiCayleyGraph graph;
  std::unique_ptr<scfr::SpectralData> spectral;
  std::optional<scfr::CayleyConversion> conversion;
  scfr::EpsilonProfile eps;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error, const std::string& message) {
  if (error) *error = dup_string(message);
}

scfr_status status_of(const std::exception& e) {
  if (dynamic_cast<const scfr::tolerance_error*>(&e))
    return SCFR_ERROR_TOLERANCE;
  if (dynamic_cast<const scfr::unsupported_error*>(&e))
    return SCFR_ERROR_UNSUPPORTED;
  if (dynamic_cast<const scfr::validation_error*>(&e) ||
      dynamic_cast<const scfr::precondition_error*>(&e))
    return SCFR_ERROR_VALIDATION;
  return SCFR_ERROR_INTERNAL;
}

template <typename Fn>
scfr_status guarded(char** error, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    set_error(error, e.what());
    const auto* as_error = dynamic_cast<const scfr::error*>(&e);
    return as_error ? status_of(e) : SCFR_ERROR_INTERNAL;
  } catch (...) {
    set_error(error, "unknown failure");
    return SCFR_ERROR_INTERNAL;
  }
}

scfr::EpsilonProfile eps_from_text(const char* epsilon_json) {
  scfr::EpsilonProfile eps;
  if (!epsilon_json || !*epsilon_json) return eps;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(epsilon_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw scfr::validation_error(
        std::string("epsilon profile is not valid JSON: ") + e.what());
  }
  return scfr::epsilon_from_json(doc, eps);
}

}  // namespace

extern "C" {

const char* scfr_version(void) { return "1.0.0"; }

void scfr_string_free(char* s) { std::free(s); }

scfr_status scfr_graph_create(const char* scenario_json,
                              const char* epsilon_json, scfr_graph_t** out,
                              char** error) {
  if (!scenario_json || !out) {
    set_error(error, "scenario_json and out must be non-NULL");
    return SCFR_ERROR_VALIDATION;
  }
  return guarded(error, [&]() {
    const scfr::EpsilonProfile base = eps_from_text(epsilon_json);
    scfr::Scenario scenario = scfr::load_scenario_text(scenario_json, base);
    auto handle = std::make_unique<scfr_graph_t>(scfr_graph_t{
        std::move(scenario.graph), nullptr, std::move(scenario.conversion),
        scenario.eps});
    handle->spectral =
        std::make_unique<scfr::SpectralData>(handle->graph, handle->eps);
    *out = handle.release();
    return SCFR_OK;
  });
}

void scfr_graph_destroy(scfr_graph_t* graph) { delete graph; }

long long scfr_graph_group_order(const scfr_graph_t* graph) {
  return graph ? graph->graph.group_order() : 0;
}

long long scfr_graph_vertex_count(const scfr_graph_t* graph) {
  return graph ? graph->graph.vertex_count() : 0;
}

int scfr_graph_r_equals_l(const scfr_graph_t* graph) {
  return graph && graph->graph.r_equals_l() ? 1 : 0;
}

scfr_status scfr_spectrum(const scfr_graph_t* graph, char** json_out,
                          char** error) {
  if (!graph || !json_out) {
    set_error(error, "graph and json_out must be non-NULL");
    return SCFR_ERROR_VALIDATION;
  }
  return guarded(error, [&]() {
    *json_out = dup_string(scfr::jsonio::dump(
        scfr::spectrum_report(graph->graph, *graph->spectral, graph->eps)));
    return *json_out ? SCFR_OK : SCFR_ERROR_INTERNAL;
  });
}

scfr_status scfr_transition_entry(const scfr_graph_t* graph, const char* u,
                                  const char* v, const char* time,
                                  double out_re_im[2], char** error) {
  if (!graph || !u || !v || !time || !out_re_im) {
    set_error(error, "all arguments must be non-NULL");
    return SCFR_ERROR_VALIDATION;
  }
  return guarded(error, [&]() {
    const scfr::Vertex uu = scfr::parse_vertex(u, graph->graph.group());
    const scfr::Vertex vv = scfr::parse_vertex(v, graph->graph.group());
    const scfr::TimeSpec t = scfr::TimeSpec::parse(time);
    const std::complex<double> entry =
        scfr::transition_entry(graph->graph, *graph->spectral, uu, vv, t);
    out_re_im[0] = entry.real();
    out_re_im[1] = entry.imag();
    return SCFR_OK;
  });
}

scfr_status scfr_transition_csv(const scfr_graph_t* graph, const char* time,
                                char** csv_out, char** error) {
  if (!graph || !time || !csv_out) {
    set_error(error, "graph, time and csv_out must be non-NULL");
    return SCFR_ERROR_VALIDATION;
  }
  return guarded(error, [&]() {
    *csv_out = dup_string(scfr::transition_csv(graph->graph, *graph->spectral,
                                               scfr::TimeSpec::parse(time)));
    return *csv_out ? SCFR_OK : SCFR_ERROR_INTERNAL;
  });
}

scfr_status scfr_fidelity_csv(const scfr_graph_t* graph, const char* pair,
                              const char* grid, char** csv_out, char** error) {
  if (!graph || !pair || !grid || !csv_out) {
    set_error(error, "graph, pair, grid and csv_out must be non-NULL");
    return SCFR_ERROR_VALIDATION;
  }
  return guarded(error, [&]() {
    const auto [u, v] = scfr::parse_vertex_pair(pair, graph->graph.group());
    const std::vector<scfr::TimeSpec> times = scfr::parse_time_grid(grid);
    *csv_out = dup_string(scfr::fidelity_csv(graph->graph, *graph->spectral, u,
                                             v, times, graph->eps));
    return *csv_out ? SCFR_OK : SCFR_ERROR_INTERNAL;
  });
}

scfr_status scfr_detect(const scfr_graph_t* graph, const char* mode,
                        int all_times, char** json_out, char** error) {
  if (!graph || !json_out) {
    set_error(error, "graph and json_out must be non-NULL");
    return SCFR_ERROR_VALIDATION;
  }
  return guarded(error, [&]() {
    const scfr::DetectResult result =
        scfr::run_detect(graph->graph, *graph->spectral,
                         mode && *mode ? mode : "both", all_times != 0,
                         graph->eps);
    *json_out = dup_string(scfr::jsonio::dump(result.report));
    if (!*json_out) return SCFR_ERROR_INTERNAL;
    return result.hits > 0 ? SCFR_OK : SCFR_NO_HITS;
  });
}

scfr_status scfr_mintime(const scfr_graph_t* graph, int assert_divisor,
                         char** json_out, char** error) {
  if (!graph || !json_out) {
    set_error(error, "graph and json_out must be non-NULL");
    return SCFR_ERROR_VALIDATION;
  }
  return guarded(error, [&]() {
    const scfr::MintimeResult result =
        scfr::run_mintime(graph->graph, *graph->spectral, graph->eps);
    *json_out = dup_string(scfr::jsonio::dump(result.report));
    if (!*json_out) return SCFR_ERROR_INTERNAL;
    if (assert_divisor && result.divisor_violations > 0) {
      set_error(error, "minimum-time divisor property violated");
      return SCFR_ERROR_TOLERANCE;
    }
    return SCFR_OK;
  });
}

scfr_status scfr_verify(const scfr_graph_t* graph, const char* pair,
                        const char* time, double alpha_re, double alpha_im,
                        double beta_re, double beta_im, char** json_out,
                        char** error) {
  if (!graph || !pair || !time || !json_out) {
    set_error(error, "graph, pair, time and json_out must be non-NULL");
    return SCFR_ERROR_VALIDATION;
  }
  return guarded(error, [&]() {
    const auto [u, v] = scfr::parse_vertex_pair(pair, graph->graph.group());
    const scfr::RevivalPair amplitudes{{alpha_re, alpha_im},
                                       {beta_re, beta_im}};
    const scfr::VerifyResult result =
        scfr::run_verify(graph->graph, *graph->spectral, u, v,
                         scfr::TimeSpec::parse(time), amplitudes, graph->eps);
    *json_out = dup_string(scfr::jsonio::dump(result.report));
    if (!*json_out) return SCFR_ERROR_INTERNAL;
    return result.certified ? SCFR_OK : SCFR_NO_HITS;
  });
}

scfr_status scfr_convert_cayley(const char* scenario_json, char** json_out,
                                char** error) {
  if (!scenario_json || !json_out) {
    set_error(error, "scenario_json and json_out must be non-NULL");
    return SCFR_ERROR_VALIDATION;
  }
  return guarded(error, [&]() {
    const scfr::Scenario scenario =
        scfr::load_scenario_text(scenario_json, scfr::EpsilonProfile{});
    if (!scenario.conversion) {
      throw scfr::validation_error(
          "convert-cayley needs a scenario in the \"cayley\" form");
    }
    *json_out = dup_string(
        scfr::jsonio::dump(scfr::convert_report(*scenario.conversion)));
    return *json_out ? SCFR_OK : SCFR_ERROR_INTERNAL;
  });
}

scfr_status scfr_scan(const char* spec_json, scfr_record_sink sink, void* user,
                      char** error) {
  if (!sink) {
    set_error(error, "sink must be non-NULL");
    return SCFR_ERROR_VALIDATION;
  }
  return guarded(error, [&]() {
    nlohmann::json doc;
    if (spec_json && *spec_json) {
      try {
        doc = nlohmann::json::parse(spec_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw scfr::validation_error(
            std::string("scan spec is not valid JSON: ") + e.what());
      }
    }
    const scfr::ScanSpec spec = scfr::ScanSpec::from_json(doc);
    scfr::EpsilonProfile eps;
    scfr::scan(spec, eps, [&](const nlohmann::json& record) {
      const std::string line = scfr::jsonio::dump(record);
      return sink(line.c_str(), user) != 0;
    });
    return SCFR_OK;
  });
}

}  // extern "C"
