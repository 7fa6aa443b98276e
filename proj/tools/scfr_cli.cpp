// Command-line front end for the semi-Cayley revival library.  Everything
// goes through the public C API; exit codes: 0 success, 2 validation error,
// 3 detect/verify with no certified hits, 4 internal tolerance breach.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "scfr/scfr.h"

namespace {

struct StringGuard {
  char* value = nullptr;
  ~StringGuard() { scfr_string_free(value); }
};

struct GraphGuard {
  scfr_graph_t* graph = nullptr;
  ~GraphGuard() { scfr_graph_destroy(graph); }
};

int exit_code_of(scfr_status status) {
  switch (status) {
    case SCFR_OK:
      return 0;
    case SCFR_NO_HITS:
      return 3;
    case SCFR_ERROR_TOLERANCE:
    case SCFR_ERROR_INTERNAL:
      return 4;
    case SCFR_ERROR_VALIDATION:
    case SCFR_ERROR_UNSUPPORTED:
    default:
      return 2;
  }
}

int fail(scfr_status status, const StringGuard& error) {
  std::cerr << "error: " << (error.value ? error.value : "unknown failure")
            << "\n";
  return exit_code_of(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read scenario file '" << path << "'\n";
    std::exit(2);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write to '" << output_path << "'\n";
    std::exit(2);
  }
  out << text;
}

std::string epsilon_overrides(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("SCFR_EPSILON_PROFILE");
  return env ? env : "";
}

GraphGuard open_graph(const std::string& input, const std::string& eps_json) {
  GraphGuard guard;
  StringGuard error;
  const std::string scenario = read_file(input);
  const scfr_status status = scfr_graph_create(
      scenario.c_str(), eps_json.empty() ? nullptr : eps_json.c_str(),
      &guard.graph, &error.value);
  if (status != SCFR_OK) std::exit(fail(status, error));
  return guard;
}

bool parse_complex_flag(const std::string& text, double out[2]) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      size_t used = 0;
      out[0] = std::stod(text, &used);
      out[1] = 0.0;
      return used == text.size();
    }
    size_t used = 0;
    out[0] = std::stod(text.substr(0, comma), &used);
    if (used != comma) return false;
    const std::string imag = text.substr(comma + 1);
    out[1] = std::stod(imag, &used);
    return used == imag.size();
  } catch (const std::exception&) {
    return false;
  }
}

int print_sink(const char* record_json, void* user) {
  (void)user;
  std::cout << record_json << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-Cayley quantum-walk revival toolkit"};
  app.require_subcommand(1);

  std::string input, output, eps_flag;
  app.add_option("--epsilon", eps_flag,
                 "tolerance overrides as JSON (or env SCFR_EPSILON_PROFILE)");

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "scenario JSON file")->required();
    cmd->add_option("--output", output, "write the report here instead of stdout");
  };

  auto* spectrum = app.add_subcommand("spectrum", "closed-form spectrum report");
  add_input(spectrum);

  auto* transition =
      app.add_subcommand("transition", "transition matrix H(t) as CSV");
  add_input(transition);
  std::string time_flag = "0";
  transition->add_option("--time", time_flag,
                         "time as \"k/m\" (t = 2*pi*k/m) or radians")
      ->required();

  auto* fidelity =
      app.add_subcommand("fidelity", "fidelity series |H(t)_{u,v}|^2 as CSV");
  add_input(fidelity);
  std::string pair_flag, grid_flag;
  fidelity->add_option("--pair", pair_flag, "two vertex literals, e.g. \"(0;0) (3;0)\"")
      ->required();
  fidelity->add_option("--grid", grid_flag,
                       "start:stop:count in radians, or comma-separated times")
      ->required();

  auto* detect = app.add_subcommand("detect", "quantized revival search");
  add_input(detect);
  std::string mode = "both";
  bool all_times = false;
  detect->add_option("--mode", mode, "same | cross | both");
  detect->add_flag("--all-times", all_times,
                   "report every quantized hit, not one per family");

  auto* mintime =
      app.add_subcommand("mintime", "integrality and minimum-time invariants");
  add_input(mintime);
  bool assert_divisor = false;
  mintime->add_flag("--assert-divisor", assert_divisor,
                    "nonzero exit if an invariant >= 1 fails to divide 2n");

  auto* scan = app.add_subcommand("scan", "exhaustive small-instance catalog");
  long long max_order = 6, s_min = 0, s_max = -1;
  int workers = 1;
  bool require_rl = false;
  std::string factors_flag;
  scan->add_option("--max-order", max_order, "largest group order (default 6)");
  scan->add_option("--factors", factors_flag,
                   "explicit factor shapes, e.g. \"2,2;4;3\"");
  scan->add_flag("--require-rl", require_rl, "restrict to R == L");
  scan->add_option("--s-min", s_min, "minimum |S|");
  scan->add_option("--s-max", s_max, "maximum |S| (-1: unbounded)");
  scan->add_option("--workers", workers, "worker threads (default 1)");

  auto* convert = app.add_subcommand(
      "convert-cayley", "convert a dihedral/dicyclic Cayley scenario");
  add_input(convert);

  auto* verify =
      app.add_subcommand("verify", "row-level check of an explicit revival claim");
  add_input(verify);
  std::string verify_pair, verify_time, alpha_flag = "1,0", beta_flag = "0,0";
  verify->add_option("--pair", verify_pair, "two vertex literals")->required();
  verify->add_option("--time", verify_time, "time as \"k/m\" or radians")
      ->required();
  verify->add_option("--alpha", alpha_flag, "alpha as \"re,im\"")->required();
  verify->add_option("--beta", beta_flag, "beta as \"re,im\"")->required();

  CLI11_PARSE(app, argc, argv);
  const std::string eps_json = epsilon_overrides(eps_flag);

  if (spectrum->parsed()) {
    GraphGuard graph = open_graph(input, eps_json);
    StringGuard report, error;
    const scfr_status status =
        scfr_spectrum(graph.graph, &report.value, &error.value);
    if (status != SCFR_OK) return fail(status, error);
    emit(report.value, output);
    return 0;
  }

  if (transition->parsed()) {
    GraphGuard graph = open_graph(input, eps_json);
    StringGuard csv, error;
    const scfr_status status = scfr_transition_csv(
        graph.graph, time_flag.c_str(), &csv.value, &error.value);
    if (status != SCFR_OK) return fail(status, error);
    emit(csv.value, output);
    return 0;
  }

  if (fidelity->parsed()) {
    GraphGuard graph = open_graph(input, eps_json);
    StringGuard csv, error;
    const scfr_status status =
        scfr_fidelity_csv(graph.graph, pair_flag.c_str(), grid_flag.c_str(),
                          &csv.value, &error.value);
    if (status != SCFR_OK) return fail(status, error);
    emit(csv.value, output);
    return 0;
  }

  if (detect->parsed()) {
    GraphGuard graph = open_graph(input, eps_json);
    StringGuard report, error;
    const scfr_status status =
        scfr_detect(graph.graph, mode.c_str(), all_times ? 1 : 0,
                    &report.value, &error.value);
    if (status != SCFR_OK && status != SCFR_NO_HITS)
      return fail(status, error);
    emit(report.value, output);
    return exit_code_of(status);
  }

  if (mintime->parsed()) {
    GraphGuard graph = open_graph(input, eps_json);
    StringGuard report, error;
    const scfr_status status = scfr_mintime(
        graph.graph, assert_divisor ? 1 : 0, &report.value, &error.value);
    if (report.value) emit(report.value, output);
    if (status != SCFR_OK) return fail(status, error);
    return 0;
  }

  if (scan->parsed()) {
    std::ostringstream spec;
    spec << "{\"max_order\":" << max_order << ",\"require_rl\":"
         << (require_rl ? "true" : "false") << ",\"s_min\":" << s_min
         << ",\"s_max\":" << s_max << ",\"workers\":" << workers;
    if (!factors_flag.empty()) {
      spec << ",\"factor_shapes\":[";
      std::stringstream shapes(factors_flag);
      std::string shape;
      bool first_shape = true;
      while (std::getline(shapes, shape, ';')) {
        if (!first_shape) spec << ',';
        first_shape = false;
        spec << '[';
        std::stringstream parts(shape);
        std::string part;
        bool first_part = true;
        while (std::getline(parts, part, ',')) {
          if (!first_part) spec << ',';
          first_part = false;
          spec << part;
        }
        spec << ']';
      }
      spec << ']';
    }
    spec << '}';
    StringGuard error;
    const scfr_status status =
        scfr_scan(spec.str().c_str(), print_sink, nullptr, &error.value);
    if (status != SCFR_OK) return fail(status, error);
    return 0;
  }

  if (convert->parsed()) {
    StringGuard report, error;
    const std::string scenario = read_file(input);
    const scfr_status status =
        scfr_convert_cayley(scenario.c_str(), &report.value, &error.value);
    if (status != SCFR_OK) return fail(status, error);
    emit(report.value, output);
    return 0;
  }

  if (verify->parsed()) {
    double alpha[2], beta[2];
    if (!parse_complex_flag(alpha_flag, alpha) ||
        !parse_complex_flag(beta_flag, beta)) {
      std::cerr << "error: --alpha/--beta must be \"re,im\"\n";
      return 2;
    }
    GraphGuard graph = open_graph(input, eps_json);
    StringGuard report, error;
    const scfr_status status =
        scfr_verify(graph.graph, verify_pair.c_str(), verify_time.c_str(),
                    alpha[0], alpha[1], beta[0], beta[1], &report.value,
                    &error.value);
    if (status != SCFR_OK && status != SCFR_NO_HITS)
      return fail(status, error);
    emit(report.value, output);
    return exit_code_of(status);
  }

  return 2;
}
