#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "errors.hpp"
#include "helpers.hpp"

using namespace scfr;
using nlohmann::json;
using doctest::Approx;

namespace {
const EpsilonProfile kEps;
constexpr double kPi = std::numbers::pi;

Scenario load(const std::string& text) {
  return load_scenario_text(text, kEps);
}

#ifdef SCFR_CLI_PATH
struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string(SCFR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  while (size_t got = fread(buffer, 1, sizeof(buffer), pipe))
    output.append(buffer, got);
  const int status = pclose(pipe);
  return CliResult{WEXITSTATUS(status), output};
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}
#endif

}  // namespace

TEST_CASE("scenario loading") {
  SUBCASE("direct form") {
    const Scenario s = load(
        R"({"group":[6],"R":[[3]],"L":[[3]],"S":[[0],[1],[2],[3],[4],[5]]})");
    CHECK(s.graph.group_order() == 6);
    CHECK(s.graph.r_equals_l());
    CHECK_FALSE(s.conversion.has_value());
  }
  SUBCASE("cayley form is converted on load") {
    const Scenario s = load(
        R"({"cayley":{"kind":"dihedral","base":[3],"T1":[],"T2":[[0],[1],[2]]}})");
    CHECK(s.graph.group_order() == 3);
    CHECK(s.graph.sets().spokes.size() == 3);
    REQUIRE(s.conversion.has_value());
  }
  SUBCASE("validation errors name the offending field") {
    CHECK_THROWS_WITH_AS(load(R"({"R":[[1]]})"), doctest::Contains("exactly one"),
                         validation_error);
    CHECK_THROWS_WITH_AS(
        load(R"({"group":[4],"R":[[1]],"L":[],"S":[]})"),
        doctest::Contains("R is not inverse-closed"), validation_error);
    CHECK_THROWS_WITH_AS(load(R"({"group":[4],"R":[1]})"),
                         doctest::Contains("R entry"), validation_error);
    CHECK_THROWS_AS(load("not json"), validation_error);
    CHECK_THROWS_WITH_AS(
        load(R"({"group":[4],"epsilon":{"bogus":1}})"),
        doctest::Contains("unknown epsilon field"), validation_error);
  }
  SUBCASE("epsilon overrides apply") {
    const Scenario s =
        load(R"({"group":[4],"S":[[1]],"epsilon":{"zero":0.5,"oracle_cap":16}})");
    CHECK(s.eps.zero == Approx(0.5));
    CHECK(s.eps.oracle_cap == 16);
  }
}

TEST_CASE("vertex literal parsing") {
  const AbelianGroup z6({6});
  const Vertex v = parse_vertex("(3;0)", z6);
  CHECK(v.element == Residues{3});
  CHECK(v.orbit == 0);
  const Vertex comma = parse_vertex("(0,1)", z6);
  CHECK(comma.element == Residues{0});
  CHECK(comma.orbit == 1);

  const AbelianGroup klein({2, 2});
  const Vertex multi = parse_vertex("(1,0;1)", klein);
  CHECK(multi.element == Residues{1, 0});
  CHECK(multi.orbit == 1);
  const Vertex multi_comma = parse_vertex("(1,0,1)", klein);
  CHECK(multi_comma.element == Residues{1, 0});
  CHECK(multi_comma.orbit == 1);
  CHECK_THROWS_WITH_AS(parse_vertex("(1,0)", klein),
                       doctest::Contains("ambiguous"), validation_error);
  CHECK_THROWS_WITH_AS(parse_vertex("(3;2)", z6), doctest::Contains("orbit"),
                       validation_error);

  const auto [u, w] = parse_vertex_pair("(0;0) (3;1)", z6);
  CHECK(u.orbit == 0);
  CHECK(w.element == Residues{3});
  CHECK(w.orbit == 1);
}

TEST_CASE("deterministic serialization") {
  const Scenario s = load(R"({"group":[4],"R":[],"L":[],"S":[[1]]})");
  const SpectralData sd(s.graph, s.eps);
  const std::string once = jsonio::dump(spectrum_report(s.graph, sd, s.eps));
  const std::string twice = jsonio::dump(spectrum_report(s.graph, sd, s.eps));
  CHECK(once == twice);
  const DetectResult d1 = run_detect(s.graph, sd, "both", false, s.eps);
  const DetectResult d2 = run_detect(s.graph, sd, "both", false, s.eps);
  CHECK(jsonio::dump(d1.report) == jsonio::dump(d2.report));
  // floats carry 17 significant digits
  CHECK(jsonio::format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(jsonio::format_double(-0.0) == "0");
  CHECK(jsonio::format_complex_cell({0.5, -0.25}) == "0.5-0.25j");
  CHECK(jsonio::format_complex_cell({1.0, 0.0}) == "1+0j");
}

TEST_CASE("detect report carries exact times and amplitude arrays") {
  const Scenario s = load(
      R"({"group":[6],"R":[[3]],"L":[[3]],"S":[[0],[1],[2],[3],[4],[5]]})");
  const SpectralData sd(s.graph, s.eps);
  const DetectResult result = run_detect(s.graph, sd, "both", false, s.eps);
  CHECK(result.hits == 1);
  bool found = false;
  for (const auto& cert : result.report["certificates"]) {
    if (cert["kind"] == "proper-fr") {
      found = true;
      CHECK(cert["T"] == "1/6");
      CHECK(cert["alpha"][0].get<double>() == Approx(0.5));
      CHECK(cert["beta"][1].get<double>() == Approx(std::sin(kPi / 3)));
      CHECK(cert["residual"].get<double>() <= 1e-8);
    }
  }
  CHECK(found);
}

TEST_CASE("spectrum report schema") {
  const Scenario s = load(R"({"group":[2],"R":[],"L":[],"S":[[0],[1]]})");
  const SpectralData sd(s.graph, s.eps);
  const json report = spectrum_report(s.graph, sd, s.eps);
  CHECK(report["integral"] == true);
  REQUIRE(report["entries"].size() == 2);
  const json& entry = report["entries"][0];
  for (const char* key : {"z", "lambda_plus", "lambda_minus", "c", "d", "e",
                          "in_X"})
    CHECK(entry.contains(key));
  CHECK(report["x_set"].size() == 1);
}

TEST_CASE("fidelity series") {
  const Scenario s = load(R"({"group":[2],"R":[],"L":[],"S":[[0]]})");
  const SpectralData sd(s.graph, s.eps);
  SUBCASE("matching edge traces sin^2") {
    const auto grid = parse_time_grid("0:3.0:31");
    const std::string csv = fidelity_csv(s.graph, sd, Vertex{{0}, 0},
                                         Vertex{{0}, 1}, grid, s.eps);
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "t,fidelity");
    double prev_t = -1;
    while (std::getline(ss, line)) {
      const auto comma = line.find(',');
      const double t = std::stod(line.substr(0, comma));
      const double f = std::stod(line.substr(comma + 1));
      CHECK(t > prev_t);
      prev_t = t;
      CHECK(f == Approx(std::sin(t) * std::sin(t)).epsilon(0).scale(1e-10));
      CHECK(f >= -1e-10);
      CHECK(f <= 1.0 + 1e-10);
    }
  }
  SUBCASE("departure fidelity is one at time zero") {
    const auto grid = parse_time_grid("0,1/6");
    const std::string csv = fidelity_csv(s.graph, sd, Vertex{{0}, 0},
                                         Vertex{{0}, 0}, grid, s.eps);
    CHECK(csv.find("0,1\n") != std::string::npos);
  }
  SUBCASE("half-twist revival fidelity is |beta|^2 = 3/4") {
    const auto g = testing::half_twist_graph(6);
    const SpectralData hsd(g, kEps);
    const std::complex<double> entry = transition_entry(
        g, hsd, Vertex{{0}, 0}, Vertex{{3}, 0}, TimeSpec::from_rational(1, 6));
    CHECK(std::norm(entry) == Approx(0.75).epsilon(1e-10));
  }
  SUBCASE("grid validation") {
    CHECK_THROWS_AS(parse_time_grid("1.0"), validation_error);
    CHECK_THROWS_AS(parse_time_grid("2,1"), validation_error);
    CHECK_THROWS_AS(parse_time_grid("0:1:1"), validation_error);
  }
}

TEST_CASE("transition matrix CSV uses re+imj cells") {
  const Scenario s = load(R"({"group":[2],"R":[],"L":[],"S":[[0]]})");
  const SpectralData sd(s.graph, s.eps);
  const std::string csv =
      transition_csv(s.graph, sd, TimeSpec::from_radians(0));
  std::stringstream ss(csv);
  std::string first;
  std::getline(ss, first);
  CHECK(first == "1+0j,0+0j,0+0j,0+0j");
}

TEST_CASE("verify normalizes slightly off-unit amplitude input") {
  const Scenario s = load(R"({"group":[2],"R":[],"L":[],"S":[[0]]})");
  const SpectralData sd(s.graph, s.eps);
  // beta truncated to 7 digits: norm defect ~8.5e-9, still accepted
  const VerifyResult r =
      run_verify(s.graph, sd, Vertex{{0}, 0}, Vertex{{0}, 1},
                 TimeSpec::parse("1/6"), RevivalPair{{0.5, 0}, {0, 0.8660254}},
                 s.eps);
  CHECK(r.certified);
  const VerifyResult wrong =
      run_verify(s.graph, sd, Vertex{{0}, 0}, Vertex{{1}, 1},
                 TimeSpec::parse("1/6"), RevivalPair{{0.5, 0}, {0, 0.8660254}},
                 s.eps);
  CHECK_FALSE(wrong.certified);
  CHECK(wrong.report["refuted"] == true);
  CHECK_THROWS_AS(run_verify(s.graph, sd, Vertex{{0}, 0}, Vertex{{0}, 0},
                             TimeSpec::parse("1/6"),
                             RevivalPair{{1, 0}, {0, 0}}, s.eps),
                  validation_error);
}

TEST_CASE("scan sweeps the smallest group exhaustively") {
  ScanSpec spec;
  spec.max_order = 2;
  std::vector<json> records;
  scan(spec, kEps, [&](const json& record) {
    records.push_back(record);
    return true;
  });
  // R, L in {empty, {1}} and S over all four subsets
  CHECK(records.size() == 16);

  bool matching_family = false, full_spoke_pst = false, spoked_cycle_pst = false;
  int empty_s_records = 0;
  for (const json& record : records) {
    if (record["S"].empty()) {
      ++empty_s_records;
      CHECK(record["x_set_size"] == 2);
      for (const auto& cert : record["certificates"])
        CHECK(cert["orbit_kind"] != "cross-orbit");
    }
    const bool r_empty = record["R"].empty();
    const bool l_empty = record["L"].empty();
    for (const auto& cert : record["certificates"]) {
      if (r_empty && l_empty && record["S"] == json::parse("[[0]]") &&
          cert["orbit_kind"] == "cross-orbit" && cert["every_time"] == true)
        matching_family = true;
      if (r_empty && l_empty && record["S"].size() == 2 &&
          cert["kind"] == "pst" && cert["T"] == "1/4")
        full_spoke_pst = true;
      if (!r_empty && !l_empty && record["S"] == json::parse("[[0]]") &&
          cert["kind"] == "pst" && cert["orbit_kind"] == "cross-orbit")
        spoked_cycle_pst = true;
    }
  }
  CHECK(empty_s_records == 4);
  CHECK(matching_family);
  CHECK(full_spoke_pst);
  CHECK(spoked_cycle_pst);
}

TEST_CASE("scan is deterministic across worker counts") {
  ScanSpec spec;
  spec.max_order = 3;
  auto collect = [&](int workers) {
    spec.workers = workers;
    std::string all;
    scan(spec, kEps, [&](const json& record) {
      all += jsonio::dump(record);
      all += '\n';
      return true;
    });
    return all;
  };
  CHECK(collect(1) == collect(3));
}

TEST_CASE("scan rejects unbounded enumerations") {
  ScanSpec spec;
  spec.max_order = 30;
  CHECK_THROWS_WITH_AS(scan(spec, kEps, [](const json&) { return true; }),
                       doctest::Contains("1e7"), validation_error);
}

TEST_CASE("scan spec parsing") {
  const ScanSpec spec = ScanSpec::from_json(
      json::parse(R"({"max_order":4,"require_rl":true,"workers":2,
                      "factor_shapes":[[2,2]],"s_min":1,"s_max":2})"));
  CHECK(spec.max_order == 4);
  CHECK(spec.require_rl);
  CHECK(spec.workers == 2);
  CHECK(spec.factor_shapes.size() == 1);
  CHECK_THROWS_AS(ScanSpec::from_json(json::parse(R"({"workers":0})")),
                  validation_error);
}

#ifdef SCFR_CLI_PATH

TEST_CASE("command-line round trips") {
  const std::string half_twist = write_temp(
      "scfr_test_ht6.json",
      R"({"group":[6],"R":[[3]],"L":[[3]],"S":[[0],[1],[2],[3],[4],[5]]})");
  const std::string full_z3 = write_temp(
      "scfr_test_z3.json", R"({"group":[3],"R":[],"L":[],"S":[[0],[1],[2]]})");
  const std::string matching =
      write_temp("scfr_test_k2.json", R"({"group":[2],"R":[],"L":[],"S":[[0]]})");

  SUBCASE("detect exits 0 with hits and reports the exact time") {
    const CliResult r = run_cli("detect --input " + half_twist);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"1/6\"") != std::string::npos);
  }
  SUBCASE("detect exits 3 without hits") {
    const CliResult r = run_cli("detect --input " + full_z3);
    CHECK(r.exit_code == 3);
  }
  SUBCASE("verify certifies the matching revival with truncated amplitudes") {
    const CliResult r = run_cli(
        "verify --input " + matching +
        " --pair \"(0,0) (0,1)\" --time 1/6 --alpha 0.5,0 --beta 0,0.8660254");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("proper-fr") != std::string::npos);
  }
  SUBCASE("verify exits 3 on a refuted claim") {
    const CliResult r = run_cli("verify --input " + matching +
                                " --pair \"(0,0) (1,1)\" --time 1/6 "
                                "--alpha 0.5,0 --beta 0,0.8660254");
    CHECK(r.exit_code == 3);
  }
  SUBCASE("malformed scenario exits 2") {
    const std::string bad =
        write_temp("scfr_test_bad.json", R"({"group":[4],"R":[[1]]})");
    const CliResult r = run_cli("detect --input " + bad);
    CHECK(r.exit_code == 2);
  }
  SUBCASE("fidelity emits the sin^2 series") {
    const CliResult r = run_cli("fidelity --input " + matching +
                                " --pair \"(0;0) (0;1)\" --grid 0:1.5:4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("t,fidelity", 0) == 0);
  }
  SUBCASE("mintime with the divisor assertion") {
    const CliResult r =
        run_cli("mintime --input " + half_twist + " --assert-divisor");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"divisor_violations\":0") != std::string::npos);
  }
  SUBCASE("scan streams one record per line") {
    const CliResult r = run_cli("scan --max-order 2 --require-rl");
    CHECK(r.exit_code == 0);
    CHECK(std::count(r.output.begin(), r.output.end(), '\n') == 8);
  }
  SUBCASE("convert-cayley verifies the relabeled adjacency") {
    const std::string dic = write_temp(
        "scfr_test_dic.json",
        R"({"cayley":{"kind":"dicyclic","base":[4],"y":[2],"T1":[[2]],"T2":[[0],[2]]}})");
    const CliResult r = run_cli("convert-cayley --input " + dic);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"adjacency_match\":true") != std::string::npos);
  }
}

#endif  // SCFR_CLI_PATH
