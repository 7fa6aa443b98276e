#include <algorithm>
#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "scfr/scfr.h"

using nlohmann::json;

namespace {

constexpr const char* kHalfTwist =
    R"({"group":[6],"R":[[3]],"L":[[3]],"S":[[0],[1],[2],[3],[4],[5]]})";
constexpr const char* kMatching = R"({"group":[2],"R":[],"L":[],"S":[[0]]})";

struct Graph {
  scfr_graph_t* handle = nullptr;
  ~Graph() { scfr_graph_destroy(handle); }
};

struct Str {
  char* value = nullptr;
  ~Str() { scfr_string_free(value); }
};

Graph open(const char* scenario) {
  Graph g;
  Str error;
  REQUIRE(scfr_graph_create(scenario, nullptr, &g.handle, &error.value) ==
          SCFR_OK);
  return g;
}

}  // namespace

TEST_CASE("graph lifecycle and introspection") {
  Graph g = open(kHalfTwist);
  CHECK(scfr_graph_group_order(g.handle) == 6);
  CHECK(scfr_graph_vertex_count(g.handle) == 12);
  CHECK(scfr_graph_r_equals_l(g.handle) == 1);
}

TEST_CASE("invalid scenarios come back as validation errors with a message") {
  scfr_graph_t* handle = nullptr;
  Str error;
  CHECK(scfr_graph_create(R"({"group":[4],"R":[[1]]})", nullptr, &handle,
                          &error.value) == SCFR_ERROR_VALIDATION);
  REQUIRE(error.value != nullptr);
  CHECK(std::string(error.value).find("inverse-closed") != std::string::npos);
  CHECK(handle == nullptr);

  Str error2;
  CHECK(scfr_graph_create("{", nullptr, &handle, &error2.value) ==
        SCFR_ERROR_VALIDATION);
}

TEST_CASE("epsilon overrides travel through the C surface") {
  // an absurd zero threshold reclassifies every spoke sum as vanishing
  scfr_graph_t* handle = nullptr;
  Str error;
  REQUIRE(scfr_graph_create(kMatching, R"({"zero":3.5})", &handle,
                            &error.value) == SCFR_OK);
  Graph g;
  g.handle = handle;
  Str report, serror;
  REQUIRE(scfr_spectrum(g.handle, &report.value, &serror.value) == SCFR_OK);
  CHECK(json::parse(report.value)["x_set"].size() == 2);
}

TEST_CASE("spectrum report parses as JSON") {
  Graph g = open(kHalfTwist);
  Str report, error;
  REQUIRE(scfr_spectrum(g.handle, &report.value, &error.value) == SCFR_OK);
  const json doc = json::parse(report.value);
  CHECK(doc["integral"] == true);
  CHECK(doc["entries"].size() == 6);
}

TEST_CASE("detect through the C surface") {
  Graph g = open(kHalfTwist);
  Str report, error;
  REQUIRE(scfr_detect(g.handle, "both", 0, &report.value, &error.value) ==
          SCFR_OK);
  const json doc = json::parse(report.value);
  CHECK(doc["hits"] == 1);
  bool minimal = false;
  for (const auto& cert : doc["certificates"])
    if (cert["T"] == "1/6" && cert["kind"] == "proper-fr") minimal = true;
  CHECK(minimal);

  Graph empty = open(R"({"group":[3],"R":[],"L":[],"S":[[0],[1],[2]]})");
  Str report2, error2;
  CHECK(scfr_detect(empty.handle, "both", 0, &report2.value, &error2.value) ==
        SCFR_NO_HITS);
  CHECK(json::parse(report2.value)["hits"] == 0);
}

TEST_CASE("transition entry and verify agree on the matching edge") {
  Graph g = open(kMatching);
  double entry[2] = {0, 0};
  Str error;
  REQUIRE(scfr_transition_entry(g.handle, "(0;0)", "(0;1)", "1/4", entry,
                                &error.value) == SCFR_OK);
  CHECK(std::abs(entry[0]) < 1e-12);
  CHECK(std::abs(entry[1] - 1.0) < 1e-12);

  Str report, verror;
  CHECK(scfr_verify(g.handle, "(0;0) (0;1)", "1/4", 0.0, 0.0, 0.0, 1.0,
                    &report.value, &verror.value) == SCFR_OK);
  CHECK(json::parse(report.value)["kind"] == "pst");

  Str report2, verror2;
  CHECK(scfr_verify(g.handle, "(0;0) (1;1)", "1/4", 0.0, 0.0, 0.0, 1.0,
                    &report2.value, &verror2.value) == SCFR_NO_HITS);
  CHECK(json::parse(report2.value)["refuted"] == true);
}

TEST_CASE("transition CSV has one row per vertex") {
  Graph g = open(kMatching);
  Str csv, error;
  REQUIRE(scfr_transition_csv(g.handle, "0", &csv.value, &error.value) ==
          SCFR_OK);
  const std::string text(csv.value);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("fidelity CSV through the C surface") {
  Graph g = open(kMatching);
  Str csv, error;
  REQUIRE(scfr_fidelity_csv(g.handle, "(0;0) (0;1)", "0:1.5:4", &csv.value,
                            &error.value) == SCFR_OK);
  CHECK(std::string(csv.value).rfind("t,fidelity", 0) == 0);
}

TEST_CASE("mintime report and the divisor assertion") {
  Graph g = open(kHalfTwist);
  Str report, error;
  REQUIRE(scfr_mintime(g.handle, 1, &report.value, &error.value) == SCFR_OK);
  const json doc = json::parse(report.value);
  CHECK(doc["integrality"]["integral"] == true);
  bool found = false;
  for (const auto& entry : doc["same_orbit"])
    if (entry["a"] == json::parse("[3]") && entry["value"] == 6) found = true;
  CHECK(found);
}

TEST_CASE("cayley conversion through the C surface") {
  Str report, error;
  REQUIRE(scfr_convert_cayley(
              R"({"cayley":{"kind":"dihedral","base":[3],"T1":[],"T2":[[0],[1],[2]]}})",
              &report.value, &error.value) == SCFR_OK);
  CHECK(json::parse(report.value)["adjacency_match"] == true);

  Str report2, error2;
  CHECK(scfr_convert_cayley(kMatching, &report2.value, &error2.value) ==
        SCFR_ERROR_VALIDATION);
}

namespace {

int counting_sink(const char* record, void* user) {
  auto* seen = static_cast<std::vector<std::string>*>(user);
  seen->push_back(record);
  return seen->size() < 3 ? 1 : 0;  // stop after three records
}

}  // namespace

TEST_CASE("scan streams records and honors early stop") {
  std::vector<std::string> seen;
  Str error;
  REQUIRE(scfr_scan(R"({"max_order":2})", counting_sink, &seen,
                    &error.value) == SCFR_OK);
  CHECK(seen.size() == 3);
  CHECK(json::parse(seen[0]).contains("certificates"));

  Str error2;
  CHECK(scfr_scan(R"({"workers":0})", counting_sink, &seen, &error2.value) ==
        SCFR_ERROR_VALIDATION);
}
