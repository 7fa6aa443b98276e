#include <cmath>
#include <numbers>

#include "doctest.h"
#include "errors.hpp"
#include "helpers.hpp"

using namespace scfr;
using testing::make_graph;

namespace {
const EpsilonProfile kEps;

std::vector<int64_t> component(const MinTimeReport& report, const char* name) {
  for (const auto& [key, list] : report.components)
    if (key == name) return list;
  FAIL("missing component ", name);
  return {};
}
}  // namespace

TEST_CASE("gcd folding conventions") {
  CHECK(gcd_fold({}) == 0);
  CHECK(gcd_fold({0}) == 0);
  CHECK(gcd_fold({0, 4}) == 4);
  CHECK(gcd_fold({6, -4}) == 2);
  CHECK(gcd_fold({0, 0, 0}) == 0);
}

TEST_CASE("integrality verdicts") {
  SUBCASE("half-twist family is integral with integral constituents") {
    const auto g = testing::half_twist_graph(6);
    const SpectralData sd(g, kEps);
    const IntegralityReport r = integrality_check(g, sd, kEps);
    CHECK(r.integral);
    CHECK(r.chi_r_integral);
    CHECK(r.chi_s_abs_integral);
    CHECK(r.lam_plus[0] == 7);
    CHECK(r.lam_minus[0] == -5);
  }
  SUBCASE("pentagon intra-orbit set is not integral") {
    const auto g = make_graph({5}, {{1}, {4}}, {{1}, {4}}, {{0}});
    const SpectralData sd(g, kEps);
    const IntegralityReport r = integrality_check(g, sd, kEps);
    CHECK_FALSE(r.integral);
    CHECK(r.worst_defect > 0.3);  // 2cos(2pi/5) ~ 0.618
    CHECK(r.offender_index >= 0);
  }
  SUBCASE("matching graph is integral") {
    const auto g = make_graph({2}, {}, {}, {{0}});
    CHECK(integrality_check(g, SpectralData(g, kEps), kEps).integral);
  }
}

TEST_CASE("same-orbit minimum-time invariant on the half-twist family") {
  const auto g = testing::half_twist_graph(6);
  const SpectralData sd(g, kEps);
  const MinTimeReport m = same_orbit_min_time(g, sd, {3}, kEps);
  CHECK(m.value == 6);
  CHECK(m.divides_double_order);
  CHECK_FALSE(m.no_fr_certified);
  CHECK(component(m, "m0_plus") == std::vector<int64_t>{0, 6, 6});
  CHECK(component(m, "m0_minus") == std::vector<int64_t>{0, -6, -6});
  CHECK(component(m, "m1_plus") == std::vector<int64_t>{0, 0, 0});
  CHECK(component(m, "m1_minus") == std::vector<int64_t>{0, 0, 0});

  const auto g4 = testing::half_twist_graph(4);
  const SpectralData sd4(g4, kEps);
  CHECK(same_orbit_min_time(g4, sd4, {2}, kEps).value == 4);
}

TEST_CASE("same-orbit invariant degenerates to zero on the 4-cycle") {
  const auto g = make_graph({2}, {}, {}, {{0}, {1}});
  const SpectralData sd(g, kEps);
  const MinTimeReport m = same_orbit_min_time(g, sd, {1}, kEps);
  CHECK(m.value == 0);
  CHECK_FALSE(m.divides_double_order);
  for (const auto& [name, list] : m.components)
    for (int64_t v : list) CHECK(v == 0);
}

TEST_CASE("same-orbit invariant preconditions") {
  const auto g = testing::half_twist_graph(6);
  const SpectralData sd(g, kEps);
  CHECK_THROWS_AS(same_orbit_min_time(g, sd, {2}, kEps), precondition_error);
  const auto asym = make_graph({2}, {{1}}, {}, {{0}});
  const SpectralData asd(asym, kEps);
  CHECK_THROWS_AS(same_orbit_min_time(asym, asd, {1}, kEps),
                  unsupported_error);
  const auto irr = make_graph({5}, {{1}, {4}}, {{1}, {4}}, {{0}});
  const SpectralData isd(irr, kEps);
  CHECK_THROWS_WITH_AS(same_orbit_min_time(irr, isd, {0}, kEps),
                       doctest::Contains("integral"), unsupported_error);
}

TEST_CASE("cross-orbit minimum-time invariant") {
  SUBCASE("matching graph: vacuous quantization") {
    const auto g = make_graph({2}, {}, {}, {{0}});
    const SpectralData sd(g, kEps);
    const MinTimeReport n = cross_orbit_min_time(g, sd, {0}, kEps);
    CHECK(n.defined);
    CHECK(n.value == 0);
    CHECK(component(n, "n0_plus") == std::vector<int64_t>{0, 0});
    CHECK(component(n, "n1_plus").empty());
  }
  SUBCASE("spoked 4-cycle quantizes to quarter turns") {
    const auto g = make_graph({2}, {{1}}, {{1}}, {{0}});
    const SpectralData sd(g, kEps);
    const MinTimeReport n = cross_orbit_min_time(g, sd, {1}, kEps);
    CHECK(n.defined);
    // |R|+|S| - lambda_minus over the minus class: 2 - (-2) = 4
    CHECK(component(n, "n1_plus") == std::vector<int64_t>{4});
    CHECK(n.value == 4);
    CHECK(n.divides_double_order);
  }
  SUBCASE("nonempty X makes the invariant undefined") {
    const auto g = make_graph({3}, {}, {}, {{0}, {1}, {2}});
    const SpectralData sd(g, kEps);
    const MinTimeReport n = cross_orbit_min_time(g, sd, {0}, kEps);
    CHECK_FALSE(n.defined);
    CHECK(n.reason.find("impossible") != std::string::npos);
  }
}

TEST_CASE("invariants are independent of the reference-element choice") {
  const auto g = testing::half_twist_graph(8);
  const SpectralData sd(g, kEps);
  const OrbitPartition part = orbit_partition(g.group(), {4});
  int64_t first = -1;
  for (int64_t z1 : part.minus_class) {
    const MinTimeReport m = same_orbit_min_time(g, sd, {4}, kEps, z1);
    if (first < 0) first = m.value;
    CHECK(m.value == first);
  }
  const auto c4 = make_graph({2}, {{1}}, {{1}}, {{0}});
  const SpectralData csd(c4, kEps);
  const auto spokes = spoke_partition(c4, csd, {1}, kEps, false);
  REQUIRE(spokes.has_value());
  int64_t nfirst = -1;
  for (int64_t z1 : spokes->minus_class) {
    const MinTimeReport n = cross_orbit_min_time(c4, csd, {1}, kEps, z1);
    if (nfirst < 0) nfirst = n.value;
    CHECK(n.value == nfirst);
  }
  CHECK_THROWS_AS(same_orbit_min_time(g, sd, {4}, kEps, 0),
                  precondition_error);  // identity is not in the minus class
}

TEST_CASE("impossibility certificates") {
  SUBCASE("large invariant yields no certificate") {
    const auto g = testing::half_twist_graph(6);
    const SpectralData sd(g, kEps);
    std::vector<std::string> notes;
    const auto entries = no_fr_certificates(g, sd, kEps, &notes);
    for (const auto& e : entries) CHECK_FALSE(e.same_orbit);
    CHECK(notes.empty());
  }
  SUBCASE("groups of odd order carry the no-pairing note") {
    const auto g = make_graph({3}, {}, {}, {{0}, {1}, {2}});
    const SpectralData sd(g, kEps);
    std::vector<std::string> notes;
    const auto entries = no_fr_certificates(g, sd, kEps, &notes);
    CHECK(entries.empty());
    REQUIRE(notes.size() == 1);
    CHECK(notes[0].find("order 2") != std::string::npos);
  }
  SUBCASE("asymmetric intra-orbit sets are flagged") {
    const auto g = make_graph({2}, {{1}}, {}, {{0}});
    const SpectralData sd(g, kEps);
    std::vector<std::string> notes;
    CHECK(no_fr_certificates(g, sd, kEps, &notes).empty());
    REQUIRE(notes.size() == 1);
    CHECK(notes[0].find("R == L") != std::string::npos);
  }
}

TEST_CASE("root-of-unity audit") {
  const auto g = testing::half_twist_graph(6);
  // exp(2 pi i / 6) is a 12th root of unity
  CHECK(root_of_unity_audit(g, TimeSpec::from_rational(1, 6), 6, kEps) ==
        RootUnityAudit::pass);
  const TimeSpec corrupted =
      TimeSpec::from_radians(std::numbers::pi / 3 + 0.01);
  CHECK(root_of_unity_audit(g, corrupted, 6, kEps) == RootUnityAudit::fail);
  CHECK(root_of_unity_audit(g, TimeSpec::from_radians(0.777), 0, kEps) ==
        RootUnityAudit::informational);
}
