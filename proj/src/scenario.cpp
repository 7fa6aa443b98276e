#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <bit>
#include <cctype>
#include <future>
#include <sstream>

#include "errors.hpp"

namespace scfr {
namespace {

using nlohmann::json;

std::vector<Residues> elements_from_json(const json& arr, const char* field) {
  if (!arr.is_array()) {
    throw validation_error(std::string(field) +
                           " must be an array of residue arrays");
  }
  std::vector<Residues> out;
  for (const json& item : arr) {
    if (!item.is_array()) {
      throw validation_error(std::string(field) + " entry " + item.dump() +
                             " is not a residue array");
    }
    Residues g;
    for (const json& r : item) {
      if (!r.is_number_integer()) {
        throw validation_error(std::string(field) + " entry " + item.dump() +
                               " contains a non-integer residue");
      }
      g.push_back(r.get<int64_t>());
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<int64_t> factors_from_json(const json& arr, const char* field) {
  if (!arr.is_array() || arr.empty()) {
    throw validation_error(std::string(field) +
                           " must be a nonempty array of cyclic orders");
  }
  std::vector<int64_t> factors;
  for (const json& f : arr) {
    if (!f.is_number_integer()) {
      throw validation_error(std::string(field) +
                             " contains a non-integer cyclic order");
    }
    factors.push_back(f.get<int64_t>());
  }
  return factors;
}

json elements_json(const std::vector<Residues>& elems) {
  json arr = json::array();
  for (const Residues& g : elems) arr.push_back(g);
  return arr;
}

}  // namespace

EpsilonProfile epsilon_from_json(const json& overrides, EpsilonProfile base) {
  if (overrides.is_null()) return base;
  if (!overrides.is_object())
    throw validation_error("epsilon profile must be an object");
  for (const auto& [key, value] : overrides.items()) {
    if (key == "oracle_cap") {
      base.oracle_cap = value.get<int64_t>();
      continue;
    }
    if (!value.is_number())
      throw validation_error("epsilon field " + key + " must be a number");
    const double v = value.get<double>();
    if (key == "unit")
      base.unit = v;
    else if (key == "zero")
      base.zero = v;
    else if (key == "structural")
      base.structural = v;
    else if (key == "eig")
      base.eig = v;
    else if (key == "phase")
      base.phase = v;
    else if (key == "residual")
      base.residual = v;
    else if (key == "integral")
      base.integral = v;
    else
      throw validation_error("unknown epsilon field " + key);
  }
  return base;
}

Scenario load_scenario(const json& doc, const EpsilonProfile& base_eps) {
  if (!doc.is_object())
    throw validation_error("scenario must be a JSON object");
  const EpsilonProfile eps =
      epsilon_from_json(doc.value("epsilon", json()), base_eps);

  const bool direct = doc.contains("group");
  const bool cayley = doc.contains("cayley");
  if (direct == cayley) {
    throw validation_error(
        "scenario needs exactly one of \"group\" (direct form) or \"cayley\"");
  }

  if (direct) {
    AbelianGroup group(factors_from_json(doc.at("group"), "group"));
    ConnectionSets sets;
    sets.right = elements_from_json(doc.value("R", json::array()), "R");
    sets.left = elements_from_json(doc.value("L", json::array()), "L");
    sets.spokes = elements_from_json(doc.value("S", json::array()), "S");
    return Scenario{SemiCayleyGraph::build(std::move(group), std::move(sets)),
                    std::nullopt, eps};
  }

  const json& c = doc.at("cayley");
  if (!c.is_object())
    throw validation_error("cayley form must be an object");
  const std::string kind = c.value("kind", "");
  CayleyExtension ext{CayleyExtension::Kind::dihedral,
                      AbelianGroup(factors_from_json(c.at("base"), "cayley.base")),
                      {},
                      elements_from_json(c.value("T1", json::array()), "cayley.T1"),
                      elements_from_json(c.value("T2", json::array()), "cayley.T2")};
  if (kind == "dihedral") {
    ext.kind = CayleyExtension::Kind::dihedral;
    ext.twist_square = ext.base.identity();
  } else if (kind == "dicyclic") {
    ext.kind = CayleyExtension::Kind::dicyclic;
    if (!c.contains("y"))
      throw validation_error("dicyclic form needs the order-2 element y");
    Residues y;
    for (const json& r : c.at("y")) y.push_back(r.get<int64_t>());
    ext.twist_square = std::move(y);
  } else {
    throw validation_error(
        "cayley.kind must be \"dihedral\" or \"dicyclic\", got \"" + kind +
        "\"");
  }
  CayleyConversion conversion = from_cayley(ext);
  SemiCayleyGraph graph = conversion.graph;
  return Scenario{std::move(graph), std::move(conversion), eps};
}

Scenario load_scenario_text(const std::string& text,
                            const EpsilonProfile& base_eps) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("scenario is not valid JSON: ") +
                           e.what());
  }
  return load_scenario(doc, base_eps);
}

Vertex parse_vertex(const std::string& text, const AbelianGroup& group) {
  std::string body = text;
  // strip whitespace and the surrounding parentheses
  body.erase(std::remove_if(body.begin(), body.end(),
                            [](unsigned char ch) { return std::isspace(ch); }),
             body.end());
  if (body.size() < 2 || body.front() != '(' || body.back() != ')')
    throw validation_error("vertex literal '" + text +
                           "' must look like \"(g_1,...,g_r;orbit)\"");
  body = body.substr(1, body.size() - 2);

  std::string element_part, orbit_part;
  const auto semi = body.find(';');
  if (semi != std::string::npos) {
    element_part = body.substr(0, semi);
    orbit_part = body.substr(semi + 1);
  } else {
    // comma form: the last entry is the orbit, valid only when the count is
    // rank + 1 so the split is unambiguous
    const size_t commas = std::count(body.begin(), body.end(), ',');
    if (commas != group.rank())
      throw validation_error(
          "vertex literal '" + text +
          "' is ambiguous; use the \"(g_1,...,g_r;orbit)\" form");
    const auto last = body.rfind(',');
    element_part = body.substr(0, last);
    orbit_part = body.substr(last + 1);
  }

  Residues g;
  std::stringstream ss(element_part);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      size_t used = 0;
      g.push_back(std::stoll(token, &used));
      if (used != token.size()) throw validation_error("");
    } catch (const std::exception&) {
      throw validation_error("vertex literal '" + text +
                             "' has a non-integer residue '" + token + "'");
    }
  }
  int orbit = -1;
  if (orbit_part == "0")
    orbit = 0;
  else if (orbit_part == "1")
    orbit = 1;
  else
    throw validation_error("vertex literal '" + text +
                           "' has orbit '" + orbit_part + "'; expected 0 or 1");
  return Vertex{group.canonical(g, "vertex element"), orbit};
}

std::pair<Vertex, Vertex> parse_vertex_pair(const std::string& text,
                                            const AbelianGroup& group) {
  const auto close = text.find(')');
  if (close == std::string::npos)
    throw validation_error("vertex pair '" + text +
                           "' must contain two vertex literals");
  const std::string first = text.substr(0, close + 1);
  std::string second = text.substr(close + 1);
  const auto start = second.find('(');
  if (start == std::string::npos)
    throw validation_error("vertex pair '" + text +
                           "' must contain two vertex literals");
  second = second.substr(start);
  return {parse_vertex(first, group), parse_vertex(second, group)};
}

json vertex_json(const Vertex& v) {
  return json{{"element", v.element}, {"orbit", v.orbit}};
}

json certificate_json(const RevivalCertificate& cert) {
  json j{{"u", vertex_json(cert.u)},
         {"v", vertex_json(cert.v)},
         {"alpha", jsonio::complex_json(cert.pair.alpha)},
         {"beta", jsonio::complex_json(cert.pair.beta)},
         {"kind", to_string(cert.kind)},
         {"orbit_kind", cert.cross_orbit ? "cross-orbit" : "same-orbit"},
         {"orbit", cert.orbit},
         {"pairing", cert.pairing},
         {"quantization", cert.quantization},
         {"every_time", cert.every_time},
         {"residual", std::max(cert.residual, cert.oracle_residual)},
         {"t", cert.time.radians}};
  if (cert.time.exact())
    j["T"] = cert.time.rational->str();
  else
    j["nonexact"] = true;
  if (!cert.cross_orbit) j["both_orbits"] = cert.both_orbits;
  return j;
}

json spectrum_report(const SemiCayleyGraph& graph, const SpectralData& sd,
                     const EpsilonProfile& eps) {
  const AbelianGroup& group = graph.group();
  json entries = json::array();
  for (int64_t zi = 0; zi < sd.n; ++zi) {
    entries.push_back(
        json{{"z", group.element_at(zi)},
             {"lambda_plus", sd.lam_plus[zi]},
             {"lambda_minus", sd.lam_minus[zi]},
             {"c", json::array({sd.c_plus[zi], sd.c_minus[zi]})},
             {"d", json::array({sd.d_plus[zi], sd.d_minus[zi]})},
             {"e", json::array({jsonio::complex_json(sd.e_plus[zi]),
                                jsonio::complex_json(-sd.e_plus[zi])})},
             {"in_X", static_cast<bool>(sd.in_x[zi])}});
  }
  json x_elems = json::array();
  for (int64_t zi : graph.x_set(eps)) x_elems.push_back(group.element_at(zi));
  return json{{"group", group.factors()},
              {"R", elements_json(graph.sets().right)},
              {"L", elements_json(graph.sets().left)},
              {"S", elements_json(graph.sets().spokes)},
              {"integral", sd.integral},
              {"chi_r_integral", sd.chi_r_integral},
              {"chi_s_abs_integral", sd.chi_s_abs_integral},
              {"x_set", x_elems},
              {"entries", entries}};
}

DetectResult run_detect(const SemiCayleyGraph& graph, const SpectralData& sd,
                        const std::string& mode, bool all_times,
                        const EpsilonProfile& eps) {
  SearchOptions options;
  if (mode == "same") {
    options.cross_orbit = false;
  } else if (mode == "cross") {
    options.same_orbit = false;
  } else if (mode != "both") {
    throw validation_error("detect mode must be same, cross or both, got '" +
                           mode + "'");
  }
  const SearchReport found = search(graph, sd, options, eps);
  const std::vector<RevivalCertificate> emitted =
      all_times ? found.certificates : fold_minimal(graph, found.certificates);

  DetectResult result;
  json certs = json::array();
  for (const RevivalCertificate& cert : emitted) {
    certs.push_back(certificate_json(cert));
    if (cert.kind != RevivalKind::periodic) ++result.hits;
  }
  result.report = json{{"certificates", certs},
                       {"diagnostics", found.diagnostics},
                       {"hits", result.hits},
                       {"unsupported", found.unsupported}};
  if (found.unsupported) result.report["reason"] = found.unsupported_reason;
  return result;
}

MintimeResult run_mintime(const SemiCayleyGraph& graph, const SpectralData& sd,
                          const EpsilonProfile& eps) {
  const AbelianGroup& group = graph.group();
  MintimeResult result;
  const IntegralityReport integ = integrality_check(graph, sd, eps);
  json report{{"integrality",
               json{{"integral", integ.integral},
                    {"chi_r_integral", integ.chi_r_integral},
                    {"chi_s_abs_integral", integ.chi_s_abs_integral},
                    {"worst_defect", integ.worst_defect}}}};
  if (!integ.integral) {
    report["integrality"]["offender_lambda"] = integ.offender_lambda;
    report["integrality"]["offender_z"] =
        group.element_at(integ.offender_index);
  }
  std::vector<std::string> notes;
  if (!graph.r_equals_l()) {
    notes.push_back(
        "minimum-time invariants require R == L; tables omitted");
  } else if (!integ.integral) {
    notes.push_back("spectrum is not integral; tables omitted");
  } else {
    auto report_entry = [&](const MinTimeReport& m) {
      json e{{"a", m.pairing}, {"defined", m.defined}};
      if (!m.defined) {
        e["reason"] = m.reason;
        return e;
      }
      json comps;
      for (const auto& [name, list] : m.components) comps[name] = list;
      e["components"] = comps;
      e["value"] = m.value;
      e["divides_2n"] = m.divides_double_order;
      e["no_fr_certified"] = m.no_fr_certified;
      return e;
    };
    json same = json::array();
    json cross = json::array();
    for (int64_t ai = 0; ai < group.order(); ++ai) {
      const Residues a = group.element_at(ai);
      if (group.element_order(a) == 2) {
        const MinTimeReport m = same_orbit_min_time(graph, sd, a, eps);
        same.push_back(report_entry(m));
        if (m.value >= 1 && !m.divides_double_order) ++result.divisor_violations;
      }
      const MinTimeReport n = cross_orbit_min_time(graph, sd, a, eps);
      cross.push_back(report_entry(n));
      if (n.defined && n.value >= 1 && !n.divides_double_order)
        ++result.divisor_violations;
    }
    report["same_orbit"] = same;
    report["cross_orbit"] = cross;
    json no_fr = json::array();
    for (const NoFrEntry& entry : no_fr_certificates(graph, sd, eps, &notes)) {
      no_fr.push_back(json{{"a", entry.pairing},
                           {"kind", entry.same_orbit ? "same-orbit" : "cross-orbit"},
                           {"reason", entry.reason}});
    }
    report["no_fr"] = no_fr;
  }
  report["notes"] = notes;
  report["divisor_violations"] = result.divisor_violations;
  result.report = std::move(report);
  return result;
}

VerifyResult run_verify(const SemiCayleyGraph& graph, const SpectralData& sd,
                        const Vertex& u, const Vertex& v, const TimeSpec& time,
                        const RevivalPair& pair, const EpsilonProfile& eps) {
  if (graph.vertex_index(u) == graph.vertex_index(v))
    throw validation_error("verify needs two distinct vertices");
  // User-supplied amplitudes are often truncated decimals; renormalize small
  // defects instead of bouncing them off the exact-unit precondition.
  RevivalPair normalized = pair;
  const double defect = pair.norm_defect();
  if (defect > 1e-6) {
    throw validation_error(
        "amplitudes must satisfy |alpha|^2 + |beta|^2 = 1 (defect " +
        std::to_string(defect) + ")");
  }
  const double scale =
      std::sqrt(std::norm(pair.alpha) + std::norm(pair.beta));
  normalized.alpha /= scale;
  normalized.beta /= scale;
  const VerifyOutcome outcome =
      verify_row(graph, sd, u, v, time, normalized, eps);
  VerifyResult result;
  if (std::holds_alternative<RevivalCertificate>(outcome)) {
    result.certified = true;
    result.report = certificate_json(std::get<RevivalCertificate>(outcome));
  } else {
    const RowRefutation& r = std::get<RowRefutation>(outcome);
    result.report = json{{"refuted", true},
                         {"witness", vertex_json(r.witness)},
                         {"violation", r.violation},
                         {"detail", r.detail}};
  }
  return result;
}

std::string transition_csv(const SemiCayleyGraph& graph, const SpectralData& sd,
                           const TimeSpec& time) {
  const Eigen::MatrixXcd h = transition_matrix(graph, sd, time);
  std::string out;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (j) out += ',';
      out += jsonio::format_complex_cell(h(i, j));
    }
    out += '\n';
  }
  return out;
}

std::vector<TimeSpec> parse_time_grid(const std::string& text) {
  std::vector<TimeSpec> grid;
  if (text.find(':') != std::string::npos) {
    double start = 0, stop = 0;
    long long count = 0;
    std::stringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
        !std::getline(ss, c))
      throw validation_error("grid '" + text + "' must be start:stop:count");
    try {
      start = std::stod(a);
      stop = std::stod(b);
      count = std::stoll(c);
    } catch (const std::exception&) {
      throw validation_error("grid '" + text + "' must be start:stop:count");
    }
    if (count < 2) throw validation_error("grid needs at least 2 times");
    if (!(stop > start))
      throw validation_error("grid must have stop > start");
    for (long long i = 0; i < count; ++i) {
      grid.push_back(TimeSpec::from_radians(
          start + (stop - start) * static_cast<double>(i) /
                      static_cast<double>(count - 1)));
    }
    return grid;
  }
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) grid.push_back(TimeSpec::parse(token));
  if (grid.size() < 2) throw validation_error("grid needs at least 2 times");
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i].radians > grid[i - 1].radians))
      throw validation_error("grid times must be strictly increasing");
  }
  return grid;
}

std::string fidelity_csv(const SemiCayleyGraph& graph, const SpectralData& sd,
                         const Vertex& u, const Vertex& v,
                         const std::vector<TimeSpec>& grid,
                         const EpsilonProfile& eps) {
  (void)eps;
  std::string out = "t,fidelity\n";
  for (const TimeSpec& t : grid) {
    const std::complex<double> entry = transition_entry(graph, sd, u, v, t);
    out += jsonio::format_double(t.radians);
    out += ',';
    out += jsonio::format_double(std::norm(entry));
    out += '\n';
  }
  return out;
}

json convert_report(const CayleyConversion& conversion) {
  const SemiCayleyGraph& sc = conversion.graph;
  const Eigen::MatrixXd sc_adj = sc.adjacency();
  bool match = true;
  const int64_t m = sc.vertex_count();
  for (int64_t i = 0; i < m && match; ++i) {
    for (int64_t j = 0; j < m; ++j) {
      const int64_t pi = conversion.relabeling[static_cast<size_t>(i)];
      const int64_t pj = conversion.relabeling[static_cast<size_t>(j)];
      if (conversion.cayley_adjacency(i, j) != sc_adj(pi, pj)) {
        match = false;
        break;
      }
    }
  }
  return json{{"semi_cayley",
               json{{"group", sc.group().factors()},
                    {"R", elements_json(sc.sets().right)},
                    {"L", elements_json(sc.sets().left)},
                    {"S", elements_json(sc.sets().spokes)}}},
              {"relabeling", conversion.relabeling},
              {"adjacency_match", match}};
}

ScanSpec ScanSpec::from_json(const json& doc) {
  ScanSpec spec;
  if (doc.is_null()) return spec;
  if (!doc.is_object()) throw validation_error("scan spec must be an object");
  spec.max_order = doc.value("max_order", spec.max_order);
  if (doc.contains("factor_shapes")) {
    for (const json& shape : doc.at("factor_shapes"))
      spec.factor_shapes.push_back(
          factors_from_json(shape, "factor_shapes entry"));
  }
  spec.require_rl = doc.value("require_rl", spec.require_rl);
  spec.s_min = doc.value("s_min", spec.s_min);
  spec.s_max = doc.value("s_max", spec.s_max);
  spec.workers = doc.value("workers", spec.workers);
  if (spec.workers < 1)
    throw validation_error("scan needs at least one worker");
  return spec;
}

namespace {

void factorizations_into(int64_t m, int64_t max_factor,
                         std::vector<int64_t>& current,
                         std::vector<std::vector<int64_t>>& out) {
  if (m == 1) {
    if (!current.empty()) out.push_back(current);
    return;
  }
  for (int64_t f = std::min<int64_t>(max_factor, m); f >= 2; --f) {
    if (m % f) continue;
    current.push_back(f);
    factorizations_into(m / f, f, current, out);
    current.pop_back();
  }
}

struct ScanCandidate {
  size_t group_index;
  uint64_t r_units, l_units, s_mask;
};

std::vector<Residues> units_to_elements(
    const AbelianGroup& group,
    const std::vector<std::vector<int64_t>>& units, uint64_t mask) {
  std::vector<Residues> out;
  for (size_t i = 0; i < units.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    for (int64_t idx : units[i]) out.push_back(group.element_at(idx));
  }
  return out;
}

json scan_record(const AbelianGroup& group, const SemiCayleyGraph& graph,
                 const EpsilonProfile& eps) {
  const SpectralData sd(graph, eps);
  json record{{"group", group.factors()},
              {"R", elements_json(graph.sets().right)},
              {"L", elements_json(graph.sets().left)},
              {"S", elements_json(graph.sets().spokes)},
              {"r_equals_l", graph.r_equals_l()},
              {"integral", sd.integral},
              {"x_set_size",
               static_cast<int64_t>(graph.x_set(eps).size())}};
  if (sd.integral) {
    record["eigenvalues"] =
        json{{"plus", sd.lam_plus_int}, {"minus", sd.lam_minus_int}};
  }

  if (graph.r_equals_l() && sd.integral) {
    json same = json::array();
    json cross = json::array();
    for (int64_t ai = 0; ai < group.order(); ++ai) {
      const Residues a = group.element_at(ai);
      if (group.element_order(a) == 2) {
        const MinTimeReport m = same_orbit_min_time(graph, sd, a, eps);
        same.push_back(json{{"a", a},
                            {"value", m.value},
                            {"divides_2n", m.divides_double_order}});
      }
      const MinTimeReport n = cross_orbit_min_time(graph, sd, a, eps);
      if (n.defined) {
        cross.push_back(json{{"a", a},
                             {"value", n.value},
                             {"divides_2n", n.divides_double_order}});
      }
    }
    record["m"] = same;
    record["n"] = cross;
  }

  const DetectResult detect = run_detect(graph, sd, "both", false, eps);
  record["certificates"] = detect.report["certificates"];
  record["hits"] = detect.hits;
  record["unsupported"] = detect.report["unsupported"];

  if (!graph.r_equals_l()) {
    json feasible = json::array();
    for (int64_t ai = 0; ai < group.order(); ++ai) {
      const Residues a = group.element_at(ai);
      if (!cross_orbit_obstruction(graph, sd, a, false, eps) ||
          !cross_orbit_obstruction(graph, sd, a, true, eps)) {
        feasible.push_back(a);
      }
    }
    record["cross_feasible_pairings"] = feasible;
  }
  return record;
}

}  // namespace

void scan(const ScanSpec& spec, const EpsilonProfile& eps,
          const std::function<bool(const nlohmann::json&)>& sink) {
  std::vector<std::vector<int64_t>> shapes = spec.factor_shapes;
  if (shapes.empty()) {
    for (int64_t m = 2; m <= spec.max_order; ++m) {
      std::vector<int64_t> current;
      factorizations_into(m, m, current, shapes);
    }
  }

  std::vector<AbelianGroup> groups;
  std::vector<std::vector<std::vector<int64_t>>> group_units;
  for (const auto& shape : shapes) {
    AbelianGroup group(shape);
    if (group.order() > 62)
      throw validation_error("scan group order is capped at 62");
    std::vector<std::vector<int64_t>> units;
    for (int64_t idx = 1; idx < group.order(); ++idx) {
      const Residues g = group.element_at(idx);
      const int64_t inv = group.index_of(group.negate(g));
      if (idx < inv)
        units.push_back({idx, inv});
      else if (idx == inv)
        units.push_back({idx});
    }
    groups.push_back(std::move(group));
    group_units.push_back(std::move(units));
  }

  std::vector<ScanCandidate> candidates;
  double total = 0;
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const int64_t n = groups[gi].order();
    const uint64_t unit_count = group_units[gi].size();
    const uint64_t r_choices = uint64_t{1} << unit_count;
    const uint64_t s_choices = uint64_t{1} << n;
    total += static_cast<double>(r_choices) *
             static_cast<double>(spec.require_rl ? 1 : r_choices) *
             static_cast<double>(s_choices);
    if (total > 1e7)
      throw validation_error(
          "scan would enumerate more than 1e7 candidate triples; narrow the "
          "spec");
    for (uint64_t r = 0; r < r_choices; ++r) {
      for (uint64_t l = 0; l < r_choices; ++l) {
        if (spec.require_rl && l != r) continue;
        for (uint64_t s = 0; s < s_choices; ++s) {
          const int64_t s_size = std::popcount(s);
          if (s_size < spec.s_min) continue;
          if (spec.s_max >= 0 && s_size > spec.s_max) continue;
          candidates.push_back(ScanCandidate{gi, r, l, s});
        }
        if (spec.require_rl) break;
      }
    }
  }

  auto process = [&](const ScanCandidate& c) {
    const AbelianGroup& group = groups[c.group_index];
    ConnectionSets sets;
    sets.right = units_to_elements(group, group_units[c.group_index], c.r_units);
    sets.left = spec.require_rl
                    ? sets.right
                    : units_to_elements(group, group_units[c.group_index],
                                        c.l_units);
    for (int64_t idx = 0; idx < group.order(); ++idx)
      if (c.s_mask >> idx & 1) sets.spokes.push_back(group.element_at(idx));
    const SemiCayleyGraph graph = SemiCayleyGraph::build(group, std::move(sets));
    return scan_record(group, graph, eps);
  };

  const size_t block = spec.workers > 1 ? 256 : candidates.size() + 1;
  for (size_t begin = 0; begin < candidates.size(); begin += block) {
    const size_t end = std::min(candidates.size(), begin + block);
    std::vector<json> results(end - begin);
    if (spec.workers > 1) {
      std::vector<std::future<void>> futures;
      std::atomic<size_t> next{begin};
      for (int w = 0; w < spec.workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&]() {
          for (size_t i = next.fetch_add(1); i < end; i = next.fetch_add(1))
            results[i - begin] = process(candidates[i]);
        }));
      }
      for (auto& f : futures) f.get();
    } else {
      for (size_t i = begin; i < end; ++i)
        results[i - begin] = process(candidates[i]);
    }
    for (const json& record : results)
      if (!sink(record)) return;
  }
}

}  // namespace scfr
