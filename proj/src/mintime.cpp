#include "mintime.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace scfr {

IntegralityReport integrality_check(const SemiCayleyGraph& graph,
                                    const SpectralData& sd,
                                    const EpsilonProfile& eps) {
  (void)graph;
  (void)eps;
  IntegralityReport report;
  report.integral = sd.integral;
  report.worst_defect = sd.worst_integral_defect;
  report.offender_index = sd.offender_index;
  report.offender_lambda = sd.offender_lambda;
  report.chi_r_integral = sd.chi_r_integral;
  report.chi_s_abs_integral = sd.chi_s_abs_integral;
  if (sd.integral) {
    report.lam_plus = sd.lam_plus_int;
    report.lam_minus = sd.lam_minus_int;
  }
  return report;
}

int64_t gcd_fold(const std::vector<int64_t>& values) {
  int64_t g = 0;
  for (int64_t v : values) g = std::gcd(g, v < 0 ? -v : v);
  return g;
}

namespace {

void require_rl_and_integral(const SemiCayleyGraph& graph,
                             const SpectralData& sd) {
  if (!graph.r_equals_l()) {
    throw unsupported_error(
        "minimum-time invariants are defined only when the two intra-orbit "
        "connection sets coincide (R == L)");
  }
  if (!sd.integral) {
    std::ostringstream os;
    os << "minimum-time invariants need an integral spectrum; eigenvalue "
       << sd.offender_lambda << " at element index " << sd.offender_index
       << " is not an integer";
    throw unsupported_error(os.str());
  }
}

int64_t pick_z1(const std::vector<int64_t>& cls,
                std::optional<int64_t> requested, const char* what) {
  if (!requested) return cls.empty() ? -1 : cls.front();
  if (std::find(cls.begin(), cls.end(), *requested) == cls.end()) {
    std::ostringstream os;
    os << "requested reference element index " << *requested
       << " is not in the " << what;
    throw precondition_error(os.str());
  }
  return *requested;
}

void finish_report(MinTimeReport& report, int64_t double_order) {
  std::vector<int64_t> all;
  for (const auto& [name, list] : report.components)
    all.insert(all.end(), list.begin(), list.end());
  report.value = gcd_fold(all);
  report.divides_double_order =
      report.value >= 1 && double_order % report.value == 0;
  report.no_fr_certified = report.value == 1;
}

}  // namespace

MinTimeReport same_orbit_min_time(const SemiCayleyGraph& graph,
                                  const SpectralData& sd, const Residues& a,
                                  const EpsilonProfile& eps,
                                  std::optional<int64_t> z1_index) {
  (void)eps;
  require_rl_and_integral(graph, sd);
  const AbelianGroup& group = graph.group();
  const Residues ac = group.canonical(a, "pairing element");
  if (group.element_order(ac) != 2) {
    throw precondition_error("same-orbit pairing element " + element_str(ac) +
                             " must have order 2");
  }

  const OrbitPartition part = orbit_partition(group, ac);
  const int64_t ref_plus =
      static_cast<int64_t>(graph.sets().right.size() + graph.sets().spokes.size());
  const int64_t ref_minus =
      static_cast<int64_t>(graph.sets().right.size()) -
      static_cast<int64_t>(graph.sets().spokes.size());

  MinTimeReport report;
  report.pairing = ac;
  report.same_orbit = true;

  std::vector<int64_t> m0p, m0m, m1p, m1m;
  for (int64_t zi : part.plus_class) {
    m0p.push_back(ref_plus - sd.lam_plus_int[zi]);
    m0m.push_back(ref_minus - sd.lam_minus_int[zi]);
  }
  const int64_t z1 = pick_z1(part.minus_class, z1_index, "minus class");
  for (int64_t zi : part.minus_class) {
    m1p.push_back(sd.lam_plus_int[z1] - sd.lam_plus_int[zi]);
    m1m.push_back(sd.lam_minus_int[z1] - sd.lam_minus_int[zi]);
  }
  report.components = {{"m0_plus", std::move(m0p)},
                       {"m0_minus", std::move(m0m)},
                       {"m1_plus", std::move(m1p)},
                       {"m1_minus", std::move(m1m)}};
  finish_report(report, 2 * group.order());
  return report;
}

MinTimeReport cross_orbit_min_time(const SemiCayleyGraph& graph,
                                   const SpectralData& sd, const Residues& a,
                                   const EpsilonProfile& eps,
                                   std::optional<int64_t> z1_index) {
  require_rl_and_integral(graph, sd);
  const AbelianGroup& group = graph.group();
  const Residues ac = group.canonical(a, "pairing element");

  MinTimeReport report;
  report.pairing = ac;
  report.same_orbit = false;

  std::string why_not;
  const auto part = spoke_partition(graph, sd, ac, eps, false, &why_not);
  if (!part) {
    report.defined = false;
    report.reason =
        "cross-orbit revival is impossible for this pairing: " + why_not;
    return report;
  }

  const int64_t ref_plus =
      static_cast<int64_t>(graph.sets().right.size() + graph.sets().spokes.size());
  const int64_t ref_minus =
      static_cast<int64_t>(graph.sets().right.size()) -
      static_cast<int64_t>(graph.sets().spokes.size());

  std::vector<int64_t> n0p, n0m, n1p, n1m, n2p, n2m;
  for (int64_t zi : part->plus_class) {
    n0p.push_back(ref_plus - sd.lam_plus_int[zi]);
    n0m.push_back(ref_minus - sd.lam_minus_int[zi]);
  }
  const int64_t z1 = pick_z1(part->minus_class, z1_index, "minus class");
  for (int64_t zi : part->minus_class) {
    n1p.push_back(ref_plus - sd.lam_minus_int[zi]);
    n1m.push_back(ref_minus - sd.lam_plus_int[zi]);
    n2p.push_back(sd.lam_plus_int[z1] - sd.lam_plus_int[zi]);
    n2m.push_back(sd.lam_minus_int[z1] - sd.lam_minus_int[zi]);
  }
  report.components = {{"n0_plus", std::move(n0p)},   {"n0_minus", std::move(n0m)},
                       {"n1_plus", std::move(n1p)},   {"n1_minus", std::move(n1m)},
                       {"n2_plus", std::move(n2p)},   {"n2_minus", std::move(n2m)}};
  finish_report(report, 2 * group.order());
  return report;
}

std::vector<NoFrEntry> no_fr_certificates(const SemiCayleyGraph& graph,
                                          const SpectralData& sd,
                                          const EpsilonProfile& eps,
                                          std::vector<std::string>* notes) {
  std::vector<NoFrEntry> entries;
  if (!graph.r_equals_l()) {
    if (notes)
      notes->push_back(
          "minimum-time invariants require R == L; no certificates derived");
    return entries;
  }
  if (!sd.integral) {
    std::ostringstream os;
    os << "spectrum is not integral (eigenvalue " << sd.offender_lambda
       << " at element index " << sd.offender_index
       << "); no certificates derived";
    if (notes) notes->push_back(os.str());
    return entries;
  }

  const AbelianGroup& group = graph.group();
  bool any_order2 = false;
  for (int64_t ai = 0; ai < group.order(); ++ai) {
    const Residues a = group.element_at(ai);
    if (group.element_order(a) == 2) {
      any_order2 = true;
      const MinTimeReport m = same_orbit_min_time(graph, sd, a, eps);
      if (m.no_fr_certified) {
        entries.push_back({a, true,
                           "same-orbit quantization gcd equals 1: any revival "
                           "time would force the identity evolution"});
      }
    }
    const MinTimeReport n = cross_orbit_min_time(graph, sd, a, eps);
    if (n.defined && n.no_fr_certified) {
      entries.push_back({a, false,
                         "cross-orbit quantization gcd equals 1: any revival "
                         "time would force the identity evolution"});
    }
  }
  if (!any_order2 && notes) {
    notes->push_back(
        "no element of order 2 exists; same-orbit revival is impossible for "
        "every vertex pair");
  }
  return entries;
}

RootUnityAudit root_of_unity_audit(const SemiCayleyGraph& graph,
                                   const TimeSpec& time,
                                   int64_t quantization_modulus,
                                   const EpsilonProfile& eps) {
  if (quantization_modulus == 0) return RootUnityAudit::informational;
  const int64_t two_n = 2 * graph.group_order();
  const std::complex<double> p = std::polar(1.0, time.radians);
  double best = 2.0;
  for (int64_t k = 0; k < two_n; ++k)
    best = std::min(best, std::abs(p - unit_root(k, two_n)));
  return best <= eps.phase ? RootUnityAudit::pass : RootUnityAudit::fail;
}

}  // namespace scfr
