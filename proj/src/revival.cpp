#include "revival.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace scfr {

const char* to_string(RevivalKind kind) {
  switch (kind) {
    case RevivalKind::proper:
      return "proper-fr";
    case RevivalKind::pst:
      return "pst";
    case RevivalKind::periodic:
      return "periodic";
  }
  return "?";
}

double RevivalPair::norm_defect() const {
  return std::abs(std::norm(alpha) + std::norm(beta) - 1.0);
}

RevivalKind RevivalPair::classify(const EpsilonProfile& eps) const {
  if (std::abs(alpha) <= eps.zero) return RevivalKind::pst;
  if (std::abs(beta) <= eps.zero) return RevivalKind::periodic;
  return RevivalKind::proper;
}

namespace {

std::string vertex_str(const Vertex& v) {
  return element_str(v.element) + (v.orbit == 0 ? "@0" : "@1");
}

// Branch whose orbit weight is 1 for a decoupled element (z in X).
Sign carrier_branch(const SpectralData& sd, int64_t zi, int orbit) {
  if (orbit == 0) return sd.c_plus[zi] > 0.5 ? Sign::plus : Sign::minus;
  return sd.d_plus[zi] > 0.5 ? Sign::plus : Sign::minus;
}

// Branch guaranteed to carry the class phase for orbit r at element zi.
Sign constrained_branch(const SpectralData& sd, int64_t zi, int orbit) {
  if (sd.in_x[zi]) return carrier_branch(sd, zi, orbit);
  return orbit == 0 ? Sign::plus : Sign::minus;
}

int64_t diff_gcd(const std::vector<std::vector<int64_t>>& classes) {
  int64_t g = 0;
  for (const auto& cls : classes) {
    for (size_t i = 1; i < cls.size(); ++i) {
      const int64_t d = cls[i] - cls.front();
      g = std::gcd(g, d < 0 ? -d : d);
    }
  }
  return g;
}

// Residual quantization from the raw phase-class equalities; used when the
// published gcd families degenerate to 0 but within-class eigenvalue
// differences remain.
int64_t same_orbit_class_gcd(const SpectralData& sd, const OrbitPartition& part,
                             int orbit) {
  std::vector<int64_t> plus_values, minus_values;
  auto collect = [&](const std::vector<int64_t>& cls,
                     std::vector<int64_t>& out) {
    for (int64_t zi : cls) {
      if (sd.in_x[zi]) {
        out.push_back(sd.lambda_int(zi, carrier_branch(sd, zi, orbit)));
      } else {
        out.push_back(sd.lam_plus_int[zi]);
        out.push_back(sd.lam_minus_int[zi]);
      }
    }
  };
  collect(part.plus_class, plus_values);
  collect(part.minus_class, minus_values);
  return diff_gcd({plus_values, minus_values});
}

int64_t cross_orbit_class_gcd(const SpectralData& sd,
                              const SpokePartition& part) {
  std::vector<int64_t> plus_values, minus_values;
  for (int64_t zi : part.plus_class) {
    plus_values.push_back(sd.lam_plus_int[zi]);
    minus_values.push_back(sd.lam_minus_int[zi]);
  }
  for (int64_t zi : part.minus_class) {
    plus_values.push_back(sd.lam_minus_int[zi]);
    minus_values.push_back(sd.lam_plus_int[zi]);
  }
  return diff_gcd({plus_values, minus_values});
}

}  // namespace

VerifyOutcome verify_row(const SemiCayleyGraph& graph, const SpectralData& sd,
                         const Vertex& u, const Vertex& v,
                         const TimeSpec& time, const RevivalPair& pair,
                         const EpsilonProfile& eps) {
  if (pair.norm_defect() > eps.structural) {
    std::ostringstream os;
    os << "amplitude pair is not normalized: |alpha|^2 + |beta|^2 deviates "
          "from 1 by " << pair.norm_defect();
    throw precondition_error(os.str());
  }
  const int64_t m = graph.vertex_count();
  const int64_t ui = graph.vertex_index(u);
  const int64_t vi = graph.vertex_index(v);

  Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(m);
  expected(ui) += pair.alpha;
  expected(vi) += pair.beta;

  const Eigen::VectorXcd row = transition_row(graph, sd, u, time);
  double deviation = 0.0;
  int64_t worst = 0;
  for (int64_t j = 0; j < m; ++j) {
    const double d = std::abs(row(j) - expected(j));
    if (d > deviation) {
      deviation = d;
      worst = j;
    }
  }
  if (deviation > eps.residual) {
    std::ostringstream os;
    os << "row of H(t) deviates from alpha e_u + beta e_v by " << deviation
       << " at vertex " << vertex_str(graph.vertex_at(worst));
    return RowRefutation{graph.vertex_at(worst), deviation, os.str()};
  }

  double oracle_deviation = deviation;
  if (m <= eps.oracle_cap) {
    const Eigen::MatrixXcd h = transition_oracle(graph, time, eps);
    oracle_deviation = 0.0;
    for (int64_t j = 0; j < m; ++j)
      oracle_deviation = std::max(oracle_deviation,
                                  std::abs(h(ui, j) - expected(j)));
    if (oracle_deviation > eps.residual) {
      std::ostringstream os;
      os << "closed form accepted a revival row the dense oracle refutes "
            "(oracle deviation " << oracle_deviation << ")";
      throw tolerance_error(os.str());
    }
  }

  RevivalCertificate cert;
  cert.u = u;
  cert.v = v;
  cert.time = time;
  cert.pair = pair;
  cert.kind = pair.classify(eps);
  cert.pairing = graph.group().add(v.element, graph.group().negate(u.element));
  cert.cross_orbit = u.orbit != v.orbit;
  cert.orbit = u.orbit;
  cert.residual = deviation;
  cert.oracle_residual = oracle_deviation;
  return cert;
}

CheckResult check_same_orbit(const SemiCayleyGraph& graph,
                             const SpectralData& sd, const Residues& a,
                             const TimeSpec& time, const RevivalPair& pair,
                             int orbit, const EpsilonProfile& eps) {
  const AbelianGroup& group = graph.group();
  const Residues ac = group.canonical(a, "pairing element");
  if (group.element_order(ac) != 2) {
    throw precondition_error("same-orbit pairing element " + element_str(ac) +
                             " must have order 2");
  }
  const OrbitPartition part = orbit_partition(group, ac);
  const PhaseEvaluator phases(sd, time);
  const std::complex<double> target_plus = pair.alpha + pair.beta;
  const std::complex<double> target_minus = pair.alpha - pair.beta;

  auto check_class = [&](const std::vector<int64_t>& cls,
                         const std::complex<double>& target,
                         const char* label) -> CheckResult {
    for (int64_t zi : cls) {
      if (sd.in_x[zi]) {
        const Sign s = carrier_branch(sd, zi, orbit);
        if (std::abs(phases.at(zi, s) - target) > eps.phase) {
          std::ostringstream os;
          os << "decoupled element z = " << element_str(group.element_at(zi))
             << " in the " << label << " misses its phase target";
          return {false, os.str()};
        }
      } else {
        for (const Sign s : {Sign::plus, Sign::minus}) {
          if (std::abs(phases.at(zi, s) - target) > eps.phase) {
            std::ostringstream os;
            os << (s == Sign::plus ? "upper" : "lower") << " branch at z = "
               << element_str(group.element_at(zi)) << " in the " << label
               << " misses its phase target";
            return {false, os.str()};
          }
        }
      }
    }
    return {true, {}};
  };

  CheckResult r = check_class(part.plus_class, target_plus, "plus class");
  if (!r.accepted) return r;
  return check_class(part.minus_class, target_minus, "minus class");
}

CheckResult check_cross_orbit(const SemiCayleyGraph& graph,
                              const SpectralData& sd, const Residues& a,
                              const TimeSpec& time, const RevivalPair& pair,
                              bool from_left, const EpsilonProfile& eps) {
  const AbelianGroup& group = graph.group();
  const Residues ac = group.canonical(a, "pairing element");
  for (int64_t zi = 0; zi < sd.n; ++zi) {
    if (sd.in_x[zi]) {
      std::ostringstream os;
      os << "X is nonempty: chi_z(S) vanishes at z = "
         << element_str(group.element_at(zi));
      return {false, os.str()};
    }
  }
  const PhaseEvaluator phases(sd, time);
  for (int64_t zi = 0; zi < sd.n; ++zi) {
    const std::complex<double> chi_a =
        group.character(ac, group.element_at(zi));
    const std::complex<double> e = sd.e_plus[zi];
    const std::complex<double> alignment =
        from_left ? e * std::conj(chi_a) : e * chi_a;
    if (std::abs(alignment.imag()) > eps.zero) {
      std::ostringstream os;
      os << "spoke alignment product is not real at z = "
         << element_str(group.element_at(zi));
      return {false, os.str()};
    }
    const std::complex<double> transport =
        pair.beta * std::conj(chi_a) / (from_left ? std::conj(e) : e);
    const double coeff_plus = from_left ? sd.d_minus[zi] : sd.c_minus[zi];
    const double coeff_minus = from_left ? sd.d_plus[zi] : sd.c_plus[zi];
    if (std::abs(phases.at(zi, Sign::plus) -
                 (pair.alpha + coeff_plus * transport)) > eps.phase) {
      std::ostringstream os;
      os << "upper-branch phase equation fails at z = "
         << element_str(group.element_at(zi));
      return {false, os.str()};
    }
    if (std::abs(phases.at(zi, Sign::minus) -
                 (pair.alpha - coeff_minus * transport)) > eps.phase) {
      std::ostringstream os;
      os << "lower-branch phase equation fails at z = "
         << element_str(group.element_at(zi));
      return {false, os.str()};
    }
  }
  return {true, {}};
}

std::optional<std::string> cross_orbit_obstruction(
    const SemiCayleyGraph& graph, const SpectralData& sd, const Residues& a,
    bool from_left, const EpsilonProfile& eps) {
  const AbelianGroup& group = graph.group();
  const Residues ac = group.canonical(a, "pairing element");
  for (int64_t zi = 0; zi < sd.n; ++zi) {
    if (sd.in_x[zi]) {
      return "X is nonempty: chi_z(S) vanishes at z = " +
             element_str(group.element_at(zi));
    }
  }
  std::complex<double> reference{0.0, 0.0};
  for (int64_t zi = 0; zi < sd.n; ++zi) {
    const std::complex<double> chi_a =
        group.character(ac, group.element_at(zi));
    const std::complex<double> e = sd.e_plus[zi];
    const std::complex<double> alignment =
        from_left ? e * std::conj(chi_a) : e * chi_a;
    if (std::abs(alignment.imag()) > eps.zero) {
      return "spoke alignment product is not real at z = " +
             element_str(group.element_at(zi));
    }
    // Both row equations (the revival row and its reciprocal) must assign
    // the same amplitude transport; their difference pins
    // x_z * conj(chi_a(z)) / chi_z(S) (conjugate spokes for orbit0->orbit1)
    // to a constant across the group.
    const std::complex<double> spokes =
        from_left ? sd.chi_s[zi] : std::conj(sd.chi_s[zi]);
    const std::complex<double> ratio = sd.x[zi] * std::conj(chi_a) / spokes;
    if (zi == 0) {
      reference = ratio;
    } else if (std::abs(ratio - reference) >
               eps.zero * (1.0 + std::abs(reference))) {
      return "amplitude transport ratio varies across the group (z = " +
             element_str(group.element_at(zi)) + ")";
    }
  }
  return std::nullopt;
}

namespace {

RevivalPair derive_same_orbit_pair(const SpectralData& sd,
                                   const OrbitPartition& part, int orbit,
                                   const TimeSpec& time) {
  const PhaseEvaluator phases(sd, time);
  const int64_t identity = 0;  // enumeration starts at the identity
  const std::complex<double> p =
      phases.at(identity, constrained_branch(sd, identity, orbit));
  const int64_t z1 = part.minus_class.front();
  const std::complex<double> q = phases.at(z1, constrained_branch(sd, z1, orbit));
  return RevivalPair{0.5 * (p + q), 0.5 * (p - q)};
}

RevivalPair derive_cross_orbit_pair(const SpectralData& sd,
                                    const TimeSpec& time) {
  // The identity element sits in the plus class of every spoke partition, so
  // its two branches carry alpha+beta and alpha-beta directly.
  const PhaseEvaluator phases(sd, time);
  const std::complex<double> p = phases.at(0, Sign::plus);
  const std::complex<double> q = phases.at(0, Sign::minus);
  return RevivalPair{0.5 * (p + q), 0.5 * (p - q)};
}

// Representative time for families that are valid at every t; an eighth turn
// keeps both amplitudes away from zero in the generic case.
constexpr int64_t kEveryTimeNum = 1;
constexpr int64_t kEveryTimeDen = 8;

}  // namespace

SearchReport search(const SemiCayleyGraph& graph, const SpectralData& sd,
                    const SearchOptions& options, const EpsilonProfile& eps) {
  SearchReport report;
  if (!sd.integral) {
    std::ostringstream os;
    os << "search unsupported: spectrum is not integral (eigenvalue "
       << sd.offender_lambda << " at element index " << sd.offender_index
       << "); only verify mode is available";
    report.unsupported = true;
    report.unsupported_reason = os.str();
    return report;
  }
  const AbelianGroup& group = graph.group();

  auto confirm_and_push = [&](RevivalCertificate cert) {
    const Vertex target = cert.kind == RevivalKind::periodic ? cert.u : cert.v;
    const RevivalPair confirmed_pair =
        cert.kind == RevivalKind::periodic
            ? RevivalPair{cert.pair.alpha + cert.pair.beta, {0.0, 0.0}}
            : cert.pair;
    VerifyOutcome outcome = verify_row(graph, sd, cert.u, target, cert.time,
                                       confirmed_pair, eps);
    if (std::holds_alternative<RowRefutation>(outcome)) {
      throw tolerance_error(
          "phase conditions accepted a candidate the row check refutes: " +
          std::get<RowRefutation>(outcome).detail);
    }
    const RevivalCertificate& rowcert = std::get<RevivalCertificate>(outcome);
    cert.v = target;
    cert.pair = confirmed_pair;
    // periodic hits collapse onto their vertex: key them by v - u so the
    // same periodicity found through different pairings folds into one
    cert.pairing = graph.group().add(
        target.element, graph.group().negate(cert.u.element));
    cert.residual = rowcert.residual;
    cert.oracle_residual = rowcert.oracle_residual;
    report.certificates.push_back(std::move(cert));
  };

  if (options.same_orbit) {
    for (int64_t ai = 0; ai < group.order(); ++ai) {
      const Residues a = group.element_at(ai);
      if (group.element_order(a) != 2) continue;
      const OrbitPartition part = orbit_partition(group, a);
      const bool both = graph.r_equals_l();
      const std::vector<int> orbits = both ? std::vector<int>{0}
                                           : std::vector<int>{0, 1};
      for (int orbit : orbits) {
        int64_t modulus = 0;
        if (graph.r_equals_l())
          modulus = same_orbit_min_time(graph, sd, a, eps).value;
        if (modulus == 0) modulus = same_orbit_class_gcd(sd, part, orbit);

        auto attempt = [&](const TimeSpec& time, int64_t quantization,
                           bool every_time) -> bool {
          const RevivalPair pair =
              derive_same_orbit_pair(sd, part, orbit, time);
          const CheckResult check =
              check_same_orbit(graph, sd, a, time, pair, orbit, eps);
          if (!check.accepted) return false;
          RevivalCertificate cert;
          cert.u = Vertex{group.identity(), orbit};
          cert.v = Vertex{a, orbit};
          cert.time = time;
          cert.pair = pair;
          cert.kind = pair.classify(eps);
          cert.cross_orbit = false;
          cert.orbit = orbit;
          cert.pairing = a;
          cert.quantization = quantization;
          cert.every_time = every_time;
          cert.both_orbits = both;
          confirm_and_push(std::move(cert));
          return true;
        };

        if (modulus == 0) {
          const bool hit = attempt(
              TimeSpec::from_rational(kEveryTimeNum, kEveryTimeDen), 0, true);
          std::ostringstream os;
          os << "pairing " << element_str(a) << " orbit " << orbit
             << ": no time quantization (constant phase classes); "
             << (hit ? "emitted a representative every-time certificate"
                     : "use verify mode for explicit times");
          report.diagnostics.push_back(os.str());
          continue;
        }
        for (int64_t k = 1; k < modulus; ++k)
          attempt(TimeSpec::from_rational(k, modulus), modulus, false);
      }
    }
  }

  if (options.cross_orbit) {
    if (!graph.r_equals_l()) {
      report.diagnostics.push_back(
          "cross-orbit search skipped: a revival between the orbits forces "
          "R == L");
    } else {
      bool x_empty = true;
      for (int64_t zi = 0; zi < sd.n && x_empty; ++zi)
        if (sd.in_x[zi]) {
          report.diagnostics.push_back(
              "cross-orbit revival impossible: chi_z(S) vanishes at z = " +
              element_str(group.element_at(zi)));
          x_empty = false;
        }
      if (x_empty) {
        for (int64_t ai = 0; ai < group.order(); ++ai) {
          const Residues a = group.element_at(ai);
          const auto part =
              spoke_partition(graph, sd, a, eps, /*conjugate_spokes=*/true);
          if (!part) continue;
          // The orbit0 -> orbit1 family with pairing a is the orbit1 ->
          // orbit0 family with pairing -a; quantize through the latter.
          int64_t modulus =
              cross_orbit_min_time(graph, sd, group.negate(a), eps).value;
          if (modulus == 0) modulus = cross_orbit_class_gcd(sd, *part);

          auto attempt = [&](const TimeSpec& time, int64_t quantization,
                             bool every_time) -> bool {
            const RevivalPair pair = derive_cross_orbit_pair(sd, time);
            const CheckResult check = check_cross_orbit(
                graph, sd, a, time, pair, /*from_left=*/false, eps);
            if (!check.accepted) return false;
            RevivalCertificate cert;
            cert.u = Vertex{group.identity(), 0};
            cert.v = Vertex{a, 1};
            cert.time = time;
            cert.pair = pair;
            cert.kind = pair.classify(eps);
            cert.cross_orbit = true;
            cert.orbit = 0;
            cert.pairing = a;
            cert.quantization = quantization;
            cert.every_time = every_time;
            confirm_and_push(std::move(cert));
            return true;
          };

          if (modulus == 0) {
            const bool hit = attempt(
                TimeSpec::from_rational(kEveryTimeNum, kEveryTimeDen), 0, true);
            std::ostringstream os;
            os << "cross pairing " << element_str(a)
               << ": no time quantization (constant phase classes); "
               << (hit ? "emitted a representative every-time certificate"
                       : "use verify mode for explicit times");
            report.diagnostics.push_back(os.str());
            continue;
          }
          for (int64_t k = 1; k < modulus; ++k)
            attempt(TimeSpec::from_rational(k, modulus), modulus, false);
        }
      }
    }
  }
  return report;
}

namespace {

bool time_less(const TimeSpec& a, const TimeSpec& b) {
  if (a.exact() && b.exact()) {
    return a.rational->num * b.rational->den < b.rational->num * a.rational->den;
  }
  return a.radians < b.radians;
}

}  // namespace

std::vector<RevivalCertificate> fold_minimal(
    const SemiCayleyGraph& graph, const std::vector<RevivalCertificate>& all) {
  using Key = std::tuple<bool, int, int64_t, int>;
  std::map<Key, RevivalCertificate> families;
  for (const RevivalCertificate& cert : all) {
    const Key key{cert.cross_orbit, cert.orbit,
                  graph.group().index_of(cert.pairing),
                  static_cast<int>(cert.kind)};
    auto it = families.find(key);
    if (it == families.end() || time_less(cert.time, it->second.time))
      families.insert_or_assign(key, cert);
  }
  std::vector<RevivalCertificate> out;
  out.reserve(families.size());
  for (auto& [key, cert] : families) out.push_back(std::move(cert));
  return out;
}

bool block_shape_audit(const SemiCayleyGraph& graph, const SpectralData& sd,
                       const RevivalCertificate& cert,
                       const EpsilonProfile& eps) {
  (void)sd;
  const AbelianGroup& group = graph.group();
  const int64_t n = group.order();
  const Eigen::MatrixXcd h = transition_oracle(graph, cert.time, eps);

  std::vector<int64_t> shift(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i)
    shift[static_cast<size_t>(i)] =
        group.index_of(group.add(group.element_at(i), cert.pairing));

  const std::complex<double> alpha = cert.pair.alpha;
  const std::complex<double> beta = cert.pair.beta;
  const double tol = eps.residual;

  auto block_matches = [&](int64_t row0, int64_t col0,
                           const std::complex<double>& diag,
                           const std::complex<double>& off,
                           bool shifted) -> bool {
    for (int64_t i = 0; i < n; ++i) {
      for (int64_t j = 0; j < n; ++j) {
        std::complex<double> expected{0.0, 0.0};
        if (!shifted && i == j) expected = diag;
        if (shifted) {
          if (i == j) expected += diag;
          if (j == shift[static_cast<size_t>(i)]) expected += off;
        }
        if (std::abs(h(row0 + i, col0 + j) - expected) > tol) return false;
      }
    }
    return true;
  };

  if (!cert.cross_orbit) {
    const int64_t r0 = cert.orbit == 0 ? 0 : n;
    const int64_t o0 = cert.orbit == 0 ? n : 0;
    const std::complex<double> off =
        cert.kind == RevivalKind::periodic ? std::complex<double>{0.0, 0.0}
                                           : beta;
    if (!block_matches(r0, r0, alpha, off, true)) return false;
    // Off-diagonal blocks vanish.
    for (int64_t i = 0; i < n; ++i)
      for (int64_t j = 0; j < n; ++j)
        if (std::abs(h(r0 + i, o0 + j)) > tol ||
            std::abs(h(o0 + i, r0 + j)) > tol)
          return false;
    // Remaining diagonal block is unitary.
    const Eigen::MatrixXcd rest = h.block(o0, o0, n, n);
    const Eigen::MatrixXcd defect =
        rest * rest.adjoint() - Eigen::MatrixXcd::Identity(n, n);
    return defect.cwiseAbs().maxCoeff() <= tol;
  }

  if (std::abs(beta) <= eps.zero) return false;  // cross revival needs beta != 0
  const std::complex<double> reciprocal =
      -std::conj(alpha) * beta / std::conj(beta);
  if (!block_matches(0, 0, alpha, {0.0, 0.0}, false)) return false;
  if (!block_matches(n, n, reciprocal, {0.0, 0.0}, false)) return false;
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < n; ++j) {
      const std::complex<double> expected_ur =
          j == shift[static_cast<size_t>(i)] ? beta : std::complex<double>{0.0, 0.0};
      if (std::abs(h(i, n + j) - expected_ur) > tol) return false;
      const std::complex<double> expected_ll =
          i == shift[static_cast<size_t>(j)] ? beta : std::complex<double>{0.0, 0.0};
      if (std::abs(h(n + i, j) - expected_ll) > tol) return false;
    }
  }
  return true;
}

}  // namespace scfr
