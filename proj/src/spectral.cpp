#include "spectral.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace scfr {

RationalTime RationalTime::reduced(int64_t num, int64_t den) {
  if (den == 0) throw validation_error("time denominator must be nonzero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return RationalTime{num, den};
}

double RationalTime::radians() const {
  return 2.0 * std::numbers::pi * static_cast<double>(num) /
         static_cast<double>(den);
}

std::string RationalTime::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

TimeSpec TimeSpec::from_radians(double t) {
  TimeSpec ts;
  ts.radians = t;
  return ts;
}

TimeSpec TimeSpec::from_rational(int64_t num, int64_t den) {
  TimeSpec ts;
  ts.rational = RationalTime::reduced(num, den);
  ts.radians = ts.rational->radians();
  return ts;
}

TimeSpec TimeSpec::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      size_t used = 0;
      const int64_t num = std::stoll(text.substr(0, slash), &used);
      if (used != slash) throw validation_error("");
      const std::string den_text = text.substr(slash + 1);
      const int64_t den = std::stoll(den_text, &used);
      if (used != den_text.size()) throw validation_error("");
      return from_rational(num, den);
    }
    size_t used = 0;
    const double t = std::stod(text, &used);
    if (used != text.size()) throw validation_error("");
    return from_radians(t);
  } catch (const std::exception&) {
    throw validation_error("cannot parse time '" + text +
                           "': expected \"k/m\" (turns of 2*pi) or a radian "
                           "literal");
  }
}

SpectralData::SpectralData(const SemiCayleyGraph& graph,
                           const EpsilonProfile& eps) {
  const AbelianGroup& group = graph.group();
  n = group.order();
  chi_r.resize(n);
  chi_l.resize(n);
  chi_s.resize(n);
  x.resize(n);
  gap.resize(n);
  lam_plus.resize(n);
  lam_minus.resize(n);
  in_x.resize(n);
  c_plus.resize(n);
  c_minus.resize(n);
  d_plus.resize(n);
  d_minus.resize(n);
  e_plus.resize(n);
  lam_plus_int.resize(n);
  lam_minus_int.resize(n);

  integral = true;
  chi_r_integral = true;
  chi_s_abs_integral = true;

  for (int64_t zi = 0; zi < n; ++zi) {
    const Residues z = group.element_at(zi);
    const std::complex<double> sum_r = group.character_sum(z, graph.sets().right);
    const std::complex<double> sum_l = group.character_sum(z, graph.sets().left);
    // Inverse-closed sets have real character sums; the imaginary parts are
    // pure rounding noise.
    chi_r[zi] = sum_r.real();
    chi_l[zi] = sum_l.real();
    chi_s[zi] = group.character_sum(z, graph.sets().spokes);
    x[zi] = chi_r[zi] - chi_l[zi];
    const double abs_s = std::abs(chi_s[zi]);
    gap[zi] = std::sqrt(x[zi] * x[zi] + 4.0 * abs_s * abs_s);
    lam_plus[zi] = 0.5 * (chi_r[zi] + chi_l[zi] + gap[zi]);
    lam_minus[zi] = 0.5 * (chi_r[zi] + chi_l[zi] - gap[zi]);
    in_x[zi] = abs_s <= eps.zero;

    if (in_x[zi]) {
      e_plus[zi] = {0.0, 0.0};
      // Decoupled branches: the orbit-0 weight follows the branch whose
      // eigenvalue is chi_R, the orbit-1 weight the chi_L branch.
      if (x[zi] >= 0.0) {
        c_plus[zi] = 1.0;
        c_minus[zi] = 0.0;
        d_plus[zi] = 0.0;
        d_minus[zi] = 1.0;
      } else {
        c_plus[zi] = 0.0;
        c_minus[zi] = 1.0;
        d_plus[zi] = 1.0;
        d_minus[zi] = 0.0;
      }
    } else {
      c_plus[zi] = (gap[zi] + x[zi]) / (2.0 * gap[zi]);
      c_minus[zi] = (gap[zi] - x[zi]) / (2.0 * gap[zi]);
      d_plus[zi] = c_minus[zi];
      d_minus[zi] = c_plus[zi];
      e_plus[zi] = std::conj(chi_s[zi]) / gap[zi];
    }

    for (const Sign s : {Sign::plus, Sign::minus}) {
      const double lam = lambda(zi, s);
      const double rounded = std::round(lam);
      const double defect = std::abs(lam - rounded);
      if (defect > worst_integral_defect) worst_integral_defect = defect;
      if (defect > eps.integral) {
        if (integral) {
          offender_index = zi;
          offender_lambda = lam;
        }
        integral = false;
      }
      if (s == Sign::plus)
        lam_plus_int[zi] = static_cast<int64_t>(rounded);
      else
        lam_minus_int[zi] = static_cast<int64_t>(rounded);
    }
    if (std::abs(chi_r[zi] - std::round(chi_r[zi])) > eps.integral)
      chi_r_integral = false;
    if (std::abs(abs_s - std::round(abs_s)) > eps.integral)
      chi_s_abs_integral = false;
  }
}

PhaseEvaluator::PhaseEvaluator(const SpectralData& sd, const TimeSpec& time)
    : sd_(sd), time_(time), exact_(time.exact() && sd.integral) {}

std::complex<double> PhaseEvaluator::at(int64_t zi, Sign s) const {
  if (exact_) {
    const RationalTime& rt = *time_.rational;
    return unit_root(rt.num * sd_.lambda_int(zi, s), rt.den);
  }
  return std::polar(1.0, time_.radians * sd_.lambda(zi, s));
}

namespace {

// Branch weights for one orbit pair (r,s) of the entry formula.
struct EntryWeights {
  std::complex<double> plus, minus;
};

EntryWeights entry_weights(const SpectralData& sd, int64_t zi, int r, int s) {
  if (r == 0 && s == 0) return {sd.c_plus[zi], sd.c_minus[zi]};
  if (r == 1 && s == 1) return {sd.d_plus[zi], sd.d_minus[zi]};
  if (r == 0 && s == 1) return {sd.e_plus[zi], -sd.e_plus[zi]};
  return {std::conj(sd.e_plus[zi]), -std::conj(sd.e_plus[zi])};
}

}  // namespace

std::complex<double> transition_entry(const SemiCayleyGraph& graph,
                                      const SpectralData& sd, const Vertex& u,
                                      const Vertex& v, const TimeSpec& time) {
  const AbelianGroup& group = graph.group();
  const Residues diff = group.add(v.element, group.negate(u.element));
  const PhaseEvaluator phases(sd, time);
  std::complex<double> total{0.0, 0.0};
  for (int64_t zi = 0; zi < sd.n; ++zi) {
    const EntryWeights w = entry_weights(sd, zi, u.orbit, v.orbit);
    const std::complex<double> combo =
        w.plus * phases.at(zi, Sign::plus) + w.minus * phases.at(zi, Sign::minus);
    total += combo * group.character(group.element_at(zi), diff);
  }
  return total / static_cast<double>(sd.n);
}

Eigen::VectorXcd transition_row(const SemiCayleyGraph& graph,
                                const SpectralData& sd, const Vertex& u,
                                const TimeSpec& time) {
  const int64_t m = graph.vertex_count();
  Eigen::VectorXcd row(m);
  for (int64_t j = 0; j < m; ++j)
    row(j) = transition_entry(graph, sd, u, graph.vertex_at(j), time);
  return row;
}

Eigen::VectorXcd eigenvector(const SemiCayleyGraph& graph,
                             const SpectralData& sd, int64_t zi, Sign s) {
  const AbelianGroup& group = graph.group();
  const int64_t n = sd.n;
  std::complex<double> a, b;
  if (sd.in_x[zi]) {
    // Decoupled branches; pair each unit vector with its actual eigenvalue.
    const bool plus_is_right = sd.x[zi] >= 0.0;
    const bool right_component = (s == Sign::plus) == plus_is_right;
    a = right_component ? 1.0 : 0.0;
    b = right_component ? 0.0 : 1.0;
  } else {
    const double shift = (s == Sign::plus) ? (sd.gap[zi] - sd.x[zi])
                                           : (-sd.gap[zi] - sd.x[zi]);
    a = 1.0;
    b = shift / (2.0 * std::conj(sd.chi_s[zi]));
  }
  const double norm =
      std::sqrt(static_cast<double>(n) * (std::norm(a) + std::norm(b)));
  Eigen::VectorXcd xi(2 * n);
  const Residues z = group.element_at(zi);
  for (int64_t gi = 0; gi < n; ++gi) {
    const std::complex<double> chi =
        std::conj(group.character(z, group.element_at(gi)));
    xi(gi) = a * chi / norm;
    xi(n + gi) = b * chi / norm;
  }
  return xi;
}

Eigen::MatrixXcd eigenprojector(const SemiCayleyGraph& graph,
                                const SpectralData& sd, int64_t zi, Sign s) {
  const Eigen::VectorXcd xi = eigenvector(graph, sd, zi, s);
  return xi * xi.adjoint();
}

Eigen::MatrixXcd transition_matrix(const SemiCayleyGraph& graph,
                                   const SpectralData& sd,
                                   const TimeSpec& time) {
  const int64_t m = graph.vertex_count();
  const PhaseEvaluator phases(sd, time);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  for (int64_t zi = 0; zi < sd.n; ++zi) {
    for (const Sign s : {Sign::plus, Sign::minus}) {
      const Eigen::VectorXcd xi = eigenvector(graph, sd, zi, s);
      h.noalias() += phases.at(zi, s) * (xi * xi.adjoint());
    }
  }
  return h;
}

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_dense(
    const SemiCayleyGraph& graph, const EpsilonProfile& eps) {
  if (graph.vertex_count() > eps.oracle_cap) {
    std::ostringstream os;
    os << "dense oracle supports up to " << eps.oracle_cap
       << " vertices, graph has " << graph.vertex_count();
    throw unsupported_error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(graph.adjacency());
  if (solver.info() != Eigen::Success)
    throw tolerance_error("dense eigendecomposition failed to converge");
  return solver;
}

}  // namespace

Eigen::MatrixXcd transition_oracle(const SemiCayleyGraph& graph,
                                   const TimeSpec& time,
                                   const EpsilonProfile& eps) {
  const auto solver = solve_dense(graph, eps);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::VectorXd& lam = solver.eigenvalues();
  Eigen::VectorXcd phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    phases(i) = std::polar(1.0, time.radians * lam(i));
  return v.cast<std::complex<double>>() * phases.asDiagonal() *
         v.transpose().cast<std::complex<double>>();
}

std::vector<double> oracle_eigenvalues(const SemiCayleyGraph& graph,
                                       const EpsilonProfile& eps) {
  const auto solver = solve_dense(graph, eps);
  std::vector<double> lam(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  return lam;  // ascending per Eigen contract
}

OrbitPartition orbit_partition(const AbelianGroup& group, const Residues& a) {
  const Residues ac = group.canonical(a, "pairing element");
  if (group.element_order(ac) > 2) {
    throw precondition_error("pairing element " + element_str(ac) +
                             " must have order 1 or 2 for an orbit partition");
  }
  OrbitPartition part{ac, {}, {}};
  const int64_t n = group.order();
  const int64_t half = n / 2;
  for (int64_t zi = 0; zi < n; ++zi) {
    // chi_a(z) is exactly +-1: phase numerator is 0 or n/2.
    const int64_t k = group.character_phase(ac, group.element_at(zi));
    if (k == 0)
      part.plus_class.push_back(zi);
    else if (k == half)
      part.minus_class.push_back(zi);
    else
      throw precondition_error("order-2 pairing produced a non-real character");
  }
  return part;
}

std::optional<SpokePartition> spoke_partition(const SemiCayleyGraph& graph,
                                              const SpectralData& sd,
                                              const Residues& a,
                                              const EpsilonProfile& eps,
                                              bool conjugate_spokes,
                                              std::string* why_not) {
  const AbelianGroup& group = graph.group();
  const Residues ac = group.canonical(a, "pairing element");
  SpokePartition part{ac, {}, {}};
  for (int64_t zi = 0; zi < sd.n; ++zi) {
    if (sd.in_x[zi]) {
      if (why_not)
        *why_not = "X is nonempty: chi_z(S) vanishes at z = " +
                   element_str(group.element_at(zi));
      return std::nullopt;
    }
    const std::complex<double> chi_a =
        group.character(ac, group.element_at(zi));
    const std::complex<double> spoke_sum =
        conjugate_spokes ? std::conj(sd.chi_s[zi]) : sd.chi_s[zi];
    const std::complex<double> product = spoke_sum * chi_a;
    const double mag = std::abs(sd.chi_s[zi]);
    if (std::abs(product - mag) <= eps.zero)
      part.plus_class.push_back(zi);
    else if (std::abs(product + mag) <= eps.zero)
      part.minus_class.push_back(zi);
    else {
      if (why_not)
        *why_not = "spoke alignment fails at z = " +
                   element_str(group.element_at(zi)) +
                   ": chi_z(S) is not carried onto +-|chi_z(S)| by chi_a";
      return std::nullopt;
    }
  }
  return part;
}

}  // namespace scfr
