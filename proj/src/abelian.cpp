#include "abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace scfr {

std::complex<double> unit_root(int64_t k, int64_t m) {
  if (m <= 0) throw validation_error("unit root denominator must be positive");
  k %= m;
  if (k < 0) k += m;
  const double arg = 2.0 * std::numbers::pi * static_cast<double>(k) /
                     static_cast<double>(m);
  return {std::cos(arg), std::sin(arg)};
}

std::string element_str(const Residues& g) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) os << ',';
    os << g[i];
  }
  os << ']';
  return os.str();
}

AbelianGroup::AbelianGroup(std::vector<int64_t> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty())
    throw validation_error("group needs at least one cyclic factor");
  for (size_t s = 0; s < factors_.size(); ++s) {
    if (factors_[s] < 2) {
      std::ostringstream os;
      os << "group factor at position " << s << " is " << factors_[s]
         << "; every factor must be >= 2";
      throw validation_error(os.str());
    }
    order_ *= factors_[s];
  }
  weights_.resize(factors_.size());
  for (size_t s = 0; s < factors_.size(); ++s) weights_[s] = order_ / factors_[s];
}

bool AbelianGroup::is_identity(const Residues& g) const {
  return std::all_of(g.begin(), g.end(), [](int64_t r) { return r == 0; });
}

Residues AbelianGroup::canonical(Residues g, const char* field) const {
  if (g.size() != factors_.size()) {
    std::ostringstream os;
    os << field << " " << element_str(g) << " has " << g.size()
       << " residues but the group has " << factors_.size() << " factors";
    throw validation_error(os.str());
  }
  for (size_t s = 0; s < g.size(); ++s) {
    g[s] %= factors_[s];
    if (g[s] < 0) g[s] += factors_[s];
  }
  return g;
}

Residues AbelianGroup::add(const Residues& g, const Residues& h) const {
  Residues a = canonical(g);
  Residues b = canonical(h);
  for (size_t s = 0; s < a.size(); ++s) a[s] = (a[s] + b[s]) % factors_[s];
  return a;
}

Residues AbelianGroup::negate(const Residues& g) const {
  Residues a = canonical(g);
  for (size_t s = 0; s < a.size(); ++s) a[s] = (factors_[s] - a[s]) % factors_[s];
  return a;
}

int64_t AbelianGroup::element_order(const Residues& g) const {
  Residues a = canonical(g);
  int64_t ord = 1;
  for (size_t s = 0; s < a.size(); ++s) {
    const int64_t component = factors_[s] / std::gcd(factors_[s], a[s]);
    ord = std::lcm(ord, component);
  }
  return ord;
}

int64_t AbelianGroup::index_of(const Residues& g) const {
  Residues a = canonical(g);
  int64_t idx = 0;
  for (size_t s = 0; s < a.size(); ++s) idx = idx * factors_[s] + a[s];
  return idx;
}

Residues AbelianGroup::element_at(int64_t index) const {
  if (index < 0 || index >= order_)
    throw validation_error("element index out of range");
  Residues g(factors_.size(), 0);
  for (size_t s = factors_.size(); s-- > 0;) {
    g[s] = index % factors_[s];
    index /= factors_[s];
  }
  return g;
}

int64_t AbelianGroup::character_phase(const Residues& z, const Residues& g) const {
  Residues a = canonical(z, "character index");
  Residues b = canonical(g, "character argument");
  int64_t k = 0;
  for (size_t s = 0; s < a.size(); ++s) {
    const int64_t partial = (a[s] * b[s]) % factors_[s];
    k = (k + partial * weights_[s]) % order_;
  }
  return k;
}

std::complex<double> AbelianGroup::character(const Residues& z,
                                             const Residues& g) const {
  return unit_root(character_phase(z, g), order_);
}

std::complex<double> AbelianGroup::character_sum(
    const Residues& z, const std::vector<Residues>& subset) const {
  std::set<int64_t> seen;
  std::complex<double> total{0.0, 0.0};
  for (const Residues& s : subset) {
    const Residues c = canonical(s, "subset element");
    if (!seen.insert(index_of(c)).second) {
      throw validation_error("subset contains duplicate element " +
                             element_str(c));
    }
    total += character(z, c);
  }
  return total;
}

}  // namespace scfr
