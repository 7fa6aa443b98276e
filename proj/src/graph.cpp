#include "graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace scfr {
namespace {

std::vector<Residues> canonical_set(const AbelianGroup& group,
                                    const std::vector<Residues>& in,
                                    const char* field) {
  std::vector<Residues> out;
  out.reserve(in.size());
  std::set<int64_t> seen;
  for (const Residues& g : in) {
    Residues c = group.canonical(g, field);
    if (!seen.insert(group.index_of(c)).second) {
      std::ostringstream os;
      os << field << " contains duplicate element " << element_str(c);
      throw validation_error(os.str());
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [&](const Residues& a, const Residues& b) {
    return group.index_of(a) < group.index_of(b);
  });
  return out;
}

void require_inverse_closed_identity_free(const AbelianGroup& group,
                                          const std::vector<Residues>& set,
                                          const char* field) {
  std::set<int64_t> indices;
  for (const Residues& g : set) indices.insert(group.index_of(g));
  for (const Residues& g : set) {
    if (group.is_identity(g)) {
      std::ostringstream os;
      os << field << " contains the identity " << element_str(g);
      throw validation_error(os.str());
    }
    const Residues inv = group.negate(g);
    if (!indices.count(group.index_of(inv))) {
      std::ostringstream os;
      os << field << " is not inverse-closed: " << element_str(g)
         << " is present but " << element_str(inv) << " is missing";
      throw validation_error(os.str());
    }
  }
}

std::vector<char> mask_of(const AbelianGroup& group,
                          const std::vector<Residues>& set) {
  std::vector<char> mask(static_cast<size_t>(group.order()), 0);
  for (const Residues& g : set) mask[static_cast<size_t>(group.index_of(g))] = 1;
  return mask;
}

}  // namespace

SemiCayleyGraph::SemiCayleyGraph(AbelianGroup group, ConnectionSets sets)
    : group_(std::move(group)), sets_(std::move(sets)) {
  right_mask_ = mask_of(group_, sets_.right);
  left_mask_ = mask_of(group_, sets_.left);
  spoke_mask_ = mask_of(group_, sets_.spokes);
  r_equals_l_ = (right_mask_ == left_mask_);
}

SemiCayleyGraph SemiCayleyGraph::build(AbelianGroup group, ConnectionSets sets) {
  ConnectionSets canonical;
  canonical.right = canonical_set(group, sets.right, "R");
  canonical.left = canonical_set(group, sets.left, "L");
  canonical.spokes = canonical_set(group, sets.spokes, "S");
  require_inverse_closed_identity_free(group, canonical.right, "R");
  require_inverse_closed_identity_free(group, canonical.left, "L");
  return SemiCayleyGraph(std::move(group), std::move(canonical));
}

int64_t SemiCayleyGraph::vertex_index(const Vertex& v) const {
  if (v.orbit != 0 && v.orbit != 1)
    throw validation_error("vertex orbit must be 0 or 1");
  return v.orbit * group_.order() + group_.index_of(v.element);
}

Vertex SemiCayleyGraph::vertex_at(int64_t index) const {
  if (index < 0 || index >= vertex_count())
    throw validation_error("vertex index out of range");
  const int64_t n = group_.order();
  return Vertex{group_.element_at(index % n), static_cast<int>(index / n)};
}

bool SemiCayleyGraph::adjacent(const Vertex& u, const Vertex& v) const {
  const Vertex* lo = &u;
  const Vertex* hi = &v;
  if (lo->orbit > hi->orbit) std::swap(lo, hi);
  const Residues diff = group_.add(hi->element, group_.negate(lo->element));
  const int64_t d = group_.index_of(diff);
  if (lo->orbit == 0 && hi->orbit == 0) return right_mask_[d];
  if (lo->orbit == 1 && hi->orbit == 1) return left_mask_[d];
  return spoke_mask_[d];
}

Eigen::MatrixXd SemiCayleyGraph::adjacency() const {
  const int64_t m = vertex_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int64_t i = 0; i < m; ++i) {
    const Vertex u = vertex_at(i);
    for (int64_t j = i + 1; j < m; ++j) {
      const Vertex v = vertex_at(j);
      if (adjacent(u, v)) a(i, j) = a(j, i) = 1.0;
    }
  }
  return a;
}

SemiCayleyGraph::Blocks SemiCayleyGraph::adjacency_blocks() const {
  const int64_t n = group_.order();
  Blocks b{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n),
           Eigen::MatrixXd::Zero(n, n)};
  for (int64_t i = 0; i < n; ++i) {
    const Residues gi = group_.element_at(i);
    for (int64_t j = 0; j < n; ++j) {
      const Residues diff = group_.add(group_.element_at(j), group_.negate(gi));
      const int64_t d = group_.index_of(diff);
      if (right_mask_[d]) b.intra_right(i, j) = 1.0;
      if (left_mask_[d]) b.intra_left(i, j) = 1.0;
      if (spoke_mask_[d]) b.spoke(i, j) = 1.0;
    }
  }
  return b;
}

std::vector<int64_t> SemiCayleyGraph::x_set(const EpsilonProfile& eps) const {
  std::vector<int64_t> xs;
  for (int64_t zi = 0; zi < group_.order(); ++zi) {
    const Residues z = group_.element_at(zi);
    if (std::abs(group_.character_sum(z, sets_.spokes)) <= eps.zero)
      xs.push_back(zi);
  }
  return xs;
}

namespace {

// Element (eps, h) of the extension: h when eps == 0, x*h when eps == 1,
// with x^-1 h x = h^-1 and x^2 = 1 (dihedral) or x^2 = y (dicyclic).
struct ExtElem {
  int eps;
  Residues h;
};

ExtElem ext_multiply(const CayleyExtension& ext, const ExtElem& a,
                     const ExtElem& b) {
  const AbelianGroup& base = ext.base;
  if (a.eps == 0 && b.eps == 0) return {0, base.add(a.h, b.h)};
  if (a.eps == 0 && b.eps == 1)
    return {1, base.add(b.h, base.negate(a.h))};  // h * xk = x(k - h)
  if (a.eps == 1 && b.eps == 0) return {1, base.add(a.h, b.h)};
  // xh * xk = x^2 (k - h)
  Residues h = base.add(b.h, base.negate(a.h));
  if (ext.kind == CayleyExtension::Kind::dicyclic)
    h = base.add(h, ext.twist_square);
  return {0, h};
}

ExtElem ext_inverse(const CayleyExtension& ext, const ExtElem& a) {
  const AbelianGroup& base = ext.base;
  if (a.eps == 0) return {0, base.negate(a.h)};
  // (xh)^-1 = xh dihedral; (xh)^-1 = x(h + y) dicyclic.
  if (ext.kind == CayleyExtension::Kind::dihedral) return a;
  return {1, base.add(a.h, ext.twist_square)};
}

int64_t ext_index(const AbelianGroup& base, const ExtElem& a) {
  return a.eps * base.order() + base.index_of(a.h);
}

}  // namespace

CayleyConversion from_cayley(const CayleyExtension& ext) {
  const AbelianGroup& base = ext.base;
  CayleyExtension checked = ext;
  checked.t1 = canonical_set(base, ext.t1, "T1");
  checked.t2 = canonical_set(base, ext.t2, "T2");
  require_inverse_closed_identity_free(base, checked.t1, "T1");
  if (ext.kind == CayleyExtension::Kind::dicyclic) {
    checked.twist_square = base.canonical(ext.twist_square, "y");
    if (base.element_order(checked.twist_square) != 2) {
      throw validation_error("dicyclic extension requires y of order 2, got " +
                             element_str(checked.twist_square));
    }
  } else {
    checked.twist_square = base.identity();
  }

  // Connection set T = T1 u xT2 lives in the extension; every member must
  // have its inverse in T.  T1 is handled above; for xT2 only the dicyclic
  // case can fail, where (xh)^-1 = x(h + y).
  std::set<int64_t> t2_indices;
  for (const Residues& t : checked.t2) t2_indices.insert(base.index_of(t));
  for (const Residues& t : checked.t2) {
    const ExtElem inv = ext_inverse(checked, ExtElem{1, t});
    if (!t2_indices.count(base.index_of(inv.h))) {
      std::ostringstream os;
      os << "connection set T = T1 u xT2 is not inverse-closed in the "
            "extension: inverse of x*" << element_str(t) << " is x*"
         << element_str(inv.h) << ", which is outside xT2";
      throw validation_error(os.str());
    }
  }

  const int64_t n = base.order();
  const int64_t m = 2 * n;

  // Cay(G, T): u ~ w iff w * u^-1 in T.
  std::vector<ExtElem> t_members;
  for (const Residues& t : checked.t1) t_members.push_back({0, t});
  for (const Residues& t : checked.t2) t_members.push_back({1, t});
  std::set<int64_t> t_set;
  for (const ExtElem& t : t_members) t_set.insert(ext_index(base, t));

  Eigen::MatrixXd cay = Eigen::MatrixXd::Zero(m, m);
  for (int64_t i = 0; i < m; ++i) {
    const ExtElem u{static_cast<int>(i / n), base.element_at(i % n)};
    const ExtElem uinv = ext_inverse(checked, u);
    for (int64_t j = 0; j < m; ++j) {
      const ExtElem w{static_cast<int>(j / n), base.element_at(j % n)};
      const ExtElem diff = ext_multiply(checked, w, uinv);
      if (t_set.count(ext_index(base, diff))) cay(i, j) = 1.0;
    }
  }

  ConnectionSets sets;
  sets.right = checked.t1;
  sets.left = checked.t1;
  sets.spokes = checked.t2;
  SemiCayleyGraph graph = SemiCayleyGraph::build(base, std::move(sets));

  // psi(g) = (g,0), psi(xg) = (g,1); with the ambient ordering [H; xH] this
  // is the identity permutation, kept explicit for the report.
  std::vector<int64_t> relabeling(static_cast<size_t>(m));
  for (int64_t i = 0; i < m; ++i) {
    const int eps = static_cast<int>(i / n);
    const int64_t h = i % n;
    relabeling[static_cast<size_t>(i)] =
        graph.vertex_index(Vertex{base.element_at(h), eps});
  }

  return CayleyConversion{std::move(graph), std::move(relabeling),
                          std::move(cay)};
}

}  // namespace scfr
