#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "abelian.hpp"
#include "epsilon.hpp"

namespace scfr {

/// A vertex of a semi-Cayley graph: a group element in one of the two orbits.
/// Orbit 0 is the "right" copy of the group, orbit 1 the "left" copy.
struct Vertex {
  Residues element;
  int orbit = 0;
};

/// The three connection sets of SC(G, R, L, S).  R and L must be
/// inverse-closed and identity-free; S may be any subset of G (including the
/// identity, which creates the spoke (g,0)-(g,1), and the empty set).
struct ConnectionSets {
  std::vector<Residues> right;   // intra-orbit-0 differences
  std::vector<Residues> left;    // intra-orbit-1 differences
  std::vector<Residues> spokes;  // orbit-0 -> orbit-1 differences
};

/// Semi-Cayley graph over a finite abelian group.  Vertices are indexed
/// [0, n) for orbit 0 in group-enumeration order and [n, 2n) for orbit 1 in
/// the same order.  Immutable after build().
class SemiCayleyGraph {
 public:
  /// Validates the connection sets (naming the offending field and element on
  /// failure) and canonicalizes them into sorted, duplicate-free form.
  static SemiCayleyGraph build(AbelianGroup group, ConnectionSets sets);

  const AbelianGroup& group() const { return group_; }
  const ConnectionSets& sets() const { return sets_; }
  int64_t group_order() const { return group_.order(); }
  int64_t vertex_count() const { return 2 * group_.order(); }
  bool r_equals_l() const { return r_equals_l_; }

  int64_t vertex_index(const Vertex& v) const;
  Vertex vertex_at(int64_t index) const;

  bool right_contains(int64_t element_index) const { return right_mask_[element_index]; }
  bool left_contains(int64_t element_index) const { return left_mask_[element_index]; }
  bool spoke_contains(int64_t element_index) const { return spoke_mask_[element_index]; }

  bool adjacent(const Vertex& u, const Vertex& v) const;

  /// Dense symmetric 0/1 adjacency with zero diagonal.
  Eigen::MatrixXd adjacency() const;

  struct Blocks {
    Eigen::MatrixXd intra_right;  // Cay(G, R)
    Eigen::MatrixXd spoke;        // orbit-0 x orbit-1 incidence from S
    Eigen::MatrixXd intra_left;   // Cay(G, L)
  };
  Blocks adjacency_blocks() const;

  /// Element indices z with chi_z(S) == 0 (within eps.zero).
  std::vector<int64_t> x_set(const EpsilonProfile& eps) const;

 private:
  SemiCayleyGraph(AbelianGroup group, ConnectionSets sets);

  AbelianGroup group_;
  ConnectionSets sets_;
  std::vector<char> right_mask_, left_mask_, spoke_mask_;
  bool r_equals_l_ = false;
};

/// A Cayley graph over a generalized dihedral or dicyclic extension of an
/// abelian base group, described by the two halves T1 and T2 of its
/// connection set T = T1 u xT2.
struct CayleyExtension {
  enum class Kind { dihedral, dicyclic };
  Kind kind = Kind::dihedral;
  AbelianGroup base;
  Residues twist_square;  // y with x^2 = y; order 2, dicyclic only
  std::vector<Residues> t1;
  std::vector<Residues> t2;
};

struct CayleyConversion {
  SemiCayleyGraph graph;             // SC(H, T1, T1, T2)
  std::vector<int64_t> relabeling;   // ambient vertex index -> semi-Cayley vertex index
  Eigen::MatrixXd cayley_adjacency;  // Cay(G, T) in ambient indexing [H; xH]
};

/// Builds Cay(G, T) by explicit multiplication in the extension, validates
/// that T is inverse-closed there (for the dicyclic case this requires
/// T2 + y == T2), and returns the isomorphic semi-Cayley graph together with
/// the vertex relabeling g -> (g,0), xg -> (g,1).
CayleyConversion from_cayley(const CayleyExtension& ext);

}  // namespace scfr
