#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torusopt/types.hpp"

namespace torusopt {

// ---------------------------------------------------------------------------
// Raw input (as parsed from a graph file, before validation)

struct RawEdge {
  long long id = 0;
  long long tail = 0;
  long long head = 0;
  long long dx = 0;
  long long dy = 0;
  Real weight = 1.0;
};

struct RawComplex {
  long long num_vertices = 0;
  std::vector<RawEdge> edges;
  // Faces as cyclic sequences of signed entries +-(id+1).
  std::vector<std::vector<long long>> faces;
};

// ---------------------------------------------------------------------------
// Validated cell decomposition of a torus

struct EdgeRecord {
  int id = 0;    // external id (unique, >= 0)
  int tail = 0;  // vertex indices
  int head = 0;
  LabelVec label = LabelVec::Zero();  // deck translation crossed tail->head
};

/// One entry of a face boundary cycle: edge index and traversal direction
/// (+1 = tail->head, -1 = head->tail). Faces are counterclockwise.
struct SignedSlot {
  int edge = -1;
  int sign = +1;
};

struct SlotRef {
  int face = -1;
  int slot = -1;
};

struct ToroidalComplex {
  int num_vertices = 0;
  std::vector<EdgeRecord> edges;
  std::vector<std::vector<SignedSlot>> faces;

  // Derived indexing, filled by index_slots(): position of the +e and -e
  // boundary slots of every edge. Valid complexes have exactly one of each.
  std::vector<SlotRef> pos_slot;
  std::vector<SlotRef> neg_slot;

  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }

  /// Vertex at which a boundary slot ends (head for +e, tail for -e).
  int slot_end_vertex(const SignedSlot& s) const {
    const EdgeRecord& e = edges[static_cast<size_t>(s.edge)];
    return s.sign > 0 ? e.head : e.tail;
  }
};

/// Rebuild the pos_slot/neg_slot tables. Returns false when some edge does
/// not appear exactly once per orientation.
bool index_slots(ToroidalComplex& complex);

struct EdgeWeights {
  VectorXr c;
  bool all_positive = true;

  static EdgeWeights from(VectorXr values);
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool has(const std::string& code) const;
  std::string summary() const;
};

struct ValidationOutcome {
  ValidationReport report;
  std::optional<ToroidalComplex> complex;  // present when structurally usable
  std::optional<EdgeWeights> weights;
};

/// Check every structural invariant: unique non-negative edge ids, known
/// references, one slot per orientation, zero label sum around every face,
/// connectivity, Euler characteristic 0, single-cycle vertex links, and a
/// unimodular marking lattice (label-integral periods normalize to the
/// identity). Weights: zero entries are rejected here.
ValidationOutcome validate_complex(const RawComplex& raw);

/// Re-run the invariant checks on an already-normalized complex.
ValidationReport validate_complex(const ToroidalComplex& complex);

// ---------------------------------------------------------------------------
// Spanning tree / cotree machinery shared by period computations

struct TreeCotree {
  int root = 0;
  std::vector<int> parent_edge;       // per vertex, -1 at root
  std::vector<int> parent_sign;       // +1 when the tree edge points to v
  std::vector<int> bfs_order;         // root first
  std::vector<int> cotree;            // non-tree edge indices
  std::vector<LabelVec> vertex_shift; // label sum along tree path root->v
  std::vector<LabelVec> cycle_class;  // per cotree edge: label class of its
                                      // fundamental cycle
};

TreeCotree build_tree_cotree(const ToroidalComplex& complex, int root = 0);

// ---------------------------------------------------------------------------
// Dual decomposition

struct DualComplex {
  ToroidalComplex complex;  // dual vertices = primal faces, same edge index
};

/// Dual cell decomposition. Dual edge *e keeps the index and id of e and is
/// oriented from the right face of e to the left face; dual faces walk
/// counterclockwise around each primal vertex. Dual labels are lifted from
/// the primal face corners so that dual periods pair with primal periods,
/// and face cycles are rotated so that dualizing twice reproduces the primal
/// complex with every edge reversed.
DualComplex build_dual(const ToroidalComplex& complex);

/// Per-edge corner translates of the stored face cycles: the lattice
/// translate of the edge lift traversed at the +e (resp. -e) slot, measured
/// from each face's first stored corner.
struct CornerTranslates {
  std::vector<LabelVec> at_pos;
  std::vector<LabelVec> at_neg;
};

CornerTranslates face_corner_translates(const ToroidalComplex& complex);

}  // namespace torusopt
