#include "torusopt/instances.hpp"

#include <algorithm>

namespace torusopt {

namespace {

VectorXr constant_weights(int n, Real w) { return VectorXr::Constant(n, w); }

}  // namespace

Instance one_vertex_torus(Real c1, Real c2, Real c3) {
  Instance inst;
  ToroidalComplex& c = inst.complex;
  c.num_vertices = 1;
  c.edges = {
      {0, 0, 0, LabelVec(1, 0)},
      {1, 0, 0, LabelVec(1, 1)},
      {2, 0, 0, LabelVec(0, 1)},
  };
  c.faces = {
      {{0, +1}, {2, +1}, {1, -1}},
      {{1, +1}, {0, -1}, {2, -1}},
  };
  index_slots(c);
  VectorXr w(3);
  w << c1, c2, c3;
  inst.weights = EdgeWeights::from(w);
  return inst;
}

Instance square_grid_torus(int rows, int cols, Real weight) {
  Instance inst;
  ToroidalComplex& c = inst.complex;
  c.num_vertices = rows * cols;
  auto vid = [&](int i, int j) { return ((i % rows) + rows) % rows * cols + ((j % cols) + cols) % cols; };
  // Horizontal edge h(i,j): (i,j) -> (i,j+1); vertical v(i,j): (i,j) -> (i+1,j).
  auto h_edge = [&](int i, int j) { return i * cols + j; };
  auto v_edge = [&](int i, int j) { return rows * cols + i * cols + j; };
  c.edges.resize(static_cast<size_t>(2 * rows * cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      c.edges[static_cast<size_t>(h_edge(i, j))] = {h_edge(i, j), vid(i, j), vid(i, j + 1),
                                                    LabelVec(j + 1 == cols ? 1 : 0, 0)};
      c.edges[static_cast<size_t>(v_edge(i, j))] = {v_edge(i, j), vid(i, j), vid(i + 1, j),
                                                    LabelVec(0, i + 1 == rows ? 1 : 0)};
    }
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      c.faces.push_back({{h_edge(i, j), +1},
                         {v_edge(i, (j + 1) % cols), +1},
                         {h_edge((i + 1) % rows, j), -1},
                         {v_edge(i, j), -1}});
  index_slots(c);
  inst.weights = EdgeWeights::from(constant_weights(c.num_edges(), weight));
  return inst;
}

Instance triangulated_grid_torus(int rows, int cols, Real weight) {
  Instance inst;
  ToroidalComplex& c = inst.complex;
  c.num_vertices = rows * cols;
  auto vid = [&](int i, int j) { return ((i % rows) + rows) % rows * cols + ((j % cols) + cols) % cols; };
  auto h_edge = [&](int i, int j) { return i * cols + j; };
  auto v_edge = [&](int i, int j) { return rows * cols + i * cols + j; };
  auto d_edge = [&](int i, int j) { return 2 * rows * cols + i * cols + j; };
  c.edges.resize(static_cast<size_t>(3 * rows * cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const int hw = j + 1 == cols ? 1 : 0;
      const int vw = i + 1 == rows ? 1 : 0;
      c.edges[static_cast<size_t>(h_edge(i, j))] = {h_edge(i, j), vid(i, j), vid(i, j + 1), LabelVec(hw, 0)};
      c.edges[static_cast<size_t>(v_edge(i, j))] = {v_edge(i, j), vid(i, j), vid(i + 1, j), LabelVec(0, vw)};
      c.edges[static_cast<size_t>(d_edge(i, j))] = {d_edge(i, j), vid(i, j), vid(i + 1, j + 1),
                                                    LabelVec(hw, vw)};
    }
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      // Lower triangle (i,j) -> (i,j+1) -> (i+1,j+1); upper closes the cell.
      c.faces.push_back({{h_edge(i, j), +1}, {v_edge(i, (j + 1) % cols), +1}, {d_edge(i, j), -1}});
      c.faces.push_back({{d_edge(i, j), +1}, {h_edge((i + 1) % rows, j), -1}, {v_edge(i, j), -1}});
    }
  index_slots(c);
  inst.weights = EdgeWeights::from(constant_weights(c.num_edges(), weight));
  return inst;
}

bool flip_edge(ToroidalComplex& c, int edge) {
  if (edge < 0 || edge >= c.num_edges()) return false;
  const SlotRef lp = c.pos_slot[static_cast<size_t>(edge)];
  const SlotRef rp = c.neg_slot[static_cast<size_t>(edge)];
  if (lp.face == rp.face) return false;
  auto left = c.faces[static_cast<size_t>(lp.face)];
  auto right = c.faces[static_cast<size_t>(rp.face)];
  if (left.size() != 3 || right.size() != 3) return false;

  std::rotate(left.begin(), left.begin() + lp.slot, left.end());
  std::rotate(right.begin(), right.begin() + rp.slot, right.end());
  const SignedSlot a = left[1], b = left[2];    // tail -> head -> apexL -> tail
  const SignedSlot cc = right[1], d = right[2]; // head -> tail -> apexR -> head

  auto signed_label = [&](const SignedSlot& s) {
    return s.sign * c.edges[static_cast<size_t>(s.edge)].label;
  };
  auto end_vertex = [&](const SignedSlot& s) { return c.slot_end_vertex(s); };

  EdgeRecord& rec = c.edges[static_cast<size_t>(edge)];
  const LabelVec apex_left = rec.label + signed_label(a);
  const LabelVec apex_right = signed_label(cc);
  const int apex_left_v = end_vertex(a);
  const int apex_right_v = end_vertex(cc);

  ToroidalComplex backup = c;
  rec.tail = apex_right_v;
  rec.head = apex_left_v;
  rec.label = apex_left - apex_right;
  c.faces[static_cast<size_t>(lp.face)] = {cc, {edge, +1}, b};
  c.faces[static_cast<size_t>(rp.face)] = {d, a, {edge, -1}};
  if (!index_slots(c) || !validate_complex(c).valid()) {
    c = std::move(backup);
    index_slots(c);
    return false;
  }
  return true;
}

}  // namespace torusopt
