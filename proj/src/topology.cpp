#include "torusopt/topology.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace torusopt {

namespace {

LabelVec face_label_sum(const ToroidalComplex& c, const std::vector<SignedSlot>& face) {
  LabelVec sum = LabelVec::Zero();
  for (const SignedSlot& s : face) sum += s.sign * c.edges[static_cast<size_t>(s.edge)].label;
  return sum;
}

struct ExtGcd {
  long long g, u, w;  // u*a + w*b == g
};

ExtGcd ext_gcd(long long a, long long b) {
  if (b == 0) return {a < 0 ? -a : a, a < 0 ? -1LL : 1LL, 0};
  ExtGcd sub = ext_gcd(b, a % b);
  return {sub.g, sub.w, sub.u - (a / b) * sub.w};
}

// The 2d integer lattice spanned by the given vectors must be all of Z^2,
// otherwise the marking cycles are not realizable in the graph and periods
// cannot normalize to the identity.
bool lattice_unimodular(const std::vector<LabelVec>& vectors) {
  long long a = 0, b = 0, c = 0;  // basis rows (a, b) and (0, c)
  auto absorb_y = [&](long long y) { c = std::gcd(c, y < 0 ? -y : y); };
  for (const LabelVec& v : vectors) {
    long long x = v.x(), y = v.y();
    if (x == 0) {
      absorb_y(y);
      continue;
    }
    if (a == 0) {
      if (x < 0) {
        x = -x;
        y = -y;
      }
      a = x;
      b = y;
      continue;
    }
    ExtGcd e = ext_gcd(a, x);
    long long resid = (a / e.g) * y - (x / e.g) * b;
    b = e.u * b + e.w * y;
    a = e.g;
    absorb_y(resid);
  }
  return a == 1 && c == 1;
}

// One step of the counterclockwise walk around a vertex: a corner is named
// by its incoming boundary slot.
struct CrossSlot {
  int edge;
  int sign;
};

struct LinkWalks {
  std::vector<std::vector<CrossSlot>> cw;  // clockwise crossing cycle per vertex
  std::vector<int> bad_vertices;           // link not a single cycle
};

LinkWalks walk_vertex_links(const ToroidalComplex& c) {
  const int nv = c.num_vertices;
  std::vector<std::vector<SlotRef>> in_slots(static_cast<size_t>(nv));
  for (int f = 0; f < c.num_faces(); ++f) {
    const auto& face = c.faces[static_cast<size_t>(f)];
    for (int i = 0; i < static_cast<int>(face.size()); ++i) {
      int v = c.slot_end_vertex(face[static_cast<size_t>(i)]);
      in_slots[static_cast<size_t>(v)].push_back({f, i});
    }
  }

  LinkWalks out;
  out.cw.resize(static_cast<size_t>(nv));
  for (int v = 0; v < nv; ++v) {
    const auto& slots = in_slots[static_cast<size_t>(v)];
    if (slots.empty()) {
      out.bad_vertices.push_back(v);
      continue;
    }
    SlotRef start = *std::min_element(
        slots.begin(), slots.end(),
        [](const SlotRef& a, const SlotRef& b) { return std::tie(a.face, a.slot) < std::tie(b.face, b.slot); });
    SlotRef cur = start;
    std::vector<CrossSlot> cycle;
    bool closed = false;
    for (size_t step = 0; step <= slots.size(); ++step) {
      const auto& face = c.faces[static_cast<size_t>(cur.face)];
      const SignedSlot out_slot = face[(static_cast<size_t>(cur.slot) + 1) % face.size()];
      cycle.push_back({out_slot.edge, out_slot.sign > 0 ? -1 : +1});
      cur = out_slot.sign > 0 ? c.neg_slot[static_cast<size_t>(out_slot.edge)]
                              : c.pos_slot[static_cast<size_t>(out_slot.edge)];
      if (cur.face == start.face && cur.slot == start.slot) {
        closed = true;
        break;
      }
    }
    if (!closed || cycle.size() != slots.size()) {
      out.bad_vertices.push_back(v);
      continue;
    }
    out.cw[static_cast<size_t>(v)] = std::move(cycle);
  }
  return out;
}

struct LabelVecLess {
  bool operator()(const LabelVec& a, const LabelVec& b) const {
    return std::tie(a.x(), a.y()) < std::tie(b.x(), b.y());
  }
};

// Choose the stored rotation of each dual face so that dualizing the dual
// reproduces the primal labels negated exactly, not just up to an exact
// integer form. The discrepancy of the current rotations is an exact form
// d r; a rotation of the face at v shifts its anchor by a boundary prefix
// translate t_j, so we need r(v) - t_j(v) constant across vertices.
void rotate_for_involution(const ToroidalComplex& primal, ToroidalComplex& dual) {
  const int ne = primal.num_edges();
  const int nv = primal.num_vertices;

  CornerTranslates zz = face_corner_translates(dual);
  std::vector<LabelVec> delta(static_cast<size_t>(ne));
  bool all_zero = true;
  for (int e = 0; e < ne; ++e) {
    delta[static_cast<size_t>(e)] =
        (zz.at_neg[static_cast<size_t>(e)] - zz.at_pos[static_cast<size_t>(e)]) +
        primal.edges[static_cast<size_t>(e)].label;
    if (delta[static_cast<size_t>(e)] != LabelVec::Zero()) all_zero = false;
  }
  if (all_zero) return;

  TreeCotree tree = build_tree_cotree(primal, 0);
  std::vector<LabelVec> r(static_cast<size_t>(nv), LabelVec::Zero());
  for (int v : tree.bfs_order) {
    if (v == tree.root) continue;
    int e = tree.parent_edge[static_cast<size_t>(v)];
    const EdgeRecord& rec = primal.edges[static_cast<size_t>(e)];
    if (tree.parent_sign[static_cast<size_t>(v)] > 0)
      r[static_cast<size_t>(v)] = r[static_cast<size_t>(rec.tail)] + delta[static_cast<size_t>(e)];
    else
      r[static_cast<size_t>(v)] = r[static_cast<size_t>(rec.head)] - delta[static_cast<size_t>(e)];
  }
  for (int e = 0; e < ne; ++e) {
    const EdgeRecord& rec = primal.edges[static_cast<size_t>(e)];
    if (r[static_cast<size_t>(rec.head)] - r[static_cast<size_t>(rec.tail)] != delta[static_cast<size_t>(e)])
      return;  // discrepancy is not an exact form; keep the built rotations
  }

  // Achievable anchor shifts per vertex: boundary prefix translates of the
  // dual face at v.
  std::vector<std::vector<LabelVec>> prefix(static_cast<size_t>(nv));
  std::vector<std::set<LabelVec, LabelVecLess>> achievable(static_cast<size_t>(nv));
  for (int v = 0; v < nv; ++v) {
    const auto& face = dual.faces[static_cast<size_t>(v)];
    LabelVec t = LabelVec::Zero();
    for (const SignedSlot& s : face) {
      prefix[static_cast<size_t>(v)].push_back(t);
      achievable[static_cast<size_t>(v)].insert(r[static_cast<size_t>(v)] - t);
      t += s.sign * dual.edges[static_cast<size_t>(s.edge)].label;
    }
  }

  int smallest = 0;
  for (int v = 1; v < nv; ++v)
    if (achievable[static_cast<size_t>(v)].size() < achievable[static_cast<size_t>(smallest)].size())
      smallest = v;

  std::optional<LabelVec> rho;
  for (const LabelVec& cand : achievable[static_cast<size_t>(smallest)]) {
    bool everywhere = true;
    for (int v = 0; v < nv && everywhere; ++v)
      everywhere = achievable[static_cast<size_t>(v)].count(cand) > 0;
    if (everywhere) {
      rho = cand;
      break;
    }
  }
  if (!rho) return;  // no common anchor; dual is still valid as built

  for (int v = 0; v < nv; ++v) {
    auto& face = dual.faces[static_cast<size_t>(v)];
    for (size_t j = 0; j < face.size(); ++j) {
      if (r[static_cast<size_t>(v)] - prefix[static_cast<size_t>(v)][j] == *rho) {
        std::rotate(face.begin(), face.begin() + static_cast<std::ptrdiff_t>(j), face.end());
        break;
      }
    }
  }
  index_slots(dual);
}

}  // namespace

bool index_slots(ToroidalComplex& complex) {
  const size_t ne = complex.edges.size();
  complex.pos_slot.assign(ne, SlotRef{});
  complex.neg_slot.assign(ne, SlotRef{});
  std::vector<int> pos_count(ne, 0), neg_count(ne, 0);
  for (int f = 0; f < complex.num_faces(); ++f) {
    const auto& face = complex.faces[static_cast<size_t>(f)];
    for (int i = 0; i < static_cast<int>(face.size()); ++i) {
      const SignedSlot& s = face[static_cast<size_t>(i)];
      if (s.sign > 0) {
        complex.pos_slot[static_cast<size_t>(s.edge)] = {f, i};
        ++pos_count[static_cast<size_t>(s.edge)];
      } else {
        complex.neg_slot[static_cast<size_t>(s.edge)] = {f, i};
        ++neg_count[static_cast<size_t>(s.edge)];
      }
    }
  }
  for (size_t e = 0; e < ne; ++e)
    if (pos_count[e] != 1 || neg_count[e] != 1) return false;
  return true;
}

EdgeWeights EdgeWeights::from(VectorXr values) {
  EdgeWeights w;
  w.all_positive = (values.size() == 0) || (values.array() > 0).all();
  w.c = std::move(values);
  return w;
}

bool ValidationReport::has(const std::string& code) const {
  for (const Violation& v : violations)
    if (v.code == code) return true;
  return false;
}

std::string ValidationReport::summary() const {
  if (violations.empty()) return "valid";
  std::ostringstream os;
  for (const Violation& v : violations) os << v.code << ": " << v.message << "\n";
  return os.str();
}

ValidationReport validate_complex(const ToroidalComplex& input) {
  ValidationReport rep;
  auto add = [&rep](const std::string& code, const std::string& msg) {
    rep.violations.push_back({code, msg});
  };

  ToroidalComplex c = input;  // local copy so slot tables can be rebuilt
  const int nv = c.num_vertices;
  const int ne = c.num_edges();
  const int nf = c.num_faces();

  if (nv < 1 || ne < 1 || nf < 1) {
    add("empty_complex", "complex needs at least one vertex, edge and face");
    return rep;
  }
  for (int e = 0; e < ne; ++e) {
    const EdgeRecord& rec = c.edges[static_cast<size_t>(e)];
    if (rec.tail < 0 || rec.tail >= nv || rec.head < 0 || rec.head >= nv) {
      add("unknown_vertex", "edge id " + std::to_string(rec.id) + " references a vertex out of range");
      return rep;
    }
  }
  for (int f = 0; f < nf; ++f)
    for (const SignedSlot& s : c.faces[static_cast<size_t>(f)])
      if (s.edge < 0 || s.edge >= ne) {
        add("unknown_edge", "face " + std::to_string(f) + " references an unknown edge");
        return rep;
      }

  if (!index_slots(c)) {
    std::vector<int> pos(static_cast<size_t>(ne), 0), neg(static_cast<size_t>(ne), 0);
    for (const auto& face : c.faces)
      for (const SignedSlot& s : face) (s.sign > 0 ? pos : neg)[static_cast<size_t>(s.edge)]++;
    for (int e = 0; e < ne; ++e)
      if (pos[static_cast<size_t>(e)] != 1 || neg[static_cast<size_t>(e)] != 1)
        add("nonmanifold_edge",
            "edge id " + std::to_string(c.edges[static_cast<size_t>(e)].id) + " appears " +
                std::to_string(pos[static_cast<size_t>(e)]) + " times forward and " +
                std::to_string(neg[static_cast<size_t>(e)]) + " times backward in face boundaries");
    return rep;
  }

  for (int f = 0; f < nf; ++f) {
    LabelVec sum = face_label_sum(c, c.faces[static_cast<size_t>(f)]);
    if (sum != LabelVec::Zero())
      add("face_label_sum", "face " + std::to_string(f) + ": label sum (" + std::to_string(sum.x()) +
                                "," + std::to_string(sum.y()) + ") != (0,0)");
  }
  if (!rep.valid()) return rep;

  // Connectivity of the underlying graph.
  std::vector<char> seen(static_cast<size_t>(nv), 0);
  std::queue<int> queue;
  queue.push(0);
  seen[0] = 1;
  int reached = 1;
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(nv));
  for (int e = 0; e < ne; ++e) {
    adj[static_cast<size_t>(c.edges[static_cast<size_t>(e)].tail)].push_back({e, +1});
    adj[static_cast<size_t>(c.edges[static_cast<size_t>(e)].head)].push_back({e, -1});
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop();
    for (auto [e, dir] : adj[static_cast<size_t>(u)]) {
      const EdgeRecord& rec = c.edges[static_cast<size_t>(e)];
      int v = dir > 0 ? rec.head : rec.tail;
      if (!seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = 1;
        ++reached;
        queue.push(v);
      }
    }
  }
  if (reached != nv) {
    add("disconnected", "graph has unreachable vertices (" + std::to_string(nv - reached) + ")");
    return rep;
  }

  if (nv - ne + nf != 0)
    add("euler_characteristic", "V - E + F = " + std::to_string(nv - ne + nf) + ", expected 0");

  LinkWalks links = walk_vertex_links(c);
  for (int v : links.bad_vertices)
    add("vertex_link", "link of vertex " + std::to_string(v) + " is not a single cycle");
  if (!rep.valid()) return rep;

  TreeCotree tree = build_tree_cotree(c, 0);
  if (!lattice_unimodular(tree.cycle_class))
    add("marking_not_unimodular",
        "cycle label classes do not span the unit lattice; periods cannot normalize to the identity");

  return rep;
}

ValidationOutcome validate_complex(const RawComplex& raw) {
  ValidationOutcome out;
  auto add = [&out](const std::string& code, const std::string& msg) {
    out.report.violations.push_back({code, msg});
  };

  if (raw.num_vertices < 1) add("empty_complex", "num_vertices must be at least 1");
  if (raw.edges.empty()) add("empty_complex", "edge list is empty");
  if (raw.faces.empty()) add("empty_complex", "face list is empty");
  if (!out.report.valid()) return out;

  std::unordered_map<long long, int> index_of_id;
  for (size_t i = 0; i < raw.edges.size(); ++i) {
    const RawEdge& e = raw.edges[i];
    if (e.id < 0 || e.id > std::numeric_limits<int>::max() - 1)
      add("bad_edge_id", "edge id " + std::to_string(e.id) + " out of range");
    else if (!index_of_id.emplace(e.id, static_cast<int>(i)).second)
      add("duplicate_edge_id", "edge id " + std::to_string(e.id) + " appears more than once");
    if (e.tail < 0 || e.tail >= raw.num_vertices || e.head < 0 || e.head >= raw.num_vertices)
      add("unknown_vertex", "edge id " + std::to_string(e.id) + " references a vertex out of range");
    if (e.weight == 0.0)
      add("zero_weight", "edge id " + std::to_string(e.id) + " has zero weight");
  }
  if (!out.report.valid()) return out;

  ToroidalComplex c;
  c.num_vertices = static_cast<int>(raw.num_vertices);
  VectorXr weights(static_cast<Eigen::Index>(raw.edges.size()));
  for (size_t i = 0; i < raw.edges.size(); ++i) {
    const RawEdge& e = raw.edges[i];
    c.edges.push_back({static_cast<int>(e.id), static_cast<int>(e.tail), static_cast<int>(e.head),
                       LabelVec(static_cast<int>(e.dx), static_cast<int>(e.dy))});
    weights[static_cast<Eigen::Index>(i)] = e.weight;
  }
  for (size_t f = 0; f < raw.faces.size(); ++f) {
    std::vector<SignedSlot> face;
    for (long long entry : raw.faces[f]) {
      if (entry == 0) {
        add("bad_face_entry", "face " + std::to_string(f) + " contains entry 0");
        continue;
      }
      long long id = (entry > 0 ? entry : -entry) - 1;
      auto it = index_of_id.find(id);
      if (it == index_of_id.end()) {
        add("unknown_edge",
            "face " + std::to_string(f) + " references unknown edge id " + std::to_string(id));
        continue;
      }
      face.push_back({it->second, entry > 0 ? +1 : -1});
    }
    c.faces.push_back(std::move(face));
  }
  if (!out.report.valid()) return out;

  ValidationReport structural = validate_complex(c);
  for (Violation& v : structural.violations) out.report.violations.push_back(std::move(v));
  if (!out.report.valid()) return out;

  index_slots(c);
  out.complex = std::move(c);
  out.weights = EdgeWeights::from(std::move(weights));
  return out;
}

TreeCotree build_tree_cotree(const ToroidalComplex& c, int root) {
  const int nv = c.num_vertices;
  const int ne = c.num_edges();
  TreeCotree t;
  t.root = root;
  t.parent_edge.assign(static_cast<size_t>(nv), -1);
  t.parent_sign.assign(static_cast<size_t>(nv), 0);
  t.vertex_shift.assign(static_cast<size_t>(nv), LabelVec::Zero());

  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(nv));
  for (int e = 0; e < ne; ++e) {
    adj[static_cast<size_t>(c.edges[static_cast<size_t>(e)].tail)].push_back({e, +1});
    adj[static_cast<size_t>(c.edges[static_cast<size_t>(e)].head)].push_back({e, -1});
  }

  std::vector<char> visited(static_cast<size_t>(nv), 0), in_tree(static_cast<size_t>(ne), 0);
  std::queue<int> queue;
  visited[static_cast<size_t>(root)] = 1;
  queue.push(root);
  t.bfs_order.push_back(root);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop();
    for (auto [e, dir] : adj[static_cast<size_t>(u)]) {
      const EdgeRecord& rec = c.edges[static_cast<size_t>(e)];
      int v = dir > 0 ? rec.head : rec.tail;
      if (visited[static_cast<size_t>(v)]) continue;
      visited[static_cast<size_t>(v)] = 1;
      in_tree[static_cast<size_t>(e)] = 1;
      t.parent_edge[static_cast<size_t>(v)] = e;
      t.parent_sign[static_cast<size_t>(v)] = dir;
      t.vertex_shift[static_cast<size_t>(v)] = t.vertex_shift[static_cast<size_t>(u)] + dir * rec.label;
      t.bfs_order.push_back(v);
      queue.push(v);
    }
  }

  for (int e = 0; e < ne; ++e) {
    if (in_tree[static_cast<size_t>(e)]) continue;
    const EdgeRecord& rec = c.edges[static_cast<size_t>(e)];
    t.cotree.push_back(e);
    t.cycle_class.push_back(rec.label + t.vertex_shift[static_cast<size_t>(rec.tail)] -
                            t.vertex_shift[static_cast<size_t>(rec.head)]);
  }
  return t;
}

CornerTranslates face_corner_translates(const ToroidalComplex& c) {
  CornerTranslates z;
  z.at_pos.assign(c.edges.size(), LabelVec::Zero());
  z.at_neg.assign(c.edges.size(), LabelVec::Zero());
  for (const auto& face : c.faces) {
    LabelVec t = LabelVec::Zero();
    for (const SignedSlot& s : face) {
      const LabelVec& label = c.edges[static_cast<size_t>(s.edge)].label;
      if (s.sign > 0) {
        z.at_pos[static_cast<size_t>(s.edge)] = t;
        t += label;
      } else {
        t -= label;
        z.at_neg[static_cast<size_t>(s.edge)] = t;
      }
    }
  }
  return z;
}

DualComplex build_dual(const ToroidalComplex& primal) {
  CornerTranslates zeta = face_corner_translates(primal);

  DualComplex dual;
  ToroidalComplex& d = dual.complex;
  d.num_vertices = primal.num_faces();
  d.edges.resize(primal.edges.size());
  for (size_t e = 0; e < primal.edges.size(); ++e) {
    d.edges[e].id = primal.edges[e].id;
    d.edges[e].tail = primal.neg_slot[e].face;  // right face of e
    d.edges[e].head = primal.pos_slot[e].face;  // left face of e
    d.edges[e].label = zeta.at_neg[e] - zeta.at_pos[e];
  }

  LinkWalks links = walk_vertex_links(primal);
  d.faces.resize(static_cast<size_t>(primal.num_vertices));
  for (int v = 0; v < primal.num_vertices; ++v) {
    const auto& cw = links.cw[static_cast<size_t>(v)];
    std::vector<SignedSlot> ccw;
    ccw.reserve(cw.size());
    for (auto it = cw.rbegin(); it != cw.rend(); ++it) ccw.push_back({it->edge, -it->sign});
    d.faces[static_cast<size_t>(v)] = std::move(ccw);
  }
  index_slots(d);
  rotate_for_involution(primal, d);
  return dual;
}

}  // namespace torusopt
