#pragma once

// Container monads and comonads, free-monad trees, cofree-comonad
// machines, monad-comonad interaction laws and their checker, product
// and composite constructions, the Sweedler-dual instances, and the
// coequation machinery.
//
// A monad unit is a distinguished shape applied to a constant payload
// (the morphism Id -> C). Multiplication is a possibly partial morphism
// C.C -> C: the truncated nonempty-list monad rejects concatenations
// that exceed its bound, and every checker restricts itself to the
// defined instances.

#include "ilaw/dual.hpp"

namespace ilaw {

// ---- monads ---------------------------------------------------------------

struct ContainerMonad {
  std::string name;
  Container c;
  Index unit_shape = 0;
  ComposedContainer square;                      // c.c
  std::vector<std::optional<Index>> mult_shape;  // per square shape
  std::vector<std::vector<Index>> mult_pos;      // per square shape (where defined)

  bool mult_defined(Index sq_shape) const { return mult_shape[sq_shape].has_value(); }
};

inline ContainerElement universal_element(const Container& c, Index shape) {
  ContainerElement e;
  e.shape = shape;
  e.payload.resize(c.pos(shape).size());
  std::iota(e.payload.begin(), e.payload.end(), Index{0});
  return e;
}

inline ContainerElement monad_unit_elem(const ContainerMonad& t, Index x) {
  return ContainerElement{t.unit_shape,
                          std::vector<Index>(t.c.pos(t.unit_shape).size(), x)};
}

inline std::optional<ContainerElement> monad_join_elem(const ContainerMonad& t,
                                                       const ContainerElement& sq_elem) {
  if (!t.mult_defined(sq_elem.shape)) return std::nullopt;
  ContainerElement r;
  r.shape = *t.mult_shape[sq_elem.shape];
  const auto& pm = t.mult_pos[sq_elem.shape];
  r.payload.reserve(pm.size());
  for (Index p : pm) r.payload.push_back(sq_elem.payload.at(p));
  return r;
}

// Monad laws, elementwise at universal carriers; associativity iterates
// lazily over triple nestings and skips instances whose multiplications
// fall outside the defined region.
inline bool monad_laws_check(const ContainerMonad& t) {
  const Container& c = t.c;
  // left unit: join(unit-shaped square with one kid e) = e
  for (Index s = 0; s < c.shape_count(); ++s) {
    ContainerElement e = universal_element(c, s);
    std::vector<ContainerElement> kids(c.pos(t.unit_shape).size(), e);
    ContainerElement sq = fuse_element(t.square, t.unit_shape, kids);
    auto j = monad_join_elem(t, sq);
    if (!j || !(*j == e)) return false;
  }
  // right unit: join(e with unit kids per payload slot) = e
  for (Index s = 0; s < c.shape_count(); ++s) {
    ContainerElement e = universal_element(c, s);
    std::vector<ContainerElement> kids;
    for (Index p = 0; p < e.payload.size(); ++p) kids.push_back(monad_unit_elem(t, e.payload[p]));
    ContainerElement sq = fuse_element(t.square, s, kids);
    auto j = monad_join_elem(t, sq);
    if (!j || !(*j == e)) return false;
  }
  // associativity on defined triples
  for (Index s0 = 0; s0 < c.shape_count(); ++s0) {
    std::size_t arity = c.pos(s0).size();
    // assign each outer position a defined square shape
    std::vector<Index> defined;
    for (Index q = 0; q < t.square.c.shape_count(); ++q)
      if (t.mult_defined(q)) defined.push_back(q);
    if (defined.empty() && arity > 0) continue;
    std::vector<std::size_t> choice(arity, 0);
    for (;;) {
      // build the triple: s0 with a square element per position, payload
      // indices globally consecutive
      std::vector<ContainerElement> sq_kids;
      Index next = 0;
      for (Index p = 0; p < arity; ++p) {
        Index qs = defined[choice[p]];
        ContainerElement k;
        k.shape = qs;
        k.payload.resize(t.square.c.pos(qs).size());
        std::iota(k.payload.begin(), k.payload.end(), next);
        next += k.payload.size();
        sq_kids.push_back(std::move(k));
      }
      // path B: join each kid, then join the outer square
      bool okB = true;
      std::vector<ContainerElement> joined;
      for (const auto& k : sq_kids) {
        auto j = monad_join_elem(t, k);
        if (!j) {
          okB = false;
          break;
        }
        joined.push_back(*j);
      }
      std::optional<ContainerElement> resB;
      if (okB) {
        ContainerElement outer_sq = fuse_element(t.square, s0, joined);
        resB = monad_join_elem(t, outer_sq);
      }
      // path A: flatten the outer two layers first, then join again
      // outer square: (s0, outer shapes of each kid)
      std::optional<ContainerElement> resA;
      {
        std::vector<ContainerElement> outer_kids;  // T-elements over "inner T-element" slots
        std::vector<ContainerElement> inners;      // flattened inner T-elements over X
        for (const auto& k : sq_kids) {
          auto [os, ik] = split_element(t.square, k);
          ContainerElement ok;
          ok.shape = os;
          ok.payload.resize(ik.size());
          for (Index q = 0; q < ik.size(); ++q) {
            ok.payload[q] = inners.size();
            inners.push_back(ik[q]);
          }
          outer_kids.push_back(std::move(ok));
        }
        ContainerElement outer_sq = fuse_element(t.square, s0, outer_kids);
        auto flat = monad_join_elem(t, outer_sq);  // T-element over inner slots
        if (flat) {
          std::vector<ContainerElement> kids2;
          for (Index v : flat->payload) kids2.push_back(inners[v]);
          ContainerElement sq2 = fuse_element(t.square, flat->shape, kids2);
          resA = monad_join_elem(t, sq2);
        }
      }
      if (resA.has_value() && resB.has_value() && !(*resA == *resB)) return false;
      // advance odometer
      std::size_t i = arity;
      bool done = arity == 0;
      while (i-- > 0) {
        if (++choice[i] < defined.size()) break;
        choice[i] = 0;
        if (i == 0) done = true;
      }
      if (done) break;
    }
  }
  return true;
}

// ---- comonads ---------------------------------------------------------------

struct ContainerComonad {
  std::string name;
  Container c;
  std::vector<Index> counit_pos;  // per shape
  ComposedContainer square;       // c.c
  std::vector<Index> comult_shape;             // per shape -> square shape
  std::vector<std::vector<Index>> comult_pos;  // per shape: P_sq(comult_shape) -> P(shape)
};

inline Index comonad_extract(const ContainerComonad& d, const ContainerElement& e) {
  return e.payload.at(d.counit_pos[e.shape]);
}

inline ContainerElement comonad_duplicate_elem(const ContainerComonad& d,
                                               const ContainerElement& e) {
  ContainerElement r;
  r.shape = d.comult_shape[e.shape];
  const auto& pm = d.comult_pos[e.shape];
  r.payload.reserve(pm.size());
  for (Index p : pm) r.payload.push_back(e.payload.at(p));
  return r;
}

inline bool comonad_laws_check(const ContainerComonad& d) {
  const Container& c = d.c;
  for (Index s = 0; s < c.shape_count(); ++s) {
    ContainerElement e = universal_element(c, s);
    ContainerElement dd = comonad_duplicate_elem(d, e);
    auto [t0, kids] = split_element(d.square, dd);
    // left counit: outer extraction returns e
    if (!(kids.at(d.counit_pos[t0]) == e)) return false;
    // right counit: extracting each kid returns e
    ContainerElement r;
    r.shape = t0;
    for (const auto& k : kids) r.payload.push_back(comonad_extract(d, k));
    if (!(r == e)) return false;
    // coassociativity: compare full depth-3 unfoldings
    // path A: duplicate the outer layer of dd
    ContainerElement outer;
    outer.shape = t0;
    outer.payload.resize(kids.size());
    std::iota(outer.payload.begin(), outer.payload.end(), Index{0});
    ContainerElement ddA = comonad_duplicate_elem(d, outer);
    auto [t00, midsA] = split_element(d.square, ddA);
    // path B: duplicate each kid of dd
    std::vector<std::pair<Index, std::vector<ContainerElement>>> deepB;
    for (const auto& k : kids) deepB.push_back(split_element(d.square, comonad_duplicate_elem(d, k)));
    // compare: A gives (t00, per position u a D-element over kid indices);
    // B gives (t0, per position p a (shape, inner kids)) -- same data once
    // A's mid elements are expanded to their referenced kids
    if (t00 != t0) return false;
    if (midsA.size() != deepB.size()) return false;
    for (Index u = 0; u < midsA.size(); ++u) {
      if (midsA[u].shape != deepB[u].first) return false;
      for (Index v = 0; v < midsA[u].payload.size(); ++v)
        if (!(kids[midsA[u].payload[v]] == deepB[u].second[v])) return false;
    }
  }
  return true;
}

// ---- free monad trees -------------------------------------------------------

struct FreeTree {
  bool leaf = true;
  Index value = 0;              // carrier index when leaf
  Index shape = 0;              // node shape otherwise
  std::vector<FreeTree> kids;   // one per position of the node shape

  static FreeTree mk_leaf(Index x) {
    FreeTree t;
    t.leaf = true;
    t.value = x;
    return t;
  }
  static FreeTree mk_node(Index s, std::vector<FreeTree> kids) {
    FreeTree t;
    t.leaf = false;
    t.shape = s;
    t.kids = std::move(kids);
    return t;
  }

  friend bool operator==(const FreeTree& a, const FreeTree& b) {
    if (a.leaf != b.leaf) return false;
    if (a.leaf) return a.value == b.value;
    return a.shape == b.shape && a.kids == b.kids;
  }
};

inline std::size_t tree_depth(const FreeTree& t) {
  if (t.leaf) return 0;
  std::size_t d = 0;
  for (const auto& k : t.kids) d = std::max(d, tree_depth(k));
  return d + 1;
}

// bind = grafting: replace each leaf x with k(x)
inline FreeTree tree_bind(const FreeTree& t, const std::function<FreeTree(Index)>& k) {
  if (t.leaf) return k(t.value);
  std::vector<FreeTree> kids;
  kids.reserve(t.kids.size());
  for (const auto& c : t.kids) kids.push_back(tree_bind(c, k));
  return FreeTree::mk_node(t.shape, std::move(kids));
}

// join: a tree whose leaves index into a table of trees
inline FreeTree tree_join(const FreeTree& t, const std::vector<FreeTree>& table) {
  return tree_bind(t, [&](Index x) { return table.at(x); });
}

// All trees over carrier {0..xsize-1} of depth <= depth: T_0 = leaves,
// T_{d+1} = leaves + nodes with kids in T_d.
inline std::vector<FreeTree> enumerate_trees(const Container& sig, std::size_t xsize,
                                             std::size_t depth) {
  std::vector<FreeTree> leaves;
  for (Index x = 0; x < xsize; ++x) leaves.push_back(FreeTree::mk_leaf(x));
  std::vector<FreeTree> all = leaves;
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<FreeTree> next = leaves;
    for (Index s = 0; s < sig.shape_count(); ++s) {
      std::size_t arity = sig.pos(s).size();
      std::size_t count = checked_pow(all.size(), arity, "enumerate_trees");
      std::vector<std::size_t> radices(arity, all.size());
      for (std::size_t i = 0; i < count; ++i) {
        auto digits = mixed_radix_digits(i, radices);
        std::vector<FreeTree> kids;
        kids.reserve(arity);
        for (Index ix : digits) kids.push_back(all[ix]);
        next.push_back(FreeTree::mk_node(s, std::move(kids)));
      }
      guarded(next.size(), "enumerate_trees");
    }
    all = std::move(next);
  }
  return all;
}

// ---- machines (cofree comonad, coalgebraically) -----------------------------

struct Machine {
  FinSet states;
  std::vector<Index> out;               // per state: label index
  std::vector<ContainerElement> step;   // per state: element of G over states
  Index current = 0;
};

inline Machine machine_at(Machine m, Index state) {
  m.current = state;
  return m;
}

inline Index machine_extract(const Machine& m) { return m.out[m.current]; }

// Duplicate labels every state with itself, so outputs become machine
// snapshots (read one back with machine_at).
inline Machine machine_duplicate(Machine m) {
  std::iota(m.out.begin(), m.out.end(), Index{0});
  return m;
}

struct BehaviorTree {
  Index out = 0;
  std::optional<Index> shape;       // nullopt below the observation depth
  std::vector<BehaviorTree> kids;

  friend bool operator==(const BehaviorTree& a, const BehaviorTree& b) {
    return a.out == b.out && a.shape == b.shape && a.kids == b.kids;
  }
};

inline BehaviorTree observe(const Machine& m, std::size_t depth) {
  BehaviorTree b;
  b.out = m.out[m.current];
  if (depth == 0) return b;
  const ContainerElement& e = m.step[m.current];
  b.shape = e.shape;
  b.kids.reserve(e.payload.size());
  for (Index z : e.payload) b.kids.push_back(observe(machine_at(m, z), depth - 1));
  return b;
}

inline bool machines_equiv(const Machine& a, const Machine& b, std::size_t depth = 4) {
  return observe(a, depth) == observe(b, depth);
}

// Exact bisimilarity for finite machines over the same label set.
inline bool machines_bisimilar(const Machine& a, const Machine& b) {
  std::vector<std::vector<int>> seen(a.states.size(), std::vector<int>(b.states.size(), 0));
  std::function<bool(Index, Index)> go = [&](Index za, Index zb) -> bool {
    if (seen[za][zb]) return true;
    seen[za][zb] = 1;
    if (a.out[za] != b.out[zb]) return false;
    const auto& ea = a.step[za];
    const auto& eb = b.step[zb];
    if (ea.shape != eb.shape || ea.payload.size() != eb.payload.size()) return false;
    for (Index p = 0; p < ea.payload.size(); ++p)
      if (!go(ea.payload[p], eb.payload[p])) return false;
    return true;
  };
  if (a.out.size() == 0 || b.out.size() == 0) return a.out.size() == b.out.size();
  return go(a.current, b.current);
}

// All machines with the given state count over the signature, outputs in
// {0..ysize-1}; canonical order.
inline std::vector<Machine> enumerate_machines(const Container& sig, std::size_t states,
                                               std::size_t ysize) {
  FinSet z = range_set("Z", states, "z");
  auto elems = interpret(sig, z);
  std::vector<Machine> out;
  std::vector<std::size_t> radices;
  for (std::size_t i = 0; i < states; ++i) {
    radices.push_back(ysize);
    radices.push_back(elems.size());
  }
  std::size_t total = mixed_radix_size(radices, "enumerate_machines");
  for (std::size_t n = 0; n < total; ++n) {
    auto digits = mixed_radix_digits(n, radices);
    Machine m;
    m.states = z;
    for (std::size_t i = 0; i < states; ++i) {
      m.out.push_back(digits[2 * i]);
      m.step.push_back(elems[digits[2 * i + 1]]);
    }
    for (Index start = 0; start < states; ++start) {
      m.current = start;
      out.push_back(m);
    }
  }
  return out;
}

// ---- the canonical free MCIL: trees against machines of the dual ------------

struct TraceEvent {
  std::size_t step;
  Index tree_shape;
  Index position;
  Index state;
};

// run a tree against a machine of the dual container: at a node, the
// machine's step tuple chooses the child, the node's shape chooses the
// machine's successor.
inline std::pair<Index, Index> canonical_run(const DualContainer& d, const FreeTree& t,
                                             const Machine& m,
                                             std::vector<TraceEvent>* trace = nullptr) {
  if (t.leaf) return {t.value, m.out[m.current]};
  const ContainerElement& e = m.step[m.current];
  auto tup = d.tuple_at(e.shape);
  Index p = tup[t.shape];
  Index succ = e.payload[t.shape];
  if (trace)
    trace->push_back(TraceEvent{trace->size(), t.shape, p, succ});
  return canonical_run(d, t.kids[p], machine_at(m, succ), trace);
}

// ---- monad-comonad interaction laws -----------------------------------------

struct MCIL {
  ContainerMonad t;
  ContainerComonad d;
  InteractionLaw law;
};

struct CheckReport {
  bool ok = true;
  std::string diagram;                                  // which condition failed
  std::optional<std::pair<Index, Index>> counterexample;  // offending shape pair

  explicit operator bool() const { return ok; }
};

// Both mcil-condition diagrams, checked at universal carriers (complete
// by naturality of tables). The multiplication square is restricted to
// defined square shapes.
inline CheckReport mcil_check(const MCIL& m) {
  CheckReport rep;
  const auto& t = m.t;
  const auto& d = m.d;
  if (m.law.f != t.c || m.law.g != d.c)
    throw std::invalid_argument("mcil_check: law containers do not match monad/comonad");
  for (Index td = 0; td < d.c.shape_count(); ++td) {
    auto [p, q] = m.law.at(t.unit_shape, td);
    (void)p;  // the unit payload is constant, so p is unconstrained
    if (q != d.counit_pos[td]) {
      rep.ok = false;
      rep.diagram = "unit";
      rep.counterexample = {t.unit_shape, td};
      return rep;
    }
  }
  for (Index sq = 0; sq < t.square.c.shape_count(); ++sq) {
    if (!t.mult_defined(sq)) continue;
    Index s0 = t.square.outer_shape_of(sq);
    const auto& f = t.square.inner_shapes_of(sq);
    for (Index td = 0; td < d.c.shape_count(); ++td) {
      auto [pl, ql] = m.law.at(*t.mult_shape[sq], td);
      std::pair<Index, Index> lhs{t.mult_pos[sq][pl], ql};
      Index dsq = d.comult_shape[td];
      Index t0 = d.square.outer_shape_of(dsq);
      const auto& g = d.square.inner_shapes_of(dsq);
      auto [p1, q1] = m.law.at(s0, t0);
      auto [p2, q2] = m.law.at(f[p1], g[q1]);
      std::pair<Index, Index> rhs{t.square.pos_index(sq, p1, p2),
                                  d.comult_pos[td][d.square.pos_index(dsq, q1, q2)]};
      if (lhs != rhs) {
        rep.ok = false;
        rep.diagram = "mult";
        rep.counterexample = {sq, td};
        return rep;
      }
    }
  }
  return rep;
}

// ---- registered instances ----------------------------------------------------

inline ContainerMonad reader_monad(const FinSet& a) {
  ContainerMonad t;
  t.name = "reader(" + a.name + ")";
  t.c = c_reader(a);
  t.unit_shape = 0;
  t.square = c_compose(t.c, t.c);
  t.mult_shape.assign(t.square.c.shape_count(), Index{0});
  for (Index sq = 0; sq < t.square.c.shape_count(); ++sq) {
    std::vector<Index> pm(a.size());
    for (Index av = 0; av < a.size(); ++av) pm[av] = t.square.pos_index(sq, av, av);
    t.mult_pos.push_back(std::move(pm));
  }
  return t;
}

inline ContainerMonad writer_monad(const FinMonoid& b) {
  ContainerMonad t;
  t.name = "writer(" + b.elems.name + ")";
  t.c = c_writer(b.elems);
  t.unit_shape = b.unit;
  t.square = c_compose(t.c, t.c);
  t.mult_shape.resize(t.square.c.shape_count());
  t.mult_pos.resize(t.square.c.shape_count());
  for (Index sq = 0; sq < t.square.c.shape_count(); ++sq) {
    Index b0 = t.square.outer_shape_of(sq);
    Index b1 = t.square.inner_shapes_of(sq)[0];
    t.mult_shape[sq] = b.mul(b0, b1);
    t.mult_pos[sq] = {t.square.pos_index(sq, 0, 0)};
  }
  return t;
}

// Update monad T X = A => (B x X) for a monoid B acting on A.
inline ContainerMonad update_monad(const MonoidAction& act) {
  const FinSet& a = act.carrier;
  const FinMonoid& b = act.monoid;
  ContainerMonad t;
  t.name = "update(" + a.name + "," + b.elems.name + ")";
  ComposedContainer cc = c_compose(c_reader(a), c_writer(b.elems));
  t.c = cc.c;
  ExponentSet eab = exponent(a, b.elems);
  std::vector<Index> const_unit(a.size(), b.unit);
  t.unit_shape = eab.index_of(const_unit);
  t.square = c_compose(t.c, t.c);
  t.mult_shape.resize(t.square.c.shape_count());
  t.mult_pos.resize(t.square.c.shape_count());
  for (Index sq = 0; sq < t.square.c.shape_count(); ++sq) {
    Index fshape = t.square.outer_shape_of(sq);
    FinFn f = eab.fn_at(fshape);
    const auto& g = t.square.inner_shapes_of(sq);  // per a-position an inner T-shape
    std::vector<Index> h(a.size());
    std::vector<Index> inner_a(a.size());
    for (Index av = 0; av < a.size(); ++av) {
      Index bv = f(av);
      inner_a[av] = act.apply(av, bv);
      FinFn fg = eab.fn_at(g[av]);
      h[av] = b.mul(bv, fg(inner_a[av]));
    }
    t.mult_shape[sq] = eab.index_of(h);
    std::vector<Index> pm(a.size());
    for (Index av = 0; av < a.size(); ++av) pm[av] = t.square.pos_index(sq, av, inner_a[av]);
    t.mult_pos[sq] = std::move(pm);
  }
  return t;
}

// Truncated nonempty-list monad; concatenations beyond the bound are
// undefined.
inline ContainerMonad nelist_monad(std::size_t bound) {
  ContainerMonad t;
  t.name = "nelist" + std::to_string(bound);
  t.c = c_nelist(bound);
  t.unit_shape = 0;  // length 1
  t.square = c_compose(t.c, t.c);
  t.mult_shape.resize(t.square.c.shape_count());
  t.mult_pos.resize(t.square.c.shape_count());
  for (Index sq = 0; sq < t.square.c.shape_count(); ++sq) {
    Index n0 = t.square.outer_shape_of(sq);
    const auto& f = t.square.inner_shapes_of(sq);
    std::size_t total = 0;
    for (Index i = 0; i <= n0; ++i) total += f[i] + 1;  // shape i is length i+1
    if (total > bound) continue;  // undefined: truncation boundary
    t.mult_shape[sq] = total - 1;
    std::vector<Index> pm;
    pm.reserve(total);
    for (Index i = 0; i <= n0; ++i)
      for (Index j = 0; j <= f[i]; ++j) pm.push_back(t.square.pos_index(sq, i, j));
    t.mult_pos[sq] = std::move(pm);
  }
  return t;
}

inline ContainerComonad writer_comonad(const FinSet& a) {
  ContainerComonad d;
  d.name = "coreader(" + a.name + ")";
  d.c = c_writer(a);
  d.counit_pos.assign(a.size(), 0);
  d.square = c_compose(d.c, d.c);
  for (Index av = 0; av < a.size(); ++av) {
    d.comult_shape.push_back(d.square.shape_index(av, std::vector<Index>{av}));
    d.comult_pos.push_back({0});
  }
  return d;
}

inline ContainerComonad reader_comonad(const FinMonoid& b) {
  ContainerComonad d;
  d.name = "traced(" + b.elems.name + ")";
  d.c = c_reader(b.elems);
  d.counit_pos = {b.unit};
  d.square = c_compose(d.c, d.c);
  d.comult_shape = {0};
  std::vector<Index> pm(d.square.c.pos(0).size());
  for (Index r = 0; r < pm.size(); ++r) {
    auto [b0, b1] = d.square.pos_split(0, r);
    pm[r] = b.mul(b0, b1);
  }
  d.comult_pos = {std::move(pm)};
  return d;
}

// Update comonad D Y = A x (B => Y) for a monoid B acting on A.
inline ContainerComonad update_comonad(const MonoidAction& act) {
  const FinSet& a = act.carrier;
  const FinMonoid& b = act.monoid;
  ContainerComonad d;
  d.name = "update_comonad(" + a.name + "," + b.elems.name + ")";
  d.c = c_compose(c_writer(a), c_reader(b.elems)).c;
  d.counit_pos.assign(a.size(), b.unit);
  d.square = c_compose(d.c, d.c);
  for (Index av = 0; av < a.size(); ++av) {
    std::vector<Index> g(b.elems.size());
    for (Index bv = 0; bv < b.elems.size(); ++bv) g[bv] = act.apply(av, bv);
    Index sq = d.square.shape_index(av, g);
    d.comult_shape.push_back(sq);
    std::vector<Index> pm(d.square.c.pos(sq).size());
    for (Index r = 0; r < pm.size(); ++r) {
      auto [b0, b1] = d.square.pos_split(sq, r);
      pm[r] = b.mul(b0, b1);
    }
    d.comult_pos.push_back(std::move(pm));
  }
  return d;
}

// The Sweedler dual of the nonempty-list monad: D Y = Y x (Y + Y).
inline ContainerComonad nelist_sweedler_comonad() {
  ContainerComonad d;
  d.name = "sweedler(nelist)";
  FinSet ps("P", {"fst", "rest"});
  d.c = Container(FinSet("SwNE", {"l", "r"}), {ps, ps});
  d.counit_pos = {0, 0};
  d.square = c_compose(d.c, d.c);
  for (Index s = 0; s < 2; ++s) {
    Index sq = d.square.shape_index(s, std::vector<Index>{s, s});
    d.comult_shape.push_back(sq);
    // (fst,fst) -> fst; every other pair -> rest
    std::vector<Index> pm(d.square.c.pos(sq).size());
    for (Index r = 0; r < pm.size(); ++r) {
      auto [p, q] = d.square.pos_split(sq, r);
      pm[r] = (p == 0 && q == 0) ? 0 : 1;
    }
    d.comult_pos.push_back(std::move(pm));
  }
  return d;
}

// ---- registered MCILs ----------------------------------------------------------

inline MCIL reader_mcil(const FinSet& a) {
  ContainerMonad t = reader_monad(a);
  ContainerComonad d = writer_comonad(a);
  InteractionLaw law{t.c, d.c, {}};
  for (Index av = 0; av < a.size(); ++av) law.table.push_back({av, 0});
  return MCIL{std::move(t), std::move(d), std::move(law)};
}

inline MCIL writer_mcil(const FinMonoid& b) {
  ContainerMonad t = writer_monad(b);
  ContainerComonad d = reader_comonad(b);
  InteractionLaw law{t.c, d.c, {}};
  for (Index bv = 0; bv < b.elems.size(); ++bv) law.table.push_back({0, bv});
  return MCIL{std::move(t), std::move(d), std::move(law)};
}

inline MCIL update_mcil(const MonoidAction& act) {
  ContainerMonad t = update_monad(act);
  ContainerComonad d = update_comonad(act);
  ExponentSet eab = exponent(act.carrier, act.monoid.elems);
  InteractionLaw law{t.c, d.c, {}};
  for (Index fs = 0; fs < t.c.shape_count(); ++fs) {
    FinFn f = eab.fn_at(fs);
    for (Index av = 0; av < d.c.shape_count(); ++av) law.table.push_back({av, f(av)});
  }
  return MCIL{std::move(t), std::move(d), std::move(law)};
}

// The initial MCIL (Id, Id, id).
inline MCIL identity_mcil() {
  ContainerMonad t;
  t.name = "id";
  t.c = c_id();
  t.unit_shape = 0;
  t.square = c_compose(t.c, t.c);
  t.mult_shape.assign(1, Index{0});
  t.mult_pos.assign(1, {0});
  ContainerComonad d;
  d.name = "id";
  d.c = c_id();
  d.counit_pos = {0};
  d.square = c_compose(d.c, d.c);
  d.comult_shape = {0};
  d.comult_pos = {{0}};
  return MCIL{std::move(t), std::move(d), il_identity()};
}

// The final MCIL (1, 0).
inline MCIL final_mcil() {
  ContainerMonad t;
  t.name = "one";
  t.c = c_const(unit_set());
  t.unit_shape = 0;
  t.square = c_compose(t.c, t.c);
  t.mult_shape.assign(1, Index{0});
  t.mult_pos.assign(1, {});
  ContainerComonad d;
  d.name = "zero";
  d.c = Container(empty_set("S"), {});
  d.square = c_compose(d.c, d.c);
  InteractionLaw law{t.c, d.c, {}};
  return MCIL{std::move(t), std::move(d), std::move(law)};
}

// ---- product of MCILs ------------------------------------------------------------

inline ContainerMonad monad_product(const ContainerMonad& t0, const ContainerMonad& t1) {
  ContainerMonad t;
  t.name = "(" + t0.name + "x" + t1.name + ")";
  t.c = c_product(t0.c, t1.c);
  std::size_t s1n = t1.c.shape_count();
  t.unit_shape = t0.unit_shape * s1n + t1.unit_shape;
  t.square = c_compose(t.c, t.c);
  t.mult_shape.resize(t.square.c.shape_count());
  t.mult_pos.resize(t.square.c.shape_count());
  for (Index sq = 0; sq < t.square.c.shape_count(); ++sq) {
    Index outer = t.square.outer_shape_of(sq);
    Index s0 = outer / s1n, s1 = outer % s1n;
    const auto& f = t.square.inner_shapes_of(sq);
    std::size_t left = t0.c.pos(s0).size();
    // component squares
    std::vector<Index> f0(left), f1(f.size() - left);
    for (Index p = 0; p < left; ++p) f0[p] = f[p] / s1n;
    for (Index p = left; p < f.size(); ++p) f1[p - left] = f[p] % s1n;
    Index sq0 = t0.square.shape_index(s0, f0);
    Index sq1 = t1.square.shape_index(s1, f1);
    if (!t0.mult_defined(sq0) || !t1.mult_defined(sq1)) continue;
    Index m0 = *t0.mult_shape[sq0], m1 = *t1.mult_shape[sq1];
    t.mult_shape[sq] = m0 * s1n + m1;
    std::vector<Index> pm;
    pm.reserve(t0.c.pos(m0).size() + t1.c.pos(m1).size());
    for (Index p = 0; p < t0.c.pos(m0).size(); ++p) {
      auto [po, pi] = t0.square.pos_split(sq0, t0.mult_pos[sq0][p]);
      // outer position inl(po); the inner product shape there is f[po],
      // whose left block holds the T0 positions
      pm.push_back(t.square.pos_index(sq, po, pi));
    }
    for (Index p = 0; p < t1.c.pos(m1).size(); ++p) {
      auto [po, pi] = t1.square.pos_split(sq1, t1.mult_pos[sq1][p]);
      Index outer_pos = left + po;
      Index inner_shape = f[outer_pos];
      Index inner_left = t0.c.pos(inner_shape / s1n).size();
      pm.push_back(t.square.pos_index(sq, outer_pos, inner_left + pi));
    }
    t.mult_pos[sq] = std::move(pm);
  }
  return t;
}

inline ContainerComonad comonad_coproduct(const ContainerComonad& d0,
                                          const ContainerComonad& d1) {
  ContainerComonad d;
  d.name = "(" + d0.name + "+" + d1.name + ")";
  d.c = c_coproduct(d0.c, d1.c);
  std::size_t n0 = d0.c.shape_count();
  for (Index s = 0; s < d.c.shape_count(); ++s)
    d.counit_pos.push_back(s < n0 ? d0.counit_pos[s] : d1.counit_pos[s - n0]);
  d.square = c_compose(d.c, d.c);
  for (Index s = 0; s < d.c.shape_count(); ++s) {
    bool isleft = s < n0;
    const ContainerComonad& side = isleft ? d0 : d1;
    Index local = isleft ? s : s - n0;
    Index lsq = side.comult_shape[local];
    Index lt0 = side.square.outer_shape_of(lsq);
    const auto& lg = side.square.inner_shapes_of(lsq);
    std::vector<Index> g(lg.size());
    for (Index p = 0; p < lg.size(); ++p) g[p] = isleft ? lg[p] : lg[p] + n0;
    Index sq = d.square.shape_index(isleft ? lt0 : lt0 + n0, g);
    d.comult_shape.push_back(sq);
    std::vector<Index> pm(d.square.c.pos(sq).size());
    for (Index r = 0; r < pm.size(); ++r) {
      auto [p, q] = d.square.pos_split(sq, r);
      pm[r] = side.comult_pos[local][side.square.pos_index(lsq, p, q)];
    }
    d.comult_pos.push_back(std::move(pm));
  }
  return d;
}

inline MCIL mcil_product(const MCIL& m0, const MCIL& m1) {
  MCIL m;
  m.t = monad_product(m0.t, m1.t);
  m.d = comonad_coproduct(m0.d, m1.d);
  std::size_t s1n = m1.t.c.shape_count();
  std::size_t d0n = m0.d.c.shape_count();
  m.law = InteractionLaw{m.t.c, m.d.c, {}};
  for (Index s = 0; s < m.t.c.shape_count(); ++s) {
    Index s0 = s / s1n, s1 = s % s1n;
    std::size_t left = m0.t.c.pos(s0).size();
    for (Index td = 0; td < m.d.c.shape_count(); ++td) {
      if (td < d0n) {
        auto [p, q] = m0.law.at(s0, td);
        m.law.table.push_back({p, q});
      } else {
        auto [p, q] = m1.law.at(s1, td - d0n);
        m.law.table.push_back({left + p, q});
      }
    }
  }
  return m;
}

// ---- composite monad / comonad via distributive laws ------------------------------

// Composite monad T0.T1 from a monad-monad distributive law
// lam : T1.T0 -> T0.T1, with the multiplication computed elementwise at
// universal carriers (undefined wherever a component multiplication is
// undefined).
inline ContainerMonad composite_monad(const ContainerMonad& t0, const ContainerMonad& t1,
                                      const ContainerMorphism& lam) {
  ComposedContainer p = c_compose(t0.c, t1.c);
  ComposedContainer t1t0 = c_compose(t1.c, t0.c);
  if (lam.src != t1t0.c || lam.dst != p.c)
    throw std::invalid_argument("composite_monad: distributive law has wrong boundaries");
  ContainerMonad t;
  t.name = "(" + t0.name + "." + t1.name + ")";
  t.c = p.c;
  std::vector<Index> unit_inner(t0.c.pos(t0.unit_shape).size(), t1.unit_shape);
  t.unit_shape = p.shape_index(t0.unit_shape, unit_inner);
  t.square = c_compose(p.c, p.c);
  t.mult_shape.resize(t.square.c.shape_count());
  t.mult_pos.resize(t.square.c.shape_count());
  ComposedContainer sq0 = c_compose(t0.c, t0.c);
  ComposedContainer sq1 = c_compose(t1.c, t1.c);
  for (Index sq = 0; sq < t.square.c.shape_count(); ++sq) {
    ContainerElement e = universal_element(t.square.c, sq);
    auto [pshape, kids] = split_element(t.square, e);  // kids: P-elements over X
    // outer P-element structure over kid slots
    ContainerElement outer;
    outer.shape = pshape;
    outer.payload.resize(kids.size());
    std::iota(outer.payload.begin(), outer.payload.end(), Index{0});
    auto [s0, t1elems] = split_element(p, outer);  // T1-elements over kid slots
    // split every kid into a T0-element over flat T1-element slots
    std::vector<ContainerElement> kid_outer;          // T0-elements over inners
    std::vector<ContainerElement> inners;             // flat T1-elements over X
    for (const auto& k : kids) {
      auto [ka, kin] = split_element(p, k);
      ContainerElement ko;
      ko.shape = ka;
      for (auto& ik : kin) {
        ko.payload.push_back(inners.size());
        inners.push_back(ik);
      }
      kid_outer.push_back(std::move(ko));
    }
    // step 1: apply lam to each middle T1.T0 element
    bool defined = true;
    std::vector<ContainerElement> t0_after;             // per outer T0 position p
    std::vector<std::vector<ContainerElement>> t1_after;  // T1-elements over inner slots
    for (Index pp = 0; pp < t1elems.size(); ++pp) {
      // middle composite: outer = t1elems[pp] over kid slots, kids = T0 parts
      std::vector<ContainerElement> mids;
      for (Index q = 0; q < t1elems[pp].payload.size(); ++q)
        mids.push_back(kid_outer[t1elems[pp].payload[q]]);
      ContainerElement mid = fuse_element(t1t0, t1elems[pp].shape, mids);
      ContainerElement swapped = morphism_apply(lam, mid);
      auto [a_p, t1list] = split_element(p, swapped);
      ContainerElement t0e;
      t0e.shape = a_p;
      t1_after.push_back(std::move(t1list));
      t0_after.push_back(std::move(t0e));
    }
    // step 2: join the two T0 layers
    std::vector<Index> f0(t0_after.size());
    for (Index pp = 0; pp < t0_after.size(); ++pp) f0[pp] = t0_after[pp].shape;
    Index s0sq = sq0.shape_index(s0, f0);
    if (!t0.mult_defined(s0sq)) continue;
    Index flat0_shape = *t0.mult_shape[s0sq];
    std::vector<std::pair<Index, Index>> slots;  // (outer position, inner position)
    for (Index u = 0; u < t0.c.pos(flat0_shape).size(); ++u)
      slots.push_back(sq0.pos_split(s0sq, t0.mult_pos[s0sq][u]));
    // step 3: join the two T1 layers pointwise
    std::vector<ContainerElement> finals;
    for (auto [pp, rr] : slots) {
      const ContainerElement& t1e = t1_after[pp][rr];  // over inner slots
      std::vector<ContainerElement> innerkids;
      for (Index v : t1e.payload) innerkids.push_back(inners[v]);
      ContainerElement sq1e = fuse_element(sq1, t1e.shape, innerkids);
      if (!t1.mult_defined(sq1e.shape)) {
        defined = false;
        break;
      }
      finals.push_back(*monad_join_elem(t1, sq1e));
    }
    if (!defined) continue;
    ContainerElement result = fuse_element(p, flat0_shape, finals);
    t.mult_shape[sq] = result.shape;
    t.mult_pos[sq] = result.payload;
  }
  return t;
}

// Composite comonad D0.D1 from a comonad-comonad distributive law
// kap : D0.D1 -> D1.D0.
inline ContainerComonad composite_comonad(const ContainerComonad& d0,
                                          const ContainerComonad& d1,
                                          const ContainerMorphism& kap) {
  ComposedContainer q = c_compose(d0.c, d1.c);
  ComposedContainer d1d0 = c_compose(d1.c, d0.c);
  if (kap.src != q.c || kap.dst != d1d0.c)
    throw std::invalid_argument("composite_comonad: distributive law has wrong boundaries");
  ContainerComonad d;
  d.name = "(" + d0.name + "." + d1.name + ")";
  d.c = q.c;
  d.square = c_compose(q.c, q.c);
  for (Index s = 0; s < q.c.shape_count(); ++s) {
    ContainerElement e = universal_element(q.c, s);
    auto [t0, d1elems] = split_element(q, e);
    d.counit_pos.push_back(
        q.pos_index(s, d0.counit_pos[t0], d1.counit_pos[d1elems[d0.counit_pos[t0]].shape]));
    // delta0 on the outer element
    ContainerElement outer;
    outer.shape = t0;
    outer.payload.resize(d1elems.size());
    std::iota(outer.payload.begin(), outer.payload.end(), Index{0});
    ContainerElement dd0 = comonad_duplicate_elem(d0, outer);
    auto [t00, mids0] = split_element(d0.square, dd0);  // D0-elements over outer positions
    // delta1 on each inner element: flat storage of grandkids
    std::vector<std::pair<Index, std::vector<ContainerElement>>> deep1;
    for (const auto& k : d1elems)
      deep1.push_back(split_element(d1.square, comonad_duplicate_elem(d1, k)));
    std::vector<ContainerElement> flat;          // all grandkid D1-elements over Y
    std::vector<std::vector<Index>> flat_index;  // [p][r] -> flat slot
    for (auto& [t1p, grandkids] : deep1) {
      flat_index.push_back({});
      for (auto& gk : grandkids) {
        flat_index.back().push_back(flat.size());
        flat.push_back(gk);
      }
    }
    // apply kap to the middle D0.D1 pair at each outer position u
    std::vector<Index> s1_of(mids0.size());
    std::vector<std::vector<ContainerElement>> d0list(mids0.size());
    for (Index u = 0; u < mids0.size(); ++u) {
      std::vector<ContainerElement> kapkids;
      for (Index v = 0; v < mids0[u].payload.size(); ++v) {
        Index pref = mids0[u].payload[v];
        ContainerElement d1e;
        d1e.shape = deep1[pref].first;
        d1e.payload = flat_index[pref];
        kapkids.push_back(std::move(d1e));
      }
      ContainerElement midq = fuse_element(q, mids0[u].shape, kapkids);
      ContainerElement swapped = morphism_apply(kap, midq);
      auto [s1, d0l] = split_element(d1d0, swapped);
      s1_of[u] = s1;
      d0list[u] = std::move(d0l);
    }
    // reassemble: outer Q-shape (t00, s1_of), kids are Q-elements fused
    // from (d0list[u][w], referenced flat D1-elements)
    std::vector<ContainerElement> qkids;
    for (Index u = 0; u < mids0.size(); ++u)
      for (Index w = 0; w < d0list[u].size(); ++w) {
        std::vector<ContainerElement> innerkids;
        for (Index fz : d0list[u][w].payload) innerkids.push_back(flat[fz]);
        qkids.push_back(fuse_element(q, d0list[u][w].shape, innerkids));
      }
    Index tout = q.shape_index(t00, s1_of);
    ContainerElement result = fuse_element(d.square, tout, qkids);
    d.comult_shape.push_back(result.shape);
    d.comult_pos.push_back(result.payload);
  }
  return d;
}

// Matching condition of the two laws against lam and kap; returns a
// counterexample shape pair on failure.
inline CheckReport mcil_matching_check(const MCIL& m0, const MCIL& m1,
                                       const ContainerMorphism& lam,
                                       const ContainerMorphism& kap) {
  CheckReport rep;
  ComposedContainer t1t0 = c_compose(m1.t.c, m0.t.c);
  ComposedContainer t0t1 = c_compose(m0.t.c, m1.t.c);
  ComposedContainer d0d1 = c_compose(m0.d.c, m1.d.c);
  ComposedContainer d1d0 = c_compose(m1.d.c, m0.d.c);
  for (Index s = 0; s < t1t0.c.shape_count(); ++s) {
    Index s1 = t1t0.outer_shape_of(s);
    const auto& f0 = t1t0.inner_shapes_of(s);
    for (Index td = 0; td < d0d1.c.shape_count(); ++td) {
      // path 1: id x kap, then psi1 at (T0 X, D0 Y), then psi0
      Index tk = kap.shape_map[td];
      Index t1s = d1d0.outer_shape_of(tk);
      const auto& g0 = d1d0.inner_shapes_of(tk);
      auto [p1, q1] = m1.law.at(s1, t1s);
      auto [p0, q0] = m0.law.at(f0[p1], g0[q1]);
      std::pair<Index, Index> path1{t1t0.pos_index(s, p1, p0),
                                    kap.pos_map[td][d1d0.pos_index(tk, q1, q0)]};
      // path 2: lam x id, then psi0 at (T1 X, D1 Y), then psi1
      Index sl = lam.shape_map[s];
      Index s0s = t0t1.outer_shape_of(sl);
      const auto& f1 = t0t1.inner_shapes_of(sl);
      Index t0s = d0d1.outer_shape_of(td);
      const auto& g1 = d0d1.inner_shapes_of(td);
      auto [p0b, q0b] = m0.law.at(s0s, t0s);
      auto [p1b, q1b] = m1.law.at(f1[p0b], g1[q0b]);
      std::pair<Index, Index> path2{lam.pos_map[s][t0t1.pos_index(sl, p0b, p1b)],
                                    d0d1.pos_index(td, q0b, q1b)};
      if (path1 != path2) {
        rep.ok = false;
        rep.diagram = "matching";
        rep.counterexample = {s, td};
        return rep;
      }
    }
  }
  return rep;
}

// MCIL of the composite monad and composite comonad: psi = psi1 after
// psi0 at the outer layers.
inline MCIL mcil_composite(const MCIL& m0, const MCIL& m1, const ContainerMorphism& lam,
                           const ContainerMorphism& kap) {
  CheckReport match = mcil_matching_check(m0, m1, lam, kap);
  if (!match.ok)
    throw std::invalid_argument("mcil_composite: matching condition fails at shapes (" +
                                std::to_string(match.counterexample->first) + "," +
                                std::to_string(match.counterexample->second) + ")");
  MCIL m;
  m.t = composite_monad(m0.t, m1.t, lam);
  m.d = composite_comonad(m0.d, m1.d, kap);
  ComposedContainer tt = c_compose(m0.t.c, m1.t.c);
  ComposedContainer dd = c_compose(m0.d.c, m1.d.c);
  m.law = InteractionLaw{m.t.c, m.d.c, {}};
  for (Index s = 0; s < m.t.c.shape_count(); ++s) {
    Index s0 = tt.outer_shape_of(s);
    const auto& f = tt.inner_shapes_of(s);
    for (Index td = 0; td < m.d.c.shape_count(); ++td) {
      Index t0 = dd.outer_shape_of(td);
      const auto& g = dd.inner_shapes_of(td);
      auto [p0, q0] = m0.law.at(s0, t0);
      auto [p1, q1] = m1.law.at(f[p0], g[q0]);
      m.law.table.push_back({tt.pos_index(s, p0, p1), dd.pos_index(td, q0, q1)});
    }
  }
  return m;
}

// ---- Sweedler-dual instances -----------------------------------------------------

struct SweedlerInstance {
  ContainerMonad monad;
  ContainerComonad comonad;
  ContainerMorphism iota;  // comonad.c -> dual(monad.c).c
  MCIL law;
};

// Example instance for nonempty lists truncated at `bound`:
// iota(y,_)(0) = (0,y); iota(_,inl y')(n+1) = (0,y');
// iota(_,inr y')(n+1) = (n+1,y').
inline SweedlerInstance sweedler_nelist(std::size_t bound) {
  if (bound < 2) throw std::invalid_argument("sweedler_nelist: bound must be >= 2");
  SweedlerInstance si;
  si.monad = nelist_monad(bound);
  si.comonad = nelist_sweedler_comonad();
  DualContainer dt = dual(si.monad.c);
  ContainerMorphism iota{si.comonad.c, dt.c, {}, {}};
  for (Index s = 0; s < 2; ++s) {  // 0 = l (head side), 1 = r (last side)
    std::vector<Index> tup(bound);
    tup[0] = 0;
    for (std::size_t len = 2; len <= bound; ++len) tup[len - 1] = (s == 0) ? 0 : len - 1;
    iota.shape_map.push_back(dt.tuple_index(tup));
    // dual positions = list lengths; length 1 reads fst, longer read rest
    std::vector<Index> pm(bound);
    pm[0] = 0;
    for (std::size_t len = 2; len <= bound; ++len) pm[len - 1] = 1;
    iota.pos_map.push_back(std::move(pm));
  }
  si.iota = std::move(iota);
  InteractionLaw law{si.monad.c, si.comonad.c, {}};
  for (Index len = 0; len < bound; ++len)  // shape len is length len+1
    for (Index s = 0; s < 2; ++s) {
      if (len == 0)
        law.table.push_back({0, 0});                       // psi([x0], (y,_)) = (x0, y)
      else
        law.table.push_back({s == 0 ? 0 : len, 1});        // head or last, with y'
    }
  si.law = MCIL{si.monad, si.comonad, std::move(law)};
  return si;
}

// Example instance for the update monad: iota(a, f) = \g. (a, f (g a)).
inline SweedlerInstance sweedler_update(const MonoidAction& act) {
  if (!act.valid()) throw std::invalid_argument("sweedler_update: not a monoid action");
  SweedlerInstance si;
  si.monad = update_monad(act);
  si.comonad = update_comonad(act);
  DualContainer dt = dual(si.monad.c);
  ExponentSet eab = exponent(act.carrier, act.monoid.elems);
  ContainerMorphism iota{si.comonad.c, dt.c, {}, {}};
  for (Index av = 0; av < act.carrier.size(); ++av) {
    std::vector<Index> tup(si.monad.c.shape_count(), av);  // constantly a
    iota.shape_map.push_back(dt.tuple_index(tup));
    std::vector<Index> pm(si.monad.c.shape_count());
    for (Index fs = 0; fs < si.monad.c.shape_count(); ++fs) pm[fs] = eab.fn_at(fs)(av);
    iota.pos_map.push_back(std::move(pm));
  }
  si.iota = std::move(iota);
  MCIL law = update_mcil(act);
  si.law = std::move(law);
  return si;
}

// The two squares tying iota to the (co)monad structures
// (unit/counit square and multiplication/comultiplication square). The
// multiplication route m_{T,T} . (iota . iota) . comult is evaluated
// elementwise, so the composite of duals is never materialized; the
// comparison is restricted to the monad's defined region.
inline bool sweedler_iota_check(const SweedlerInstance& si) {
  const ContainerMonad& t = si.monad;
  const ContainerComonad& d = si.comonad;
  DualContainer dt = dual(t.c);
  // unit square: dual(eta) . iota == e . counit  (as morphisms D -> dual Id)
  for (Index s = 0; s < d.c.shape_count(); ++s)
    if (si.iota.pos_map[s][t.unit_shape] != d.counit_pos[s]) return false;
  // mult square: m_{T,T} . (iota . iota) . comult == dual(mu) . iota
  const ComposedContainer& tsq = t.square;
  const ComposedContainer& dsq = d.square;
  for (Index s = 0; s < d.c.shape_count(); ++s) {
    Index sqs = d.comult_shape[s];
    Index t0 = dsq.outer_shape_of(sqs);
    const auto& gd = dsq.inner_shapes_of(sqs);
    auto q0 = dt.tuple_at(si.iota.shape_map[t0]);
    auto tupB = dt.tuple_at(si.iota.shape_map[s]);
    for (Index sq = 0; sq < tsq.c.shape_count(); ++sq) {
      if (!t.mult_defined(sq)) continue;
      Index s0 = tsq.outer_shape_of(sq);
      const auto& g = tsq.inner_shapes_of(sq);
      // route A: the m-map picks the outer position from the outer
      // tuple, then finishes inside the continuation at slot s0
      Index p_outer = q0[s0];
      Index da = si.iota.pos_map[t0][s0];
      Index inner_shape = gd[da];
      auto q1 = dt.tuple_at(si.iota.shape_map[inner_shape]);
      Index p_inner = q1[g[p_outer]];
      Index compA = tsq.pos_index(sq, p_outer, p_inner);
      Index db = si.iota.pos_map[inner_shape][g[p_outer]];
      Index posA = d.comult_pos[s][dsq.pos_index(sqs, da, db)];
      // route B: iota then the dual of the multiplication
      Index compB = t.mult_pos[sq][tupB[*t.mult_shape[sq]]];
      Index posB = si.iota.pos_map[s][*t.mult_shape[sq]];
      if (compA != compB || posA != posB) return false;
    }
  }
  return true;
}

// ---- comonad maps and the Sweedler bijection --------------------------------------

inline bool comonad_map_check(const ContainerComonad& d, const ContainerComonad& d2,
                              const ContainerMorphism& h) {
  if (h.src != d.c || h.dst != d2.c) return false;
  for (Index s = 0; s < d.c.shape_count(); ++s) {
    // counit: eps2 after h = eps
    if (h.pos_map[s][d2.counit_pos[h.shape_map[s]]] != d.counit_pos[s]) return false;
  }
  // comult: (h.h) . delta == delta2 . h, elementwise at universal carriers
  ComposedContainer hh_src = d.square;
  ComposedContainer hh_dst = d2.square;
  ContainerMorphism hh = morphism_hcompose(h, h, hh_src, hh_dst);
  for (Index s = 0; s < d.c.shape_count(); ++s) {
    ContainerElement e = universal_element(d.c, s);
    ContainerElement lhs = morphism_apply(hh, comonad_duplicate_elem(d, e));
    ContainerElement rhs = comonad_duplicate_elem(d2, morphism_apply(h, e));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

inline std::vector<ContainerMorphism> comonad_map_enumerate(const ContainerComonad& d,
                                                            const ContainerComonad& d2) {
  std::vector<ContainerMorphism> out;
  for (auto& h : nat_trans_enumerate(d.c, d2.c))
    if (comonad_map_check(d, d2, h)) out.push_back(std::move(h));
  return out;
}

// psi = pairing . (id x (iota . h)) : the MCIL induced by a comonad map
// into the registered Sweedler instance.
inline MCIL mcil_from_comonad_map(const SweedlerInstance& si, const ContainerComonad& d,
                                  const ContainerMorphism& h) {
  MCIL m;
  m.t = si.monad;
  m.d = d;
  ContainerMorphism into_dual = morphism_compose(si.iota, h);
  m.law = il_stretch(dual_pairing(si.monad.c), morphism_identity(si.monad.c), into_dual);
  return m;
}

// The transpose of an MCIL's law on the machine side, D -> dual T.
inline ContainerMorphism mcil_to_dual_morphism(const MCIL& m) {
  return il_to_morphism(il_rev(m.law), dual(m.t.c));
}

// Factor psi-hat through iota: the unique comonad map h with
// iota . h = psi-hat, when it exists.
inline std::optional<ContainerMorphism> mcil_to_comonad_map(const SweedlerInstance& si,
                                                            const MCIL& m) {
  ContainerMorphism psihat = mcil_to_dual_morphism(m);
  for (auto& h : comonad_map_enumerate(m.d, si.comonad))
    if (morphism_compose(si.iota, h) == psihat) return h;
  return std::nullopt;
}

// ---- coequation checks (coassociativity, corectangularity) ------------------------

// A cooperation c : D Y -> Y + Y in Yoneda form: per shape, a tag and a
// position.
struct Cooperation {
  std::vector<std::pair<Index, Index>> table;  // (tag in {0,1}, position)
};

struct CoequationReport {
  bool coassoc = true;
  bool left_corect = true;
  bool right_corect = true;
};

namespace detail {

// value of (c + eps) resp. (eps + c) after c_{DY} on delta(e), as a
// (branch path, payload position) pair; branch is the final coproduct
// component in Y + (Y + Y) form.
struct TaggedPos {
  Index branch;  // 0, 1, 2 in Y + Y + Y reading left to right
  Index pos;     // position of the original shape

  friend bool operator==(const TaggedPos& a, const TaggedPos& b) {
    return a.branch == b.branch && a.pos == b.pos;
  }
};

}  // namespace detail

inline CoequationReport coequation_checks(const ContainerComonad& d, const Cooperation& coop) {
  CoequationReport rep;
  for (Index s = 0; s < d.c.shape_count(); ++s) {
    ContainerElement e = universal_element(d.c, s);
    ContainerElement dd = comonad_duplicate_elem(d, e);
    auto [t0, kids] = split_element(d.square, dd);
    auto [tag1, p1] = coop.table[t0];
    const ContainerElement& picked = kids[p1];
    // path LHS of coassoc: (c + eps) then associate to Y + (Y + Y)
    detail::TaggedPos lhs{};
    if (tag1 == 0) {
      auto [tag2, p2] = coop.table[picked.shape];
      lhs = {tag2, picked.payload[p2]};  // (Y+Y)+Y: inl(inl/inr) -> branches 0,1
    } else {
      lhs = {2, picked.payload[d.counit_pos[picked.shape]]};
    }
    // path RHS of coassoc: (eps + c)
    detail::TaggedPos rhs{};
    if (tag1 == 0) {
      rhs = {0, picked.payload[d.counit_pos[picked.shape]]};
    } else {
      auto [tag2, p2] = coop.table[picked.shape];
      rhs = {tag2 + 1, picked.payload[p2]};
    }
    if (!(lhs == rhs)) rep.coassoc = false;
    // left corectangularity: (c + eps) . c_{DY} . delta == (inl + id) . c
    auto [tagc, pc] = coop.table[s];
    detail::TaggedPos lc = tagc == 0 ? detail::TaggedPos{0, e.payload[pc]}
                                     : detail::TaggedPos{2, e.payload[pc]};
    if (!(lhs == lc)) rep.left_corect = false;
    // right corectangularity: (eps + c) . c_{DY} . delta == (id + inr) . c
    detail::TaggedPos rc = tagc == 0 ? detail::TaggedPos{0, e.payload[pc]}
                                     : detail::TaggedPos{2, e.payload[pc]};
    if (!(rhs == rc)) rep.right_corect = false;
  }
  return rep;
}

// The same coassociativity coequation read on a machine over the
// signature Y + Y (the cofree comonad without quotient, in its finite
// coalgebraic surrogate): c takes the step's tag and the child's output.
// Returns (lhs, rhs) of the coassociativity square for this machine.
inline std::pair<std::pair<Index, Index>, std::pair<Index, Index>> machine_coassoc_paths(
    const Machine& m) {
  const ContainerElement& e = m.step[m.current];  // signature Y+Y: shapes {0,1}, 1 position
  Index tag1 = e.shape;
  Index child = e.payload[0];
  const ContainerElement& e2 = m.step[child];
  Index tag2 = e2.shape;
  Index grandchild = e2.payload[0];
  // LHS: (c + eps): if tag1 = inl, c on the child; else eps of the child
  std::pair<Index, Index> lhs =
      tag1 == 0 ? std::pair<Index, Index>{tag2, m.out[grandchild]}
                : std::pair<Index, Index>{2, m.out[child]};
  // RHS: (eps + c)
  std::pair<Index, Index> rhs =
      tag1 == 0 ? std::pair<Index, Index>{0, m.out[child]}
                : std::pair<Index, Index>{tag2 + 1, m.out[grandchild]};
  return {lhs, rhs};
}

}  // namespace ilaw
