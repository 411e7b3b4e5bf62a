#pragma once

// Stateful runners: a state set with a per-operation handler table,
// convertible to and from the state-monad-map, dual-coalgebra and
// costate-family presentations; the runner <-> MCIL correspondence
// through coalgebraic runner specs; update lenses; and handlers (monad
// algebras) for the contrast between the two.

#include "ilaw/monadic.hpp"

namespace ilaw {

// theta : per (shape of the signature, state) a position and a next
// state. For a free signature every table is lawful; for a registered
// monad the unit/multiplication laws are checked by
// runner_monad_laws_check.
struct Runner {
  FinSet state;
  Container sig;
  std::vector<std::pair<Index, Index>> theta;  // [s * |Y| + y] = (p, y')

  const std::pair<Index, Index>& at(Index s, Index y) const {
    return theta.at(s * state.size() + y);
  }
};

inline std::pair<Index, Index> run(const Runner& r, const FreeTree& t, Index y0,
                                   std::vector<TraceEvent>* trace = nullptr) {
  if (t.leaf) return {t.value, y0};
  auto [p, y1] = r.at(t.shape, y0);
  if (trace) trace->push_back(TraceEvent{trace->size(), t.shape, p, y1});
  return run(r, t.kids[p], y1, trace);
}

inline bool runner_monad_laws_check(const Runner& r, const ContainerMonad& t) {
  if (r.sig != t.c) return false;
  for (Index y = 0; y < r.state.size(); ++y) {
    if (r.at(t.unit_shape, y).second != y) return false;
    for (Index sq = 0; sq < t.square.c.shape_count(); ++sq) {
      if (!t.mult_defined(sq)) continue;
      Index s0 = t.square.outer_shape_of(sq);
      const auto& f = t.square.inner_shapes_of(sq);
      auto [pl, y2] = r.at(*t.mult_shape[sq], y);
      std::pair<Index, Index> lhs{t.mult_pos[sq][pl], y2};
      auto [p0, y1] = r.at(s0, y);
      auto [p1, y2b] = r.at(f[p0], y1);
      std::pair<Index, Index> rhs{t.square.pos_index(sq, p0, p1), y2b};
      if (lhs != rhs) return false;
    }
  }
  return true;
}

// ---- presentation 2: monad map into the state monad ---------------------------

// vartheta at universal carriers: T X -> (Y => X x Y), represented by
// its generator table (identical data to a runner, different laws
// surface).
struct StateMonadMap {
  FinSet state;
  Container sig;
  std::vector<std::pair<Index, Index>> vartheta;

  const std::pair<Index, Index>& at(Index s, Index y) const {
    return vartheta.at(s * state.size() + y);
  }
};

inline std::pair<Index, Index> state_map_apply(const StateMonadMap& sm, const FreeTree& t,
                                               Index y0) {
  if (t.leaf) return {t.value, y0};
  auto [p, y1] = sm.at(t.shape, y0);
  return state_map_apply(sm, t.kids[p], y1);
}

// Monad-map squares for the free monad on the signature: the unit
// square is definitional; the multiplication square is checked on all
// joinable trees up to the given depth.
inline bool state_map_check_free(const StateMonadMap& sm, std::size_t xsize,
                                 std::size_t depth) {
  auto table = enumerate_trees(sm.sig, xsize, depth);
  auto outers = enumerate_trees(sm.sig, table.size(), depth);
  for (const auto& ot : outers)
    for (Index y = 0; y < sm.state.size(); ++y) {
      // mu then vartheta
      auto direct = state_map_apply(sm, tree_join(ot, table), y);
      // vartheta at TX, then vartheta again
      auto [leafix, y1] = state_map_apply(sm, ot, y);
      auto seq = state_map_apply(sm, table[leafix], y1);
      if (direct != seq) return false;
    }
  return true;
}

inline StateMonadMap runner_to_state_map(const Runner& r) {
  return StateMonadMap{r.state, r.sig, r.theta};
}

inline Runner state_map_to_runner(const StateMonadMap& sm) {
  return Runner{sm.state, sm.sig, sm.vartheta};
}

// ---- presentation 3: coalgebra of the dual container ---------------------------

struct DualCoalgebra {
  FinSet carrier;
  std::vector<ContainerElement> gamma;  // per state: element of dual(sig) over carrier
};

inline DualCoalgebra runner_to_coalgebra(const Runner& r, const DualContainer& d) {
  if (d.base != r.sig) throw std::invalid_argument("runner_to_coalgebra: wrong dual");
  DualCoalgebra c;
  c.carrier = r.state;
  for (Index y = 0; y < r.state.size(); ++y) {
    std::vector<Index> tup(r.sig.shape_count());
    std::vector<Index> succ(r.sig.shape_count());
    for (Index s = 0; s < r.sig.shape_count(); ++s) {
      auto [p, y1] = r.at(s, y);
      tup[s] = p;
      succ[s] = y1;
    }
    c.gamma.push_back(ContainerElement{d.tuple_index(tup), std::move(succ)});
  }
  return c;
}

inline Runner coalgebra_to_runner(const DualCoalgebra& c, const DualContainer& d) {
  Runner r;
  r.state = c.carrier;
  r.sig = d.base;
  r.theta.resize(d.base.shape_count() * c.carrier.size());
  for (Index y = 0; y < c.carrier.size(); ++y) {
    auto tup = d.tuple_at(c.gamma[y].shape);
    for (Index s = 0; s < d.base.shape_count(); ++s)
      r.theta[s * c.carrier.size() + y] = {tup[s], c.gamma[y].payload[s]};
  }
  return r;
}

// The machine a runner generates: states are the runner's states, the
// output labels the states themselves.
inline Machine runner_machine(const Runner& r, const DualContainer& d, Index start) {
  DualCoalgebra c = runner_to_coalgebra(r, d);
  Machine m;
  m.states = c.carrier;
  m.out.resize(c.carrier.size());
  std::iota(m.out.begin(), m.out.end(), Index{0});
  m.step = c.gamma;
  m.current = start;
  return m;
}

// eq:d-coalg-conds for a coalgebra of the dual of a registered monad:
// the unit condition reads the unit shape's slot, the multiplication
// condition compares the two routes into the dual of T.T elementwise
// (never materializing it), restricted to the defined region.
inline bool dual_coalgebra_check(const DualCoalgebra& c, const ContainerMonad& t,
                                 const DualContainer& d) {
  if (d.base != t.c) throw std::invalid_argument("dual_coalgebra_check: wrong dual");
  for (Index y = 0; y < c.carrier.size(); ++y)
    if (c.gamma[y].payload.at(t.unit_shape) != y) return false;
  const ComposedContainer& tsq = t.square;
  for (Index y = 0; y < c.carrier.size(); ++y) {
    auto q0 = d.tuple_at(c.gamma[y].shape);
    for (Index sq = 0; sq < tsq.c.shape_count(); ++sq) {
      if (!t.mult_defined(sq)) continue;
      Index s0 = tsq.outer_shape_of(sq);
      const auto& g = tsq.inner_shapes_of(sq);
      // route A: gamma, fmap gamma, then the m-map
      Index p_outer = q0[s0];
      Index y1 = c.gamma[y].payload[s0];
      auto q1 = d.tuple_at(c.gamma[y1].shape);
      Index p_inner = q1[g[p_outer]];
      Index compA = tsq.pos_index(sq, p_outer, p_inner);
      Index hA = c.gamma[y1].payload[g[p_outer]];
      // route B: gamma then the dual of mu
      Index compB = t.mult_pos[sq][q0[*t.mult_shape[sq]]];
      Index hB = c.gamma[y].payload[*t.mult_shape[sq]];
      if (compA != compB || hA != hB) return false;
    }
  }
  return true;
}

// ---- presentation 4: costate family ----------------------------------------------

// zeta : Cost^Y -> dual T, determined by its component at Z = Y on
// (id, y); other components are reached through the functorial action.
struct CostateFamily {
  FinSet state;
  Container sig;
  std::vector<ContainerElement> zeta0;  // per state: element of dual(sig) over state
};

inline ContainerElement costate_apply(const CostateFamily& z, const DualContainer& d,
                                      const FinFn& f, Index y) {
  if (f.dom != z.state) throw std::invalid_argument("costate_apply: wrong domain");
  return fmap(d.c, f, z.zeta0.at(y));
}

inline CostateFamily runner_to_costate_family(const Runner& r, const DualContainer& d) {
  DualCoalgebra c = runner_to_coalgebra(r, d);
  return CostateFamily{r.state, r.sig, std::move(c.gamma)};
}

inline Runner costate_family_to_runner(const CostateFamily& z, const DualContainer& d) {
  return coalgebra_to_runner(DualCoalgebra{z.state, z.zeta0}, d);
}

// ---- update lenses ------------------------------------------------------------------

struct UpdateLens {
  FinSet state;                 // Y
  FinFn lkp;                    // Y -> A
  std::vector<Index> upd;       // [y * |B| + b] = y'
  MonoidAction action;          // B acting on A

  Index update(Index y, Index b) const { return upd.at(y * action.monoid.elems.size() + b); }

  // (Y, upd) must be a B-set and lkp a B-set map into (A, action).
  bool valid() const {
    if (!action.valid() || lkp.dom != state || lkp.cod != action.carrier) return false;
    std::size_t nb = action.monoid.elems.size();
    if (upd.size() != state.size() * nb) return false;
    for (Index y = 0; y < state.size(); ++y) {
      if (update(y, action.monoid.unit) != y) return false;
      for (Index b = 0; b < nb; ++b) {
        for (Index b2 = 0; b2 < nb; ++b2)
          if (update(y, action.monoid.mul(b, b2)) != update(update(y, b), b2)) return false;
        if (lkp(update(y, b)) != action.apply(lkp(y), b)) return false;
      }
    }
    return true;
  }
};

// theta(f, y) = let (b, x) <- f (lkp y) in (x, upd(y, b))
inline Runner update_lens_runner(const UpdateLens& lens, const ContainerMonad& update_t) {
  if (!lens.valid()) throw std::invalid_argument("update_lens_runner: not an update lens");
  ExponentSet eab = exponent(lens.action.carrier, lens.action.monoid.elems);
  Runner r;
  r.state = lens.state;
  r.sig = update_t.c;
  r.theta.resize(update_t.c.shape_count() * lens.state.size());
  for (Index fs = 0; fs < update_t.c.shape_count(); ++fs) {
    FinFn f = eab.fn_at(fs);
    for (Index y = 0; y < lens.state.size(); ++y) {
      Index a = lens.lkp(y);
      r.theta[fs * lens.state.size() + y] = {a, lens.update(y, f(a))};
    }
  }
  return r;
}

// ---- MCILs vs runners: coalgebraic runner specs ---------------------------------------

struct DCoalgebra {
  FinSet carrier;
  std::vector<ContainerElement> gamma;  // per y: element of D over carrier
};

inline bool dcoalgebra_check(const ContainerComonad& d, const DCoalgebra& c) {
  for (Index y = 0; y < c.carrier.size(); ++y) {
    const ContainerElement& e = c.gamma[y];
    if (comonad_extract(d, e) != y) return false;
    // D(gamma) . gamma == delta . gamma
    std::vector<ContainerElement> kids;
    for (Index v : e.payload) kids.push_back(c.gamma[v]);
    ContainerElement lhs = fuse_element(d.square, e.shape, kids);
    ContainerElement rhs = comonad_duplicate_elem(d, e);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

using RunnerSpec = std::function<Runner(const DCoalgebra&)>;

// Psi0 (Y, gamma) = psi . (id x gamma): a carrier-preserving functor
// from D-coalgebras to runners.
inline RunnerSpec mcil_to_runner_spec(const MCIL& m) {
  MCIL copy = m;
  return [copy](const DCoalgebra& c) {
    Runner r;
    r.state = c.carrier;
    r.sig = copy.t.c;
    r.theta.resize(copy.t.c.shape_count() * c.carrier.size());
    for (Index s = 0; s < copy.t.c.shape_count(); ++s)
      for (Index y = 0; y < c.carrier.size(); ++y) {
        auto [p, q] = copy.law.at(s, c.gamma[y].shape);
        r.theta[s * c.carrier.size() + y] = {p, c.gamma[y].payload[q]};
      }
    return r;
  };
}

// Recover the law from a spec by instantiating it at the cofree
// coalgebras (D Y, delta_Y) over universal carriers and post-composing
// the counit.
inline MCIL runner_spec_to_mcil(const ContainerMonad& t, const ContainerComonad& d,
                                const RunnerSpec& spec) {
  MCIL m;
  m.t = t;
  m.d = d;
  m.law = InteractionLaw{t.c, d.c, {}};
  m.law.table.resize(t.c.shape_count() * d.c.shape_count());
  for (Index td = 0; td < d.c.shape_count(); ++td) {
    FinSet yt = d.c.pos(td);
    auto elems = interpret(d.c, yt);
    std::map<ContainerElement, Index> lookup;
    for (Index i = 0; i < elems.size(); ++i) lookup[elems[i]] = i;
    DCoalgebra cofree;
    cofree.carrier = range_set("DY", elems.size(), "e");
    for (const auto& e : elems) {
      ContainerElement dd = comonad_duplicate_elem(d, e);
      auto [t0, kids] = split_element(d.square, dd);
      ContainerElement g;
      g.shape = t0;
      for (const auto& k : kids) g.payload.push_back(lookup.at(k));
      cofree.gamma.push_back(std::move(g));
    }
    Runner r = spec(cofree);
    Index y0 = lookup.at(universal_element(d.c, td));
    for (Index s = 0; s < t.c.shape_count(); ++s) {
      auto [p, y1] = r.at(s, y0);
      const ContainerElement& e1 = elems[y1];
      m.law.at(s, td) = {p, comonad_extract(d, e1)};
    }
  }
  return m;
}

// ---- handlers (the contrast) ------------------------------------------------------------

// An algebra of the free monad on the signature together with a seed
// map; handle is the unique fold.
struct Handler {
  FinSet z;
  Container sig;
  std::vector<std::vector<Index>> algebra;  // per shape: |Z|^arity table (mixed-radix)
  FinFn seed;                               // X -> Z
};

inline Index algebra_apply(const Handler& h, Index shape, std::span<const Index> args) {
  std::vector<std::size_t> radices(args.size(), h.z.size());
  return h.algebra.at(shape).at(mixed_radix_index(args, radices));
}

inline Index handle(const Handler& h, const FreeTree& t) {
  if (t.leaf) return h.seed(t.value);
  std::vector<Index> args;
  args.reserve(t.kids.size());
  for (const auto& k : t.kids) args.push_back(handle(h, k));
  return algebra_apply(h, t.shape, args);
}

// Both triangles of the free-algebra fold: h . eta = seed and
// h . mu = alpha . T h, on all trees up to the given depth.
inline bool handler_triangles_check(const Handler& h, std::size_t xsize, std::size_t depth) {
  for (Index x = 0; x < xsize; ++x)
    if (handle(h, FreeTree::mk_leaf(x)) != h.seed(x)) return false;
  auto table = enumerate_trees(h.sig, xsize, depth > 0 ? depth - 1 : 0);
  auto outers = enumerate_trees(h.sig, table.size(), depth);
  for (const auto& ot : outers) {
    Index direct = handle(h, tree_join(ot, table));
    // alpha . T h: handle the inner trees first, fold the outer skeleton
    std::function<Index(const FreeTree&)> fold = [&](const FreeTree& t) -> Index {
      if (t.leaf) return handle(h, table[t.value]);
      std::vector<Index> args;
      for (const auto& k : t.kids) args.push_back(fold(k));
      return algebra_apply(h, t.shape, args);
    };
    if (direct != fold(ot)) return false;
  }
  return true;
}

}  // namespace ilaw
