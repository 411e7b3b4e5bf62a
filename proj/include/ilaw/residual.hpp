#pragma once

// R-residual interaction laws and runners for registered residual
// monads. An R-value over a finite index domain is a sorted multiset of
// payload indices plus a sorted multiset of error tokens; the four
// registered monads (Identity, Maybe, Exceptions, FinNondet) constrain
// which of those are admissible, and share one generic unit/bind.

#include <algorithm>

#include "ilaw/monadic.hpp"

namespace ilaw {

struct RValue {
  std::vector<Index> payload;  // sorted multiset of domain indices
  std::vector<Index> errors;   // sorted multiset of error-token indices

  void normalize() {
    std::sort(payload.begin(), payload.end());
    std::sort(errors.begin(), errors.end());
  }

  friend bool operator==(const RValue& a, const RValue& b) {
    return a.payload == b.payload && a.errors == b.errors;
  }
};

struct ResidualMonad {
  enum class Kind { Identity, Maybe, Exceptions, FinNondet };
  std::string name;
  Kind kind = Kind::Identity;
  FinSet error_tokens;  // empty for Identity and FinNondet

  static ResidualMonad identity() { return {"Identity", Kind::Identity, empty_set("E")}; }
  static ResidualMonad maybe() {
    return {"Maybe", Kind::Maybe, FinSet("E", {"nothing"})};
  }
  static ResidualMonad exceptions(const FinSet& e) { return {"Exceptions", Kind::Exceptions, e}; }
  static ResidualMonad fin_nondet() { return {"FinNondet", Kind::FinNondet, empty_set("E")}; }

  bool valid_value(const RValue& v, std::size_t domain) const {
    for (Index p : v.payload)
      if (p >= domain) return false;
    for (Index e : v.errors)
      if (e >= error_tokens.size()) return false;
    switch (kind) {
      case Kind::Identity:
        return v.payload.size() == 1 && v.errors.empty();
      case Kind::Maybe:
      case Kind::Exceptions:
        return v.payload.size() + v.errors.size() == 1;
      case Kind::FinNondet:
        return v.errors.empty();
    }
    return false;
  }

  RValue unit(Index x) const { return RValue{{x}, {}}; }

  RValue bind(const RValue& v, const std::function<RValue(Index)>& k) const {
    RValue out;
    out.errors = v.errors;
    for (Index p : v.payload) {
      RValue r = k(p);
      out.payload.insert(out.payload.end(), r.payload.begin(), r.payload.end());
      out.errors.insert(out.errors.end(), r.errors.begin(), r.errors.end());
    }
    out.normalize();
    return out;
  }

  RValue map(const RValue& v, const std::function<Index(Index)>& f) const {
    RValue out;
    out.errors = v.errors;
    out.payload.reserve(v.payload.size());
    for (Index p : v.payload) out.payload.push_back(f(p));
    out.normalize();
    return out;
  }

  // All admissible values over the domain; FinNondet is cut off at the
  // given multiset size (its value space is infinite).
  std::vector<RValue> enumerate_values(std::size_t domain, std::size_t multiset_bound = 2) const {
    std::vector<RValue> out;
    switch (kind) {
      case Kind::Identity:
        for (Index p = 0; p < domain; ++p) out.push_back(RValue{{p}, {}});
        break;
      case Kind::Maybe:
      case Kind::Exceptions:
        for (Index p = 0; p < domain; ++p) out.push_back(RValue{{p}, {}});
        for (Index e = 0; e < error_tokens.size(); ++e) out.push_back(RValue{{}, {e}});
        break;
      case Kind::FinNondet: {
        // multisets of size 0..bound in nondecreasing order
        std::vector<Index> cur;
        std::function<void(Index)> rec = [&](Index minval) {
          out.push_back(RValue{cur, {}});
          if (cur.size() == multiset_bound) return;
          for (Index p = minval; p < domain; ++p) {
            cur.push_back(p);
            rec(p);
            cur.pop_back();
          }
        };
        rec(0);
        break;
      }
    }
    return out;
  }
};

// Monad laws for a residual monad at a small domain, over its
// enumerable (or multiset-bounded) value space.
inline bool residual_monad_laws_check(const ResidualMonad& r, std::size_t domain) {
  auto values = r.enumerate_values(domain, 2);
  // unit is valid; bind(unit x, k) = k x; bind(v, unit) = v
  for (Index x = 0; x < domain; ++x)
    if (!r.valid_value(r.unit(x), domain)) return false;
  std::vector<std::vector<RValue>> conts;  // a few continuations domain -> values
  for (std::size_t i = 0; i < values.size() && i < 8; ++i)
    conts.push_back(std::vector<RValue>(domain, values[i]));
  // also a non-constant continuation
  if (values.size() >= 2 && domain >= 2) {
    std::vector<RValue> k(domain, values[0]);
    k[1] = values[1];
    conts.push_back(std::move(k));
  }
  for (const auto& kt : conts) {
    auto k = [&](Index x) { return kt[x]; };
    for (Index x = 0; x < domain; ++x)
      if (!(r.bind(r.unit(x), k) == kt[x])) return false;
    for (const auto& v : values) {
      if (!(r.bind(v, [&](Index x) { return r.unit(x); }) == v)) return false;
      if (!r.valid_value(r.bind(v, k), domain)) return false;
      // associativity against a second continuation
      for (const auto& kt2 : conts) {
        auto k2 = [&](Index x) { return kt2[x]; };
        RValue lhs = r.bind(r.bind(v, k), k2);
        RValue rhs = r.bind(v, [&](Index x) { return r.bind(k(x), k2); });
        if (!(lhs == rhs)) return false;
      }
    }
  }
  return true;
}

// ---- residual laws ------------------------------------------------------------------

struct ResidualLaw {
  Container f;
  Container g;
  ResidualMonad r;
  std::vector<RValue> table;  // per (s,t): value over P_F(s) x P_G(t), index p*|Q|+q

  const RValue& at(Index s, Index t) const { return table.at(s * g.shape_count() + t); }
  RValue& at(Index s, Index t) { return table.at(s * g.shape_count() + t); }
};

inline void check_residual_law(const ResidualLaw& law, const char* what) {
  if (law.table.size() != law.f.shape_count() * law.g.shape_count())
    throw std::invalid_argument(std::string(what) + ": table not total");
  for (Index s = 0; s < law.f.shape_count(); ++s)
    for (Index t = 0; t < law.g.shape_count(); ++t)
      if (!law.r.valid_value(law.at(s, t), law.f.pos(s).size() * law.g.pos(t).size()))
        throw std::invalid_argument(std::string(what) + ": inadmissible table value");
}

// Apply over carriers: the result is an R-value over X x Y with index
// x * |Y| + y.
inline RValue residual_apply(const ResidualLaw& law, const ContainerElement& ef,
                             const ContainerElement& eg, std::size_t ysize) {
  std::size_t q_size = law.g.pos(eg.shape).size();
  return law.r.map(law.at(ef.shape, eg.shape), [&](Index cell) {
    Index p = cell / q_size, q = cell % q_size;
    return ef.payload.at(p) * ysize + eg.payload.at(q);
  });
}

// Embed a plain interaction law as an R-residual one (all entries pure).
inline ResidualLaw embed_residual(const InteractionLaw& il, const ResidualMonad& r) {
  ResidualLaw law{il.f, il.g, r, {}};
  for (Index s = 0; s < il.f.shape_count(); ++s)
    for (Index t = 0; t < il.g.shape_count(); ++t) {
      auto [p, q] = il.at(s, t);
      law.table.push_back(r.unit(p * il.g.pos(t).size() + q));
    }
  return law;
}

// Tensor: outer law first, R-bind the inner law inside each outcome.
inline ResidualLaw residual_tensor(const ResidualLaw& l1, const ResidualLaw& l2,
                                   const ComposedContainer& fj, const ComposedContainer& gk) {
  if (fj.outer != l1.f || fj.inner != l2.f || gk.outer != l1.g || gk.inner != l2.g)
    throw std::invalid_argument("residual_tensor: composite containers do not match");
  ResidualLaw out{fj.c, gk.c, l1.r, {}};
  for (Index s = 0; s < fj.c.shape_count(); ++s) {
    Index sf = fj.outer_shape_of(s);
    const auto& fin = fj.inner_shapes_of(s);
    for (Index t = 0; t < gk.c.shape_count(); ++t) {
      Index tg = gk.outer_shape_of(t);
      const auto& gin = gk.inner_shapes_of(t);
      std::size_t q1_size = l1.g.pos(tg).size();
      std::size_t qc_size = gk.c.pos(t).size();
      RValue v = l1.r.bind(l1.at(sf, tg), [&](Index cell) {
        Index p1 = cell / q1_size, q1 = cell % q1_size;
        std::size_t q2_size = l2.g.pos(gin[q1]).size();
        return l1.r.map(l2.at(fin[p1], gin[q1]), [&](Index cell2) {
          Index p2 = cell2 / q2_size, q2 = cell2 % q2_size;
          return fj.pos_index(s, p1, p2) * qc_size + gk.pos_index(t, q1, q2);
        });
      });
      out.table.push_back(std::move(v));
    }
  }
  return out;
}

inline ResidualLaw residual_tensor(const ResidualLaw& l1, const ResidualLaw& l2) {
  return residual_tensor(l1, l2, c_compose(l1.f, l2.f), c_compose(l1.g, l2.g));
}

// ---- residual MCILs --------------------------------------------------------------------

struct ResidualMCIL {
  ContainerMonad t;
  ContainerComonad d;
  ResidualLaw law;
};

inline CheckReport residual_mcil_check(const ResidualMCIL& m) {
  CheckReport rep;
  const auto& t = m.t;
  const auto& d = m.d;
  const ResidualMonad& r = m.law.r;
  // unit: psi . (eta x id) = eta^R . (id x eps): a single pure outcome
  // whose machine component is the counit position
  for (Index td = 0; td < d.c.shape_count(); ++td) {
    const RValue& v = m.law.at(t.unit_shape, td);
    std::size_t q_size = d.c.pos(td).size();
    bool ok = v.errors.empty() && v.payload.size() == 1 &&
              v.payload[0] % q_size == d.counit_pos[td];
    if (!ok) {
      rep.ok = false;
      rep.diagram = "unit";
      rep.counterexample = {t.unit_shape, td};
      return rep;
    }
  }
  // mult: mu^R-collapsed two-step interaction equals the one-step
  // interaction of the joined computation
  for (Index sq = 0; sq < t.square.c.shape_count(); ++sq) {
    if (!t.mult_defined(sq)) continue;
    Index s0 = t.square.outer_shape_of(sq);
    const auto& f = t.square.inner_shapes_of(sq);
    for (Index td = 0; td < d.c.shape_count(); ++td) {
      std::size_t q_size = d.c.pos(td).size();
      std::size_t sq_pos = t.square.c.pos(sq).size();
      (void)sq_pos;
      // LHS: law at the joined shape, positions transported through mu
      std::size_t qm_size = d.c.pos(td).size();
      RValue lhs = r.map(m.law.at(*t.mult_shape[sq], td), [&](Index cell) {
        Index p = cell / qm_size, q = cell % qm_size;
        return t.mult_pos[sq][p] * q_size + q;
      });
      // RHS: outer interaction, then inner interaction under bind
      Index dsq = d.comult_shape[td];
      Index t0 = d.square.outer_shape_of(dsq);
      const auto& g = d.square.inner_shapes_of(dsq);
      std::size_t q0_size = d.c.pos(t0).size();
      RValue rhs = r.bind(m.law.at(s0, t0), [&](Index cell) {
        Index p1 = cell / q0_size, q1 = cell % q0_size;
        std::size_t q2_size = d.c.pos(g[q1]).size();
        return r.map(m.law.at(f[p1], g[q1]), [&](Index cell2) {
          Index p2 = cell2 / q2_size, q2 = cell2 % q2_size;
          return t.square.pos_index(sq, p1, p2) * q_size +
                 d.comult_pos[td][d.square.pos_index(dsq, q1, q2)];
        });
      });
      if (!(lhs == rhs)) {
        rep.ok = false;
        rep.diagram = "mult";
        rep.counterexample = {sq, td};
        return rep;
      }
    }
  }
  return rep;
}

// All R-residual tables between two containers, for monads with a
// finite value space per cell (everything except FinNondet).
inline std::vector<ResidualLaw> residual_enumerate(const Container& f, const Container& g,
                                                   const ResidualMonad& r,
                                                   std::size_t limit = SIZE_MAX) {
  if (r.kind == ResidualMonad::Kind::FinNondet)
    throw std::invalid_argument("residual_enumerate: FinNondet cells are unbounded");
  std::vector<std::vector<RValue>> cell_values;
  std::size_t total = 1;
  for (Index s = 0; s < f.shape_count(); ++s)
    for (Index t = 0; t < g.shape_count(); ++t) {
      cell_values.push_back(r.enumerate_values(f.pos(s).size() * g.pos(t).size()));
      total = checked_mul(total, cell_values.back().size(), "residual_enumerate");
    }
  std::vector<ResidualLaw> out;
  if (total == 0) return out;
  std::vector<std::size_t> idx(cell_values.size(), 0);
  for (std::size_t n = 0; n < total && out.size() < limit; ++n) {
    ResidualLaw law{f, g, r, {}};
    for (std::size_t c = 0; c < cell_values.size(); ++c) law.table.push_back(cell_values[c][idx[c]]);
    out.push_back(std::move(law));
    std::size_t k = cell_values.size();
    while (k-- > 0) {
      if (++idx[k] < cell_values[k].size()) break;
      idx[k] = 0;
    }
  }
  return out;
}

// ---- the exceptions instance (paper's worked example) ------------------------------------

// X + E as a container: an ok shape with one position plus a positionless
// shape per exception.
inline Container c_exceptions(const FinSet& e) {
  std::vector<std::string> shapes = {"ok"};
  std::vector<FinSet> pos = {unit_set()};
  for (const auto& tok : e.elems) {
    shapes.push_back("exn:" + tok);
    pos.push_back(empty_set());
  }
  return Container(FinSet("Exc(" + e.name + ")", std::move(shapes)), std::move(pos));
}

// T X = A => (X + E), the reader of exceptions monad.
inline ContainerMonad exceptions_reader_monad(const FinSet& a, const FinSet& e) {
  ContainerMonad t;
  t.name = "reader_exc(" + a.name + "," + e.name + ")";
  Container exc = c_exceptions(e);
  ComposedContainer cc = c_compose(c_reader(a), exc);
  t.c = cc.c;
  t.unit_shape = cc.shape_index(0, std::vector<Index>(a.size(), 0));  // \a. ok x
  t.square = c_compose(t.c, t.c);
  t.mult_shape.resize(t.square.c.shape_count());
  t.mult_pos.resize(t.square.c.shape_count());
  for (Index sq = 0; sq < t.square.c.shape_count(); ++sq) {
    Index fshape = t.square.outer_shape_of(sq);
    const auto& fexc = cc.inner_shapes_of(fshape);  // per a: ok or an exception
    const auto& g = t.square.inner_shapes_of(sq);   // per ok-position: a T-shape
    // h(a) = if f(a) = exn then exn else g(pos of a)(a)
    std::vector<Index> h(a.size());
    std::vector<std::optional<std::pair<Index, Index>>> source(a.size());
    for (Index av = 0; av < a.size(); ++av) {
      if (fexc[av] != 0) {
        h[av] = fexc[av];
        continue;
      }
      Index p = cc.pos_index(fshape, av, 0);  // position of a in P_T(f)
      Index inner_shape = g[p];
      const auto& iexc = cc.inner_shapes_of(inner_shape);
      h[av] = iexc[av];
      if (iexc[av] == 0) source[av] = {p, cc.pos_index(inner_shape, av, 0)};
    }
    t.mult_shape[sq] = cc.shape_index(0, h);
    std::vector<Index> pm;
    for (Index av = 0; av < a.size(); ++av)
      if (h[av] == 0) pm.push_back(t.square.pos_index(sq, source[av]->first, source[av]->second));
    t.mult_pos[sq] = std::move(pm);
  }
  return t;
}

// psi(f, (a, y)) = case f a of ok x -> pure (x, y) | exn e -> error e
inline ResidualMCIL exceptions_residual_mcil(const FinSet& a, const FinSet& e) {
  ResidualMCIL m;
  m.t = exceptions_reader_monad(a, e);
  m.d = writer_comonad(a);
  ResidualMonad r = ResidualMonad::exceptions(e);
  ComposedContainer cc = c_compose(c_reader(a), c_exceptions(e));
  m.law = ResidualLaw{m.t.c, m.d.c, r, {}};
  for (Index fs = 0; fs < m.t.c.shape_count(); ++fs) {
    const auto& fexc = cc.inner_shapes_of(fs);
    for (Index av = 0; av < a.size(); ++av) {
      if (fexc[av] == 0) {
        Index p = cc.pos_index(fs, av, 0);
        m.law.table.push_back(r.unit(p * 1 + 0));  // |P_D(a)| = 1
      } else {
        m.law.table.push_back(RValue{{}, {fexc[av] - 1}});
      }
    }
  }
  return m;
}

// ---- residual runners ---------------------------------------------------------------------

struct ResidualRunner {
  FinSet state;
  Container sig;
  ResidualMonad r;
  std::vector<RValue> theta;  // per (s, y): value over P(s) x Y

  const RValue& at(Index s, Index y) const { return theta.at(s * state.size() + y); }
};

// R-bind-threaded fold; the result indexes X x Y as x * |Y| + y.
inline RValue residual_run(const ResidualRunner& r, const FreeTree& t, Index y0) {
  std::size_t ys = r.state.size();
  if (t.leaf) return r.r.unit(t.value * ys + y0);
  return r.r.bind(r.at(t.shape, y0), [&](Index cell) {
    Index p = cell / ys, y1 = cell % ys;
    return residual_run(r, t.kids[p], y1);
  });
}

// Monad map into St^{R,Y}: the same table viewed through
// vartheta : T -> (Y => R(X x Y)).
struct ResidualStateMap {
  FinSet state;
  Container sig;
  ResidualMonad r;
  std::vector<RValue> vartheta;
};

inline ResidualStateMap residual_runner_to_state_map(const ResidualRunner& r) {
  return ResidualStateMap{r.state, r.sig, r.r, r.theta};
}

inline ResidualRunner residual_state_map_to_runner(const ResidualStateMap& sm) {
  return ResidualRunner{sm.state, sm.sig, sm.r, sm.vartheta};
}

inline RValue residual_state_map_apply(const ResidualStateMap& sm, const FreeTree& t, Index y0) {
  return residual_run(ResidualRunner{sm.state, sm.sig, sm.r, sm.vartheta}, t, y0);
}

// The monad-map multiplication square for the free signature, checked on
// joinable trees.
inline bool residual_state_map_check_free(const ResidualStateMap& sm, std::size_t xsize,
                                          std::size_t depth) {
  auto table = enumerate_trees(sm.sig, xsize, depth);
  auto outers = enumerate_trees(sm.sig, table.size(), depth);
  std::size_t ys = sm.state.size();
  for (const auto& ot : outers)
    for (Index y = 0; y < ys; ++y) {
      RValue direct = residual_state_map_apply(sm, tree_join(ot, table), y);
      RValue seq = sm.r.bind(residual_state_map_apply(sm, ot, y), [&](Index cell) {
        Index leafix = cell / ys, y1 = cell % ys;
        return residual_state_map_apply(sm, table[leafix], y1);
      });
      if (!(direct == seq)) return false;
    }
  return true;
}

// ---- pure naturality and the Kleisli gap ----------------------------------------------------

// Every table-built residual law is natural for pure maps; this verifies
// it by exhaustion over all functions between small carriers.
inline bool pure_naturality_check(const ResidualLaw& law, std::size_t max_carrier = 2) {
  for (std::size_t nx = 1; nx <= max_carrier; ++nx)
    for (std::size_t ny = 1; ny <= max_carrier; ++ny)
      for (std::size_t nx2 = 1; nx2 <= max_carrier; ++nx2)
        for (std::size_t ny2 = 1; ny2 <= max_carrier; ++ny2) {
          FinSet x = range_set("X", nx, "x"), x2 = range_set("X2", nx2, "u");
          FinSet y = range_set("Y", ny, "y"), y2 = range_set("Y2", ny2, "v");
          ExponentSet fx = exponent(x, x2), fy = exponent(y, y2);
          for (Index i = 0; i < fx.set.size(); ++i)
            for (Index j = 0; j < fy.set.size(); ++j) {
              FinFn u = fx.fn_at(i), v = fy.fn_at(j);
              for (const auto& ef : interpret(law.f, x))
                for (const auto& eg : interpret(law.g, y)) {
                  RValue lhs = law.r.map(residual_apply(law, ef, eg, ny), [&](Index cell) {
                    Index xv = cell / ny, yv = cell % ny;
                    return u(xv) * ny2 + v(yv);
                  });
                  RValue rhs = residual_apply(law, fmap(law.f, u, ef), fmap(law.g, v, eg), ny2);
                  if (!(lhs == rhs)) return false;
                }
            }
        }
  return true;
}

// The documented strictness gap: with R = FinNondet, the law
// phi(x, (y0, y1)) = {(x, y0), (x, y1)} on F = Id, G = reader(2)
// satisfies pure naturality but fails the Kleisli-naturality square for
// the duplicating Kleisli map l(y) = {v0, v1}. Returns the two path
// results; they differ in multiplicity.
struct KleisliGapDemo {
  ResidualLaw law;
  RValue path_kleisli;  // through the distributive law and R-monoidality
  RValue path_residual; // through phi then R(k x l)
};

inline KleisliGapDemo kleisli_gap_demo() {
  ResidualMonad r = ResidualMonad::fin_nondet();
  Container f = c_id();
  Container g = c_reader(range_set("B", 2, "b"));
  ResidualLaw law{f, g, r, {RValue{{0, 1}, {}}}};  // read both components
  // carriers: X = {x}, Y = {y}; X' = X, Y' = {v0, v1}
  // k = pure identity, l(y) = {v0, v1}
  std::size_t ny2 = 2;
  // path 2 (residual naturality route): phi(x, (y,y)) = {(x,y),(x,y)},
  // then bind with m^R . (k x l)
  RValue phi = residual_apply(law, ContainerElement{0, {0}}, ContainerElement{0, {0, 0}}, 1);
  RValue path2 = r.bind(phi, [&](Index cell) {
    Index xv = cell / 1;
    (void)xv;
    return RValue{{0 * ny2 + 0, 0 * ny2 + 1}, {}};  // m(k x, l y) = {(x,v0),(x,v1)}
  });
  // path 1 (Kleisli route): G-bar l via the canonical distributive law of
  // reader over multiset (all combinations), m^R with k x = {x}, then
  // R(phi') and mu^R
  std::vector<std::pair<Index, Index>> combos = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  RValue path1;
  for (auto [l0, l1] : combos) {
    // phi'(x, (v_l0, v_l1)) = {(x, v_l0), (x, v_l1)}
    path1.payload.push_back(0 * ny2 + l0);
    path1.payload.push_back(0 * ny2 + l1);
  }
  path1.normalize();
  path2.normalize();
  return KleisliGapDemo{law, path1, path2};
}

}  // namespace ilaw
