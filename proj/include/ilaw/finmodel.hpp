#pragma once

// Brute-force oracle: endofunctors on a truncated universe of finite
// sets (sizes 0..k with every function between them), with ends and
// naturality computed by exhaustion. Deliberately independent of the
// container representation; used for refutation and for cross-checking
// the closed forms. A family natural at size k need not extend beyond
// it, so the oracle is only trusted on the cataloged examples.

#include <functional>
#include <map>

#include "ilaw/container.hpp"

namespace ilaw {

struct Universe {
  std::size_t k = 3;
  std::vector<FinSet> objects;  // objects[n] = canonical n-element set
  std::vector<std::vector<std::vector<FinFn>>> hom_cache;  // [m][n] in mixed-radix order

  explicit Universe(std::size_t k_ = 3) : k(k_) {
    for (std::size_t n = 0; n <= k; ++n) objects.push_back(range_set("U" + std::to_string(n), n));
    hom_cache.resize(k + 1);
    for (std::size_t m = 0; m <= k; ++m) {
      hom_cache[m].resize(k + 1);
      for (std::size_t n = 0; n <= k; ++n) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < m; ++i) count *= n;
        std::vector<std::size_t> radices(m, n);
        for (std::size_t i = 0; i < count; ++i)
          hom_cache[m][n].push_back(FinFn(objects[m], objects[n], mixed_radix_digits(i, radices)));
      }
    }
  }

  std::size_t hom_count(std::size_t m, std::size_t n) const { return hom_cache[m][n].size(); }

  const FinFn& hom_at(std::size_t m, std::size_t n, std::size_t idx) const {
    return hom_cache[m][n][idx];
  }

  std::size_t hom_index(const FinFn& f) const {
    std::vector<std::size_t> radices(f.dom.size(), f.cod.size());
    return mixed_radix_index(f.table, radices);
  }

  // all functions U_m -> U_n, mixed-radix order
  const std::vector<FinFn>& homs(std::size_t m, std::size_t n) const { return hom_cache[m][n]; }
};

// A functor given by explicit object and morphism tables over the whole
// universe.
struct FinFunctor {
  std::string name;
  const Universe* uni = nullptr;
  std::vector<FinSet> obj;  // per size 0..k
  // tables[m][n][hom index] = per obj[m]-element, an obj[n]-element
  std::vector<std::vector<std::vector<std::vector<Index>>>> tables;

  const std::vector<Index>& map_idx(std::size_t m, std::size_t n, std::size_t h) const {
    return tables[m][n][h];
  }
  const std::vector<Index>& map(std::size_t m, std::size_t n, const FinFn& f) const {
    return tables[m][n][uni->hom_index(f)];
  }
};

// Fill the morphism tables from an element-level action.
inline void functor_tabulate(
    FinFunctor& f,
    const std::function<Index(std::size_t, std::size_t, const FinFn&, Index)>& action) {
  const Universe& u = *f.uni;
  f.tables.assign(u.k + 1, {});
  for (std::size_t m = 0; m <= u.k; ++m) {
    f.tables[m].assign(u.k + 1, {});
    for (std::size_t n = 0; n <= u.k; ++n) {
      std::size_t hc = u.hom_count(m, n);
      f.tables[m][n].resize(hc);
      for (std::size_t h = 0; h < hc; ++h) {
        FinFn fn = u.hom_at(m, n, h);
        auto& tab = f.tables[m][n][h];
        tab.resize(f.obj[m].size());
        for (Index e = 0; e < f.obj[m].size(); ++e) tab[e] = action(m, n, fn, e);
      }
    }
  }
}

inline bool functor_validate(const FinFunctor& f) {
  const Universe& u = *f.uni;
  for (std::size_t n = 0; n <= u.k; ++n) {
    const auto& idt = f.map(n, n, fn_identity(u.objects[n]));
    for (Index i = 0; i < f.obj[n].size(); ++i)
      if (idt[i] != i) return false;
  }
  for (std::size_t m = 0; m <= u.k; ++m)
    for (std::size_t n = 0; n <= u.k; ++n)
      for (std::size_t p = 0; p <= u.k; ++p)
        for (const auto& g : u.homs(m, n))
          for (const auto& h : u.homs(n, p)) {
            const auto& gh = f.map(m, p, fn_compose(h, g));
            const auto& g1 = f.map(m, n, g);
            const auto& h1 = f.map(n, p, h);
            for (Index i = 0; i < f.obj[m].size(); ++i)
              if (gh[i] != h1[g1[i]]) return false;
          }
  return true;
}

// Interpret a container over the universe.
inline FinFunctor from_container(const Container& c, const Universe& u) {
  FinFunctor f;
  f.name = "[" + c.shapes.name + "]";
  f.uni = &u;
  std::vector<std::vector<ContainerElement>> elems;
  std::vector<std::map<ContainerElement, Index>> lookup(u.k + 1);
  for (std::size_t n = 0; n <= u.k; ++n) {
    elems.push_back(interpret(c, u.objects[n]));
    for (Index i = 0; i < elems[n].size(); ++i) lookup[n][elems[n][i]] = i;
    f.obj.push_back(interpret_set(c, u.objects[n], f.name + std::to_string(n)));
  }
  functor_tabulate(f, [&](std::size_t m, std::size_t n, const FinFn& fn, Index e) {
    return lookup[n].at(fmap(c, fn, elems[m][e]));
  });
  return f;
}

// X x X quotiented by swap, via sorted-pair canonical representatives.
// Not a container; the carrier of the commutative-binary degeneracy
// theorem.
inline FinFunctor unordered_pair_functor(const Universe& u) {
  FinFunctor f;
  f.name = "UPair";
  f.uni = &u;
  auto pairs_of = [](std::size_t n) {
    std::vector<std::pair<Index, Index>> ps;
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) ps.push_back({i, j});
    return ps;
  };
  std::vector<std::vector<std::pair<Index, Index>>> pairs;
  for (std::size_t n = 0; n <= u.k; ++n) {
    pairs.push_back(pairs_of(n));
    std::vector<std::string> toks;
    for (auto [i, j] : pairs[n])
      toks.push_back("{" + std::to_string(i) + "," + std::to_string(j) + "}");
    f.obj.push_back(FinSet("UPair" + std::to_string(n), std::move(toks)));
  }
  functor_tabulate(f, [&](std::size_t m, std::size_t n, const FinFn& fn, Index e) {
    auto [i, j] = pairs[m][e];
    Index i2 = fn(i), j2 = fn(j);
    if (i2 > j2) std::swap(i2, j2);
    for (Index t = 0; t < pairs[n].size(); ++t)
      if (pairs[n][t] == std::pair<Index, Index>{i2, j2}) return t;
    throw std::logic_error("UPair: pair not found");
  });
  return f;
}

// ---- unary natural families ---------------------------------------------

// A family of maps F U_n -> G U_n for every universe object, with a
// naturality checker.
struct NatFamily {
  std::vector<std::vector<Index>> component;  // per size n: per F-element, a G-element

  friend bool operator==(const NatFamily& a, const NatFamily& b) {
    return a.component == b.component;
  }
};

inline bool nat_family_check(const FinFunctor& f, const FinFunctor& g, const NatFamily& fam) {
  const Universe& u = *f.uni;
  if (fam.component.size() != u.k + 1) return false;
  for (std::size_t n = 0; n <= u.k; ++n)
    if (fam.component[n].size() != f.obj[n].size()) return false;
  for (std::size_t m = 0; m <= u.k; ++m)
    for (std::size_t n = 0; n <= u.k; ++n)
      for (std::size_t h = 0; h < u.hom_count(m, n); ++h) {
        const auto& fmapv = f.map_idx(m, n, h);
        const auto& gmapv = g.map_idx(m, n, h);
        for (Index e = 0; e < f.obj[m].size(); ++e)
          if (fam.component[n][fmapv[e]] != gmapv[fam.component[m][e]]) return false;
      }
  return true;
}

// ---- the end: dual of a functor over the universe ------------------------

// A naturality-respecting family alpha_Y : G Y -> X x Y for each
// universe Y, stored as (x-part, y-part) per G-element per level.
struct EndFamily {
  std::vector<std::vector<std::pair<Index, Index>>> component;  // [n][g-elem] = (x, y)

  std::string token(const FinSet& x, const std::vector<FinSet>& uobj) const {
    std::string s;
    for (std::size_t n = 0; n < component.size(); ++n) {
      s += "|";
      for (std::size_t e = 0; e < component[n].size(); ++e) {
        auto [xv, yv] = component[n][e];
        s += "(" + x.token(xv) + "," + uobj[n].token(yv) + ")";
      }
    }
    return s;
  }
};

namespace detail {

// Backtracking enumeration of all families alpha_Y : G Y -> X x Y
// natural in Y. Setting alpha on one element forces it on every image
// G v (element), which is propagated eagerly.
inline void end_families_rec(const FinFunctor& g, std::size_t xsize,
                             const std::vector<std::pair<std::size_t, Index>>& order,
                             std::vector<std::vector<std::pair<Index, Index>>>& assign,
                             std::vector<std::vector<bool>>& fixed, std::size_t next,
                             std::vector<EndFamily>& out) {
  const Universe& u = *g.uni;
  while (next < order.size() && fixed[order[next].first][order[next].second]) ++next;
  if (next == order.size()) {
    out.push_back(EndFamily{assign});
    return;
  }
  auto [lvl, elem] = order[next];
  for (Index xv = 0; xv < xsize; ++xv)
    for (Index yv = 0; yv < u.objects[lvl].size(); ++yv) {
      std::vector<std::pair<std::size_t, Index>> trail;
      bool ok = true;
      std::function<bool(std::size_t, Index, std::pair<Index, Index>)> set_value =
          [&](std::size_t l, Index e, std::pair<Index, Index> v) -> bool {
        if (fixed[l][e]) return assign[l][e] == v;
        assign[l][e] = v;
        fixed[l][e] = true;
        trail.push_back({l, e});
        for (std::size_t n2 = 0; n2 <= u.k; ++n2)
          for (std::size_t h = 0; h < u.hom_count(l, n2); ++h) {
            const FinFn& fn = u.hom_at(l, n2, h);
            const auto& gm = g.map_idx(l, n2, h);
            if (!set_value(n2, gm[e], {v.first, fn(v.second)})) return false;
          }
        return true;
      };
      ok = set_value(lvl, elem, {xv, yv});
      if (ok) end_families_rec(g, xsize, order, assign, fixed, next + 1, out);
      for (auto& [l, e] : trail) fixed[l][e] = false;
    }
}

}  // namespace detail

inline std::vector<EndFamily> end_families(const FinFunctor& g, std::size_t xsize) {
  const Universe& u = *g.uni;
  for (std::size_t n = 0; n <= u.k; ++n)
    if (xsize * n == 0 && g.obj[n].size() > 0) return {};
  std::vector<std::pair<std::size_t, Index>> order;
  std::vector<std::vector<std::pair<Index, Index>>> assign(u.k + 1);
  std::vector<std::vector<bool>> fixed(u.k + 1);
  for (std::size_t n = 0; n <= u.k; ++n) {
    assign[n].resize(g.obj[n].size());
    fixed[n].assign(g.obj[n].size(), false);
    for (Index e = 0; e < g.obj[n].size(); ++e) order.push_back({n, e});
  }
  std::vector<EndFamily> out;
  detail::end_families_rec(g, xsize, order, assign, fixed, 0, out);
  return out;
}

// The dual computed as an end over the universe: obj[n] is the set of
// natural families G Y -> U_n x Y; morphisms post-compose the x-part.
struct EndDual {
  FinFunctor functor;
  std::vector<std::vector<EndFamily>> families;  // per level n
};

inline EndDual end_dual(const FinFunctor& g) {
  const Universe& u = *g.uni;
  EndDual d;
  for (std::size_t n = 0; n <= u.k; ++n) d.families.push_back(end_families(g, n));
  std::vector<std::map<std::vector<std::vector<std::pair<Index, Index>>>, Index>> lookup(u.k + 1);
  for (std::size_t n = 0; n <= u.k; ++n)
    for (Index i = 0; i < d.families[n].size(); ++i) lookup[n][d.families[n][i].component] = i;
  FinFunctor f;
  f.name = "End(" + g.name + ")";
  f.uni = g.uni;
  for (std::size_t n = 0; n <= u.k; ++n) {
    std::vector<std::string> toks;
    for (const auto& fam : d.families[n]) toks.push_back(fam.token(u.objects[n], u.objects));
    f.obj.push_back(FinSet(f.name + std::to_string(n), std::move(toks)));
  }
  functor_tabulate(f, [&](std::size_t m, std::size_t n, const FinFn& fn, Index e) {
    auto comp = d.families[m][e].component;
    for (auto& lvl : comp)
      for (auto& xy : lvl) xy.first = fn(xy.first);
    auto it = lookup[n].find(comp);
    if (it == lookup[n].end()) throw std::logic_error("end_dual: image family not natural");
    return it->second;
  });
  d.functor = std::move(f);
  return d;
}

// ---- binary interaction families ------------------------------------------

// A binatural family phi : F U_n x G U_m -> U_n x U_m for all universe
// levels.
struct BinatFamily {
  // component[n][m][a * |G U_m| + b] = (x, y)
  std::vector<std::vector<std::vector<std::pair<Index, Index>>>> component;

  friend bool operator==(const BinatFamily& a, const BinatFamily& b) {
    return a.component == b.component;
  }
};

inline bool binat_check(const FinFunctor& f, const FinFunctor& g, const BinatFamily& fam) {
  const Universe& u = *f.uni;
  for (std::size_t n = 0; n <= u.k; ++n)
    for (std::size_t n2 = 0; n2 <= u.k; ++n2)
      for (std::size_t h = 0; h < u.hom_count(n, n2); ++h) {
        const FinFn& fn = u.hom_at(n, n2, h);
        const auto& fm = f.map_idx(n, n2, h);
        for (std::size_t m = 0; m <= u.k; ++m)
          for (Index a = 0; a < f.obj[n].size(); ++a)
            for (Index b = 0; b < g.obj[m].size(); ++b) {
              auto [x, y] = fam.component[n][m][a * g.obj[m].size() + b];
              auto [x2, y2] = fam.component[n2][m][fm[a] * g.obj[m].size() + b];
              if (x2 != fn(x) || y2 != y) return false;
            }
      }
  for (std::size_t m = 0; m <= u.k; ++m)
    for (std::size_t m2 = 0; m2 <= u.k; ++m2)
      for (std::size_t h = 0; h < u.hom_count(m, m2); ++h) {
        const FinFn& fn = u.hom_at(m, m2, h);
        const auto& gm = g.map_idx(m, m2, h);
        for (std::size_t n = 0; n <= u.k; ++n)
          for (Index a = 0; a < f.obj[n].size(); ++a)
            for (Index b = 0; b < g.obj[m].size(); ++b) {
              auto [x, y] = fam.component[n][m][a * g.obj[m].size() + b];
              auto [x2, y2] = fam.component[n][m2][a * g.obj[m2].size() + gm[b]];
              if (x2 != x || y2 != fn(y)) return false;
            }
      }
  return true;
}

namespace detail {

struct BinatState {
  const FinFunctor* f;
  const FinFunctor* g;
  std::vector<std::vector<std::vector<std::pair<Index, Index>>>> assign;
  std::vector<std::vector<std::vector<bool>>> fixed;
};

inline bool binat_propagate(BinatState& st, std::size_t n, std::size_t m, Index a, Index b,
                            std::pair<Index, Index> val,
                            std::vector<std::tuple<std::size_t, std::size_t, Index>>& trail) {
  const Universe& u = *st.f->uni;
  std::size_t gm_size = st.g->obj[m].size();
  Index cell = a * gm_size + b;
  if (st.fixed[n][m][cell]) return st.assign[n][m][cell] == val;
  st.assign[n][m][cell] = val;
  st.fixed[n][m][cell] = true;
  trail.push_back({n, m, cell});
  for (std::size_t n2 = 0; n2 <= u.k; ++n2)
    for (std::size_t h = 0; h < u.hom_count(n, n2); ++h) {
      const FinFn& fn = u.hom_at(n, n2, h);
      const auto& fm = st.f->map_idx(n, n2, h);
      if (!binat_propagate(st, n2, m, fm[a], b, {fn(val.first), val.second}, trail))
        return false;
    }
  for (std::size_t m2 = 0; m2 <= u.k; ++m2)
    for (std::size_t h = 0; h < u.hom_count(m, m2); ++h) {
      const FinFn& fn = u.hom_at(m, m2, h);
      const auto& gmv = st.g->map_idx(m, m2, h);
      if (!binat_propagate(st, n, m2, a, gmv[b], {val.first, fn(val.second)}, trail))
        return false;
    }
  return true;
}

inline void binat_rec(BinatState& st,
                      const std::vector<std::tuple<std::size_t, std::size_t, Index, Index>>& order,
                      std::size_t next, std::vector<BinatFamily>& out, std::size_t limit) {
  while (next < order.size()) {
    auto [n, m, a, b] = order[next];
    if (!st.fixed[n][m][a * st.g->obj[m].size() + b]) break;
    ++next;
  }
  if (next == order.size()) {
    out.push_back(BinatFamily{st.assign});
    return;
  }
  auto [n, m, a, b] = order[next];
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < m; ++y) {
      std::vector<std::tuple<std::size_t, std::size_t, Index>> trail;
      bool ok = binat_propagate(st, n, m, a, b, {x, y}, trail);
      if (ok) {
        binat_rec(st, order, next + 1, out, limit);
        if (out.size() >= limit) return;
      }
      for (auto& [tn, tm, cell] : trail) st.fixed[tn][tm][cell] = false;
    }
  }
}

}  // namespace detail

// All binatural families F X x G Y -> X x Y over the universe, by
// backtracking with eager naturality propagation.
inline std::vector<BinatFamily> interaction_families(const FinFunctor& f, const FinFunctor& g,
                                                     std::size_t limit = SIZE_MAX) {
  const Universe& u = *f.uni;
  detail::BinatState st;
  st.f = &f;
  st.g = &g;
  st.assign.resize(u.k + 1);
  st.fixed.resize(u.k + 1);
  std::vector<std::tuple<std::size_t, std::size_t, Index, Index>> order;
  for (std::size_t n = 0; n <= u.k; ++n) {
    st.assign[n].resize(u.k + 1);
    st.fixed[n].resize(u.k + 1);
    for (std::size_t m = 0; m <= u.k; ++m) {
      st.assign[n][m].resize(f.obj[n].size() * g.obj[m].size());
      st.fixed[n][m].assign(f.obj[n].size() * g.obj[m].size(), false);
      // a pair landing in an empty product refutes everything
      if ((n == 0 || m == 0) && f.obj[n].size() * g.obj[m].size() > 0) return {};
      for (Index a = 0; a < f.obj[n].size(); ++a)
        for (Index b = 0; b < g.obj[m].size(); ++b) order.push_back({n, m, a, b});
    }
  }
  std::vector<BinatFamily> out;
  detail::binat_rec(st, order, 0, out, limit);
  return out;
}

// ---- natural isomorphism between universe functors -----------------------

// Verify a proposed family of bijections as a natural isomorphism.
inline bool natural_iso_verify(const FinFunctor& f, const FinFunctor& g, const NatFamily& cand) {
  const Universe& u = *f.uni;
  if (cand.component.size() != u.k + 1) return false;
  for (std::size_t n = 0; n <= u.k; ++n) {
    if (f.obj[n].size() != g.obj[n].size()) return false;
    if (cand.component[n].size() != f.obj[n].size()) return false;
    std::vector<bool> hit(g.obj[n].size(), false);
    for (Index v : cand.component[n]) {
      if (v >= hit.size() || hit[v]) return false;
      hit[v] = true;
    }
  }
  return nat_family_check(f, g, cand);
}

// Backtracking search for a natural isomorphism, element by element with
// forced propagation along every hom. Suitable for small functors; the
// catalogued oracle-equivalence checks construct their candidate
// directly and only verify.
inline std::optional<NatFamily> natural_iso_search(const FinFunctor& f, const FinFunctor& g) {
  const Universe& u = *f.uni;
  for (std::size_t n = 0; n <= u.k; ++n)
    if (f.obj[n].size() != g.obj[n].size()) return std::nullopt;
  NatFamily cand;
  std::vector<std::vector<bool>> fixed(u.k + 1);
  std::vector<std::vector<bool>> used(u.k + 1);
  cand.component.resize(u.k + 1);
  for (std::size_t n = 0; n <= u.k; ++n) {
    cand.component[n].assign(f.obj[n].size(), 0);
    fixed[n].assign(f.obj[n].size(), false);
    used[n].assign(f.obj[n].size(), false);
  }
  std::vector<std::pair<std::size_t, Index>> order;
  for (std::size_t n = 0; n <= u.k; ++n)
    for (Index e = 0; e < f.obj[n].size(); ++e) order.push_back({n, e});

  std::function<bool(std::size_t)> rec = [&](std::size_t next) -> bool {
    while (next < order.size() && fixed[order[next].first][order[next].second]) ++next;
    if (next == order.size()) return nat_family_check(f, g, cand);
    auto [lvl, elem] = order[next];
    for (Index target = 0; target < g.obj[lvl].size(); ++target) {
      if (used[lvl][target]) continue;
      std::vector<std::pair<std::size_t, Index>> trail;
      std::function<bool(std::size_t, Index, Index)> set_to = [&](std::size_t l, Index e,
                                                                  Index t) -> bool {
        if (fixed[l][e]) return cand.component[l][e] == t;
        if (used[l][t]) return false;
        cand.component[l][e] = t;
        fixed[l][e] = true;
        used[l][t] = true;
        trail.push_back({l, e});
        for (std::size_t n2 = 0; n2 <= u.k; ++n2)
          for (std::size_t h = 0; h < u.hom_count(l, n2); ++h) {
            const auto& fmv = f.map_idx(l, n2, h);
            const auto& gmv = g.map_idx(l, n2, h);
            if (!set_to(n2, fmv[e], gmv[t])) return false;
          }
        return true;
      };
      bool ok = set_to(lvl, elem, target);
      if (ok && rec(next + 1)) return true;
      for (auto& [l, e] : trail) {
        used[l][cand.component[l][e]] = false;
        fixed[l][e] = false;
      }
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return cand;
}

// ---- degeneracy checks -----------------------------------------------------

struct DegeneracyReport {
  bool operation_valid = false;   // the supplied operation is natural (and commutative)
  bool degenerate = true;         // no candidate admits an interaction family
  std::size_t candidates_tested = 0;
  std::optional<std::size_t> witness;  // index of a candidate with families
  std::size_t witness_family_count = 0;
};

// Exhaustively generated family of container functors used as
// interaction candidates: one container per nondecreasing profile of
// 1..max_shapes position-set sizes in 0..max_positions (profiles that
// differ only by shape order give isomorphic functors).
inline std::vector<Container> candidate_containers(std::size_t max_shapes = 3,
                                                   std::size_t max_positions = 3) {
  std::vector<Container> out;
  std::vector<std::size_t> profile;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t minsz) {
    if (depth > 0) {
      std::vector<std::string> stoks;
      std::vector<FinSet> pos;
      for (std::size_t i = 0; i < profile.size(); ++i) {
        stoks.push_back("s" + std::to_string(i));
        pos.push_back(range_set("P" + std::to_string(i), profile[i], "p"));
      }
      out.push_back(Container(FinSet("G", std::move(stoks)), std::move(pos)));
    }
    if (depth == max_shapes) return;
    for (std::size_t p = minsz; p <= max_positions; ++p) {
      profile.push_back(p);
      rec(depth + 1, p);
      profile.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

namespace detail {

inline void degeneracy_scan(const FinFunctor& f, const std::vector<FinFunctor>& candidates,
                            DegeneracyReport& rep) {
  const Universe& u = *f.uni;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& g = candidates[i];
    bool nonzero = false;
    for (std::size_t n = 0; n <= u.k; ++n) nonzero = nonzero || g.obj[n].size() > 0;
    if (!nonzero) continue;
    ++rep.candidates_tested;
    auto fams = interaction_families(f, g, 1);
    if (!fams.empty()) {
      rep.degenerate = false;
      if (!rep.witness) {
        rep.witness = i;
        rep.witness_family_count = interaction_families(f, g).size();
      }
    }
  }
}

}  // namespace detail

// c, when supplied, is a nullary operation: a natural point of F (one
// F-element per level).
inline DegeneracyReport check_nullary_degeneracy(const FinFunctor& f,
                                                 const std::optional<std::vector<Index>>& c,
                                                 const std::vector<FinFunctor>& candidates) {
  const Universe& u = *f.uni;
  DegeneracyReport rep;
  if (c) {
    rep.operation_valid = true;
    for (std::size_t m = 0; m <= u.k && rep.operation_valid; ++m)
      for (std::size_t n = 0; n <= u.k && rep.operation_valid; ++n)
        for (std::size_t h = 0; h < u.hom_count(m, n); ++h)
          if (f.map_idx(m, n, h)[(*c)[m]] != (*c)[n]) {
            rep.operation_valid = false;
            break;
          }
  }
  detail::degeneracy_scan(f, candidates, rep);
  return rep;
}

// c, when supplied, is a commutative binary operation X x X -> F X: per
// level, a table from ordered pairs (index i*n+j) to F-elements.
inline DegeneracyReport check_commutative_degeneracy(
    const FinFunctor& f, const std::optional<std::vector<std::vector<Index>>>& c,
    const std::vector<FinFunctor>& candidates) {
  const Universe& u = *f.uni;
  DegeneracyReport rep;
  if (c) {
    rep.operation_valid = true;
    for (std::size_t n = 0; n <= u.k && rep.operation_valid; ++n)
      for (Index i = 0; i < n && rep.operation_valid; ++i)
        for (Index j = 0; j < n; ++j)
          if ((*c)[n][i * n + j] != (*c)[n][j * n + i]) {
            rep.operation_valid = false;
            break;
          }
    for (std::size_t m = 0; m <= u.k && rep.operation_valid; ++m)
      for (std::size_t n = 0; n <= u.k && rep.operation_valid; ++n)
        for (std::size_t h = 0; h < u.hom_count(m, n); ++h) {
          const FinFn& fn = u.hom_at(m, n, h);
          const auto& fm = f.map_idx(m, n, h);
          for (Index i = 0; i < m && rep.operation_valid; ++i)
            for (Index j = 0; j < m; ++j)
              if (fm[(*c)[m][i * m + j]] != (*c)[n][fn(i) * n + fn(j)]) {
                rep.operation_valid = false;
                break;
              }
        }
  }
  detail::degeneracy_scan(f, candidates, rep);
  return rep;
}

}  // namespace ilaw
