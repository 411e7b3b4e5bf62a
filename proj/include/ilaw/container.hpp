#pragma once

// Finite containers (polynomial signatures) as the concrete
// representation of endofunctors: a shape set S and a position set P(s)
// per shape, interpreting to Sigma s. X^{P s}. Morphisms are the
// shape-map / backwards position-map presentation of natural
// transformations, which is full and faithful for containers.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "ilaw/finset.hpp"

namespace ilaw {

struct Container {
  FinSet shapes;
  std::vector<FinSet> positions;  // aligned with shapes

  Container() = default;
  Container(FinSet shapes_, std::vector<FinSet> positions_)
      : shapes(std::move(shapes_)), positions(std::move(positions_)) {
    if (positions.size() != shapes.size())
      throw std::invalid_argument("Container: positions not total over shapes");
  }

  std::size_t shape_count() const { return shapes.size(); }
  const FinSet& pos(Index s) const { return positions.at(s); }

  friend bool operator==(const Container& a, const Container& b) {
    return a.shapes == b.shapes && a.positions == b.positions;
  }
  friend bool operator!=(const Container& a, const Container& b) { return !(a == b); }
};

// An element of C X: a shape and a payload row mapping each position of
// that shape to a carrier index.
struct ContainerElement {
  Index shape = 0;
  std::vector<Index> payload;

  friend bool operator==(const ContainerElement& a, const ContainerElement& b) {
    return a.shape == b.shape && a.payload == b.payload;
  }
  friend bool operator<(const ContainerElement& a, const ContainerElement& b) {
    return a.shape != b.shape ? a.shape < b.shape : a.payload < b.payload;
  }
};

inline std::string element_token(const Container& c, const FinSet& carrier,
                                 const ContainerElement& e) {
  std::vector<std::string> parts;
  parts.reserve(e.payload.size());
  for (Index v : e.payload) parts.push_back(carrier.token(v));
  return "(" + c.shapes.token(e.shape) + "|" + tuple_token(parts) + ")";
}

inline void check_element(const Container& c, const FinSet& carrier,
                          const ContainerElement& e, const char* what) {
  if (e.shape >= c.shape_count() || e.payload.size() != c.pos(e.shape).size())
    throw std::invalid_argument(std::string(what) + ": malformed element");
  for (Index v : e.payload)
    if (v >= carrier.size())
      throw std::invalid_argument(std::string(what) + ": payload outside carrier");
}

// All elements of C X: per shape s, all |X|^{|P s|} payload rows in
// mixed-radix order.
inline std::vector<ContainerElement> interpret(const Container& c, const FinSet& x) {
  std::size_t total = 0;
  for (std::size_t s = 0; s < c.shape_count(); ++s)
    total = guarded(total + checked_pow(x.size(), c.pos(s).size(), "interpret"), "interpret");
  std::vector<ContainerElement> out;
  out.reserve(total);
  for (Index s = 0; s < c.shape_count(); ++s) {
    std::vector<std::size_t> radices(c.pos(s).size(), x.size());
    std::size_t n = checked_pow(x.size(), c.pos(s).size(), "interpret");
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(ContainerElement{s, mixed_radix_digits(i, radices)});
  }
  return out;
}

inline FinSet interpret_set(const Container& c, const FinSet& x, const std::string& name) {
  std::vector<std::string> elems;
  for (const auto& e : interpret(c, x)) elems.push_back(element_token(c, x, e));
  return FinSet(name, std::move(elems));
}

// Functorial action: shape preserved, payload post-composed with f.
inline ContainerElement fmap(const Container& c, const FinFn& f, const ContainerElement& e) {
  check_element(c, f.dom, e, "fmap");
  ContainerElement r;
  r.shape = e.shape;
  r.payload.reserve(e.payload.size());
  for (Index v : e.payload) r.payload.push_back(f.table[v]);
  return r;
}

// ---- container morphisms ----------------------------------------------

// A natural transformation src -> dst: forwards on shapes, backwards on
// positions (pos_map[s] : P_dst(shape_map[s]) -> P_src(s)).
struct ContainerMorphism {
  Container src;
  Container dst;
  std::vector<Index> shape_map;
  std::vector<std::vector<Index>> pos_map;

  friend bool operator==(const ContainerMorphism& a, const ContainerMorphism& b) {
    return a.src == b.src && a.dst == b.dst && a.shape_map == b.shape_map &&
           a.pos_map == b.pos_map;
  }
};

inline void check_morphism(const ContainerMorphism& m, const char* what) {
  if (m.shape_map.size() != m.src.shape_count() || m.pos_map.size() != m.src.shape_count())
    throw std::invalid_argument(std::string(what) + ": maps not total over src shapes");
  for (Index s = 0; s < m.src.shape_count(); ++s) {
    if (m.shape_map[s] >= m.dst.shape_count())
      throw std::invalid_argument(std::string(what) + ": shape_map out of range");
    if (m.pos_map[s].size() != m.dst.pos(m.shape_map[s]).size())
      throw std::invalid_argument(std::string(what) + ": pos_map wrong domain");
    for (Index p : m.pos_map[s])
      if (p >= m.src.pos(s).size())
        throw std::invalid_argument(std::string(what) + ": pos_map out of range");
  }
}

inline ContainerMorphism morphism_identity(const Container& c) {
  ContainerMorphism m{c, c, {}, {}};
  m.shape_map.resize(c.shape_count());
  std::iota(m.shape_map.begin(), m.shape_map.end(), Index{0});
  m.pos_map.reserve(c.shape_count());
  for (Index s = 0; s < c.shape_count(); ++s) {
    std::vector<Index> t(c.pos(s).size());
    std::iota(t.begin(), t.end(), Index{0});
    m.pos_map.push_back(std::move(t));
  }
  return m;
}

inline ContainerElement morphism_apply(const ContainerMorphism& m, const ContainerElement& e) {
  ContainerElement r;
  r.shape = m.shape_map.at(e.shape);
  const auto& pm = m.pos_map[e.shape];
  r.payload.reserve(pm.size());
  for (Index p : pm) r.payload.push_back(e.payload.at(p));
  return r;
}

// g after f (vertical composition).
inline ContainerMorphism morphism_compose(const ContainerMorphism& g, const ContainerMorphism& f) {
  if (f.dst != g.src) throw std::invalid_argument("morphism_compose: boundary mismatch");
  ContainerMorphism r{f.src, g.dst, {}, {}};
  r.shape_map.reserve(f.src.shape_count());
  r.pos_map.reserve(f.src.shape_count());
  for (Index s = 0; s < f.src.shape_count(); ++s) {
    Index mid = f.shape_map[s];
    Index top = g.shape_map[mid];
    r.shape_map.push_back(top);
    std::vector<Index> t(g.pos_map[mid].size());
    for (std::size_t q = 0; q < t.size(); ++q) t[q] = f.pos_map[s][g.pos_map[mid][q]];
    r.pos_map.push_back(std::move(t));
  }
  return r;
}

// ---- constructors ------------------------------------------------------

inline Container c_id() {
  return Container(FinSet("Id", {"*"}), {unit_set("IdP")});
}

inline Container c_const(const FinSet& a) {
  std::vector<FinSet> pos(a.size(), empty_set());
  return Container(FinSet("K(" + a.name + ")", a.elems), std::move(pos));
}

// Reader A => X, the container <1, A>.
inline Container c_reader(const FinSet& a) {
  return Container(FinSet("Rd(" + a.name + ")", {"*"}), {a});
}

// Writer A x X, the container <A, 1>.
inline Container c_writer(const FinSet& a) {
  std::vector<FinSet> pos(a.size(), unit_set());
  return Container(FinSet("Wr(" + a.name + ")", a.elems), std::move(pos));
}

inline Container c_maybe() {
  return Container(FinSet("Maybe", {"just", "nothing"}), {unit_set(), empty_set()});
}

// Truncated nonempty lists: shapes are lengths 1..N, P(n) has n slots.
inline Container c_nelist(std::size_t n) {
  std::vector<std::string> shapes;
  std::vector<FinSet> pos;
  for (std::size_t len = 1; len <= n; ++len) {
    shapes.push_back(std::to_string(len));
    pos.push_back(range_set("P" + std::to_string(len), len));
  }
  return Container(FinSet("NEList" + std::to_string(n), std::move(shapes)), std::move(pos));
}

inline Container c_product(const Container& a, const Container& b) {
  FinSet shapes = product(a.shapes, b.shapes);
  std::vector<FinSet> pos;
  pos.reserve(shapes.size());
  for (Index i = 0; i < a.shape_count(); ++i)
    for (Index j = 0; j < b.shape_count(); ++j) pos.push_back(coproduct(a.pos(i), b.pos(j)));
  return Container(std::move(shapes), std::move(pos));
}

inline Container c_coproduct(const Container& a, const Container& b) {
  FinSet shapes = coproduct(a.shapes, b.shapes);
  std::vector<FinSet> pos;
  pos.reserve(shapes.size());
  for (Index i = 0; i < a.shape_count(); ++i) pos.push_back(a.pos(i));
  for (Index j = 0; j < b.shape_count(); ++j) pos.push_back(b.pos(j));
  return Container(std::move(shapes), std::move(pos));
}

// ---- composition -------------------------------------------------------

// outer . inner: shapes are pairs (s, f : P_outer(s) -> S_inner),
// positions of (s, f) are the concatenated blocks Sigma p. P_inner(f p).
// Shape order is s-major with f enumerated in mixed-radix order; the
// struct keeps the encode/decode arithmetic alongside the container.
struct ComposedContainer {
  Container c;
  Container outer;
  Container inner;
  std::vector<std::size_t> shape_offset;             // per outer shape
  std::vector<std::vector<Index>> inner_shapes;      // per composite shape
  std::vector<std::vector<std::size_t>> pos_offset;  // per composite shape, per outer position

  Index shape_index(Index outer_shape, std::span<const Index> inner) const {
    std::vector<std::size_t> radices(outer.pos(outer_shape).size(), inner_shape_count());
    return shape_offset[outer_shape] + mixed_radix_index(inner, radices);
  }
  std::size_t inner_shape_count() const { return inner.shape_count(); }

  Index outer_shape_of(Index composite_shape) const {
    Index s = 0;
    while (s + 1 < shape_offset.size() && shape_offset[s + 1] <= composite_shape) ++s;
    return s;
  }
  const std::vector<Index>& inner_shapes_of(Index composite_shape) const {
    return inner_shapes.at(composite_shape);
  }

  Index pos_index(Index composite_shape, Index outer_pos, Index inner_pos) const {
    return pos_offset[composite_shape][outer_pos] + inner_pos;
  }
  std::pair<Index, Index> pos_split(Index composite_shape, Index p) const {
    const auto& offs = pos_offset[composite_shape];
    Index op = 0;
    while (op + 1 < offs.size() && offs[op + 1] <= p) ++op;
    return {op, p - offs[op]};
  }
};

inline ComposedContainer c_compose(const Container& a, const Container& b) {
  ComposedContainer cc;
  cc.outer = a;
  cc.inner = b;
  std::vector<std::string> shape_toks;
  std::vector<FinSet> poss;
  std::size_t offset = 0;
  for (Index s = 0; s < a.shape_count(); ++s) {
    cc.shape_offset.push_back(offset);
    std::size_t arity = a.pos(s).size();
    std::size_t count = checked_pow(b.shape_count(), arity, "c_compose");
    offset = guarded(offset + count, "c_compose");
    std::vector<std::size_t> radices(arity, b.shape_count());
    for (std::size_t n = 0; n < count; ++n) {
      auto f = mixed_radix_digits(n, radices);
      std::vector<std::string> fparts;
      fparts.reserve(arity);
      for (Index t : f) fparts.push_back(b.shapes.token(t));
      shape_toks.push_back("(" + a.shapes.token(s) + "|" + tuple_token(fparts) + ")");
      std::vector<std::string> ptoks;
      std::vector<std::size_t> offs;
      std::size_t acc = 0;
      for (Index p = 0; p < arity; ++p) {
        offs.push_back(acc);
        const FinSet& pb = b.pos(f[p]);
        for (const auto& q : pb.elems)
          ptoks.push_back("(" + a.pos(s).token(p) + "." + q + ")");
        acc += pb.size();
      }
      guarded(acc, "c_compose positions");
      poss.push_back(FinSet("P", std::move(ptoks)));
      cc.inner_shapes.push_back(std::move(f));
      cc.pos_offset.push_back(std::move(offs));
    }
  }
  cc.c = Container(FinSet("(" + a.shapes.name + "." + b.shapes.name + ")", std::move(shape_toks)),
                   std::move(poss));
  return cc;
}

// A => C X as a container: shapes A => S, positions Sigma a. P(f a).
inline ComposedContainer c_exponent(const FinSet& a, const Container& c) {
  return c_compose(c_reader(a), c);
}

// Split an element of outer.inner over X into the outer shape and one
// inner element per outer position. fuse_element is its inverse.
inline std::pair<Index, std::vector<ContainerElement>> split_element(
    const ComposedContainer& cc, const ContainerElement& e) {
  Index os = cc.outer_shape_of(e.shape);
  const auto& f = cc.inner_shapes_of(e.shape);
  std::vector<ContainerElement> kids;
  kids.reserve(f.size());
  for (Index p = 0; p < f.size(); ++p) {
    ContainerElement kid;
    kid.shape = f[p];
    std::size_t n = cc.inner.pos(f[p]).size();
    kid.payload.reserve(n);
    for (Index q = 0; q < n; ++q) kid.payload.push_back(e.payload.at(cc.pos_index(e.shape, p, q)));
    kids.push_back(std::move(kid));
  }
  return {os, std::move(kids)};
}

inline ContainerElement fuse_element(const ComposedContainer& cc, Index outer_shape,
                                     std::span<const ContainerElement> kids) {
  std::vector<Index> f;
  f.reserve(kids.size());
  for (const auto& k : kids) f.push_back(k.shape);
  ContainerElement e;
  e.shape = cc.shape_index(outer_shape, f);
  for (const auto& k : kids)
    e.payload.insert(e.payload.end(), k.payload.begin(), k.payload.end());
  return e;
}

// Horizontal (Godement) composition of morphisms m : A -> A', n : B -> B'
// giving A.B -> A'.B'.
inline ContainerMorphism morphism_hcompose(const ContainerMorphism& m, const ContainerMorphism& n,
                                           const ComposedContainer& src,
                                           const ComposedContainer& dst) {
  ContainerMorphism r{src.c, dst.c, {}, {}};
  r.shape_map.resize(src.c.shape_count());
  r.pos_map.resize(src.c.shape_count());
  for (Index cs = 0; cs < src.c.shape_count(); ++cs) {
    Index a = src.outer_shape_of(cs);
    const auto& f = src.inner_shapes_of(cs);
    Index a2 = m.shape_map.at(a);
    std::vector<Index> f2(dst.outer.pos(a2).size());
    for (Index p2 = 0; p2 < f2.size(); ++p2) f2[p2] = n.shape_map.at(f[m.pos_map[a][p2]]);
    Index ds = dst.shape_index(a2, f2);
    r.shape_map[cs] = ds;
    std::vector<Index> pm(dst.c.pos(ds).size());
    for (Index dp = 0; dp < pm.size(); ++dp) {
      auto [p2, q2] = dst.pos_split(ds, dp);
      Index p = m.pos_map[a][p2];
      Index q = n.pos_map[f[p]][q2];
      pm[dp] = src.pos_index(cs, p, q);
    }
    r.pos_map[cs] = std::move(pm);
  }
  return r;
}

// Structural isomorphisms of the composition monoidal structure.

inline ContainerMorphism left_unitor(const Container& c) {
  // Id . C -> C
  ComposedContainer cc = c_compose(c_id(), c);
  ContainerMorphism m{cc.c, c, {}, {}};
  for (Index cs = 0; cs < cc.c.shape_count(); ++cs) {
    Index s = cc.inner_shapes_of(cs)[0];
    m.shape_map.push_back(s);
    std::vector<Index> pm(c.pos(s).size());
    for (Index q = 0; q < pm.size(); ++q) pm[q] = cc.pos_index(cs, 0, q);
    m.pos_map.push_back(std::move(pm));
  }
  return m;
}

inline ContainerMorphism right_unitor(const Container& c) {
  // C . Id -> C
  ComposedContainer cc = c_compose(c, c_id());
  ContainerMorphism m{cc.c, c, {}, {}};
  for (Index cs = 0; cs < cc.c.shape_count(); ++cs) {
    Index s = cc.outer_shape_of(cs);
    m.shape_map.push_back(s);
    std::vector<Index> pm(c.pos(s).size());
    for (Index p = 0; p < pm.size(); ++p) pm[p] = cc.pos_index(cs, p, 0);
    m.pos_map.push_back(std::move(pm));
  }
  return m;
}

// (A.B).C -> A.(B.C)
inline ContainerMorphism associator(const Container& a, const Container& b, const Container& c) {
  ComposedContainer ab = c_compose(a, b);
  ComposedContainer ab_c = c_compose(ab.c, c);
  ComposedContainer bc = c_compose(b, c);
  ComposedContainer a_bc = c_compose(a, bc.c);
  ContainerMorphism m{ab_c.c, a_bc.c, {}, {}};
  for (Index s = 0; s < ab_c.c.shape_count(); ++s) {
    Index sab = ab_c.outer_shape_of(s);           // shape of A.B
    const auto& g = ab_c.inner_shapes_of(s);      // positions of A.B -> shapes of C
    Index sa = ab.outer_shape_of(sab);
    const auto& f = ab.inner_shapes_of(sab);      // positions of A -> shapes of B
    std::vector<Index> h(a.pos(sa).size());       // positions of A -> shapes of B.C
    for (Index p = 0; p < h.size(); ++p) {
      std::vector<Index> gp(b.pos(f[p]).size());
      for (Index q = 0; q < gp.size(); ++q) gp[q] = g[ab.pos_index(sab, p, q)];
      h[p] = bc.shape_index(f[p], gp);
    }
    Index ds = a_bc.shape_index(sa, h);
    m.shape_map.push_back(ds);
    std::vector<Index> pm(a_bc.c.pos(ds).size());
    for (Index dp = 0; dp < pm.size(); ++dp) {
      auto [p, qr] = a_bc.pos_split(ds, dp);
      auto [q, r] = bc.pos_split(h[p], qr);
      pm[dp] = ab_c.pos_index(s, ab.pos_index(sab, p, q), r);
    }
    m.pos_map.push_back(std::move(pm));
  }
  return m;
}

// ---- enumeration and isomorphism search --------------------------------

// All natural transformations F -> G; count is the product over F-shapes
// of Sigma_{s'} |P_F(s)|^{|P_G(s')|}, arranged canonically (per-shape
// choices s-major, target shape ascending, pos table in mixed-radix
// order).
inline std::vector<ContainerMorphism> nat_trans_enumerate(const Container& f,
                                                          const Container& g) {
  // per F-shape, the list of (target shape, pos table) choices
  std::vector<std::vector<std::pair<Index, std::vector<Index>>>> choices(f.shape_count());
  std::size_t total = 1;
  for (Index s = 0; s < f.shape_count(); ++s) {
    for (Index t = 0; t < g.shape_count(); ++t) {
      std::size_t n = checked_pow(f.pos(s).size(), g.pos(t).size(), "nat_trans_enumerate");
      std::vector<std::size_t> radices(g.pos(t).size(), f.pos(s).size());
      for (std::size_t i = 0; i < n; ++i)
        choices[s].push_back({t, mixed_radix_digits(i, radices)});
    }
    total = checked_mul(total, choices[s].size(), "nat_trans_enumerate");
  }
  std::vector<ContainerMorphism> out;
  if (f.shape_count() == 0) {
    out.push_back(ContainerMorphism{f, g, {}, {}});
    return out;
  }
  for (auto& ch : choices)
    if (ch.empty()) return out;  // no transformation at all
  out.reserve(total);
  std::vector<std::size_t> idx(f.shape_count(), 0);
  for (;;) {
    ContainerMorphism m{f, g, {}, {}};
    for (Index s = 0; s < f.shape_count(); ++s) {
      m.shape_map.push_back(choices[s][idx[s]].first);
      m.pos_map.push_back(choices[s][idx[s]].second);
    }
    out.push_back(std::move(m));
    std::size_t k = f.shape_count();
    while (k-- > 0) {
      if (++idx[k] < choices[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

// Inverse of an isomorphism (bijective shape map with bijective
// position maps).
inline ContainerMorphism morphism_invert(const ContainerMorphism& m) {
  ContainerMorphism r{m.dst, m.src, {}, {}};
  r.shape_map.resize(m.dst.shape_count());
  r.pos_map.resize(m.dst.shape_count());
  for (Index s = 0; s < m.src.shape_count(); ++s) {
    Index t = m.shape_map[s];
    r.shape_map[t] = s;
    std::vector<Index> inv(m.pos_map[s].size());
    for (Index q = 0; q < m.pos_map[s].size(); ++q) inv[m.pos_map[s][q]] = q;
    r.pos_map[t] = std::move(inv);
  }
  return r;
}

inline bool morphism_is_iso(const ContainerMorphism& m) {
  std::vector<bool> hit(m.dst.shape_count(), false);
  for (Index s = 0; s < m.src.shape_count(); ++s) {
    Index t = m.shape_map[s];
    if (hit[t]) return false;
    hit[t] = true;
    if (m.src.pos(s).size() != m.dst.pos(t).size()) return false;
    std::vector<bool> phit(m.src.pos(s).size(), false);
    for (Index p : m.pos_map[s]) {
      if (phit[p]) return false;
      phit[p] = true;
    }
  }
  return m.src.shape_count() == m.dst.shape_count();
}

// Search for a container isomorphism (the paper's "≅" claims are iso
// claims, not equalities). Backtracks over shape bijections compatible
// with position-set sizes; the position bijection per shape is free, so
// identity tables are used.
inline std::optional<ContainerMorphism> find_iso(const Container& a, const Container& b) {
  if (a.shape_count() != b.shape_count()) return std::nullopt;
  std::size_t n = a.shape_count();
  std::vector<Index> target(n, 0);
  std::vector<bool> used(n, false);
  std::function<bool(Index)> rec = [&](Index s) -> bool {
    if (s == n) return true;
    for (Index t = 0; t < n; ++t) {
      if (used[t] || a.pos(s).size() != b.pos(t).size()) continue;
      used[t] = true;
      target[s] = t;
      if (rec(s + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  ContainerMorphism m{a, b, target, {}};
  for (Index s = 0; s < n; ++s) {
    std::vector<Index> t(a.pos(s).size());
    std::iota(t.begin(), t.end(), Index{0});
    m.pos_map.push_back(std::move(t));
  }
  return m;
}

// ---- session types (syntactic duality) ----------------------------------

struct SessionType {
  enum class Kind { Return, InternalChoice, ExternalChoice, Output, Input };
  Kind kind = Kind::Return;
  FinSet base;                                   // for Output/Input
  std::vector<SessionType> kids;                 // 2 for choices, 1 for Output/Input

  static SessionType ret() { return SessionType{}; }
  static SessionType internal_choice(SessionType l, SessionType r) {
    SessionType t;
    t.kind = Kind::InternalChoice;
    t.kids = {std::move(l), std::move(r)};
    return t;
  }
  static SessionType external_choice(SessionType l, SessionType r) {
    SessionType t;
    t.kind = Kind::ExternalChoice;
    t.kids = {std::move(l), std::move(r)};
    return t;
  }
  static SessionType output(FinSet a, SessionType rest) {
    SessionType t;
    t.kind = Kind::Output;
    t.base = std::move(a);
    t.kids = {std::move(rest)};
    return t;
  }
  static SessionType input(FinSet a, SessionType rest) {
    SessionType t;
    t.kind = Kind::Input;
    t.base = std::move(a);
    t.kids = {std::move(rest)};
    return t;
  }

  friend bool operator==(const SessionType& a, const SessionType& b) {
    return a.kind == b.kind && a.base == b.base && a.kids == b.kids;
  }
};

// Clause-by-clause dual: choices swap, output and input swap.
inline SessionType session_dual(const SessionType& t) {
  using K = SessionType::Kind;
  switch (t.kind) {
    case K::Return:
      return SessionType::ret();
    case K::InternalChoice:
      return SessionType::external_choice(session_dual(t.kids[0]), session_dual(t.kids[1]));
    case K::ExternalChoice:
      return SessionType::internal_choice(session_dual(t.kids[0]), session_dual(t.kids[1]));
    case K::Output:
      return SessionType::input(t.base, session_dual(t.kids[0]));
    case K::Input:
      return SessionType::output(t.base, session_dual(t.kids[0]));
  }
  throw std::logic_error("session_dual: bad kind");
}

// Interpret the grammar with Return mapped to Id.
inline Container session_to_container(const SessionType& t) {
  using K = SessionType::Kind;
  switch (t.kind) {
    case K::Return:
      return c_id();
    case K::InternalChoice:
      return c_coproduct(session_to_container(t.kids[0]), session_to_container(t.kids[1]));
    case K::ExternalChoice:
      return c_product(session_to_container(t.kids[0]), session_to_container(t.kids[1]));
    case K::Output:
      return c_product(c_const(t.base), session_to_container(t.kids[0]));
    case K::Input:
      return c_exponent(t.base, session_to_container(t.kids[0])).c;
  }
  throw std::logic_error("session_to_container: bad kind");
}

}  // namespace ilaw
