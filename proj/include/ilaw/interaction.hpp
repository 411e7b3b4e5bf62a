#pragma once

// Functor-functor interaction laws between containers, stored in their
// Yoneda-reduced table form: one position pair per shape pair. A table
// is automatically a natural family F X x G Y -> X x Y, so naturality
// is by construction and only re-verified in tests.

#include "ilaw/container.hpp"

namespace ilaw {

struct InteractionLaw {
  Container f;
  Container g;
  // table[s * |S_G| + t] = (p in P_F(s), q in P_G(t))
  std::vector<std::pair<Index, Index>> table;

  const std::pair<Index, Index>& at(Index s, Index t) const {
    return table.at(s * g.shape_count() + t);
  }
  std::pair<Index, Index>& at(Index s, Index t) { return table.at(s * g.shape_count() + t); }

  friend bool operator==(const InteractionLaw& a, const InteractionLaw& b) {
    return a.f == b.f && a.g == b.g && a.table == b.table;
  }
};

inline void check_law(const InteractionLaw& il, const char* what) {
  if (il.table.size() != il.f.shape_count() * il.g.shape_count())
    throw std::invalid_argument(std::string(what) + ": table not total");
  for (Index s = 0; s < il.f.shape_count(); ++s)
    for (Index t = 0; t < il.g.shape_count(); ++t) {
      auto [p, q] = il.at(s, t);
      if (p >= il.f.pos(s).size() || q >= il.g.pos(t).size())
        throw std::invalid_argument(std::string(what) + ": entry outside position sets");
    }
}

// phi(eF, eG) = (payload_F(p), payload_G(q)) at the table entry of the
// two shapes.
inline std::pair<Index, Index> il_apply(const InteractionLaw& il, const ContainerElement& ef,
                                        const ContainerElement& eg) {
  auto [p, q] = il.at(ef.shape, eg.shape);
  return {ef.payload.at(p), eg.payload.at(q)};
}

// All tables, canonically ordered; empty exactly when some shape pair
// has an empty product of position sets.
inline std::vector<InteractionLaw> il_enumerate(const Container& f, const Container& g) {
  std::size_t pairs = f.shape_count() * g.shape_count();
  std::vector<std::size_t> radices;
  radices.reserve(pairs);
  std::size_t total = 1;
  for (Index s = 0; s < f.shape_count(); ++s)
    for (Index t = 0; t < g.shape_count(); ++t) {
      radices.push_back(f.pos(s).size() * g.pos(t).size());
      total = checked_mul(total, radices.back(), "il_enumerate");
    }
  std::vector<InteractionLaw> out;
  if (total == 0) return out;
  out.reserve(total);
  for (std::size_t n = 0; n < total; ++n) {
    auto digits = mixed_radix_digits(n, radices);
    InteractionLaw il{f, g, {}};
    il.table.reserve(pairs);
    std::size_t k = 0;
    for (Index s = 0; s < f.shape_count(); ++s)
      for (Index t = 0; t < g.shape_count(); ++t) {
        std::size_t qn = g.pos(t).size();
        il.table.push_back({digits[k] / qn, digits[k] % qn});
        ++k;
      }
    out.push_back(std::move(il));
  }
  return out;
}

// The tensorial unit (Id, Id, id).
inline InteractionLaw il_identity() {
  return InteractionLaw{c_id(), c_id(), {{0, 0}}};
}

// (F, G, phi)^rev = (G, F, phi^rev).
inline InteractionLaw il_rev(const InteractionLaw& il) {
  InteractionLaw r{il.g, il.f, {}};
  r.table.resize(il.table.size());
  for (Index s = 0; s < il.f.shape_count(); ++s)
    for (Index t = 0; t < il.g.shape_count(); ++t) {
      auto [p, q] = il.at(s, t);
      r.table[t * il.f.shape_count() + s] = {q, p};
    }
  return r;
}

// Stretching: (F', G', phi . (f x g)) for f : F' -> F, g : G' -> G.
inline InteractionLaw il_stretch(const InteractionLaw& il, const ContainerMorphism& f,
                                 const ContainerMorphism& g) {
  if (f.dst != il.f || g.dst != il.g)
    throw std::invalid_argument("il_stretch: morphism boundaries do not match the law");
  InteractionLaw r{f.src, g.src, {}};
  r.table.reserve(f.src.shape_count() * g.src.shape_count());
  for (Index s = 0; s < f.src.shape_count(); ++s)
    for (Index t = 0; t < g.src.shape_count(); ++t) {
      auto [p, q] = il.at(f.shape_map[s], g.shape_map[t]);
      r.table.push_back({f.pos_map[s][p], g.pos_map[t][q]});
    }
  return r;
}

// Tensor along composition: (F.J, G.K, psi . phi(JxK)); the outer law
// picks the outer positions, the inner law finishes inside them.
inline InteractionLaw il_tensor(const InteractionLaw& il1, const InteractionLaw& il2,
                                const ComposedContainer& fj, const ComposedContainer& gk) {
  if (fj.outer != il1.f || fj.inner != il2.f || gk.outer != il1.g || gk.inner != il2.g)
    throw std::invalid_argument("il_tensor: composite containers do not match the laws");
  InteractionLaw r{fj.c, gk.c, {}};
  r.table.reserve(fj.c.shape_count() * gk.c.shape_count());
  for (Index s = 0; s < fj.c.shape_count(); ++s) {
    Index sf = fj.outer_shape_of(s);
    const auto& fin = fj.inner_shapes_of(s);
    for (Index t = 0; t < gk.c.shape_count(); ++t) {
      Index tg = gk.outer_shape_of(t);
      const auto& gin = gk.inner_shapes_of(t);
      auto [p1, q1] = il1.at(sf, tg);
      auto [p2, q2] = il2.at(fin[p1], gin[q1]);
      r.table.push_back({fj.pos_index(s, p1, p2), gk.pos_index(t, q1, q2)});
    }
  }
  return r;
}

inline InteractionLaw il_tensor(const InteractionLaw& il1, const InteractionLaw& il2) {
  return il_tensor(il1, il2, c_compose(il1.f, il2.f), c_compose(il1.g, il2.g));
}

// Product of laws: (F0 x F1, G0 + G1, phi) dispatching on the machine
// tag.
inline InteractionLaw il_product(const InteractionLaw& il0, const InteractionLaw& il1) {
  Container f = c_product(il0.f, il1.f);
  Container g = c_coproduct(il0.g, il1.g);
  InteractionLaw r{f, g, {}};
  std::size_t s1n = il1.f.shape_count();
  r.table.reserve(f.shape_count() * g.shape_count());
  for (Index s = 0; s < f.shape_count(); ++s) {
    Index s0 = s / s1n, s1 = s % s1n;
    std::size_t left = il0.f.pos(s0).size();
    for (Index t = 0; t < g.shape_count(); ++t) {
      if (t < il0.g.shape_count()) {
        auto [p, q] = il0.at(s0, t);
        r.table.push_back({p, q});  // inl position of the product container
      } else {
        auto [p, q] = il1.at(s1, t - il0.g.shape_count());
        r.table.push_back({left + p, q});
      }
    }
  }
  return r;
}

// The final law (1, 0, !): constant-1 against the zero functor.
inline InteractionLaw il_final() {
  return InteractionLaw{c_const(unit_set()), Container(empty_set("S"), {}), {}};
}

// Interaction law map (f : F -> F', g : G' -> G) between laws phi, phi':
// the square phi . (id x g) = phi' . (f x id) holds tablewise.
struct ILMap {
  InteractionLaw src;
  InteractionLaw dst;
  ContainerMorphism f;  // src.f -> dst.f
  ContainerMorphism g;  // dst.g -> src.g
};

inline bool il_map_check(const ILMap& m) {
  if (m.f.src != m.src.f || m.f.dst != m.dst.f || m.g.src != m.dst.g || m.g.dst != m.src.g)
    return false;
  for (Index s = 0; s < m.src.f.shape_count(); ++s)
    for (Index t = 0; t < m.dst.g.shape_count(); ++t) {
      auto [p, q] = m.src.at(s, m.g.shape_map[t]);
      auto [p2, q2] = m.dst.at(m.f.shape_map[s], t);
      if (p != m.f.pos_map[s][p2] || m.g.pos_map[t][q] != q2) return false;
    }
  return true;
}

}  // namespace ilaw
