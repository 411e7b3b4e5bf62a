#pragma once

// The closed-form dual on containers. For C = <S, P> the dual is
// <Pi_{s in S} P(s), const S>: a dual shape is a tuple choosing one
// position per shape, and every dual position set is S itself. The
// canonical pairing evaluates: the computation learns its position from
// the machine's tuple, the machine learns the shape.

#include "ilaw/interaction.hpp"

namespace ilaw {

struct DualContainer {
  Container c;     // the dual
  Container base;  // the container it is the dual of
  std::vector<std::size_t> radix;  // |P(s)| per base shape

  Index tuple_index(std::span<const Index> q) const { return mixed_radix_index(q, radix); }
  std::vector<Index> tuple_at(Index shape) const { return mixed_radix_digits(shape, radix); }
};

inline DualContainer dual(const Container& c) {
  DualContainer d;
  d.base = c;
  d.radix.reserve(c.shape_count());
  for (Index s = 0; s < c.shape_count(); ++s) d.radix.push_back(c.pos(s).size());
  std::size_t count = mixed_radix_size(d.radix, "dual");
  std::vector<std::string> toks;
  toks.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    auto q = mixed_radix_digits(n, d.radix);
    std::vector<std::string> parts;
    parts.reserve(q.size());
    for (Index s = 0; s < q.size(); ++s) parts.push_back(c.pos(s).token(q[s]));
    toks.push_back(tuple_token(parts));
  }
  std::vector<FinSet> poss(count, c.shapes);
  d.c = Container(FinSet("D(" + c.shapes.name + ")", std::move(toks)), std::move(poss));
  return d;
}

// The canonical law between C and dual(C): entry at (s, q) is
// (q(s), s).
inline InteractionLaw dual_pairing(const Container& c) {
  DualContainer d = dual(c);
  InteractionLaw il{c, d.c, {}};
  il.table.reserve(c.shape_count() * d.c.shape_count());
  for (Index s = 0; s < c.shape_count(); ++s)
    for (Index t = 0; t < d.c.shape_count(); ++t) il.table.push_back({d.tuple_at(t)[s], s});
  return il;
}

// Evaluation with the dual on the computation side: the law
// (dual C, C) obtained by reversing the pairing.
inline InteractionLaw dual_evaluation(const Container& c) { return il_rev(dual_pairing(c)); }

// Contravariant action of the dual on morphisms: for n : F -> G,
// dual(n) : dual G -> dual F precomposes the corresponding family.
inline ContainerMorphism dual_of_morphism(const ContainerMorphism& n, const DualContainer& dg,
                                          const DualContainer& df) {
  if (dg.base != n.dst || df.base != n.src)
    throw std::invalid_argument("dual_of_morphism: duals do not match morphism");
  ContainerMorphism r{dg.c, df.c, {}, {}};
  r.shape_map.reserve(dg.c.shape_count());
  for (Index t = 0; t < dg.c.shape_count(); ++t) {
    auto q = dg.tuple_at(t);
    std::vector<Index> q2(n.src.shape_count());
    for (Index s = 0; s < q2.size(); ++s) q2[s] = n.pos_map[s][q[n.shape_map[s]]];
    r.shape_map.push_back(df.tuple_index(q2));
    r.pos_map.push_back(n.shape_map);  // positions of dual F shape = S_F
  }
  return r;
}

inline ContainerMorphism dual_of_morphism(const ContainerMorphism& n) {
  return dual_of_morphism(n, dual(n.dst), dual(n.src));
}

// A law of F, G is the same as a morphism F -> dual G; these two are
// mutually inverse.
inline ContainerMorphism il_to_morphism(const InteractionLaw& il, const DualContainer& dg) {
  if (dg.base != il.g) throw std::invalid_argument("il_to_morphism: dual of wrong container");
  ContainerMorphism m{il.f, dg.c, {}, {}};
  m.shape_map.reserve(il.f.shape_count());
  m.pos_map.reserve(il.f.shape_count());
  for (Index s = 0; s < il.f.shape_count(); ++s) {
    std::vector<Index> q(il.g.shape_count());
    std::vector<Index> pm(il.g.shape_count());
    for (Index t = 0; t < il.g.shape_count(); ++t) {
      auto [p, qq] = il.at(s, t);
      q[t] = qq;
      pm[t] = p;
    }
    m.shape_map.push_back(dg.tuple_index(q));
    m.pos_map.push_back(std::move(pm));
  }
  return m;
}

inline ContainerMorphism il_to_morphism(const InteractionLaw& il) {
  return il_to_morphism(il, dual(il.g));
}

inline InteractionLaw morphism_to_il(const ContainerMorphism& m, const DualContainer& dg) {
  if (m.dst != dg.c) throw std::invalid_argument("morphism_to_il: morphism not into a dual");
  InteractionLaw il{m.src, dg.base, {}};
  il.table.reserve(m.src.shape_count() * dg.base.shape_count());
  for (Index s = 0; s < m.src.shape_count(); ++s) {
    auto q = dg.tuple_at(m.shape_map[s]);
    for (Index t = 0; t < dg.base.shape_count(); ++t)
      il.table.push_back({m.pos_map[s][t], q[t]});
  }
  return il;
}

// e : Id -> dual Id and its inverse; both composites are identities.
inline std::pair<ContainerMorphism, ContainerMorphism> e_iso() {
  Container id = c_id();
  DualContainer did = dual(id);
  ContainerMorphism e{id, did.c, {0}, {{0}}};
  ContainerMorphism einv{did.c, id, {0}, {{0}}};
  return {e, einv};
}

// Lax monoidality witness m_{G0,G1} : dual G0 . dual G1 -> dual(G0.G1),
// the transpose of the tensor of the two evaluations.
inline ContainerMorphism m_map(const Container& g0, const Container& g1) {
  InteractionLaw ev0 = dual_evaluation(g0);
  InteractionLaw ev1 = dual_evaluation(g1);
  ComposedContainer duals = c_compose(ev0.f, ev1.f);
  ComposedContainer gs = c_compose(g0, g1);
  InteractionLaw tensored = il_tensor(ev0, ev1, duals, gs);
  return il_to_morphism(tensored, dual(gs.c));
}

// Unit of the double-dual adjunction, C -> dual(dual C), exposed for
// tests only.
inline ContainerMorphism double_dual_unit(const Container& c) {
  return il_to_morphism(dual_pairing(c), dual(dual(c).c));
}

}  // namespace ilaw
