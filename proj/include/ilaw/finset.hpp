#pragma once

// Finite sets with interned string tokens, tabulated functions between
// them, and the product/coproduct/exponent calculus everything else
// enumerates over. All values are immutable after construction and all
// enumeration orders are canonical, so outputs are stable across runs.

#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ilaw {

using Index = std::size_t;

class SizeGuardError : public std::runtime_error {
public:
  explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

// Default guard of 10^6 elements per constructed set; combinatorial
// blow-ups (exponents, duals) must fail loudly rather than hang.
inline std::size_t& size_guard_limit() {
  static std::size_t limit = 1'000'000;
  return limit;
}

inline void set_size_guard_limit(std::size_t limit) { size_guard_limit() = limit; }

inline std::size_t guarded(std::size_t n, const char* what) {
  if (n > size_guard_limit())
    throw SizeGuardError(std::string(what) + ": size " + std::to_string(n) +
                         " exceeds guard " + std::to_string(size_guard_limit()));
  return n;
}

inline std::size_t checked_mul(std::size_t a, std::size_t b, const char* what) {
  if (a != 0 && b > size_guard_limit() / a + 1)
    throw SizeGuardError(std::string(what) + ": product overflows guard");
  return guarded(a * b, what);
}

inline std::size_t checked_pow(std::size_t base, std::size_t exp, const char* what) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = checked_mul(r, base, what);
  return r;
}

struct FinSet {
  std::string name;
  std::vector<std::string> elems;

  FinSet() = default;
  FinSet(std::string name_, std::vector<std::string> elems_)
      : name(std::move(name_)), elems(std::move(elems_)) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j)
        if (elems[i] == elems[j])
          throw std::invalid_argument("FinSet " + name + ": duplicate token " + elems[i]);
  }

  std::size_t size() const { return elems.size(); }
  bool empty() const { return elems.empty(); }
  const std::string& token(Index i) const { return elems.at(i); }

  std::optional<Index> find(std::string_view tok) const {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == tok) return i;
    return std::nullopt;
  }

  Index index_of(std::string_view tok) const {
    if (auto i = find(tok)) return *i;
    throw std::invalid_argument("FinSet " + name + ": no element " + std::string(tok));
  }

  // Element identity is token identity; the name is a label only.
  friend bool operator==(const FinSet& a, const FinSet& b) { return a.elems == b.elems; }
  friend bool operator!=(const FinSet& a, const FinSet& b) { return !(a == b); }
};

inline FinSet range_set(std::string name, std::size_t n, const std::string& prefix = "") {
  std::vector<std::string> elems;
  elems.reserve(n);
  for (std::size_t i = 0; i < n; ++i) elems.push_back(prefix + std::to_string(i));
  return FinSet(std::move(name), std::move(elems));
}

inline FinSet unit_set(const std::string& name = "1") { return FinSet(name, {"*"}); }
inline FinSet empty_set(const std::string& name = "0") { return FinSet(name, {}); }

struct FinFn {
  FinSet dom;
  FinSet cod;
  std::vector<Index> table;  // codomain index per domain index

  FinFn() = default;
  FinFn(FinSet dom_, FinSet cod_, std::vector<Index> table_)
      : dom(std::move(dom_)), cod(std::move(cod_)), table(std::move(table_)) {
    if (table.size() != dom.size())
      throw std::invalid_argument("FinFn: table not total over " + dom.name);
    for (Index v : table)
      if (v >= cod.size())
        throw std::invalid_argument("FinFn: table entry outside " + cod.name);
  }

  Index operator()(Index i) const { return table.at(i); }

  friend bool operator==(const FinFn& f, const FinFn& g) {
    return f.dom == g.dom && f.cod == g.cod && f.table == g.table;
  }
};

inline FinFn fn_identity(const FinSet& a) {
  std::vector<Index> t(a.size());
  std::iota(t.begin(), t.end(), Index{0});
  return FinFn(a, a, std::move(t));
}

inline FinFn fn_constant(const FinSet& dom, const FinSet& cod, Index value) {
  return FinFn(dom, cod, std::vector<Index>(dom.size(), value));
}

inline FinFn fn_compose(const FinFn& g, const FinFn& f) {
  if (f.cod != g.dom)
    throw std::invalid_argument("fn_compose: cod(" + f.cod.name + ") != dom(" + g.dom.name + ")");
  std::vector<Index> t(f.dom.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.table[f.table[i]];
  return FinFn(f.dom, g.cod, std::move(t));
}

// ---- token builders -------------------------------------------------

inline std::string pair_token(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}
inline std::string inl_token(const std::string& a) { return "inl(" + a + ")"; }
inline std::string inr_token(const std::string& b) { return "inr(" + b + ")"; }

inline std::string tuple_token(const std::vector<std::string>& parts) {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  return s + "]";
}

// ---- product / coproduct / exponent ---------------------------------

// Pairs in lexicographic (A-major) order: index = i*|B| + j.
inline FinSet product(const FinSet& a, const FinSet& b) {
  checked_mul(a.size(), b.size(), "product");
  std::vector<std::string> elems;
  elems.reserve(a.size() * b.size());
  for (const auto& x : a.elems)
    for (const auto& y : b.elems) elems.push_back(pair_token(x, y));
  return FinSet("(" + a.name + "x" + b.name + ")", std::move(elems));
}

inline Index pair_index(Index i, Index j, std::size_t b_size) { return i * b_size + j; }
inline std::pair<Index, Index> pair_split(Index k, std::size_t b_size) {
  return {k / b_size, k % b_size};
}

// Left tags precede right tags: inl(i) = i, inr(j) = |A| + j.
inline FinSet coproduct(const FinSet& a, const FinSet& b) {
  guarded(a.size() + b.size(), "coproduct");
  std::vector<std::string> elems;
  elems.reserve(a.size() + b.size());
  for (const auto& x : a.elems) elems.push_back(inl_token(x));
  for (const auto& y : b.elems) elems.push_back(inr_token(y));
  return FinSet("(" + a.name + "+" + b.name + ")", std::move(elems));
}

// ---- mixed-radix enumeration helpers ---------------------------------
// Digit 0 is most significant; the last digit varies fastest. Every
// enumeration of tuples/functions in the library uses this order.

inline std::size_t mixed_radix_size(std::span<const std::size_t> radices, const char* what) {
  std::size_t n = 1;
  for (std::size_t r : radices) n = checked_mul(n, r, what);
  return n;
}

inline Index mixed_radix_index(std::span<const Index> digits,
                               std::span<const std::size_t> radices) {
  Index n = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) n = n * radices[i] + digits[i];
  return n;
}

inline std::vector<Index> mixed_radix_digits(Index n, std::span<const std::size_t> radices) {
  std::vector<Index> digits(radices.size(), 0);
  for (std::size_t i = radices.size(); i-- > 0;) {
    digits[i] = n % radices[i];
    n /= radices[i];
  }
  return digits;
}

// All functions A -> B, enumerated as base-|B| numbers over the table
// (first domain element most significant). Each element carries its
// table via fn_at / index_of.
struct ExponentSet {
  FinSet set;
  FinSet dom;
  FinSet cod;

  FinFn fn_at(Index i) const {
    std::vector<std::size_t> radices(dom.size(), cod.size());
    return FinFn(dom, cod, mixed_radix_digits(i, radices));
  }

  Index index_of(std::span<const Index> table) const {
    std::vector<std::size_t> radices(dom.size(), cod.size());
    return mixed_radix_index(table, radices);
  }
};

inline ExponentSet exponent(const FinSet& a, const FinSet& b) {
  std::size_t count = checked_pow(b.size(), a.size(), "exponent");
  std::vector<std::string> elems;
  elems.reserve(count);
  std::vector<std::size_t> radices(a.size(), b.size());
  for (std::size_t n = 0; n < count; ++n) {
    auto digits = mixed_radix_digits(n, radices);
    std::vector<std::string> parts;
    parts.reserve(digits.size());
    for (Index d : digits) parts.push_back(b.token(d));
    elems.push_back(tuple_token(parts));
  }
  return ExponentSet{FinSet("(" + a.name + "=>" + b.name + ")", std::move(elems)), a, b};
}

// ---- monoids and actions ---------------------------------------------

struct FinMonoid {
  FinSet elems;
  Index unit = 0;
  std::vector<Index> op;  // op[i*|M|+j] = i . j

  Index mul(Index i, Index j) const { return op.at(i * elems.size() + j); }

  bool valid() const {
    std::size_t n = elems.size();
    if (unit >= n || op.size() != n * n) return false;
    for (Index i = 0; i < n; ++i)
      if (mul(unit, i) != i || mul(i, unit) != i) return false;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k)
          if (mul(mul(i, j), k) != mul(i, mul(j, k))) return false;
    return true;
  }
};

inline FinMonoid cyclic_monoid(std::size_t n, const std::string& name = "Z") {
  FinMonoid m;
  m.elems = range_set(name + std::to_string(n), n);
  m.unit = 0;
  m.op.resize(n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m.op[i * n + j] = (i + j) % n;
  return m;
}

inline FinMonoid trivial_monoid() {
  FinMonoid m;
  m.elems = unit_set("1");
  m.unit = 0;
  m.op = {0};
  return m;
}

// Right action of a monoid B on a carrier A, written a . b.
struct MonoidAction {
  FinMonoid monoid;
  FinSet carrier;
  std::vector<Index> act;  // act[a*|B|+b] = a . b

  Index apply(Index a, Index b) const { return act.at(a * monoid.elems.size() + b); }

  bool valid() const {
    if (!monoid.valid()) return false;
    std::size_t nb = monoid.elems.size(), na = carrier.size();
    if (act.size() != na * nb) return false;
    for (Index a = 0; a < na; ++a) {
      if (apply(a, monoid.unit) != a) return false;
      for (Index b = 0; b < nb; ++b)
        for (Index b2 = 0; b2 < nb; ++b2)
          if (apply(a, monoid.mul(b, b2)) != apply(apply(a, b), b2)) return false;
    }
    return true;
  }
};

// Z/n acting on itself by addition.
inline MonoidAction cyclic_self_action(std::size_t n) {
  MonoidAction a;
  a.monoid = cyclic_monoid(n);
  a.carrier = range_set("A" + std::to_string(n), n, "a");
  a.act.resize(n * n);
  for (Index x = 0; x < n; ++x)
    for (Index b = 0; b < n; ++b) a.act[x * n + b] = (x + b) % n;
  return a;
}

}  // namespace ilaw
