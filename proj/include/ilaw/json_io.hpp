#pragma once

// JSON encodings of the exchange formats: finite sets and functions,
// containers, interaction laws (plain and residual), free-monad trees,
// machines, runners and session types. Parsing is strict; malformed
// input raises JsonError.

#include <json.hpp>

#include "ilaw/residual.hpp"
#include "ilaw/runners.hpp"

namespace ilaw {

using Json = nlohmann::json;

class JsonError : public std::runtime_error {
public:
  explicit JsonError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw JsonError(std::string("missing field: ") + key);
  return *it;
}

// Keys of the form "<token-of-a>,<token-of-b>" where either token may
// itself contain commas: try every comma as the separator and require
// exactly one split where both halves are known tokens.
inline std::pair<Index, Index> split_key(const std::string& key, const FinSet& a,
                                         const FinSet& b) {
  std::optional<std::pair<Index, Index>> found;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] != ',') continue;
    auto left = a.find(key.substr(0, i));
    auto right = b.find(key.substr(i + 1));
    if (left && right) {
      if (found) throw JsonError("ambiguous key " + key);
      found = {*left, *right};
    }
  }
  if (!found) throw JsonError("unknown key " + key);
  return *found;
}
}  // namespace detail

// ---- finite sets and functions --------------------------------------------------

inline Json to_json(const FinSet& s) {
  Json j;
  j["name"] = s.name;
  j["elems"] = s.elems;
  return j;
}

inline FinSet finset_from_json(const Json& j) {
  if (!j.is_object()) throw JsonError("FinSet: expected object");
  std::vector<std::string> elems;
  for (const auto& e : detail::field(j, "elems")) {
    if (!e.is_string()) throw JsonError("FinSet: elems must be strings");
    elems.push_back(e.get<std::string>());
  }
  try {
    return FinSet(detail::field(j, "name").get<std::string>(), std::move(elems));
  } catch (const std::invalid_argument& e) {
    throw JsonError(e.what());
  }
}

inline Json to_json(const FinFn& f) {
  Json j;
  j["dom"] = f.dom.name;
  j["cod"] = f.cod.name;
  Json table = Json::object();
  for (Index i = 0; i < f.dom.size(); ++i) table[f.dom.token(i)] = f.cod.token(f.table[i]);
  j["table"] = table;
  return j;
}

inline FinFn finfn_from_json(const Json& j, const FinSet& dom, const FinSet& cod) {
  const Json& table = detail::field(j, "table");
  std::vector<Index> t(dom.size());
  std::vector<bool> seen(dom.size(), false);
  for (auto it = table.begin(); it != table.end(); ++it) {
    auto d = dom.find(it.key());
    if (!d) throw JsonError("FinFn: unknown domain token " + it.key());
    auto c = cod.find(it.value().get<std::string>());
    if (!c) throw JsonError("FinFn: unknown codomain token");
    t[*d] = *c;
    seen[*d] = true;
  }
  for (bool b : seen)
    if (!b) throw JsonError("FinFn: table not total");
  return FinFn(dom, cod, std::move(t));
}

// ---- containers -------------------------------------------------------------------

inline Json to_json(const Container& c) {
  Json j;
  j["shapes"] = to_json(c.shapes);
  Json pos = Json::object();
  for (Index s = 0; s < c.shape_count(); ++s) pos[c.shapes.token(s)] = to_json(c.pos(s));
  j["positions"] = pos;
  return j;
}

inline Container container_from_json(const Json& j) {
  FinSet shapes = finset_from_json(detail::field(j, "shapes"));
  const Json& pos = detail::field(j, "positions");
  std::vector<FinSet> positions;
  for (Index s = 0; s < shapes.size(); ++s) {
    auto it = pos.find(shapes.token(s));
    if (it == pos.end()) throw JsonError("Container: missing positions for " + shapes.token(s));
    positions.push_back(finset_from_json(*it));
  }
  return Container(std::move(shapes), std::move(positions));
}

inline Json to_json(const Container& c, const FinSet& carrier, const ContainerElement& e) {
  Json j;
  j["shape"] = c.shapes.token(e.shape);
  Json payload = Json::object();
  const FinSet& ps = c.pos(e.shape);
  for (Index p = 0; p < ps.size(); ++p) payload[ps.token(p)] = carrier.token(e.payload[p]);
  j["payload"] = payload;
  return j;
}

inline ContainerElement element_from_json(const Json& j, const Container& c,
                                          const FinSet& carrier) {
  auto s = c.shapes.find(detail::field(j, "shape").get<std::string>());
  if (!s) throw JsonError("element: unknown shape");
  const FinSet& ps = c.pos(*s);
  const Json& payload = detail::field(j, "payload");
  ContainerElement e;
  e.shape = *s;
  e.payload.resize(ps.size());
  std::vector<bool> seen(ps.size(), false);
  for (auto it = payload.begin(); it != payload.end(); ++it) {
    auto p = ps.find(it.key());
    if (!p) throw JsonError("element: unknown position " + it.key());
    auto v = carrier.find(it.value().get<std::string>());
    if (!v) throw JsonError("element: unknown carrier token");
    e.payload[*p] = *v;
    seen[*p] = true;
  }
  for (bool b : seen)
    if (!b) throw JsonError("element: payload not total");
  return e;
}

// ---- interaction laws ----------------------------------------------------------------

inline Json to_json(const InteractionLaw& il) {
  Json j;
  j["F"] = to_json(il.f);
  j["G"] = to_json(il.g);
  Json table = Json::object();
  for (Index s = 0; s < il.f.shape_count(); ++s)
    for (Index t = 0; t < il.g.shape_count(); ++t) {
      auto [p, q] = il.at(s, t);
      table[il.f.shapes.token(s) + "," + il.g.shapes.token(t)] =
          Json::array({il.f.pos(s).token(p), il.g.pos(t).token(q)});
    }
  j["table"] = table;
  return j;
}

inline InteractionLaw il_from_json(const Json& j) {
  InteractionLaw il{container_from_json(detail::field(j, "F")),
                    container_from_json(detail::field(j, "G")),
                    {}};
  il.table.resize(il.f.shape_count() * il.g.shape_count(), {0, 0});
  const Json& table = detail::field(j, "table");
  std::vector<bool> seen(il.table.size(), false);
  for (auto it = table.begin(); it != table.end(); ++it) {
    auto [s, t] = detail::split_key(it.key(), il.f.shapes, il.g.shapes);
    const Json& pair = it.value();
    if (!pair.is_array() || pair.size() != 2) throw JsonError("law: entry must be a pair");
    auto p = il.f.pos(s).find(pair[0].get<std::string>());
    auto q = il.g.pos(t).find(pair[1].get<std::string>());
    if (!p || !q) throw JsonError("law: entry outside position sets at " + it.key());
    il.at(s, t) = {*p, *q};
    seen[s * il.g.shape_count() + t] = true;
  }
  for (bool b : seen)
    if (!b) throw JsonError("law: table not total");
  return il;
}

// Residual laws add the monad name and R-valued entries.
inline Json to_json(const ResidualLaw& law) {
  Json j;
  j["R"] = law.r.name;
  if (!law.r.error_tokens.empty()) j["errors"] = to_json(law.r.error_tokens);
  j["F"] = to_json(law.f);
  j["G"] = to_json(law.g);
  Json table = Json::object();
  for (Index s = 0; s < law.f.shape_count(); ++s)
    for (Index t = 0; t < law.g.shape_count(); ++t) {
      const RValue& v = law.at(s, t);
      Json cell;
      Json payload = Json::array();
      std::size_t qn = law.g.pos(t).size();
      for (Index c : v.payload)
        payload.push_back(Json::array({law.f.pos(s).token(c / qn), law.g.pos(t).token(c % qn)}));
      cell["payload"] = payload;
      Json errs = Json::array();
      for (Index e : v.errors) errs.push_back(law.r.error_tokens.token(e));
      cell["errors"] = errs;
      table[law.f.shapes.token(s) + "," + law.g.shapes.token(t)] = cell;
    }
  j["table"] = table;
  return j;
}

// ---- free trees -----------------------------------------------------------------------

inline Json to_json(const Container& sig, const FinSet& carrier, const FreeTree& t) {
  Json j;
  if (t.leaf) {
    j["leaf"] = carrier.token(t.value);
    return j;
  }
  j["node"] = sig.shapes.token(t.shape);
  Json kids = Json::object();
  const FinSet& ps = sig.pos(t.shape);
  for (Index p = 0; p < ps.size(); ++p) kids[ps.token(p)] = to_json(sig, carrier, t.kids[p]);
  j["children"] = kids;
  return j;
}

inline FreeTree tree_from_json(const Json& j, const Container& sig, const FinSet& carrier) {
  if (j.contains("leaf")) {
    auto v = carrier.find(j["leaf"].get<std::string>());
    if (!v) throw JsonError("tree: unknown leaf token");
    return FreeTree::mk_leaf(*v);
  }
  auto s = sig.shapes.find(detail::field(j, "node").get<std::string>());
  if (!s) throw JsonError("tree: unknown node shape");
  const FinSet& ps = sig.pos(*s);
  const Json& kids = detail::field(j, "children");
  std::vector<FreeTree> children;
  children.reserve(ps.size());
  for (Index p = 0; p < ps.size(); ++p) {
    auto it = kids.find(ps.token(p));
    if (it == kids.end()) throw JsonError("tree: missing child at " + ps.token(p));
    children.push_back(tree_from_json(*it, sig, carrier));
  }
  return FreeTree::mk_node(*s, std::move(children));
}

// tree file: {"carrier": FinSet, "root": tree}

// ---- machines --------------------------------------------------------------------------

// {"states":.., "out": {state: label}, "step": {state: element of the
// dual container over the states}, "start": state}. The label set is
// the distinct out-labels in state order.
inline Json to_json(const Machine& m, const Container& step_container, const FinSet& labels) {
  Json j;
  j["states"] = to_json(m.states);
  Json out = Json::object();
  for (Index z = 0; z < m.states.size(); ++z) out[m.states.token(z)] = labels.token(m.out[z]);
  j["out"] = out;
  Json step = Json::object();
  for (Index z = 0; z < m.states.size(); ++z)
    step[m.states.token(z)] = to_json(step_container, m.states, m.step[z]);
  j["step"] = step;
  j["start"] = m.states.token(m.current);
  return j;
}

struct MachineWithLabels {
  Machine machine;
  FinSet labels;
};

inline MachineWithLabels machine_from_json(const Json& j, const Container& step_container) {
  MachineWithLabels out;
  Machine& m = out.machine;
  m.states = finset_from_json(detail::field(j, "states"));
  const Json& outs = detail::field(j, "out");
  std::vector<std::string> labels;
  m.out.resize(m.states.size());
  for (Index z = 0; z < m.states.size(); ++z) {
    auto it = outs.find(m.states.token(z));
    if (it == outs.end()) throw JsonError("machine: missing out for " + m.states.token(z));
    std::string label = it->get<std::string>();
    auto found = std::find(labels.begin(), labels.end(), label);
    if (found == labels.end()) {
      m.out[z] = labels.size();
      labels.push_back(label);
    } else {
      m.out[z] = found - labels.begin();
    }
  }
  out.labels = FinSet("Y", std::move(labels));
  const Json& steps = detail::field(j, "step");
  for (Index z = 0; z < m.states.size(); ++z) {
    auto it = steps.find(m.states.token(z));
    if (it == steps.end()) throw JsonError("machine: missing step for " + m.states.token(z));
    m.step.push_back(element_from_json(*it, step_container, m.states));
  }
  auto start = m.states.find(detail::field(j, "start").get<std::string>());
  if (!start) throw JsonError("machine: unknown start state");
  m.current = *start;
  return out;
}

// ---- runners ------------------------------------------------------------------------------

inline Json to_json(const Runner& r, Index start) {
  Json j;
  j["state"] = to_json(r.state);
  Json theta = Json::object();
  for (Index s = 0; s < r.sig.shape_count(); ++s)
    for (Index y = 0; y < r.state.size(); ++y) {
      auto [p, y1] = r.at(s, y);
      theta[r.sig.shapes.token(s) + "," + r.state.token(y)] =
          Json::array({r.sig.pos(s).token(p), r.state.token(y1)});
    }
  j["theta"] = theta;
  j["start"] = r.state.token(start);
  return j;
}

struct RunnerWithStart {
  Runner runner;
  Index start = 0;
};

inline RunnerWithStart runner_from_json(const Json& j, const Container& sig) {
  RunnerWithStart out;
  Runner& r = out.runner;
  r.state = finset_from_json(detail::field(j, "state"));
  r.sig = sig;
  r.theta.assign(sig.shape_count() * r.state.size(), {0, 0});
  std::vector<bool> seen(r.theta.size(), false);
  const Json& theta = detail::field(j, "theta");
  for (auto it = theta.begin(); it != theta.end(); ++it) {
    auto [s, y] = detail::split_key(it.key(), sig.shapes, r.state);
    const Json& pair = it.value();
    auto p = sig.pos(s).find(pair.at(0).get<std::string>());
    auto y1 = r.state.find(pair.at(1).get<std::string>());
    if (!p || !y1) throw JsonError("runner: bad theta entry at " + it.key());
    r.theta[s * r.state.size() + y] = {*p, *y1};
    seen[s * r.state.size() + y] = true;
  }
  for (bool b : seen)
    if (!b) throw JsonError("runner: theta not total");
  auto start = r.state.find(detail::field(j, "start").get<std::string>());
  if (!start) throw JsonError("runner: unknown start state");
  out.start = *start;
  return out;
}

// Residual runners carry the residual monad name and R-valued theta.
struct ResidualRunnerWithStart {
  ResidualRunner runner;
  Index start = 0;
};

inline ResidualRunnerWithStart residual_runner_from_json(const Json& j, const Container& sig) {
  ResidualRunnerWithStart out;
  ResidualRunner& r = out.runner;
  std::string rname = detail::field(j, "R").get<std::string>();
  if (rname == "Identity")
    r.r = ResidualMonad::identity();
  else if (rname == "Maybe")
    r.r = ResidualMonad::maybe();
  else if (rname == "Exceptions")
    r.r = ResidualMonad::exceptions(finset_from_json(detail::field(j, "errors")));
  else if (rname == "FinNondet")
    r.r = ResidualMonad::fin_nondet();
  else
    throw JsonError("runner: unknown residual monad " + rname);
  r.state = finset_from_json(detail::field(j, "state"));
  r.sig = sig;
  r.theta.assign(sig.shape_count() * r.state.size(), {});
  const Json& theta = detail::field(j, "theta");
  for (auto it = theta.begin(); it != theta.end(); ++it) {
    auto [s, y] = detail::split_key(it.key(), sig.shapes, r.state);
    RValue v;
    for (const auto& cell : detail::field(it.value(), "payload")) {
      auto p = sig.pos(s).find(cell.at(0).get<std::string>());
      auto y1 = r.state.find(cell.at(1).get<std::string>());
      if (!p || !y1) throw JsonError("runner: bad payload at " + it.key());
      v.payload.push_back(*p * r.state.size() + *y1);
    }
    for (const auto& e : detail::field(it.value(), "errors")) {
      auto ei = r.r.error_tokens.find(e.get<std::string>());
      if (!ei) throw JsonError("runner: unknown error token");
      v.errors.push_back(*ei);
    }
    v.normalize();
    if (!r.r.valid_value(v, sig.pos(s).size() * r.state.size()))
      throw JsonError("runner: inadmissible R-value at " + it.key());
    r.theta[s * r.state.size() + y] = std::move(v);
  }
  auto start = r.state.find(detail::field(j, "start").get<std::string>());
  if (!start) throw JsonError("runner: unknown start state");
  out.start = *start;
  return out;
}

// ---- session types --------------------------------------------------------------------------

inline Json to_json(const SessionType& t) {
  Json j;
  switch (t.kind) {
    case SessionType::Kind::Return:
      j["kind"] = "return";
      break;
    case SessionType::Kind::InternalChoice:
      j["kind"] = "in_choice";
      j["left"] = to_json(t.kids[0]);
      j["right"] = to_json(t.kids[1]);
      break;
    case SessionType::Kind::ExternalChoice:
      j["kind"] = "ex_choice";
      j["left"] = to_json(t.kids[0]);
      j["right"] = to_json(t.kids[1]);
      break;
    case SessionType::Kind::Output:
      j["kind"] = "output";
      j["base"] = to_json(t.base);
      j["rest"] = to_json(t.kids[0]);
      break;
    case SessionType::Kind::Input:
      j["kind"] = "input";
      j["base"] = to_json(t.base);
      j["rest"] = to_json(t.kids[0]);
      break;
  }
  return j;
}

inline SessionType session_from_json(const Json& j) {
  std::string kind = detail::field(j, "kind").get<std::string>();
  if (kind == "return") return SessionType::ret();
  if (kind == "in_choice")
    return SessionType::internal_choice(session_from_json(detail::field(j, "left")),
                                        session_from_json(detail::field(j, "right")));
  if (kind == "ex_choice")
    return SessionType::external_choice(session_from_json(detail::field(j, "left")),
                                        session_from_json(detail::field(j, "right")));
  if (kind == "output")
    return SessionType::output(finset_from_json(detail::field(j, "base")),
                               session_from_json(detail::field(j, "rest")));
  if (kind == "input")
    return SessionType::input(finset_from_json(detail::field(j, "base")),
                              session_from_json(detail::field(j, "rest")));
  throw JsonError("session: unknown kind " + kind);
}

}  // namespace ilaw
