// Command-line front end: compute duals, run computations against
// machines and runners with traces, execute the law suites and
// degeneracy searches, and enumerate interaction laws. All output is
// deterministic JSON; suites are exhaustive within the configured
// bounds (no sampling anywhere).
//
// Exit codes: 0 pass, 1 law failure, 2 input error, 3 size-guard abort.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ilaw/finmodel.hpp"
#include "ilaw/json_io.hpp"

using namespace ilaw;

namespace {

struct Bounds {
  std::size_t max_carrier = 3;
  std::size_t max_depth = 4;
  std::size_t universe_k = 3;
  std::size_t size_guard = 1'000'000;
};

Bounds load_bounds(const std::string& path) {
  Bounds b;
  if (path.empty()) return b;
  std::ifstream in(path);
  if (!in) throw JsonError("cannot open bounds file " + path);
  Json j = Json::parse(in);
  if (j.contains("max_carrier")) b.max_carrier = j["max_carrier"].get<std::size_t>();
  if (j.contains("max_depth")) b.max_depth = j["max_depth"].get<std::size_t>();
  if (j.contains("universe_k")) b.universe_k = j["universe_k"].get<std::size_t>();
  if (j.contains("size_guard")) b.size_guard = j["size_guard"].get<std::size_t>();
  return b;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw JsonError(std::string("parse error in ") + path + ": " + e.what());
  }
}

struct Output {
  bool compact = false;        // --json: single-line machine output
  std::string golden_dir;      // --golden: record or verify against a golden file
  std::string golden_name;     // derived from the subcommand and inputs
  bool golden_mismatch = false;

  void emit(const Json& j) {
    std::string text = (compact ? j.dump() : j.dump(2)) + "\n";
    std::cout << text;
    if (golden_dir.empty()) return;
    std::string path = golden_dir + "/" + golden_name + ".golden.json";
    std::ifstream existing(path);
    if (existing) {
      std::string prev((std::istreambuf_iterator<char>(existing)),
                       std::istreambuf_iterator<char>());
      if (prev != text) {
        std::cerr << "golden mismatch: " << path << "\n";
        golden_mismatch = true;
      }
    } else {
      std::ofstream out(path);
      if (!out) throw JsonError("cannot write golden file " + path);
      out << text;
    }
  }
};

Output g_output;

void emit(const Json& j) { g_output.emit(j); }

std::string basename_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

// ---- dual ------------------------------------------------------------------

// Classify the input against the §-catalogue of functor constructions and
// confirm the expected dual shape when recognized.
Json catalogue_report(const Container& c, const Container& d) {
  Json rep;
  auto all_positions = [&](auto pred) {
    for (Index s = 0; s < c.shape_count(); ++s)
      if (!pred(c.pos(s).size())) return false;
    return true;
  };
  if (c.shape_count() == 0) {
    rep["input_kind"] = "zero";
    rep["expected"] = "constant-1";
    rep["iso"] = d.shape_count() == 1 && d.pos(0).empty();
  } else if (all_positions([](std::size_t n) { return n == 0; })) {
    rep["input_kind"] = "constant";
    rep["expected"] = "zero";
    rep["iso"] = d.shape_count() == 0;
  } else if (c.shape_count() == 2 && c.pos(0).size() == 1 && c.pos(1).size() == 0) {
    rep["input_kind"] = "maybe";
    rep["expected"] = "zero";
    rep["iso"] = d.shape_count() == 0;
  } else if (c.shape_count() == 1 && c.pos(0).size() == 1) {
    rep["input_kind"] = "identity";
    rep["expected"] = "identity";
    rep["iso"] = find_iso(d, c_id()).has_value();
  } else if (c.shape_count() == 1) {
    rep["input_kind"] = "reader";
    rep["expected"] = "writer";
    rep["iso"] = find_iso(d, c_writer(c.pos(0))).has_value();
  } else if (all_positions([](std::size_t n) { return n == 1; })) {
    rep["input_kind"] = "writer";
    rep["expected"] = "reader";
    rep["iso"] = find_iso(d, c_reader(c.shapes)).has_value();
  } else {
    bool nelist = true;
    for (Index s = 0; s < c.shape_count(); ++s)
      if (c.pos(s).size() != s + 1) nelist = false;
    if (nelist) {
      rep["input_kind"] = "nelist";
      std::size_t expect = 1;
      for (Index s = 0; s < c.shape_count(); ++s) expect *= s + 1;
      rep["expected"] = "product of prefixes";
      rep["iso"] = d.shape_count() == expect;
    } else {
      rep["input_kind"] = "unlisted";
    }
  }
  return rep;
}

int cmd_dual(const std::string& path) {
  Container c = container_from_json(load_json(path));
  DualContainer d = dual(c);
  Json out;
  out["dual"] = to_json(d.c);
  out["catalogue"] = catalogue_report(c, d.c);
  emit(out);
  return 0;
}

// ---- run -------------------------------------------------------------------

Json trace_json(const Container& sig, const std::vector<TraceEvent>& trace,
                const FinSet& states) {
  Json arr = Json::array();
  for (const auto& ev : trace) {
    Json e;
    e["step"] = ev.step;
    e["shape"] = sig.shapes.token(ev.tree_shape);
    e["position"] = sig.pos(ev.tree_shape).token(ev.position);
    e["state"] = states.token(ev.state);
    arr.push_back(e);
  }
  return arr;
}

int cmd_run(const std::string& sig_path, const std::string& tree_path,
            const std::string& target_path) {
  Container sig = container_from_json(load_json(sig_path));
  Json tj = load_json(tree_path);
  FinSet carrier = finset_from_json(detail::field(tj, "carrier"));
  FreeTree tree = tree_from_json(detail::field(tj, "root"), sig, carrier);
  Json target = load_json(target_path);
  Json out;
  if (target.contains("step")) {
    // a machine of the dual container
    DualContainer d = dual(sig);
    MachineWithLabels mw = machine_from_json(target, d.c);
    std::vector<TraceEvent> trace;
    auto [x, y] = canonical_run(d, tree, mw.machine, &trace);
    out["result"] = {{"value", carrier.token(x)}, {"output", mw.labels.token(y)}};
    out["trace"] = trace_json(sig, trace, mw.machine.states);
  } else if (target.contains("R")) {
    ResidualRunnerWithStart rw = residual_runner_from_json(target, sig);
    // deterministic trace for single-outcome monads; multiset outcomes
    // are reported without a trace
    RValue v = residual_run(rw.runner, tree, rw.start);
    Json res;
    Json payload = Json::array();
    for (Index cell : v.payload)
      payload.push_back(Json::array({carrier.token(cell / rw.runner.state.size()),
                                     rw.runner.state.token(cell % rw.runner.state.size())}));
    res["payload"] = payload;
    Json errs = Json::array();
    for (Index e : v.errors) errs.push_back(rw.runner.r.error_tokens.token(e));
    res["errors"] = errs;
    out["result"] = res;
    if (rw.runner.r.kind != ResidualMonad::Kind::FinNondet) {
      // replay the deterministic prefix for the trace
      std::vector<TraceEvent> trace;
      const FreeTree* cur = &tree;
      Index y = rw.start;
      while (!cur->leaf) {
        const RValue& step = rw.runner.at(cur->shape, y);
        if (step.payload.size() != 1) break;  // aborted here
        Index p = step.payload[0] / rw.runner.state.size();
        Index y1 = step.payload[0] % rw.runner.state.size();
        trace.push_back(TraceEvent{trace.size(), cur->shape, p, y1});
        cur = &cur->kids[p];
        y = y1;
      }
      out["trace"] = trace_json(sig, trace, rw.runner.state);
    }
  } else {
    RunnerWithStart rw = runner_from_json(target, sig);
    std::vector<TraceEvent> trace;
    auto [x, y] = run(rw.runner, tree, rw.start, &trace);
    out["result"] = {{"value", carrier.token(x)}, {"state", rw.runner.state.token(y)}};
    out["trace"] = trace_json(sig, trace, rw.runner.state);
  }
  emit(out);
  return 0;
}

// ---- enumerate ----------------------------------------------------------------

int cmd_enumerate(const std::string& f_path, const std::string& g_path, std::size_t limit,
                  bool dump) {
  Container f = container_from_json(load_json(f_path));
  Container g = container_from_json(load_json(g_path));
  // closed-form count
  std::size_t count = 1;
  for (Index s = 0; s < f.shape_count(); ++s)
    for (Index t = 0; t < g.shape_count(); ++t)
      count = checked_mul(count, f.pos(s).size() * g.pos(t).size(), "enumerate");
  Json out;
  out["count"] = count;
  if (dump) {
    if (count > limit) throw SizeGuardError("enumerate: count exceeds --limit");
    Json laws = Json::array();
    for (const auto& il : il_enumerate(f, g)) laws.push_back(to_json(il));
    out["laws"] = laws;
  }
  emit(out);
  return 0;
}

// ---- check suites ----------------------------------------------------------------

struct SuiteResult {
  Json lines = Json::array();
  bool ok = true;

  void check(const std::string& name, bool pass, Json detail = {}) {
    Json line;
    line["check"] = name;
    line["pass"] = pass;
    if (!detail.is_null()) line["detail"] = detail;
    lines.push_back(line);
    ok = ok && pass;
  }
};

MCIL registered_update() { return update_mcil(cyclic_self_action(2)); }

void suite_ffil(SuiteResult& res, const std::vector<Json>& targets) {
  FinSet a = range_set("A", 2, "a");
  res.check("il_enumerate reader2/writer2 count 4",
            il_enumerate(c_reader(a), c_writer(a)).size() == 4);
  res.check("il_enumerate id/id count 1", il_enumerate(c_id(), c_id()).size() == 1);
  res.check("il_enumerate maybe empty", il_enumerate(c_maybe(), c_writer(a)).empty());
  // tensor of the reader and writer laws is the update law
  InteractionLaw la = dual_pairing(c_reader(a));
  res.check("pairing transposes to the identity morphism",
            il_to_morphism(il_rev(la), dual(c_reader(a))) ==
                morphism_identity(dual(c_reader(a)).c));
  for (const auto& t : targets) {
    InteractionLaw il = il_from_json(t);
    bool ok = true;
    try {
      check_law(il, "target");
    } catch (const std::exception&) {
      ok = false;
    }
    res.check("target law well-formed", ok);
  }
}

void suite_mcil(SuiteResult& res, const std::vector<Json>& targets) {
  for (std::size_t n = 1; n <= 3; ++n) {
    MCIL m = reader_mcil(range_set("A", n, "a"));
    res.check("reader" + std::to_string(n) + " mcil", mcil_check(m).ok);
  }
  res.check("writer mcil", mcil_check(writer_mcil(cyclic_monoid(2))).ok);
  MCIL up = registered_update();
  res.check("update mcil", mcil_check(up).ok);
  // five deterministic single-entry mutations all fail
  std::vector<std::pair<Index, std::pair<Index, Index>>> mutations = {
      {0, {1, 0}}, {1, {0, 0}}, {3, {0, 0}}, {6, {1, 1}}, {7, {0, 1}}};
  for (auto& [cell, v] : mutations) {
    MCIL bad = up;
    bad.law.table[cell] = v;
    CheckReport rep = mcil_check(bad);
    Json detail;
    if (!rep.ok) {
      detail["diagram"] = rep.diagram;
      detail["shape_pair"] = {rep.counterexample->first, rep.counterexample->second};
    }
    res.check("update mutation cell " + std::to_string(cell) + " fails", !rep.ok, detail);
  }
  for (const auto& t : targets) {
    InteractionLaw il = il_from_json(t);
    // match against the registered instances by container equality
    bool matched = false;
    for (const MCIL& m : {reader_mcil(range_set("A", 2, "a")), writer_mcil(cyclic_monoid(2)),
                          registered_update()}) {
      if (il.f == m.t.c && il.g == m.d.c) {
        matched = true;
        MCIL candidate = m;
        candidate.law = il;
        CheckReport rep = mcil_check(candidate);
        Json detail;
        if (!rep.ok) {
          detail["diagram"] = rep.diagram;
          detail["shape_pair"] = {rep.counterexample->first, rep.counterexample->second};
        }
        res.check("target law passes mcil_check", rep.ok, detail);
      }
    }
    if (!matched) res.check("target containers match a registered instance", false);
  }
}

void suite_runner(SuiteResult& res, const std::vector<Json>&) {
  MonoidAction act = cyclic_self_action(2);
  ContainerMonad t = update_monad(act);
  // the product lens on Y = A x B
  UpdateLens lens;
  lens.action = act;
  std::size_t na = 2, nb = 2;
  lens.state = product(act.carrier, act.monoid.elems);
  std::vector<Index> lkp(na * nb);
  lens.upd.resize(na * nb * nb);
  for (Index av = 0; av < na; ++av)
    for (Index bv = 0; bv < nb; ++bv) {
      Index y = pair_index(av, bv, nb);
      lkp[y] = av;
      for (Index b2 = 0; b2 < nb; ++b2)
        lens.upd[y * nb + b2] = pair_index(act.apply(av, b2), act.monoid.mul(bv, b2), nb);
    }
  lens.lkp = FinFn(lens.state, act.carrier, std::move(lkp));
  res.check("update lens valid", lens.valid());
  Runner r = update_lens_runner(lens, t);
  res.check("lens runner satisfies the monad laws", runner_monad_laws_check(r, t));
  DualContainer d = dual(t.c);
  res.check("lens runner coalgebra satisfies eq:d-coalg-conds",
            dual_coalgebra_check(runner_to_coalgebra(r, d), t, d));
  Runner rt1 = state_map_to_runner(runner_to_state_map(r));
  Runner rt2 = coalgebra_to_runner(runner_to_coalgebra(r, d), d);
  Runner rt3 = costate_family_to_runner(runner_to_costate_family(r, d), d);
  res.check("round-trips are identities on the lens runner",
            rt1.theta == r.theta && rt2.theta == r.theta && rt3.theta == r.theta);
  // runner <-> MCIL correspondence round-trip
  MCIL up = registered_update();
  MCIL back = runner_spec_to_mcil(up.t, up.d, mcil_to_runner_spec(up));
  res.check("runner spec round-trip is the identity on the update MCIL", back.law == up.law);
}

void suite_residual(SuiteResult& res, const std::vector<Json>&) {
  FinSet a = range_set("A", 2, "a");
  FinSet e = range_set("E", 2, "e");
  ResidualMCIL exc = exceptions_residual_mcil(a, e);
  res.check("exceptions residual mcil", residual_mcil_check(exc).ok);
  ResidualMCIL bad = exc;
  bad.law.table[0] = RValue{{}, {0}};
  res.check("mutated residual table fails", !residual_mcil_check(bad).ok);
  MCIL rd = reader_mcil(a);
  ResidualMCIL emb{rd.t, rd.d, embed_residual(rd.law, ResidualMonad::identity())};
  res.check("identity embedding passes", residual_mcil_check(emb).ok);
  res.check("pure naturality of the exceptions law", pure_naturality_check(exc.law));
  KleisliGapDemo demo = kleisli_gap_demo();
  res.check("FinNondet law passes pure naturality", pure_naturality_check(demo.law));
  res.check("strong Kleisli square fails for the duplicating map",
            !(demo.path_kleisli == demo.path_residual));
}

void suite_degeneracy(SuiteResult& res, const Bounds& bounds) {
  // Theorem 1 at container level: maybe against every generated container
  bool all_empty = true;
  for (const auto& g : candidate_containers(3, 3))
    if (g.shape_count() > 0 && !il_enumerate(c_maybe(), g).empty()) all_empty = false;
  res.check("maybe admits no interacting container (Theorem 1)", all_empty);
  // Theorem 2 at the oracle level
  Universe u(bounds.universe_k);
  FinFunctor up = unordered_pair_functor(u);
  bool all_empty2 = true;
  std::size_t tested = 0;
  for (const auto& g : candidate_containers(3, 3)) {
    FinFunctor gf = from_container(g, u);
    bool nonzero = false;
    for (std::size_t n = 0; n <= u.k; ++n) nonzero = nonzero || gf.obj[n].size() > 0;
    if (!nonzero) continue;
    ++tested;
    if (!interaction_families(up, gf, 1).empty()) all_empty2 = false;
  }
  res.check("unordered pairs admit no interaction families (Theorem 2)", all_empty2,
            Json{{"candidates", tested}});
  // the reader is not degenerate: a witness law exists
  std::vector<FinFunctor> cands;
  for (const auto& g : candidate_containers(2, 2)) cands.push_back(from_container(g, u));
  auto rep = check_nullary_degeneracy(from_container(c_reader(range_set("A", 2, "a")), u),
                                      std::nullopt, cands);
  res.check("reader has an interacting functor witness", !rep.degenerate && rep.witness.has_value());
}

void suite_sweedler(SuiteResult& res, const std::vector<Json>&) {
  SweedlerInstance ne = sweedler_nelist(4);
  res.check("nelist sweedler comonad laws", comonad_laws_check(ne.comonad));
  res.check("nelist sweedler mcil", mcil_check(ne.law).ok);
  res.check("nelist sweedler iota squares", sweedler_iota_check(ne));
  SweedlerInstance upd = sweedler_update(cyclic_self_action(2));
  res.check("update sweedler comonad laws", comonad_laws_check(upd.comonad));
  res.check("update sweedler mcil", mcil_check(upd.law).ok);
  res.check("update sweedler iota squares", sweedler_iota_check(upd));
  // head-or-last property over enumerated comonad maps
  bool head_or_last = true;
  for (const auto& h : comonad_map_enumerate(ne.comonad, ne.comonad)) {
    MCIL m = mcil_from_comonad_map(ne, ne.comonad, h);
    for (std::size_t len = 1; len <= 4 && head_or_last; ++len) {
      ContainerElement list{len - 1, {}};
      for (Index i = 0; i < len; ++i) list.payload.push_back(i);
      for (Index tshape = 0; tshape < ne.comonad.c.shape_count(); ++tshape) {
        ContainerElement de{tshape, {0, 1}};
        auto [x, y] = il_apply(m.law, list, de);
        (void)y;
        if (x != 0 && x != len - 1) head_or_last = false;
      }
    }
  }
  res.check("every induced law reads head or last only", head_or_last);
}

void suite_coequations(SuiteResult& res, const std::vector<Json>&) {
  ContainerComonad sw = nelist_sweedler_comonad();
  Cooperation coop{{{0, 1}, {1, 1}}};
  CoequationReport rep = coequation_checks(sw, coop);
  res.check("coassociativity", rep.coassoc);
  res.check("left corectangularity", rep.left_corect);
  res.check("right corectangularity", rep.right_corect);
  // mutated comultiplication fails coassoc
  ContainerComonad bad = sw;
  bad.comult_pos[0][3] = 0;
  res.check("mutated comultiplication fails coassoc", !coequation_checks(bad, coop).coassoc);
  // unquotiented cofree comonad: machine counterexample
  Container sig = c_coproduct(c_id(), c_id());
  bool counterexample = false;
  for (const auto& m : enumerate_machines(sig, 2, 2)) {
    auto [lhs, rhs] = machine_coassoc_paths(m);
    if (!(lhs == rhs)) counterexample = true;
  }
  res.check("cofree comonad without the quotient fails coassoc", counterexample);
}

int cmd_check(const std::string& suite, const std::vector<std::string>& target_paths,
              const Bounds& bounds) {
  std::vector<Json> targets;
  for (const auto& p : target_paths) targets.push_back(load_json(p));
  SuiteResult res;
  if (suite == "ffil")
    suite_ffil(res, targets);
  else if (suite == "mcil")
    suite_mcil(res, targets);
  else if (suite == "runner")
    suite_runner(res, targets);
  else if (suite == "residual")
    suite_residual(res, targets);
  else if (suite == "degeneracy")
    suite_degeneracy(res, bounds);
  else if (suite == "sweedler")
    suite_sweedler(res, targets);
  else if (suite == "coequations")
    suite_coequations(res, targets);
  else
    throw JsonError("unknown suite " + suite);
  Json out;
  out["suite"] = suite;
  out["checks"] = res.lines;
  out["pass"] = res.ok;
  emit(out);
  return res.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interaction laws of monads and comonads, executable over finite data"};
  app.require_subcommand(1);
  std::string bounds_path;
  app.add_option("--bounds", bounds_path, "bounds config file (JSON)");
  bool compact = false;
  app.add_flag("--json", compact, "compact single-line JSON output");
  std::string golden_dir;
  app.add_option("--golden", golden_dir,
                 "record output to (or verify against) golden files in this directory");

  auto* dual_cmd = app.add_subcommand("dual", "dual of a container");
  std::string dual_in;
  dual_cmd->add_option("container", dual_in, "container JSON file")->required();

  auto* run_cmd = app.add_subcommand("run", "run a tree against a machine or runner");
  std::string run_sig, run_tree, run_target;
  run_cmd->add_option("signature", run_sig)->required();
  run_cmd->add_option("tree", run_tree)->required();
  run_cmd->add_option("target", run_target, "machine or runner JSON")->required();

  auto* check_cmd = app.add_subcommand("check", "run a law suite");
  std::string suite;
  std::vector<std::string> check_targets;
  check_cmd->add_option("suite", suite,
                        "one of: ffil mcil runner residual degeneracy sweedler coequations")
      ->required();
  check_cmd->add_option("targets", check_targets, "optional target JSON files");

  auto* enum_cmd = app.add_subcommand("enumerate", "count/dump interaction laws");
  std::string enum_f, enum_g;
  std::size_t enum_limit = 1000;
  bool enum_dump = false;
  enum_cmd->add_option("F", enum_f)->required();
  enum_cmd->add_option("G", enum_g)->required();
  enum_cmd->add_option("--limit", enum_limit);
  enum_cmd->add_flag("--dump", enum_dump);

  CLI11_PARSE(app, argc, argv);

  try {
    Bounds bounds = load_bounds(bounds_path);
    set_size_guard_limit(bounds.size_guard);
    g_output.compact = compact;
    g_output.golden_dir = golden_dir;
    int rc = 2;
    if (dual_cmd->parsed()) {
      g_output.golden_name = "dual-" + basename_of(dual_in);
      rc = cmd_dual(dual_in);
    } else if (run_cmd->parsed()) {
      g_output.golden_name = "run-" + basename_of(run_tree);
      rc = cmd_run(run_sig, run_tree, run_target);
    } else if (check_cmd->parsed()) {
      g_output.golden_name = "check-" + suite;
      rc = cmd_check(suite, check_targets, bounds);
    } else if (enum_cmd->parsed()) {
      g_output.golden_name = "enumerate-" + basename_of(enum_f);
      rc = cmd_enumerate(enum_f, enum_g, enum_limit, enum_dump);
    }
    if (g_output.golden_mismatch && rc == 0) rc = 1;
    return rc;
  } catch (const SizeGuardError& e) {
    Json err;
    err["error"] = "size_guard";
    err["message"] = e.what();
    emit(err);
    return 3;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "input";
    err["message"] = e.what();
    emit(err);
    return 2;
  }
  return 2;  // unreachable
}
