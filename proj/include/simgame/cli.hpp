#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <thread>

#include "io.hpp"
#include "password.hpp"

namespace simgame {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int validation = 2;
inline constexpr int refusal = 3;
inline constexpr int usage = 64;
}  // namespace exit_code

namespace cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError({"cannot read '" + path + "'"});
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Rational rational_option(const std::string& flag, const std::string& text) {
  auto q = parse_rational(text);
  if (!q) throw UsageError(flag + ": '" + text + "' is not an integer or p/q literal");
  return *q;
}

inline std::string show(const Rational& q) {
  std::string exact = to_string(q);
  if (q.get_den() == 1) return exact;
  return exact + " (" + to_decimal(q) + ")";
}

inline std::string show(const PayoffPair& p) { return "(" + show(p.u1) + ", " + show(p.u2) + ")"; }

inline std::string show(const std::vector<std::string>& labels, const MixedStrategy& s) {
  return strategy_label(labels, s);
}

inline Json vertices_json(const std::vector<std::string>& labels, const std::vector<MixedStrategy>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(strategy_json(labels, v));
  return a;
}

inline Json profile_json(const NormalFormGame& g, const EquilibriumProfile& p) {
  Json j = Json::object();
  j["s1"] = strategy_json(g.s1_labels, p.s1);
  j["s2"] = strategy_json(g.s2_labels, p.s2);
  j["payoffs"] = payoff_json(p.payoffs);
  j["degenerate"] = p.degenerate;
  j["s1_vertices"] = vertices_json(g.s1_labels, p.s1_vertices);
  j["s2_vertices"] = vertices_json(g.s2_labels, p.s2_vertices);
  return j;
}

inline void profile_table(std::ostream& out, const NormalFormGame& g, const EquilibriumProfile& p,
                          const std::string& indent = "  ") {
  out << indent << "P1: " << show(g.s1_labels, p.s1) << "\n";
  out << indent << "P2: " << show(g.s2_labels, p.s2) << "\n";
  out << indent << "payoffs " << show(p.payoffs) << "\n";
  if (p.degenerate)
    out << indent << "degenerate: " << p.s1_vertices.size() << " x " << p.s2_vertices.size()
        << " extreme points\n";
}

inline Json game_summary(const NormalFormGame& g, const std::string& name) {
  GameDocument d;
  d.name = name;
  d.game = g;
  return game_json(d);
}

struct Options {
  std::string format = "table";
  std::string file;
  std::string kind = "mixed";
  std::string cost;
  std::string criterion;
  std::string klass;
  std::string graph;
  long k = 1;
  size_t passwords = 0;
  std::string stakes;
  std::string cost_min, cost_max;
  size_t steps = 0;
};

inline SimKind parse_kind(const std::string& s) { return s == "pure" ? SimKind::pure : SimKind::mixed; }

inline Rational required_cost(const Options& o) {
  if (o.cost.empty()) throw UsageError("--cost is required");
  return rational_option("--cost", o.cost);
}

inline SimulationConfig config_of(const Options& o) {
  SimulationConfig c{required_cost(o), parse_kind(o.kind)};
  c.validate();
  return c;
}

inline void no_csv(const Options& o, const char* cmd) {
  if (o.format == "csv") throw UsageError(std::string(cmd) + " has no csv output; use table or doc");
}

// ---- solve ----

inline void cmd_solve(const Options& o, std::ostream& out) {
  auto doc = parse_game(read_file(o.file));
  auto eqs = enumerate_nash(doc.game);
  const auto& g = doc.game;
  if (o.format == "doc") {
    Json r = Json::object();
    r["command"] = "solve";
    r["game"] = game_json(doc);
    Json a = Json::array();
    for (const auto& e : eqs) a.push_back(profile_json(g, e));
    r["equilibria"] = std::move(a);
    out << r.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << "index,s1,s2,u1,u2,degenerate\n";
    for (size_t i = 0; i < eqs.size(); ++i)
      out << i + 1 << "," << csv_field(show(g.s1_labels, eqs[i].s1)) << "," << csv_field(show(g.s2_labels, eqs[i].s2))
          << "," << to_string(eqs[i].payoffs.u1) << "," << to_string(eqs[i].payoffs.u2) << ","
          << (eqs[i].degenerate ? "true" : "false") << "\n";
  } else {
    out << (doc.name.empty() ? "game" : doc.name) << ": " << g.rows() << " x " << g.cols() << ", " << eqs.size()
        << " Nash equilibri" << (eqs.size() == 1 ? "um" : "a") << "\n";
    for (size_t i = 0; i < eqs.size(); ++i) {
      out << "NE " << i + 1 << "\n";
      profile_table(out, g, eqs[i]);
    }
  }
}

// ---- stackelberg ----

inline void cmd_stackelberg(const Options& o, std::ostream& out) {
  no_csv(o, "stackelberg");
  auto doc = parse_game(read_file(o.file));
  const auto& g = doc.game;
  auto se = stackelberg(g);
  auto pc = pure_commitment(g);
  if (o.format == "doc") {
    Json r = Json::object();
    r["command"] = "stackelberg";
    auto part = [&](const StackelbergOutcome& s) {
      Json j = Json::object();
      j["leader_strategy"] = strategy_json(g.s2_labels, s.leader_strategy);
      j["follower_reply"] = g.s1_labels[s.follower_reply];
      j["payoffs"] = payoff_json(s.payoffs);
      return j;
    };
    r["stackelberg"] = part(se);
    r["pure_commitment"] = part(pc);
    r["generalised_trust_game"] = is_generalised_trust_game(g);
    out << r.dump(2) << "\n";
  } else {
    out << "Stackelberg (P2 leads)\n";
    out << "  commitment " << show(g.s2_labels, se.leader_strategy) << "\n";
    out << "  reply " << g.s1_labels[se.follower_reply] << "\n";
    out << "  payoffs " << show(se.payoffs) << "\n";
    out << "best pure commitment " << g.s2_labels[pc.leader_strategy.support()[0]] << " -> "
        << g.s1_labels[pc.follower_reply] << ", payoffs " << show(pc.payoffs) << "\n";
    out << "generalised trust game: " << (is_generalised_trust_game(g) ? "yes" : "no") << "\n";
  }
}

// ---- transform ----

inline void cmd_transform(const Options& o, std::ostream& out) {
  no_csv(o, "transform");
  auto doc = parse_game(read_file(o.file));
  auto cfg = config_of(o);
  auto r = build_reduced(doc.game, cfg);
  GameDocument red;
  red.name = (doc.name.empty() ? std::string("game") : doc.name) + (cfg.kind == SimKind::pure ? " psim" : " msim");
  red.game = r.meta;
  if (o.format == "doc") {
    out << render_game(red);
    return;
  }
  const auto& m = r.meta;
  out << red.name << ": " << m.rows() << " x " << m.cols() << ", cost " << show(cfg.cost) << "\n";
  for (size_t j = 0; j < m.cols(); ++j) out << "  column " << j + 1 << ": " << m.s2_labels[j] << "\n";
  for (size_t i = 0; i < m.rows(); ++i) {
    out << "  " << m.s1_labels[i] << ":";
    for (size_t j = 0; j < m.cols(); ++j) out << "  (" << to_string(m.u1[i][j]) << ", " << to_string(m.u2[i][j]) << ")";
    out << "\n";
  }
}

// ---- sim-eq ----

inline void cmd_sim_eq(const Options& o, std::ostream& out) {
  no_csv(o, "sim-eq");
  auto doc = parse_game(read_file(o.file));
  auto cfg = config_of(o);
  auto r = build_reduced(doc.game, cfg);
  auto eqs = find_simulation_equilibria(r);
  const auto& m = r.meta;
  if (o.format == "doc") {
    Json j = Json::object();
    j["command"] = "sim-eq";
    j["cost"] = rational_json(cfg.cost);
    j["kind"] = o.kind;
    j["game"] = game_summary(m, doc.name + " reduced");
    Json a = Json::array();
    for (const auto& e : eqs) {
      Json p = profile_json(m, e.profile);
      p["p_sim"] = rational_json(e.profile.s1[r.simulate_row()]);
      p["aggregate"] = strategy_json(doc.game.s2_labels, e.aggregate);
      a.push_back(std::move(p));
    }
    j["equilibria"] = std::move(a);
    out << j.dump(2) << "\n";
    return;
  }
  out << eqs.size() << " simulation equilibri" << (eqs.size() == 1 ? "um" : "a") << " at cost " << show(cfg.cost)
      << "\n";
  for (size_t i = 0; i < eqs.size(); ++i) {
    out << "SE " << i + 1 << "\n";
    profile_table(out, m, eqs[i].profile);
    out << "  P2 aggregate: " << show(doc.game.s2_labels, eqs[i].aggregate) << "\n";
  }
}

// ---- helps ----

inline const char* criterion_text(Criterion c) {
  switch (c) {
    case Criterion::a: return "some equilibrium Pareto-improves every base equilibrium";
    case Criterion::b: return "some equilibrium beats every base equilibrium for P1";
    case Criterion::c: return "some equilibrium beats every base equilibrium for P2";
    case Criterion::d: return "some equilibrium has higher welfare u1 + u2 than every base equilibrium";
    case Criterion::e: return "some equilibrium has a higher minimum payoff than every base equilibrium";
  }
  return "";
}

inline void cmd_helps(const Options& o, std::ostream& out) {
  no_csv(o, "helps");
  auto crit = parse_criterion(o.criterion);
  if (!crit) throw UsageError("--criterion must be one of a, b, c, d, e");
  auto doc = parse_game(read_file(o.file));
  auto cfg = config_of(o);
  auto rep = decide_msim_helps(doc.game, cfg, *crit);
  auto r = build_reduced(doc.game, cfg);
  if (o.format == "doc") {
    Json j = Json::object();
    j["command"] = "helps";
    j["criterion"] = o.criterion;
    j["cost"] = rational_json(cfg.cost);
    j["kind"] = o.kind;
    j["answer"] = rep.helps ? "yes" : "no";
    j["helps"] = rep.helps;
    j["degenerate"] = rep.degenerate;
    Json b = Json::array();
    for (const auto& p : rep.base_payoffs) b.push_back(payoff_json(p));
    j["base_payoffs"] = std::move(b);
    if (rep.witness) {
      Json w = Json::object();
      w["s1"] = strategy_json(r.meta.s1_labels, rep.witness->s1);
      w["s2"] = strategy_json(r.meta.s2_labels, rep.witness->s2);
      w["payoffs"] = payoff_json(rep.witness->payoffs);
      j["witness"] = std::move(w);
    } else {
      j["witness"] = nullptr;
    }
    out << j.dump(2) << "\n";
    return;
  }
  out << (rep.helps ? "yes" : "no") << "\n";
  out << "  criterion " << o.criterion << ": " << criterion_text(*crit) << "\n";
  out << "  base equilibrium payoffs:";
  for (const auto& p : rep.base_payoffs) out << " " << show(p);
  out << "\n";
  if (rep.witness) {
    out << "  witness P1: " << show(r.meta.s1_labels, rep.witness->s1) << "\n";
    out << "  witness P2: " << show(r.meta.s2_labels, rep.witness->s2) << "\n";
    out << "  witness payoffs " << show(rep.witness->payoffs) << "\n";
  }
}

// ---- analyze ----

// One solved point, shared by analyze and sweep.
struct AnalysisResult {
  std::string klass;
  std::optional<Rational> p_sim, p_D;
  ReducedSimGame reduced;
  EquilibriumProfile profile;
  Json details = Json::object();
  std::vector<std::pair<std::string, std::string>> table;  // extra label/value lines
};

inline std::string resolve_class(const Options& o, const GameDocument& doc) {
  std::string k = !o.klass.empty() ? o.klass : doc.class_tag.value_or("");
  if (k.empty() || k == "raw") throw UsageError("--class is required (gptg, coordination or tcg)");
  if (k != "gptg" && k != "coordination" && k != "tcg") throw UsageError("--class must be gptg, coordination or tcg");
  return k;
}

inline AnalysisResult analyze_point(const std::string& klass, const GameDocument& doc, const Rational& cost) {
  AnalysisResult res;
  res.klass = klass;
  if (klass == "gptg") {
    auto a = validate_gptg(doc.game);
    const auto& g = a.game;
    Json h = Json::array();
    for (const auto& e : a.hierarchy) {
      Json x = Json::object();
      x["row"] = g.s1_labels[e.s1];
      x["defection_from"] = rational_json(e.delta_low);
      x["defection_to"] = rational_json(e.delta_high);
      h.push_back(std::move(x));
    }
    res.details["hierarchy"] = std::move(h);
    res.details["c0"] = a.c0 ? rational_json(*a.c0) : Json(nullptr);
    res.details["cost_limit"] = a.cost_limit ? rational_json(*a.cost_limit) : Json(nullptr);
    res.details["ft_cooperation"] = rational_json(a.ft_cooperation());
    res.details["sufficient_bound"] = rational_json(a.sufficient_bound);
    res.details["sufficient_bound_met"] = a.sufficient_bound_met;
    res.table.push_back({"FT cooperation", show(a.ft_cooperation())});
    if (a.c0) res.table.push_back({"c0", show(*a.c0)});
    if (a.cost_limit) res.table.push_back({"cost limit", show(*a.cost_limit)});
    auto e = gptg_simulation_equilibrium(a, cost);
    res.details["mixed_with"] = g.s1_labels[e.t1];
    res.p_sim = e.p_sim;
    res.p_D = e.p_D;
    res.reduced = std::move(e.reduced);
    res.profile = std::move(e.profile);
  } else if (klass == "coordination") {
    auto v = coordination_violations(doc.game);
    if (!v.empty()) throw ValidationError(v);
    auto e = coordination_sim_equilibrium(doc.game, cost);
    res.details["case"] = e.case_no;
    res.details["actions"] = {doc.game.s1_labels[e.k1], doc.game.s1_labels[e.k2]};
    res.details["cost_bound"] = rational_json(e.cost_bound);
    res.table.push_back({"case", std::to_string(e.case_no)});
    res.table.push_back({"cost bound", show(e.cost_bound)});
    res.p_sim = e.p_sim;
    res.p_D = e.p_D;
    res.reduced = std::move(e.reduced);
    res.profile = std::move(e.profile);
  } else {
    if (!doc.tcg) throw ValidationError({"class tcg needs class.params with b1, b2, epsilon and subgames"});
    auto e = tcg_simulation_equilibrium(*doc.tcg, cost);
    Json d = Json::array();
    for (const auto& x : e.defection) d.push_back(rational_json(x));
    res.details["subgame_defection"] = std::move(d);
    res.details["p1_subgame"] = e.k1 + 1;
    res.details["p2_subgame"] = e.k2 + 1;
    res.details["horrible_rhs"] = rational_json(e.horrible_rhs);
    res.table.push_back({"P1 / P2 subgame", std::to_string(e.k1 + 1) + " / " + std::to_string(e.k2 + 1)});
    std::string defs;
    for (const auto& x : e.defection) defs += (defs.empty() ? "" : ", ") + show(x);
    res.table.push_back({"subgame defection", defs});
    res.table.push_back({"horrible bound", show(e.horrible_rhs)});
    res.p_sim = e.p_sim;
    res.p_D = e.p_D;
    res.reduced = std::move(e.reduced);
    res.profile = std::move(e.profile);
  }
  return res;
}

inline void cmd_analyze(const Options& o, std::ostream& out) {
  no_csv(o, "analyze");
  auto doc = parse_game(read_file(o.file));
  std::string klass = resolve_class(o, doc);
  Rational cost = required_cost(o);
  if (cost <= 0) throw ValidationError({"simulation cost must be positive, got " + to_string(cost)});
  auto res = analyze_point(klass, doc, cost);
  const auto& m = res.reduced.meta;
  if (o.format == "doc") {
    Json j = Json::object();
    j["command"] = "analyze";
    j["class"] = klass;
    j["cost"] = rational_json(cost);
    j["p_sim"] = res.p_sim ? rational_json(*res.p_sim) : Json(nullptr);
    j["p_D"] = res.p_D ? rational_json(*res.p_D) : Json(nullptr);
    j["payoffs"] = payoff_json(res.profile.payoffs);
    j["profile"] = profile_json(m, res.profile);
    for (auto it = res.details.begin(); it != res.details.end(); ++it) j[it.key()] = it.value();
    j["game"] = game_summary(m, doc.name + " msim");
    out << j.dump(2) << "\n";
    return;
  }
  out << klass << " simulation equilibrium at cost " << show(cost) << "\n";
  if (res.p_sim) out << "  p_sim " << show(*res.p_sim) << "\n";
  if (res.p_D) out << "  p_D " << show(*res.p_D) << "\n";
  for (const auto& [k, v] : res.table) out << "  " << k << " " << v << "\n";
  profile_table(out, m, res.profile);
}

// ---- gadget ----

inline void cmd_gadget(const Options& o, std::ostream& out) {
  no_csv(o, "gadget");
  if (o.graph.empty()) throw UsageError("--graph is required");
  auto graph = parse_graph(read_file(o.graph), o.k);
  Rational cost = o.cost.empty() ? Rational(1, 10) : rational_option("--cost", o.cost);
  GameDocument d;
  d.name = "gadget k=" + std::to_string(o.k);
  d.game = hardness_gadget(graph, cost);
  d.class_tag = "raw";
  if (o.format == "doc") {
    out << render_game(d);
    return;
  }
  out << d.name << ": " << graph.a_count << "+" << graph.b_count << " vertices, " << graph.edges.size()
      << " edges, game " << d.game.rows() << " x " << d.game.cols() << "\n";
  for (size_t i = 0; i < d.game.rows(); ++i) {
    out << "  " << d.game.s1_labels[i] << ":";
    for (size_t j = 0; j < d.game.cols(); ++j)
      out << " (" << to_string(d.game.u1[i][j]) << "," << to_string(d.game.u2[i][j]) << ")";
    out << "\n";
  }
}

// ---- pg ----

inline void cmd_pg(const Options& o, std::ostream& out) {
  no_csv(o, "pg");
  if (o.passwords < 1) throw UsageError("--passwords must be at least 1");
  GameDocument d;
  if (!o.file.empty()) {
    auto base = parse_game(read_file(o.file));
    d.name = (base.name.empty() ? std::string("game") : base.name) + " with passwords";
    d.game = apply_password_modification(base.game, o.passwords);
  } else {
    if (o.stakes.empty()) throw UsageError("--stakes is required without a base game");
    d.name = "PG";
    d.game = make_pg(o.passwords, rational_option("--stakes", o.stakes));
  }
  if (o.format == "doc") {
    out << render_game(d);
    return;
  }
  out << d.name << ": " << d.game.rows() << " x " << d.game.cols() << "\n";
  for (size_t i = 0; i < d.game.rows(); ++i) {
    out << "  " << d.game.s1_labels[i] << ":";
    for (size_t j = 0; j < d.game.cols(); ++j)
      out << " (" << to_string(d.game.u1[i][j]) << "," << to_string(d.game.u2[i][j]) << ")";
    out << "\n";
  }
}

// ---- sweep ----

struct SweepRow {
  Rational cost;
  std::optional<Rational> p_sim, p_D;
  std::optional<PayoffPair> payoffs;
  std::string status;
};

inline size_t worker_count(size_t jobs) {
  size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SIMGAME_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = static_cast<size_t>(v);
  }
  return std::max<size_t>(1, std::min(n, jobs));
}

// Without a class, the first simulation equilibrium of the m-sim reduction is used.
inline SweepRow sweep_point(const std::string& klass, const GameDocument& doc, const Rational& cost, SimKind kind) {
  SweepRow row;
  row.cost = cost;
  try {
    if (cost <= 0) throw Refusal("cost", "simulation cost must be positive");
    if (klass.empty()) {
      auto r = build_reduced(doc.game, {cost, kind});
      auto eqs = find_simulation_equilibria(r);
      if (eqs.empty()) throw Refusal("none", "no simulation equilibrium");
      row.p_sim = eqs[0].profile.s1[r.simulate_row()];
      row.payoffs = eqs[0].profile.payoffs;
    } else {
      auto res = analyze_point(klass, doc, cost);
      row.p_sim = res.p_sim;
      row.p_D = res.p_D;
      row.payoffs = res.profile.payoffs;
    }
    row.status = "ok";
  } catch (const Refusal& e) {
    row.status = "refused (" + e.code() + ")";
  }
  return row;
}

inline std::vector<Rational> linspace(const Rational& lo, const Rational& hi, size_t steps) {
  std::vector<Rational> out;
  if (steps == 1) return {lo};
  for (size_t i = 0; i < steps; ++i) {
    Rational t(static_cast<unsigned long>(i), static_cast<unsigned long>(steps - 1));
    Rational x = lo + (hi - lo) * t;
    x.canonicalize();
    out.push_back(x);
  }
  return out;
}

inline std::vector<SweepRow> run_sweep(const std::string& klass, const GameDocument& doc,
                                       const std::vector<Rational>& costs, SimKind kind) {
  std::vector<SweepRow> rows(costs.size());
  std::vector<std::exception_ptr> errors(costs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < costs.size();) {
      try {
        rows[i] = sweep_point(klass, doc, costs[i], kind);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  size_t n = worker_count(costs.size());
  std::vector<std::thread> pool;
  for (size_t t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

inline void cmd_sweep(const Options& o, std::ostream& out) {
  if (o.cost_min.empty() || o.cost_max.empty()) throw UsageError("--cost-min and --cost-max are required");
  if (o.steps < 1) throw UsageError("--steps must be at least 1");
  Rational lo = rational_option("--cost-min", o.cost_min), hi = rational_option("--cost-max", o.cost_max);
  if (hi < lo) throw ValidationError({"--cost-max is below --cost-min"});
  auto doc = parse_game(read_file(o.file));
  std::string klass;
  if (!o.klass.empty() || (doc.class_tag && *doc.class_tag != "raw")) klass = resolve_class(o, doc);
  auto rows = run_sweep(klass, doc, linspace(lo, hi, o.steps), parse_kind(o.kind));

  auto opt = [](const std::optional<Rational>& q) { return q ? to_string(*q) : std::string(); };
  if (o.format == "doc") {
    Json a = Json::array();
    for (const auto& r : rows) {
      Json j = Json::object();
      j["cost"] = rational_json(r.cost);
      j["p_sim"] = r.p_sim ? rational_json(*r.p_sim) : Json(nullptr);
      j["p_D"] = r.p_D ? rational_json(*r.p_D) : Json(nullptr);
      j["u1"] = r.payoffs ? rational_json(r.payoffs->u1) : Json(nullptr);
      j["u2"] = r.payoffs ? rational_json(r.payoffs->u2) : Json(nullptr);
      j["status"] = r.status;
      a.push_back(std::move(j));
    }
    Json j = Json::object();
    j["command"] = "sweep";
    j["class"] = klass.empty() ? Json(nullptr) : Json(klass);
    j["rows"] = std::move(a);
    out << j.dump(2) << "\n";
  } else if (o.format == "table") {
    out << "cost\tp_sim\tp_D\tu1\tu2\tstatus\n";
    for (const auto& r : rows)
      out << to_string(r.cost) << "\t" << opt(r.p_sim) << "\t" << opt(r.p_D) << "\t"
          << (r.payoffs ? to_string(r.payoffs->u1) : "") << "\t" << (r.payoffs ? to_string(r.payoffs->u2) : "")
          << "\t" << r.status << "\n";
  } else {
    out << "cost,p_sim,p_D,u1,u2,status\n";
    for (const auto& r : rows)
      out << to_string(r.cost) << "," << opt(r.p_sim) << "," << opt(r.p_D) << ","
          << (r.payoffs ? to_string(r.payoffs->u1) : "") << "," << (r.payoffs ? to_string(r.payoffs->u2) : "")
          << "," << csv_field(r.status) << "\n";
  }
}

}  // namespace cli

// argv without the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli;
  Options o;
  CLI::App app{"Exact equilibria of games with a simulation option", "simgame"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "";
  app.add_option("--format", format, "table, doc or csv")->check(CLI::IsMember({"table", "doc", "csv"}));

  auto game_arg = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("game", o.file, "game document (- for stdin)");
    if (required) opt->required();
  };
  auto cost_opt = [&](CLI::App* s) { s->add_option("--cost", o.cost, "simulation cost, integer or p/q"); };
  auto kind_opt = [&](CLI::App* s) {
    s->add_option("--kind", o.kind, "pure or mixed simulation")->check(CLI::IsMember({"pure", "mixed"}));
  };

  auto* solve = app.add_subcommand("solve", "enumerate Nash equilibria");
  game_arg(solve);
  auto* stack = app.add_subcommand("stackelberg", "optimal P2 commitment");
  game_arg(stack);
  auto* transform = app.add_subcommand("transform", "build the reduced simulation game");
  game_arg(transform);
  cost_opt(transform);
  kind_opt(transform);
  auto* simeq = app.add_subcommand("sim-eq", "simulation equilibria of the reduced game");
  game_arg(simeq);
  cost_opt(simeq);
  kind_opt(simeq);
  auto* helps = app.add_subcommand("helps", "does cheap simulation improve on every base equilibrium");
  game_arg(helps);
  cost_opt(helps);
  kind_opt(helps);
  helps->add_option("--criterion", o.criterion, "a, b, c, d or e")->required();
  auto* analyze = app.add_subcommand("analyze", "closed-form simulation equilibrium for a game class");
  game_arg(analyze);
  cost_opt(analyze);
  analyze->add_option("--class", o.klass, "gptg, coordination or tcg");
  auto* gadget = app.add_subcommand("gadget", "hardness gadget game from a bipartite graph");
  gadget->add_option("--graph", o.graph, "graph file")->required();
  gadget->add_option("--k", o.k, "biclique size")->required();
  cost_opt(gadget);
  auto* pg = app.add_subcommand("pg", "password-guessing game, or a base game with the password stage");
  game_arg(pg, false);
  pg->add_option("--passwords", o.passwords, "number of passwords")->required();
  pg->add_option("--stakes", o.stakes, "stakes, integer or p/q");
  auto* sweep = app.add_subcommand("sweep", "re-solve over a range of costs");
  game_arg(sweep);
  sweep->add_option("--cost-min", o.cost_min)->required();
  sweep->add_option("--cost-max", o.cost_max)->required();
  sweep->add_option("--steps", o.steps)->required();
  sweep->add_option("--class", o.klass, "gptg, coordination or tcg");
  kind_opt(sweep);
  for (auto* s : {solve, stack, transform, simeq, helps, analyze, gadget, pg, sweep})
    s->add_option("--format", format, "table, doc or csv")->check(CLI::IsMember({"table", "doc", "csv"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return exit_code::usage;
  }
  CLI::App* sub = app.get_subcommands().front();
  o.format = format.empty() ? (sub == sweep ? "csv" : "table") : format;

  try {
    std::ostringstream buf;
    if (sub == solve) cmd_solve(o, buf);
    else if (sub == stack) cmd_stackelberg(o, buf);
    else if (sub == transform) cmd_transform(o, buf);
    else if (sub == simeq) cmd_sim_eq(o, buf);
    else if (sub == helps) cmd_helps(o, buf);
    else if (sub == analyze) cmd_analyze(o, buf);
    else if (sub == gadget) cmd_gadget(o, buf);
    else if (sub == pg) cmd_pg(o, buf);
    else cmd_sweep(o, buf);
    out << buf.str();
    return exit_code::ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << sub->help();
    return exit_code::usage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const ValidationError& e) {
    err << "invalid input:\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
    return exit_code::validation;
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << "\n";
    return exit_code::refusal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal;
  }
}

}  // namespace simgame
