#pragma once

#include <json.hpp>

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coordination.hpp"
#include "gadget.hpp"
#include "tcg.hpp"

namespace simgame {

using Json = nlohmann::ordered_json;

// A game file: the matrices plus an optional class block.
struct GameDocument {
  std::string name;
  NormalFormGame game;
  std::optional<std::string> class_tag;  // gptg | coordination | tcg | raw
  std::vector<PayoffPair> diagonal;      // coordination parameters
  std::optional<TcgSpec> tcg;

  bool operator==(const GameDocument& o) const {
    return name == o.name && game == o.game && class_tag == o.class_tag && diagonal == o.diagonal &&
           tcg == o.tcg;
  }
};

namespace detail {

inline std::pair<size_t, size_t> line_col(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

class DocReader {
 public:
  std::vector<std::string> problems;

  std::optional<Rational> rational(const Json& v, const std::string& where) {
    if (v.is_number_integer()) {
      if (v.is_number_unsigned()) return Rational(mpz_class(std::to_string(v.get<uint64_t>())));
      return Rational(mpz_class(std::to_string(v.get<int64_t>())));
    }
    if (v.is_string()) {
      if (auto q = parse_rational(v.get<std::string>())) return q;
      problems.push_back(where + ": '" + v.get<std::string>() + "' is not a rational literal");
      return std::nullopt;
    }
    problems.push_back(where + ": expected an integer or a \"p/q\" string, got " + std::string(v.type_name()));
    return std::nullopt;
  }

  std::vector<std::string> labels(const Json& doc, const char* key) {
    std::vector<std::string> out;
    if (!doc.contains(key)) return out;
    const Json& v = doc[key];
    if (!v.is_array()) {
      problems.push_back(std::string(key) + ": expected a list of strings");
      return out;
    }
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_string())
        out.push_back(v[i].get<std::string>());
      else
        problems.push_back(std::string(key) + "[" + std::to_string(i) + "]: expected a string");
    }
    return out;
  }

  Matrix matrix(const Json& doc, const char* key) {
    Matrix out;
    const Json& v = doc[key];
    if (!v.is_array()) {
      problems.push_back(std::string(key) + ": expected a list of rows");
      return out;
    }
    for (size_t i = 0; i < v.size(); ++i) {
      std::string where = std::string(key) + "[" + std::to_string(i) + "]";
      if (!v[i].is_array()) {
        problems.push_back(where + ": expected a row");
        out.emplace_back();
        continue;
      }
      Vector row;
      for (size_t j = 0; j < v[i].size(); ++j)
        row.push_back(rational(v[i][j], where + "[" + std::to_string(j) + "]").value_or(Rational(0)));
      out.push_back(std::move(row));
    }
    return out;
  }
};

inline Json rational_literal(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(to_string(q));
}

}  // namespace detail

inline GameDocument parse_game(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw ParseError(pos == std::string::npos ? what : what.substr(pos), line, col);
  }
  if (!doc.is_object()) throw ValidationError({"document must be an object"});

  detail::DocReader rd;
  GameDocument out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    static const std::vector<std::string> known = {"name", "s1", "s2", "u1", "u2", "class"};
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      rd.problems.push_back("unknown key '" + it.key() + "'");
  }
  if (doc.contains("name")) {
    if (doc["name"].is_string())
      out.name = doc["name"].get<std::string>();
    else
      rd.problems.push_back("name: expected a string");
  }

  if (doc.contains("class")) {
    const Json& c = doc["class"];
    if (!c.is_object() || !c.contains("tag") || !c["tag"].is_string()) {
      rd.problems.push_back("class: expected an object with a string 'tag'");
    } else {
      std::string tag = c["tag"].get<std::string>();
      if (tag != "gptg" && tag != "coordination" && tag != "tcg" && tag != "raw")
        rd.problems.push_back("class.tag: unknown class '" + tag + "'");
      out.class_tag = tag;
      Json params = c.contains("params") ? c["params"] : Json::object();
      if (!params.is_object()) rd.problems.push_back("class.params: expected an object");
      if (tag == "coordination" && params.is_object() && params.contains("diagonal")) {
        const Json& d = params["diagonal"];
        if (!d.is_array()) rd.problems.push_back("class.params.diagonal: expected a list of pairs");
        for (size_t k = 0; d.is_array() && k < d.size(); ++k) {
          std::string where = "class.params.diagonal[" + std::to_string(k) + "]";
          if (!d[k].is_array() || d[k].size() != 2) {
            rd.problems.push_back(where + ": expected [u1, u2]");
            continue;
          }
          auto a = rd.rational(d[k][0], where + "[0]");
          auto b = rd.rational(d[k][1], where + "[1]");
          if (a && b) out.diagonal.push_back({*a, *b});
        }
      }
      if (tag == "tcg" && params.is_object()) {
        TcgSpec s;
        auto field = [&](const Json& obj, const char* key, Rational& dst, const std::string& where, bool required) {
          if (!obj.contains(key)) {
            if (required) rd.problems.push_back(where + ": missing '" + key + "'");
            return;
          }
          if (auto q = rd.rational(obj[key], where + "." + key)) dst = *q;
        };
        field(params, "b1", s.b1, "class.params", false);
        field(params, "b2", s.b2, "class.params", false);
        field(params, "epsilon", s.epsilon, "class.params", false);
        if (!params.contains("subgames") || !params["subgames"].is_array()) {
          rd.problems.push_back("class.params.subgames: expected a list");
        } else {
          const Json& sg = params["subgames"];
          for (size_t k = 0; k < sg.size(); ++k) {
            std::string where = "class.params.subgames[" + std::to_string(k) + "]";
            if (!sg[k].is_object()) {
              rd.problems.push_back(where + ": expected an object");
              continue;
            }
            TrustSubgame t;
            field(sg[k], "g1", t.g1, where, true);
            field(sg[k], "g2", t.g2, where, true);
            field(sg[k], "h1", t.h1, where, true);
            field(sg[k], "a2", t.a2, where, true);
            field(sg[k], "n1", t.n1, where, true);
            field(sg[k], "h2", t.h2, where, true);
            s.subgames.push_back(t);
          }
        }
        out.tcg = s;
      }
    }
  }

  bool has_matrices = doc.contains("u1") || doc.contains("u2");
  if (has_matrices) {
    for (const char* k : {"s1", "s2", "u1", "u2"})
      if (!doc.contains(k)) rd.problems.push_back(std::string("missing '") + k + "'");
    out.game.s1_labels = rd.labels(doc, "s1");
    out.game.s2_labels = rd.labels(doc, "s2");
    if (doc.contains("u1")) out.game.u1 = rd.matrix(doc, "u1");
    if (doc.contains("u2")) out.game.u2 = rd.matrix(doc, "u2");
  } else if (rd.problems.empty()) {
    // Built from the class parameters.
    try {
      if (out.class_tag == "coordination" && !out.diagonal.empty())
        out.game = make_coordination_game(out.diagonal);
      else if (out.class_tag == "tcg" && out.tcg)
        out.game = make_tcg(*out.tcg);
      else
        rd.problems.push_back("missing 'u1' and 'u2' and no class parameters to build them from");
    } catch (const ValidationError& e) {
      for (const auto& v : e.violations()) rd.problems.push_back(v);
    }
    if (rd.problems.empty()) {
      if (doc.contains("s1")) out.game.s1_labels = rd.labels(doc, "s1");
      if (doc.contains("s2")) out.game.s2_labels = rd.labels(doc, "s2");
    }
  }
  if (rd.problems.empty())
    for (const auto& v : out.game.violations()) rd.problems.push_back(v);
  if (out.tcg && rd.problems.empty())
    for (const auto& v : out.tcg->violations()) rd.problems.push_back(v);
  if (!rd.problems.empty()) throw ValidationError(rd.problems);
  return out;
}

inline Json game_json(const GameDocument& d) {
  Json doc = Json::object();
  doc["name"] = d.name;
  doc["s1"] = d.game.s1_labels;
  doc["s2"] = d.game.s2_labels;
  for (const char* key : {"u1", "u2"}) {
    const Matrix& m = std::string(key) == "u1" ? d.game.u1 : d.game.u2;
    Json rows = Json::array();
    for (const auto& row : m) {
      Json r = Json::array();
      for (const auto& q : row) r.push_back(detail::rational_literal(q));
      rows.push_back(std::move(r));
    }
    doc[key] = std::move(rows);
  }
  if (d.class_tag) {
    Json c = Json::object();
    c["tag"] = *d.class_tag;
    Json params = Json::object();
    if (!d.diagonal.empty()) {
      Json diag = Json::array();
      for (const auto& p : d.diagonal) diag.push_back({detail::rational_literal(p.u1), detail::rational_literal(p.u2)});
      params["diagonal"] = std::move(diag);
    }
    if (d.tcg) {
      params["b1"] = detail::rational_literal(d.tcg->b1);
      params["b2"] = detail::rational_literal(d.tcg->b2);
      params["epsilon"] = detail::rational_literal(d.tcg->epsilon);
      Json sg = Json::array();
      for (const auto& s : d.tcg->subgames) {
        Json o = Json::object();
        o["g1"] = detail::rational_literal(s.g1);
        o["g2"] = detail::rational_literal(s.g2);
        o["h1"] = detail::rational_literal(s.h1);
        o["a2"] = detail::rational_literal(s.a2);
        o["n1"] = detail::rational_literal(s.n1);
        o["h2"] = detail::rational_literal(s.h2);
        sg.push_back(std::move(o));
      }
      params["subgames"] = std::move(sg);
    }
    c["params"] = std::move(params);
    doc["class"] = std::move(c);
  }
  return doc;
}

inline std::string render_game(const GameDocument& d) { return game_json(d).dump(2) + "\n"; }

// Graph file: "a_count b_count" then one "a b" edge per line, 0-based; '#' starts a comment.
inline BipartiteGraph parse_graph(const std::string& text, long k) {
  BipartiteGraph g;
  g.k = k;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  bool header = false;
  std::vector<std::string> problems;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    long a, b;
    if (!(ls >> a)) {
      std::string rest;
      ls.clear();
      if (ls >> rest) throw ParseError("expected two integers", lineno, 1);
      continue;
    }
    std::string extra;
    if (!(ls >> b) || (ls >> extra)) throw ParseError("expected exactly two integers", lineno, 1);
    if (a < 0 || b < 0) throw ParseError("negative number", lineno, 1);
    if (!header) {
      g.a_count = static_cast<size_t>(a);
      g.b_count = static_cast<size_t>(b);
      header = true;
    } else {
      g.edges.insert({static_cast<size_t>(a), static_cast<size_t>(b)});
    }
  }
  if (!header) throw ParseError("missing 'a_count b_count' header", lineno + 1, 1);
  auto v = g.violations();
  if (!v.empty()) throw ValidationError(v);
  return g;
}

// {"exact": "p/q", "approx": "0.123457"}
inline Json rational_json(const Rational& q) {
  Json j = Json::object();
  j["exact"] = to_string(q);
  j["approx"] = to_decimal(q);
  return j;
}

inline Json strategy_json(const std::vector<std::string>& labels, const MixedStrategy& s) {
  Json j = Json::object();
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] != 0) j[labels[i]] = rational_json(s[i]);
  return j;
}

inline Json payoff_json(const PayoffPair& p) {
  Json j = Json::object();
  j["u1"] = rational_json(p.u1);
  j["u2"] = rational_json(p.u2);
  return j;
}

// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace simgame
