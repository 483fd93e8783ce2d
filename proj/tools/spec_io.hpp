#pragma once

// JSON job inputs (algebras, group actions, functionals) and report encoding
// for the qsuper command line.

#include "qsuper/suites.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>

namespace qsuper::cli {

using json = nlohmann::ordered_json;

/// Input validation failure; `where` is a JSON pointer into the offending file.
struct SpecError : std::runtime_error {
  SpecError(const std::string& file, const std::string& where, const std::string& what)
      : std::runtime_error(file + (where.empty() ? "" : " at " + where) + ": " + what) {}
};

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path, "", "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    // nlohmann reports "line L, column C" in the message
    throw SpecError(path, "", e.what());
  }
}

inline Rational parse_rational(const std::string& s) {
  static const std::regex form(R"(^[+-]?\d+(/\d+)?$)");
  if (!std::regex_match(s, form)) throw std::invalid_argument("not a rational number: '" + s + "'");
  mpq_class q(s[0] == '+' ? s.substr(1) : s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return Rational(q);
}

/// Scalars in Q(i): integers, "p/q", "i", "-i", "3i", "1/2-2i", "1+i".
inline Scalar parse_scalar(const json& j) {
  if (j.is_number_integer()) return Scalar(j.get<std::int64_t>());
  if (!j.is_string()) throw std::invalid_argument("a scalar must be an integer or a string");
  std::string s = j.get<std::string>();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw std::invalid_argument("empty scalar");
  if (s.back() != 'i') return Scalar(parse_rational(s));
  std::string body = s.substr(0, s.size() - 1);
  // split "re±im" at the last sign that is not leading
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if (body[k] == '+' || body[k] == '-') {
      cut = k;
      break;
    }
  std::string re = cut == std::string::npos ? "0" : body.substr(0, cut);
  std::string im = cut == std::string::npos ? body : body.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return Scalar(parse_rational(re)) + Scalar(parse_rational(im)) * Scalar::i();
}

inline std::vector<Scalar> parse_scalars(const json& j, const std::string& file, const std::string& where) {
  if (!j.is_array()) throw SpecError(file, where, "expected an array of scalars");
  std::vector<Scalar> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    try {
      out.push_back(parse_scalar(j[k]));
    } catch (const std::invalid_argument& e) {
      throw SpecError(file, where + "/" + std::to_string(k), e.what());
    }
  }
  return out;
}

/// {"type": "point"}, {"type": "jet", "k": 2} or
/// {"type": "poly_quotient", "modulus": [c_0, ..., 1], "roots": [...]}.
inline CoeffAlgebra algebra_from_json(const json& j, const std::string& file) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw SpecError(file, "/type", "missing algebra type");
  std::string type = j["type"];
  if (type == "point") return preset_point();
  if (type == "jet") {
    if (!j.contains("k") || !j["k"].is_number_unsigned() || j["k"].get<std::size_t>() == 0)
      throw SpecError(file, "/k", "jet order must be a positive integer");
    return preset_jet(j["k"].get<std::size_t>());
  }
  if (type == "poly_quotient") {
    if (!j.contains("modulus")) throw SpecError(file, "/modulus", "missing");
    if (!j.contains("roots")) throw SpecError(file, "/roots", "missing");
    Polynomial f{parse_scalars(j["modulus"], file, "/modulus")};
    std::vector<Scalar> roots = parse_scalars(j["roots"], file, "/roots");
    try {
      return preset_truncated(f, roots);
    } catch (const std::invalid_argument& e) {
      throw SpecError(file, "/modulus", e.what());
    }
  }
  throw SpecError(file, "/type", "unknown algebra type '" + type + "'");
}

inline CoeffAlgebra load_algebra(const std::string& path) { return algebra_from_json(load_json(path), path); }

/// {"generators": [{"order": 2, "scale": "-1", "conjugation": [1, 1, -1]}, ...]}:
/// each generator acts by t ↦ scale·t on A and by conjugation with
/// diag(conjugation) on q(n) (default: identity).
inline GammaAction group_from_json(const json& j, const std::string& file, const CoeffAlgebra& a,
                                   const QueerAlgebra& q) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    throw SpecError(file, "/generators", "expected an array of generators");
  GammaAction act;
  const json& gens = j["generators"];
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::string at = "/generators/" + std::to_string(k);
    const json& g = gens[k];
    if (!g.contains("order") || !g["order"].is_number_unsigned() || g["order"].get<std::size_t>() == 0)
      throw SpecError(file, at + "/order", "order must be a positive integer");
    if (!g.contains("scale")) throw SpecError(file, at + "/scale", "missing");
    Scalar c;
    try {
      c = parse_scalar(g["scale"]);
    } catch (const std::invalid_argument& e) {
      throw SpecError(file, at + "/scale", e.what());
    }
    Matrix d = Matrix::identity(q.n() + 1);
    if (g.contains("conjugation")) {
      auto diag = parse_scalars(g["conjugation"], file, at + "/conjugation");
      if (diag.size() != q.n() + 1)
        throw SpecError(file, at + "/conjugation", "needs " + std::to_string(q.n() + 1) + " entries");
      for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i].is_zero()) throw SpecError(file, at + "/conjugation/" + std::to_string(i), "entry must be nonzero");
        d(i, i) = diag[i];
      }
    }
    act.orders.push_back(g["order"].get<std::size_t>());
    act.on_algebra.push_back(scaling_automorphism(a, c));
    act.on_lie.push_back(q.conjugation(d));
  }
  return act;
}

/// ψ given either as {"lambda": [...], "point": k} (λ ∘ ev at the k-th point)
/// or as {"values": [...]} on h_i ⊗ a_k in the order i * dim A + k.
inline Psi psi_from_json(const json& j, const std::string& file, const CartanContext& c) {
  if (j.contains("values")) {
    Psi psi = parse_scalars(j["values"], file, "/values");
    if (psi.size() != c.half()) throw SpecError(file, "/values", "needs " + std::to_string(c.half()) + " entries");
    return psi;
  }
  if (!j.contains("lambda")) throw SpecError(file, "", "expected \"lambda\" or \"values\"");
  Vec lambda = parse_scalars(j["lambda"], file, "/lambda");
  if (lambda.size() != c.n) throw SpecError(file, "/lambda", "needs " + std::to_string(c.n) + " entries");
  std::size_t point = 0;
  if (j.contains("point")) {
    if (!j["point"].is_number_unsigned() || j["point"].get<std::size_t>() >= c.map.a.maxspec().size())
      throw SpecError(file, "/point", "not a maximal ideal index");
    point = j["point"].get<std::size_t>();
  }
  return psi_at_point(c, lambda, point);
}

// ---------------------------------------------------------------------------
// Report encoding

inline json to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

inline json to_json(const CriterionReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"criterion", r.id}, {"title", r.title}, {"pass", r.pass()}, {"failures", r.failures()}, {"checks", checks}};
}

inline json to_json(const Classification& cl, const Catalog& cat, const CoeffAlgebra& a) {
  json points = json::array();
  for (const auto& m : a.maxspec()) points.push_back(m.label);
  json reps = json::array();
  for (auto p : cl.representatives) reps.push_back(a.maxspec()[p].label);
  json rows = json::array();
  for (const auto& row : cl.rows) {
    json assignment = json::object();
    for (std::size_t p = 0; p < row.psi.size(); ++p) assignment[a.maxspec()[p].label] = cat[row.psi[p]].name;
    json factors = json::array();
    for (std::size_t p = 0; p < row.psi.size(); ++p)
      if (row.psi[p] != 0) factors.push_back(cat[row.psi[p]].rep.schur.type());
    json support = json::array();
    for (auto p : row.support) support.push_back(a.maxspec()[p].label);
    json r{{"psi", assignment},        {"dim", row.dim},      {"schur_type", row.type}, {"factor_types", factors},
           {"irreducible", row.irreducible}, {"support", support}};
    r["density"] = row.density ? json(*row.density) : json(nullptr);
    rows.push_back(std::move(r));
  }
  json iso = json::array(), why = json::array();
  for (std::size_t i = 0; i < cl.rows.size(); ++i) {
    json line = json::array(), reason = json::array();
    for (std::size_t j = 0; j < cl.rows.size(); ++j) {
      line.push_back(cl.isomorphic[i][j]);
      reason.push_back(cl.evidence[i][j]);
    }
    iso.push_back(line);
    why.push_back(reason);
  }
  return {{"algebra", a.tag()},  {"points", points},     {"representatives", reps},
          {"rows", rows},        {"isomorphic", iso},    {"evidence", why},
          {"skipped", cl.skipped}, {"all_irreducible", cl.all_irreducible()},
          {"pairwise_distinct", cl.pairwise_distinct()}};
}

}  // namespace qsuper::cli
