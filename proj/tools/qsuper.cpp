// qsuper: verification suites, classification tables, weight tables and
// irreducible-product reports.  Exit status: 0 all checks passed, 1 a check
// failed, 2 usage or input error.

#include "spec_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace qsuper;
using namespace qsuper::cli;

namespace {

struct Output {
  std::string format = "text";
  std::string path;

  void emit(const json& structured, const std::string& text) const {
    std::string body = format == "structured" ? structured.dump(2) + "\n" : text;
    if (path.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError(path, "", "cannot write output");
    out << body;
  }
};

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  // commas inside "hw:a,b" belong to the name, so split only before a letter
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == ',' && k + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[k + 1]))) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += s[k];
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite, std::uint64_t seed, const Output& out) {
  std::vector<int> ids = suite_criteria(suite);
  json crit = json::array();
  std::ostringstream text;
  bool ok = true;
  text << "suite " << suite << " seed " << seed << "\n";
  for (int id : ids) {
    CriterionReport r = run_criterion(id, seed);
    ok = ok && r.pass();
    crit.push_back(to_json(r));
    text << (r.pass() ? "PASS" : "FAIL") << " criterion " << id << ": " << r.title << " (" << r.checks.size()
         << " checks, " << r.failures() << " failed)\n";
    for (const auto& c : r.checks)
      if (!c.pass) text << "  failed: " << c.name << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
  }
  json report{{"command", "verify"}, {"suite", suite}, {"seed", seed}, {"pass", ok}, {"criteria", crit}};
  out.emit(report, text.str());
  return ok ? 0 : 1;
}

int cmd_classify(std::size_t n, const std::string& algebra, const std::string& group, const std::string& catalog,
                 const Output& out) {
  CoeffAlgebra a = load_algebra(algebra);
  QueerAlgebra q(n);
  GammaAction act = group.empty() ? trivial_gamma(a, q.lie()) : group_from_json(load_json(group), group, a, q);
  Catalog cat = make_catalog(q, split_names(catalog));
  MapSuper m = tensor_lie(q.lie(), a);
  Classification cl = classify_enumerate(m, act, cat);

  json report = to_json(cl, cat, a);
  json names = json::array();
  for (const auto& e : cat) names.push_back(e.name);
  json head{{"command", "classify"}, {"n", n}, {"catalog", names}, {"twisted", !group.empty()}};
  head.update(report);
  report = std::move(head);

  std::ostringstream text;
  text << "q(" << n << ") ⊗ " << a.tag() << (group.empty() ? "" : ", twisted") << ", catalog " << catalog << "\n";
  text << classification_table(cl, cat, a);
  text << "isomorphism table (1 = isomorphic):\n";
  for (const auto& line : cl.isomorphic) {
    for (bool b : line) text << (b ? " 1" : " 0");
    text << "\n";
  }
  bool ok = cl.all_irreducible() && cl.pairwise_distinct();
  text << (ok ? "all irreducible and pairwise non-isomorphic\n" : "FAILED: not all irreducible and distinct\n");
  out.emit(report, text.str());
  return ok ? 0 : 1;
}

int cmd_dims(std::size_t n, const std::string& algebra, const std::string& psi_file, std::optional<std::size_t> depth,
             const Output& out) {
  CoeffAlgebra a = algebra.empty() ? preset_point() : load_algebra(algebra);
  QueerAlgebra q(n);
  HwContext c = hw_context(q, a);
  Psi psi = psi_file.empty() ? Psi(c.cartan.half()) : psi_from_json(load_json(psi_file), psi_file, c.cartan);
  WeightModule v = simple_quotient(c, psi, depth);
  auto table = weight_table(c, v);
  json rows = json::array();
  std::ostringstream text;
  text << "V(ψ) for q(" << n << ") ⊗ " << a.tag() << ", depth " << v.depth << (v.finite ? ", finite" : ", truncated")
       << "\n";
  for (const auto& r : table) {
    json beta = json::array();
    for (auto b : r.beta) beta.push_back(b);
    rows.push_back({{"beta", beta}, {"weight", to_json(r.weight)}, {"dim", r.dim}, {"singular", r.singular}});
    text << "λ-" << coord_str(r.beta) << "  weight (";
    for (std::size_t k = 0; k < r.weight.size(); ++k) text << (k ? "," : "") << r.weight[k].str();
    text << ")  dim " << r.dim << (r.singular ? "  singular " + std::to_string(r.singular) : "") << "\n";
  }
  text << "total " << v.dim() << "\n";
  json report{{"command", "dims"}, {"n", n},        {"algebra", a.tag()}, {"psi", to_json(psi)},
              {"depth", v.depth},  {"finite", v.finite}, {"total", v.dim()}, {"rows", rows}};
  out.emit(report, text.str());
  return 0;
}

// A factor for `decompose`: C^{1|1} over the Lie superalgebra of Q(1), or a
// catalog module of q(n).
std::pair<LieSuper, SchurModule> factor(const std::string& ref, std::size_t n) {
  if (ref == "queer-line")
    return {from_assoc(make_Q(1)), with_schur(from_assoc_module(natural_module_Q(1)))};
  QueerAlgebra q(n);
  return {q.lie(), catalog_entry(q, ref).rep};
}

int cmd_decompose(const std::vector<std::string>& refs, std::size_t n, const Output& out) {
  if (refs.empty()) throw std::invalid_argument("decompose: no modules given");
  auto [alg, acc] = factor(refs[0], n);
  acc.module.weights.clear();
  json steps = json::array();
  std::ostringstream text;
  text << refs[0] << ": dim " << acc.dim() << ", type " << acc.schur.type() << "\n";
  for (std::size_t k = 1; k < refs.size(); ++k) {
    auto [g, v] = factor(refs[k], n);
    v.module.weights.clear();
    LieSum s = lie_direct_sum(alg, g);
    auto pa = alg.space().parities(), pg = g.space().parities();
    SchurModule left{to_sum_basis(extend_to_sum(acc.module, alg.dim(), g.dim(), true, pa, pg), s), acc.schur};
    SchurModule right{to_sum_basis(extend_to_sum(v.module, alg.dim(), g.dim(), false, pa, pg), s), v.schur};
    HatProduct h = hat_tensor(left, right);
    json step{{"factor", refs[k]},      {"factor_dim", v.dim()},     {"factor_type", v.schur.type()},
              {"split", h.split},       {"tensor_dim", h.full_dim},  {"result_dim", h.result.dim()},
              {"result_type", h.result.schur.type()}};
    text << "⊗̂ " << refs[k] << " (dim " << v.dim() << ", type " << v.schur.type() << "): tensor dim " << h.full_dim;
    if (h.split) {
      bool halves = is_isomorphic(hat_eigenspace(h, 1), hat_eigenspace(h, -1)).isomorphic;
      step["minus_dim"] = h.minus_dim;
      step["halves_isomorphic"] = halves;
      text << " = " << h.result.dim() << " ⊕ " << h.minus_dim << (halves ? " (isomorphic halves)" : " (halves differ)");
    }
    text << ", result dim " << h.result.dim() << ", type " << h.result.schur.type() << "\n";
    steps.push_back(std::move(step));
    alg = s.lie;
    acc = h.result;
  }
  json report{{"command", "decompose"}, {"n", n}, {"factors", refs}, {"steps", steps}, {"dim", acc.dim()},
              {"type", acc.schur.type()}};
  out.emit(report, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representations of queer map superalgebras"};
  app.require_subcommand(1);
  Output out;
  std::uint64_t seed = 7;
  std::size_t n = 2;
  std::string algebra, group, catalog = "trivial,adjoint", psi_file;
  std::optional<std::size_t> depth;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", out.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--out", out.path, "write the report to this file");
  };

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "superalg, queer, cartan, hw, products or all")->required();
  verify->add_option("--seed", seed, "seed for random instances");
  common(verify);

  auto* classify = app.add_subcommand("classify", "enumerate evaluation modules over a catalog");
  classify->add_option("--n", n, "rank of q(n)")->check(CLI::Range(1, 3));
  classify->add_option("--algebra", algebra, "coefficient algebra JSON")->required();
  classify->add_option("--group", group, "group action JSON");
  classify->add_option("--catalog", catalog, "comma-separated catalog, starting with trivial");
  common(classify);

  auto* dims = app.add_subcommand("dims", "weight table of V(ψ)");
  dims->add_option("--n", n, "rank of q(n)")->check(CLI::Range(1, 3));
  dims->add_option("--algebra", algebra, "coefficient algebra JSON (default: C)");
  dims->add_option("--psi", psi_file, "functional JSON (default: 0)");
  dims->add_option("--depth", depth, "truncation depth");
  common(dims);

  std::vector<std::string> refs;
  auto* decompose = app.add_subcommand("decompose", "irreducible product of modules over a direct sum");
  decompose->add_option("modules", refs, "queer-line or catalog names of q(n)")->required();
  decompose->add_option("--n", n, "rank of q(n)")->check(CLI::Range(1, 3));
  common(decompose);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::cerr << "unknown suite '" << suite << "'; expected one of superalg, queer, cartan, hw, products, all\n";
        return 2;
      }
      return cmd_verify(suite, seed, out);
    }
    if (classify->parsed()) return cmd_classify(n, algebra, group, catalog, out);
    if (dims->parsed()) return cmd_dims(n, algebra, psi_file, depth, out);
    if (decompose->parsed()) return cmd_decompose(refs, n, out);
  } catch (const SpecError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
