// Command-line surface: minimal polynomials, generators, cycles, class
// enumeration, RPF build/verify/audit.  JSON on stdout, diagnostics on
// stderr.  Exit 0 = success, 1 = verification failure, 2 = usage error.

#include "heckerpf/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace heckerpf;

namespace {

unsigned default_bits() {
  if (const char* env = std::getenv("RPF_PRECISION_BITS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 16 && v <= (1 << 20)) return static_cast<unsigned>(v);
  }
  return 200;
}

// NFElem grammar: rational coefficients of powers of lambda joined by ':',
// e.g. "1", "-1/2", "0:-1" (= -lambda).  Form grammar: three NFElems joined
// by ',', e.g. "1,0:-1,-1".
NFElem parse_nf(const std::shared_ptr<const NFContext>& ctx, const std::string& s) {
  std::vector<Rat> coeffs;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ':')) coeffs.push_back(rat_from_string(part));
  if (coeffs.empty()) throw std::invalid_argument("empty number-field element");
  return NFElem(ctx, std::move(coeffs));
}

BQF parse_form(const std::shared_ptr<const NFContext>& ctx, const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  if (parts.size() != 3) throw std::invalid_argument("form must be A,B,C");
  return BQF(parse_nf(ctx, parts[0]), parse_nf(ctx, parts[1]), parse_nf(ctx, parts[2]));
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const std::string& output, const std::string& latex,
          const std::string& text) {
  if (output == "latex")
    std::cout << latex << "\n";
  else if (output == "text")
    std::cout << text << "\n";
  else
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic for Hecke groups, binary quadratic form cycles, and rational "
               "period functions"};
  app.require_subcommand(1);

  int p = 3;
  unsigned k = 1;
  int word_len = 4;
  std::string form_str, spec_path, q_path, output = "json";
  int numeric_check = 0;
  unsigned bits = default_bits();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", p, "Hecke group index p >= 3")->required();
    sub->add_option("--output", output, "json|latex|text")
        ->check(CLI::IsMember({"json", "latex", "text"}));
  };

  auto* c_minpoly = app.add_subcommand("minpoly", "Minimal polynomial of lambda_p");
  add_common(c_minpoly);

  auto* c_gens = app.add_subcommand("generators", "Group generators S, T, U over Q(lambda_p)");
  add_common(c_gens);

  auto* c_cycle = app.add_subcommand("cycle", "Cycle of the class of a simple form");
  add_common(c_cycle);
  c_cycle->add_option("--form", form_str, "seed form A,B,C (NFElem coefficients joined by ':')")
      ->required();

  auto* c_classes = app.add_subcommand("classes", "Enumerate form classes by matrix word length");
  add_common(c_classes);
  c_classes->add_option("--word-len", word_len, "number of U^j T blocks to search");

  auto* c_build = app.add_subcommand("build", "Assemble a candidate RPF from a spec file");
  add_common(c_build);
  c_build->add_option("--spec", spec_path, "RPF spec JSON path")->required();

  auto* c_verify = app.add_subcommand("verify", "Verify the two defining relations exactly");
  add_common(c_verify);
  c_verify->add_option("--k", k, "half-weight k (weight is 2k)");
  c_verify->add_option("--spec", spec_path, "RPF spec JSON path");
  c_verify->add_option("--q", q_path, "rational function JSON path");
  c_verify->add_option("--numeric-check", numeric_check,
                       "also sample N random complex points with interval arithmetic");
  c_verify->add_option("--precision-bits", bits, "interval precision for --numeric-check");

  auto* c_audit = app.add_subcommand("audit", "Verify and audit pole structure");
  add_common(c_audit);
  c_audit->add_option("--k", k, "half-weight k");
  c_audit->add_option("--spec", spec_path, "RPF spec JSON path")->required();
  c_audit->add_option("--numeric-check", numeric_check, "sample N points numerically");
  c_audit->add_option("--precision-bits", bits, "interval precision for --numeric-check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    auto ctx = make_context(p);

    if (c_minpoly->parsed()) {
      json j = context_to_json(ctx);
      std::string deg = std::to_string(ctx->degree);
      emit(j, output, "m_{" + std::to_string(p) + "}(x)", "p=" + std::to_string(p) +
                          " degree=" + deg);
      return 0;
    }

    if (c_gens->parsed()) {
      auto g = generators(ctx);
      json j{{"p", p},
             {"lambda", nf_to_json(NFElem::lambda(ctx))},
             {"S", mat_to_json(g.S)},
             {"T", mat_to_json(g.T)},
             {"U", mat_to_json(g.U)}};
      emit(j, output, "S, T, U", j.dump());
      return 0;
    }

    if (c_cycle->parsed()) {
      BQF q = parse_form(ctx, form_str);
      Cycle cyc = cycle_from(ctx, q);
      cyc.symmetric = is_symmetric_class(ctx, q);
      json j = cycle_to_json(cyc);
      emit(j, output, "Z_{\\mathcal{A}}", "cycle length " + std::to_string(cyc.length()));
      return 0;
    }

    if (c_classes->parsed()) {
      auto cycles = enumerate_classes(ctx, word_len);
      json arr = json::array();
      for (const auto& cyc : cycles) arr.push_back(cycle_to_json(cyc));
      json j{{"p", p}, {"word_len", word_len}, {"classes", arr}};
      emit(j, output, "", std::to_string(cycles.size()) + " classes");
      return 0;
    }

    if (c_build->parsed()) {
      RPFSpec spec = rpfspec_from_json(ctx, load_json(spec_path));
      RatFunc<NFElem> q = build(ctx, spec);
      json j{{"p", p}, {"k", spec.k}, {"q", ratfunc_to_json(q, p)}};
      emit(j, output, latex_ratfunc(q), j.dump());
      return 0;
    }

    if (c_verify->parsed() || c_audit->parsed()) {
      RatFunc<NFElem> q = RatFunc<NFElem>::zero(NFElem(ctx));
      std::vector<Cycle> cycles;
      if (!spec_path.empty()) {
        RPFSpec spec = rpfspec_from_json(ctx, load_json(spec_path));
        if (c_verify->count("--k") == 0 && c_audit->count("--k") == 0) k = spec.k;
        if (spec.k != k) {
          std::cerr << "error: --k disagrees with spec file\n";
          return 2;
        }
        q = build(ctx, spec);
        for (const auto& t : spec.classes) cycles.push_back(t.cycle);
      } else if (!q_path.empty()) {
        q = ratfunc_from_json(ctx, load_json(q_path));
      } else {
        std::cerr << "error: verify needs --spec or --q\n";
        return 2;
      }

      VerifyReport rep = verify(ctx, q, k);
      json j = verify_report_to_json(rep, p);
      j["p"] = p;
      j["k"] = k;
      j["q"] = ratfunc_to_json(q, p);
      if (c_audit->parsed()) {
        PoleAudit audit = pole_audit(ctx, q, k, candidate_poles(ctx, cycles));
        j["pole_audit"] = pole_audit_to_json(audit, k);
      }
      if (numeric_check > 0) {
        NumericCheck nc = numeric_consistency(ctx, q, k, numeric_check, bits);
        j["numeric_check"] = json{{"points", nc.points},
                                  {"consistent", nc.consistent},
                                  {"max_residual_bound", nc.max_residual.convert_to<double>()}};
      }
      bool pass = rep.passed();
      emit(j, output, latex_ratfunc(q), pass ? "PASS" : "FAIL");
      return pass ? 0 : 1;
    }

    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
