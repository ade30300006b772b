#pragma once

// JSON (de)serialization for the library types plus a small LaTeX renderer.
// Number-field elements travel as arrays of "num/den" strings in lowest
// terms, little-endian in powers of lambda; the context's minimal polynomial
// is emitted with integer coefficients in descending order.

#include "heckerpf/rpf.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>

namespace heckerpf {

using nlohmann::json;

inline json nf_to_json(const NFElem& x) {
  json arr = json::array();
  const auto& c = x.coeffs();
  size_t n = c.size();
  while (n > 1 && c[n - 1] == 0) --n;
  for (size_t i = 0; i < n; ++i) arr.push_back(rat_to_string(c[i]));
  if (arr.empty()) arr.push_back("0");
  return arr;
}

inline NFElem nf_from_json(const std::shared_ptr<const NFContext>& ctx, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("NFElem JSON must be an array of strings");
  std::vector<Rat> c;
  for (const auto& s : j) c.push_back(rat_from_string(s.get<std::string>()));
  return NFElem(ctx, std::move(c));
}

inline json context_to_json(const std::shared_ptr<const NFContext>& ctx) {
  json mp = json::array();
  const auto& m = ctx->minpoly;
  for (size_t i = m.size(); i-- > 0;) mp.push_back(m[i].convert_to<long long>());
  return json{{"p", ctx->p}, {"minpoly", mp}};
}

inline json bqf_to_json(const BQF& q) {
  return json{{"A", nf_to_json(q.A)},
              {"B", nf_to_json(q.B)},
              {"C", nf_to_json(q.C)},
              {"D", nf_to_json(q.D)}};
}

inline BQF bqf_from_json(const std::shared_ptr<const NFContext>& ctx, const json& j) {
  BQF q(nf_from_json(ctx, j.at("A")), nf_from_json(ctx, j.at("B")), nf_from_json(ctx, j.at("C")));
  if (j.contains("D") && nf_from_json(ctx, j.at("D")) != q.D)
    throw std::invalid_argument("BQF JSON: stated discriminant disagrees with B^2 - 4AC");
  return q;
}

inline json mat_to_json(const Mat2& m) {
  json j{{"a", nf_to_json(m.a)},
         {"b", nf_to_json(m.b)},
         {"c", nf_to_json(m.c)},
         {"d", nf_to_json(m.d)}};
  if (!m.word.empty()) j["word"] = m.word;
  return j;
}

inline json qelem_to_json(const QElem& x) {
  return json{{"u", nf_to_json(x.u())}, {"v", nf_to_json(x.v())}, {"D", nf_to_json(x.D())}};
}

inline json cycle_to_json(const Cycle& cyc) {
  json forms = json::array();
  for (const auto& f : cyc.forms) forms.push_back(bqf_to_json(f));
  json j{{"class_tag", cyc.class_tag},
         {"discriminant", nf_to_json(cyc.discriminant)},
         {"forms", forms},
         {"exponents", cyc.exponents}};
  if (cyc.symmetric) j["symmetric"] = *cyc.symmetric;
  return j;
}

inline Cycle cycle_from_json(const std::shared_ptr<const NFContext>& ctx, const json& j) {
  Cycle cyc;
  cyc.class_tag = j.at("class_tag").get<std::string>();
  cyc.discriminant = nf_from_json(ctx, j.at("discriminant"));
  for (const auto& f : j.at("forms")) cyc.forms.push_back(bqf_from_json(ctx, f));
  cyc.exponents = j.at("exponents").get<std::vector<int>>();
  if (j.contains("symmetric")) cyc.symmetric = j.at("symmetric").get<bool>();
  return cyc;
}

inline json ratfunc_to_json(const RatFunc<NFElem>& f, int p) {
  json num = json::array(), den = json::array();
  for (const auto& c : f.num.c) num.push_back(nf_to_json(c));
  for (const auto& c : f.den.c) den.push_back(nf_to_json(c));
  return json{{"field", {{"p", p}, {"D", nullptr}}}, {"num", num}, {"den", den}};
}

inline RatFunc<NFElem> ratfunc_from_json(const std::shared_ptr<const NFContext>& ctx,
                                         const json& j) {
  if (j.at("field").at("p").get<int>() != ctx->p)
    throw std::invalid_argument("RatFunc JSON: field p disagrees with context");
  if (!j.at("field").at("D").is_null())
    throw std::invalid_argument("RatFunc JSON: only base-field functions are accepted");
  Poly<NFElem> num, den;
  for (const auto& c : j.at("num")) num.c.push_back(nf_from_json(ctx, c));
  for (const auto& c : j.at("den")) den.c.push_back(nf_from_json(ctx, c));
  num.trim();
  den.trim();
  return RatFunc<NFElem>(std::move(num), std::move(den));
}

inline json rpfspec_to_json(const RPFSpec& spec) {
  json classes = json::array();
  for (const auto& t : spec.classes)
    classes.push_back(json{{"cycle", cycle_to_json(t.cycle)},
                           {"coefficient", nf_to_json(t.coefficient)}});
  json j{{"p", spec.p},
         {"k", spec.k},
         {"mode", spec.mode == BuildMode::symmetric ? "symmetric" : "general"},
         {"classes", classes}};
  if (spec.c0.ctx()) j["c0"] = nf_to_json(spec.c0);
  if (spec.a0.ctx()) j["a0"] = nf_to_json(spec.a0);
  if (spec.b1.ctx()) j["b1"] = nf_to_json(spec.b1);
  if (!spec.cn.empty()) {
    json cn = json::array();
    for (const auto& c : spec.cn) cn.push_back(nf_to_json(c));
    j["cn"] = cn;
  }
  return j;
}

inline RPFSpec rpfspec_from_json(const std::shared_ptr<const NFContext>& ctx, const json& j) {
  RPFSpec spec;
  spec.p = j.at("p").get<int>();
  spec.k = j.at("k").get<unsigned>();
  std::string mode = j.value("mode", "symmetric");
  if (mode == "symmetric")
    spec.mode = BuildMode::symmetric;
  else if (mode == "general")
    spec.mode = BuildMode::general;
  else
    throw std::invalid_argument("RPFSpec JSON: mode must be symmetric or general");
  for (const auto& t : j.value("classes", json::array())) {
    ClassTerm term;
    if (t.contains("cycle"))
      term.cycle = cycle_from_json(ctx, t.at("cycle"));
    else if (t.contains("seed"))
      term.cycle = cycle_from(ctx, bqf_from_json(ctx, t.at("seed")));
    else
      throw std::invalid_argument("RPFSpec JSON: class entry needs a cycle or a seed form");
    term.coefficient = t.contains("coefficient") ? nf_from_json(ctx, t.at("coefficient"))
                                                 : NFElem(ctx, Rat(1));
    spec.classes.push_back(std::move(term));
  }
  spec.c0 = j.contains("c0") ? nf_from_json(ctx, j.at("c0")) : NFElem(ctx);
  spec.a0 = j.contains("a0") ? nf_from_json(ctx, j.at("a0")) : NFElem(ctx);
  spec.b1 = j.contains("b1") ? nf_from_json(ctx, j.at("b1")) : NFElem(ctx);
  if (j.contains("cn"))
    for (const auto& c : j.at("cn")) spec.cn.push_back(nf_from_json(ctx, c));
  return spec;
}

inline json verify_report_to_json(const VerifyReport& rep, int p) {
  return json{{"relation1_zero", rep.relation1_zero},
              {"relation2_zero", rep.relation2_zero},
              {"residual1", ratfunc_to_json(rep.residual1, p)},
              {"residual2", ratfunc_to_json(rep.residual2, p)}};
}

inline json pole_audit_to_json(const PoleAudit& audit, unsigned k) {
  json entries = json::array();
  for (const auto& e : audit.entries)
    entries.push_back(json{{"pole", qelem_to_json(e.pole)},
                           {"order", e.order},
                           {"expected_order", e.expected_order},
                           {"real", e.real}});
  return json{{"poles", entries},
              {"regular_at_infinity", audit.regular_at_infinity},
              {"zero_pole_order", audit.zero_pole_order},
              {"qinf_nonzero", audit.qinf_nonzero},
              {"unrecognized_degree", audit.unrecognized_degree},
              {"ok", audit.ok(k)}};
}

// --- LaTeX rendering ------------------------------------------------------

inline std::string latex_nf(const NFElem& x) {
  if (!x.ctx() || x.is_zero()) return "0";
  const auto& c = x.coeffs();
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Rat a = c[i];
    if (!first) out << (a > 0 ? " + " : " - ");
    else if (a < 0) out << "-";
    Rat mag = a > 0 ? a : Rat(-a);
    bool unit = mag == 1 && i > 0;
    if (!unit) {
      if (boost::multiprecision::denominator(mag) == 1)
        out << boost::multiprecision::numerator(mag).str();
      else
        out << "\\tfrac{" << boost::multiprecision::numerator(mag).str() << "}{"
            << boost::multiprecision::denominator(mag).str() << "}";
    }
    if (i == 1) out << "\\lambda";
    if (i > 1) out << "\\lambda^{" << i << "}";
    first = false;
  }
  return out.str();
}

inline bool nf_is_one(const NFElem& x) { return x.ctx() && x == one_like(x); }

inline std::string latex_poly(const Poly<NFElem>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t i = p.c.size(); i-- > 0;) {
    if (p.c[i].is_zero()) continue;
    std::string s = latex_nf(p.c[i]);
    bool multi_term = s.find(' ') != std::string::npos;
    if (!first) {
      if (!multi_term && s[0] == '-') {
        out << " - ";
        s.erase(0, 1);
      } else {
        out << " + ";
      }
    }
    if (multi_term && i > 0) s = "(" + s + ")";
    if (i == 0 || !(s == "1")) out << s;
    if (i == 1) out << "z";
    if (i > 1) out << "z^{" << i << "}";
    first = false;
  }
  return out.str();
}

inline std::string latex_ratfunc(const RatFunc<NFElem>& f) {
  RatFunc<NFElem> g = f.normalized();
  if (g.is_zero()) return "0";
  if (g.den.degree() == 0 && nf_is_one(g.den.c[0])) return latex_poly(g.num);
  return "\\frac{" + latex_poly(g.num) + "}{" + latex_poly(g.den) + "}";
}

}  // namespace heckerpf
