#pragma once

// The piecewise map Phi_p on positive hyperbolic numbers, its induced map on
// simple forms, cycle detection (the sets Z_A), irreducible pole sets, and a
// word-length-bounded class enumerator.

#include "heckerpf/heckealg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heckerpf {

inline std::string nf_to_string(const NFElem& x) {
  std::string s;
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    if (i) s += ",";
    s += rat_to_string(x.coeffs()[i]);
  }
  return s;
}

// Scale-invariant serialization of a form: [1, B/A, C/A].  Forms found by
// the enumerator may differ by a positive scalar from the canonical
// primitive ones (g = 1 for p > 3), so tags must not depend on the scale.
inline std::string form_tag(const BQF& q) {
  NFElem ainv = q.A.inverse();
  return nf_to_string(q.B * ainv) + "|" + nf_to_string(q.C * ainv);
}

// Cycle Z_A of simple forms, ordered so that successive associated numbers
// satisfy alpha_{i+1} = U^{j_i} T alpha_i (indices mod length), the relation
// of the irreducible-pole-set construction.
struct Cycle {
  std::vector<BQF> forms;
  std::vector<int> exponents;  // j_i in 1..p-1
  std::string class_tag;       // lexicographic minimum of the members' form_tag
  NFElem discriminant;
  std::optional<bool> symmetric;

  size_t length() const { return forms.size(); }

  std::vector<QElem> alphas() const {
    std::vector<QElem> out;
    out.reserve(forms.size());
    for (const auto& f : forms) out.push_back(alpha_of(f));
    return out;
  }
};

// Phi_p(x) = T U^n x for the unique n in 1..p-1 with positive image.
inline std::pair<int, QElem> phi(const std::shared_ptr<const NFContext>& ctx, const QElem& x) {
  if (q_sign(x) <= 0) throw std::invalid_argument("phi: x must be positive");
  const auto T = generators(ctx).T;
  std::optional<std::pair<int, QElem>> hit;
  for (int n = 1; n < ctx->p; ++n) {
    QElem y = moebius(T * u_power(ctx, n), x);
    if (q_sign(y) > 0) {
      if (hit) throw std::logic_error("phi: multiple positive branches (input not hyperbolic?)");
      hit = {n, y};
    }
  }
  if (!hit) throw std::logic_error("phi: no positive branch (input parabolic or invalid)");
  return *hit;
}

// Form-level step: Qhat = Q o V with V = (T U^n)^-1, so that
// alpha(Qhat) = T U^n alpha(Q) = Phi_p(alpha(Q)).
inline std::pair<int, BQF> phi_on_form(const std::shared_ptr<const NFContext>& ctx, const BQF& q) {
  if (!is_simple(q)) throw std::invalid_argument("phi_on_form: form is not simple");
  auto [n, y] = phi(ctx, alpha_of(q));
  Mat2 V = (generators(ctx).T * u_power(ctx, n)).inverse();
  BQF qhat = act(q, V);
  if (!is_simple(qhat) || alpha_of(qhat) != y)
    throw std::logic_error("phi_on_form: form/number correspondence violated");
  return {n, std::move(qhat)};
}

constexpr size_t kDefaultCycleCap = 1000000;

// Iterate phi_on_form until the seed recurs; package as a Cycle.
inline Cycle cycle_from(const std::shared_ptr<const NFContext>& ctx, const BQF& seed,
                        size_t iteration_cap = kDefaultCycleCap) {
  if (!is_simple(seed)) throw std::invalid_argument("cycle_from: seed is not simple");
  std::vector<BQF> orbit{seed};
  std::vector<int> branch;  // n_t with x_{t+1} = T U^{n_t} x_t
  for (;;) {
    if (orbit.size() > iteration_cap)
      throw std::runtime_error("cycle_from: iteration cap exceeded (corrupted or non-simple input?)");
    auto [n, next] = phi_on_form(ctx, orbit.back());
    branch.push_back(n);
    if (next == seed) break;
    orbit.push_back(std::move(next));
  }
  const size_t r = orbit.size();

  Cycle cyc;
  cyc.discriminant = seed.D;
  // Reverse the Phi orbit so successive entries satisfy alpha_{i+1} = U^j T alpha_i:
  // x_t = U^{p - n_t} T x_{t+1} inverts each Phi step.
  cyc.forms.reserve(r);
  cyc.forms.push_back(orbit[0]);
  for (size_t v = 1; v < r; ++v) cyc.forms.push_back(orbit[r - v]);
  cyc.exponents.reserve(r);
  for (size_t v = 0; v < r; ++v) cyc.exponents.push_back(ctx->p - branch[r - 1 - v]);

  cyc.class_tag = form_tag(cyc.forms[0]);
  for (size_t i = 1; i < r; ++i) cyc.class_tag = std::min(cyc.class_tag, form_tag(cyc.forms[i]));
  return cyc;
}

// Irreducible pole set Z_A u T Z_A attached to the class of a simple form.
struct PoleSet {
  std::vector<QElem> positives;  // Z_A
  std::vector<QElem> negatives;  // T Z_A = {-1/alpha}
};

inline PoleSet irreducible_pole_set(const std::shared_ptr<const NFContext>& ctx, const BQF& q) {
  Cycle cyc = cycle_from(ctx, q);
  PoleSet ps;
  const auto T = generators(ctx).T;
  for (const auto& f : cyc.forms) {
    QElem a = alpha_of(f);
    QElem ta = moebius(T, a);
    if (q_sign(ta) >= 0) throw std::logic_error("irreducible_pole_set: T-image not negative");
    ps.positives.push_back(std::move(a));
    ps.negatives.push_back(std::move(ta));
  }
  return ps;
}

// Simple representative of the class -A: (-Q) o T = [-C, B, -A], which is
// simple whenever Q is.
inline BQF negated_class_representative(const BQF& q) { return BQF(-q.C, q.B, -q.A); }

// Class symmetry -A = A, decided two ways that must agree:
//  (1) compare class tags of the cycles of Q and of the simple -A representative;
//  (2) the set identity Z_A = (T Z_A)' from the negative-pole lemma.
inline bool is_symmetric_class(const std::shared_ptr<const NFContext>& ctx, const BQF& q) {
  Cycle mine = cycle_from(ctx, q);
  Cycle other = cycle_from(ctx, negated_class_representative(q));
  bool by_tag = mine.class_tag == other.class_tag;

  auto as = mine.alphas();
  const auto T = generators(ctx).T;
  bool by_sets = true;
  for (const auto& a : as) {
    QElem candidate = hecke_conjugate(moebius(T, a));
    if (std::none_of(as.begin(), as.end(), [&](const QElem& b) { return b == candidate; })) {
      by_sets = false;
      break;
    }
  }
  if (by_tag != by_sets)
    throw std::logic_error("is_symmetric_class: internal routes disagree");
  return by_tag;
}

// Enumerate classes reachable from group words U^{j_r} T ... U^{j_1} T with
// r <= word_len blocks; returns deduplicated cycles sorted by class_tag.
// This is a search heuristic: completeness at a given discriminant is not
// certified by the word-length bound.
inline std::vector<Cycle> enumerate_classes(const std::shared_ptr<const NFContext>& ctx,
                                            int word_len) {
  if (word_len < 1) throw std::invalid_argument("enumerate_classes: word_len must be >= 1");
  const auto T = generators(ctx).T;
  std::vector<Mat2> blocks;  // U^j T for j = 1..p-1
  for (int j = 1; j < ctx->p; ++j) blocks.push_back(u_power(ctx, j) * T);

  std::map<std::string, Cycle> found;
  std::set<std::string> seen_forms;

  auto visit = [&](const Mat2& m) {
    if (classify(m) != MatClass::hyperbolic) return;
    for (Branch br : {Branch::plus, Branch::minus}) {
      BQF q = form_from_matrix(m, br);
      if (!is_simple(q)) continue;
      if (seen_forms.count(form_tag(q))) continue;
      Cycle cyc = cycle_from(ctx, q);
      for (const auto& f : cyc.forms) seen_forms.insert(form_tag(f));
      if (!found.count(cyc.class_tag)) {
        cyc.symmetric = is_symmetric_class(ctx, cyc.forms[0]);
        found.emplace(cyc.class_tag, std::move(cyc));
      }
    }
  };

  auto rec = [&](auto&& self, const Mat2& prefix, int depth) -> void {
    if (depth == word_len) return;
    for (const auto& blk : blocks) {
      Mat2 m = prefix * blk;
      visit(m);
      self(self, m, depth + 1);
    }
  };
  rec(rec, identity_mat(ctx), 0);

  std::vector<Cycle> out;
  out.reserve(found.size());
  for (auto& [tag, cyc] : found) out.push_back(std::move(cyc));
  return out;
}

}  // namespace heckerpf
