#pragma once

// Telescoping of q-hypergeometric sums driven by a term ratio.
//
// A family F(k) is given by F(0) and the ratio F(k)/F(k-1) = S(k)/T(k),
// where S and T depend on k only through x = q^k. Summing
// F(k)T(k) = F(k-1)S(k) over k = 1..n gives
//
//   sum_{k=0}^{n} (T(k) - S(k+1)) F(k) = F(0)T(0) - F(n)S(n+1),
//
// so the weight R = T - S(k+1) has a closed-form weighted sum.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcongr/laurent_poly.hpp"
#include "qcongr/poly_io.hpp"
#include "qcongr/qobjects.hpp"
#include "qcongr/rational_function.hpp"

namespace qcongr {

struct ZeroRatioDenominator : std::domain_error {
  using std::domain_error::domain_error;
};

/// Laurent polynomial in q and x = q^k. Terms are sorted by
/// (exponent of q, exponent of x) and never zero.
class BiLaurent {
 public:
  struct Term {
    Exponent q_exp;
    Exponent x_exp;
    Rat coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  BiLaurent() = default;
  BiLaurent(long c) { *this = from_terms({{0, 0, Rat(c)}}); }  // NOLINT(google-explicit-constructor)

  static BiLaurent from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return std::pair(a.q_exp, a.x_exp) < std::pair(b.q_exp, b.x_exp);
    });
    BiLaurent r;
    for (auto& t : terms) {
      if (!r.terms_.empty() && r.terms_.back().q_exp == t.q_exp && r.terms_.back().x_exp == t.x_exp) {
        r.terms_.back().coeff += t.coeff;
      } else {
        r.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(r.terms_, [](const Term& t) { return sgn(t.coeff) == 0; });
    return r;
  }

  /// c q^a x^b
  static BiLaurent monomial(const Rat& c, Exponent q_exp, Exponent x_exp) { return from_terms({{q_exp, x_exp, c}}); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// k -> k + 1, i.e. x -> q x.
  BiLaurent shift_k() const {
    std::vector<Term> t = terms_;
    for (auto& term : t) term.q_exp += term.x_exp;
    return from_terms(std::move(t));
  }

  /// Substitutes x = q^k.
  LaurentPoly instantiate(Exponent k) const {
    std::vector<LaurentPoly::Term> t;
    t.reserve(terms_.size());
    for (const auto& term : terms_) t.emplace_back(term.q_exp + term.x_exp * k, term.coeff);
    return LaurentPoly::from_terms(std::move(t));
  }

  BiLaurent operator-() const {
    BiLaurent r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend BiLaurent operator+(const BiLaurent& a, const BiLaurent& b) {
    std::vector<Term> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return from_terms(std::move(t));
  }
  friend BiLaurent operator-(const BiLaurent& a, const BiLaurent& b) { return a + (-b); }
  friend bool operator==(const BiLaurent& a, const BiLaurent& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<Term> terms_;
};

/// Summand weight R(k) = T(k) - S(k+1).
inline BiLaurent weight(const BiLaurent& S, const BiLaurent& T) { return T - S.shift_k(); }

inline std::string to_text(const BiLaurent& b) {
  if (b.is_zero()) return "0";
  // Ordered by x exponent first so the k-dependence reads naturally.
  std::vector<BiLaurent::Term> t = b.terms();
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& c) {
    return std::pair(a.x_exp, a.q_exp) < std::pair(c.x_exp, c.q_exp);
  });
  std::string out;
  for (const auto& term : t) {
    std::string mono = detail::power_text('q', term.q_exp);
    std::string xs = detail::power_text('x', term.x_exp);
    if (!xs.empty()) mono = mono.empty() ? xs : mono + " " + xs;
    detail::append_term(out, term.coeff, mono);
  }
  return out;
}

inline json to_json(const BiLaurent& b) {
  json arr = json::array();
  for (const auto& t : b.terms()) arr.push_back(json::array({t.q_exp, t.x_exp, rat_to_string(t.coeff)}));
  return arr;
}

inline BiLaurent bilaurent_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("bivariate polynomial JSON must be an array of [e_q, e_x, \"num/den\"]");
  std::vector<BiLaurent::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() || !t[2].is_string())
      throw std::invalid_argument("bivariate term must be [e_q, e_x, \"num/den\"]");
    terms.push_back({t[0].get<Exponent>(), t[1].get<Exponent>(), rat_from_string(t[2].get<std::string>())});
  }
  return BiLaurent::from_terms(std::move(terms));
}

/// q-hypergeometric term family: F(0) = F0, F(k) = F(k-1) S(k) / T(k).
struct TermFamily {
  std::string name;
  RationalFunction F0;
  BiLaurent S;
  BiLaurent T;
};

inline json to_json(const TermFamily& f) {
  return json{{"name", f.name}, {"F0", to_json(f.F0)}, {"S", to_json(f.S)}, {"T", to_json(f.T)}};
}

inline TermFamily family_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("family file must hold a JSON object");
  for (const char* key : {"name", "F0", "S", "T"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("family file is missing \"") + key + "\"");
  if (!j.at("name").is_string()) throw std::invalid_argument("family \"name\" must be a string");
  TermFamily f{j.at("name").get<std::string>(), rf_from_json(j.at("F0")), bilaurent_from_json(j.at("S")),
               bilaurent_from_json(j.at("T"))};
  return f;
}

namespace families {

// x^2 and q^c x^2 shorthands keep the tables readable.
inline BiLaurent one_minus_x() { return BiLaurent::from_terms({{0, 0, 1}, {0, 1, -1}}); }

/// F1(k) = (q^{-1};q^2)_k / (q;q)_k q^k;  (1-q^k)F1(k) = q(1-q^{2k-3})F1(k-1)
inline TermFamily F1() { return {"F1", 1, BiLaurent::from_terms({{1, 0, 1}, {-2, 2, -1}}), one_minus_x()}; }

/// F2(k) = (q^{-1};q^2)_k / (q;q)_k;  (1-q^k)F2(k) = (1-q^{2k-3})F2(k-1)
inline TermFamily F2() { return {"F2", 1, BiLaurent::from_terms({{0, 0, 1}, {-3, 2, -1}}), one_minus_x()}; }

/// G1(k) = (q;q^2)_k / (q;q)_k q^k;  (1-q^k)G1(k) = (q-q^{2k})G1(k-1)
inline TermFamily G1() { return {"G1", 1, BiLaurent::from_terms({{1, 0, 1}, {0, 2, -1}}), one_minus_x()}; }

/// G2(k) = (q;q^2)_k / (q;q)_k;  (1-q^k)G2(k) = (1-q^{2k-1})G2(k-1)
inline TermFamily G2() { return {"G2", 1, BiLaurent::from_terms({{0, 0, 1}, {-1, 2, -1}}), one_minus_x()}; }

/// H1(k) = (q^3;q^2)_k / (q;q)_k q^k;  (1-q^k)H1(k) = (q-q^{2k+2})H1(k-1)
inline TermFamily H1() { return {"H1", 1, BiLaurent::from_terms({{1, 0, 1}, {2, 2, -1}}), one_minus_x()}; }

inline std::vector<TermFamily> builtin() { return {F1(), F2(), G1(), G2()}; }

inline std::optional<TermFamily> find(const std::string& name) {
  for (auto& f : builtin())
    if (f.name == name) return f;
  return std::nullopt;
}

/// Closed form (c q^a; q^2)_k q^{wk} / (q;q)_k behind each built-in family,
/// evaluated directly from the products.
inline RationalFunction closed_form(const std::string& name, Exponent k) {
  Exponent a = 0;
  Exponent w = 0;
  if (name == "F1") a = -1, w = 1;
  else if (name == "F2") a = -1, w = 0;
  else if (name == "G1") a = 1, w = 1;
  else if (name == "G2") a = 1, w = 0;
  else if (name == "H1") a = 3, w = 1;
  else throw std::invalid_argument("closed_form: no closed form registered for family " + name);
  return RationalFunction::make(pochhammer({1, a, 2, k}).shifted(w * k), q_factorial(k));
}

}  // namespace families

/// F(0), ..., F(up_to) by forward recurrence.
inline std::vector<RationalFunction> term_values(const TermFamily& f, Exponent up_to) {
  std::vector<RationalFunction> values{f.F0};
  values.reserve(static_cast<std::size_t>(up_to) + 1);
  for (Exponent k = 1; k <= up_to; ++k) {
    LaurentPoly t = f.T.instantiate(k);
    if (t.is_zero())
      throw ZeroRatioDenominator("family " + f.name + ": T vanishes at k = " + std::to_string(k));
    values.push_back(values.back() * RationalFunction::make(f.S.instantiate(k), t));
  }
  return values;
}

struct BoundaryCertificate {
  Exponent n = 0;
  bool holds = false;
  RationalFunction lhs;  // sum_{k=0}^{n} R(k) F(k)
  RationalFunction rhs;  // F(0) T(0) - F(n) S(n+1)
};

/// Certificates for every n in 0..n_max, accumulating the weighted sum.
inline std::vector<BoundaryCertificate> certify_family(const TermFamily& f, Exponent n_max) {
  const BiLaurent R = weight(f.S, f.T);
  std::vector<RationalFunction> F = term_values(f, n_max);
  const RationalFunction head = f.F0 * RationalFunction(f.T.instantiate(0));
  std::vector<BoundaryCertificate> out;
  RationalFunction sum;
  for (Exponent n = 0; n <= n_max; ++n) {
    const auto& Fn = F[static_cast<std::size_t>(n)];
    sum += RationalFunction(R.instantiate(n)) * Fn;
    RationalFunction rhs = head - Fn * RationalFunction(f.S.instantiate(n + 1));
    out.push_back({n, sum == rhs, sum, rhs});
  }
  return out;
}

inline BoundaryCertificate verify_boundary_identity(const TermFamily& f, Exponent n) {
  if (n < 0) throw std::invalid_argument("verify_boundary_identity: n must be nonnegative");
  return certify_family(f, n).back();
}

/// F(k) T(k) == F(k-1) S(k) for 1 <= k <= k_max.
inline bool verify_ratio_identity(const TermFamily& f, Exponent k_max) {
  std::vector<RationalFunction> F = term_values(f, k_max);
  for (Exponent k = 1; k <= k_max; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (!(F[i] * RationalFunction(f.T.instantiate(k)) == F[i - 1] * RationalFunction(f.S.instantiate(k)))) return false;
  }
  return true;
}

struct IdentityResult {
  std::string name;
  bool holds = false;
  RationalFunction lhs;
  RationalFunction rhs;
};

struct LemmaReport {
  Exponent n = 0;
  std::array<IdentityResult, 4> identities;
  bool all_hold() const {
    return std::all_of(identities.begin(), identities.end(), [](const IdentityResult& r) { return r.holds; });
  }
};

/// The four finite summation identities behind the mod Phi_n^2 results,
/// for each n in 1..n_max. Partial sums are accumulated across n; the
/// right-hand sides are rebuilt from the q-Pochhammer products at every n.
///
///   A: sum G1 + 1/(1-q) sum F1 (1-q^k)         = (q;q^2)_{n-1}/(q;q)_{n-1} q^{n-1}
///   B: 1/(1-q) sum F1 (q-q^k)                  = -(q;q^2)_{n-1}/(q;q)_{n-1}
///   C: (1-q) sum H1 - 1/q sum G1 (1-q^k)       = (q^3;q^2)_{n-1}/(q;q)_{n-1} (q^{n-1}-q^n)
///   D: sum G1 (1-q^{k+1})                      = (1-q)(q^3;q^2)_{n-1}/(q;q)_{n-1}
///
/// with every sum over 0 <= k <= n-1.
inline std::vector<LemmaReport> verify_lemma_identities_upto(Exponent n_max) {
  if (n_max < 1) throw std::invalid_argument("verify_lemma_identities: n must be positive");
  const auto F1 = term_values(families::F1(), n_max - 1);
  const auto G1 = term_values(families::G1(), n_max - 1);
  const auto H1 = term_values(families::H1(), n_max - 1);
  const RationalFunction one_minus_q(LaurentPoly::from_terms({{0, 1}, {1, -1}}));
  const RationalFunction inv_one_minus_q = one_minus_q.inverse();
  const RationalFunction inv_q(LaurentPoly::q(-1));

  RationalFunction sum_G1, sum_F1_a, sum_F1_b, sum_H1, sum_G1_c, sum_G1_d;
  std::vector<LemmaReport> out;
  for (Exponent n = 1; n <= n_max; ++n) {
    const Exponent k = n - 1;
    const auto i = static_cast<std::size_t>(k);
    const LaurentPoly qk = LaurentPoly::q(k);
    sum_G1 += G1[i];
    sum_F1_a += F1[i] * RationalFunction(LaurentPoly(1) - qk);
    sum_F1_b += F1[i] * RationalFunction(LaurentPoly::q(1) - qk);
    sum_H1 += H1[i];
    sum_G1_c += G1[i] * RationalFunction(LaurentPoly(1) - qk);
    sum_G1_d += G1[i] * RationalFunction(LaurentPoly(1) - LaurentPoly::q(k + 1));

    const RationalFunction g2_end = families::closed_form("G2", k);
    const RationalFunction h_end = RationalFunction::make(pochhammer({1, 3, 2, k}), q_factorial(k));

    LemmaReport report;
    report.n = n;
    report.identities[0] = {"A", false, sum_G1 + inv_one_minus_q * sum_F1_a, g2_end * RationalFunction(qk)};
    report.identities[1] = {"B", false, inv_one_minus_q * sum_F1_b, -g2_end};
    report.identities[2] = {"C", false, one_minus_q * sum_H1 - inv_q * sum_G1_c,
                            h_end * RationalFunction(qk - LaurentPoly::q(n))};
    report.identities[3] = {"D", false, sum_G1_d, one_minus_q * h_end};
    for (auto& id : report.identities) id.holds = id.lhs == id.rhs;
    out.push_back(std::move(report));
  }
  return out;
}

inline LemmaReport verify_lemma_identities(Exponent n) { return verify_lemma_identities_upto(n).back(); }

/// Generic form of the rearranged sums used in the proofs:
/// sum_{k<n} S(k+1)F(k) - sum_{k<n} T(k)F(k) = S(n)F(n-1) - T(0)F(0).
inline bool verify_rearranged_sum(const TermFamily& f, Exponent n) {
  if (n < 1) throw std::invalid_argument("verify_rearranged_sum: n must be positive");
  std::vector<RationalFunction> F = term_values(f, n - 1);
  RationalFunction lhs;
  for (Exponent k = 0; k < n; ++k) {
    const auto& Fk = F[static_cast<std::size_t>(k)];
    lhs += Fk * RationalFunction(f.S.instantiate(k + 1) - f.T.instantiate(k));
  }
  RationalFunction rhs = F.back() * RationalFunction(f.S.instantiate(n)) - f.F0 * RationalFunction(f.T.instantiate(0));
  return lhs == rhs;
}

/// The intermediate identities of the proofs, each in the exact form it is
/// stated, for n = 1..n_max. Sums run over 0 <= k <= n-1.
inline std::vector<std::vector<IdentityResult>> verify_stated_rearrangements_upto(Exponent n_max) {
  if (n_max < 1) throw std::invalid_argument("verify_stated_rearrangements: n must be positive");
  const auto F1 = term_values(families::F1(), n_max - 1);
  const auto F2 = term_values(families::F2(), n_max - 1);
  const auto G1 = term_values(families::G1(), n_max - 1);
  const auto G2 = term_values(families::G2(), n_max - 1);
  auto rf = [](const LaurentPoly& p) { return RationalFunction(p); };
  const LaurentPoly one(1);
  const LaurentPoly q = LaurentPoly::q(1);

  RationalFunction f1_s, f1_t, g1_s, g1_t, g1_sum, f1_sum, f2_q2k, g2_q2k;
  std::vector<std::vector<IdentityResult>> out;
  for (Exponent n = 1; n <= n_max; ++n) {
    const Exponent k = n - 1;
    const auto i = static_cast<std::size_t>(k);
    const LaurentPoly qk = LaurentPoly::q(k);
    f1_s += rf(q * (one - LaurentPoly::q(2 * k - 1))) * F1[i];
    f1_t += rf(one - qk) * F1[i];
    g1_s += rf(q * (one - LaurentPoly::q(2 * k + 1))) * G1[i];
    g1_t += rf(one - qk) * G1[i];
    g1_sum += G1[i];
    f1_sum += F1[i];
    f2_q2k += F2[i] * rf(LaurentPoly::q(2 * k));
    g2_q2k += G2[i] * rf(LaurentPoly::q(2 * k));

    const RationalFunction g2_end = G2[i];
    std::vector<IdentityResult> row;
    // sum q(1-q^{2k-1})F1 - sum (1-q^k)F1 = q(1-q^{2n-3})F1(n-1)
    row.push_back({"F1-rearranged", false, f1_s - f1_t, rf(q * (one - LaurentPoly::q(2 * n - 3))) * F1[i]});
    // q(1-q^{2k-1})F1(k) = (q-1)G1(k) at k = n-1
    row.push_back({"F1-to-G1", false, rf(q * (one - LaurentPoly::q(2 * k - 1))) * F1[i], rf(q - one) * G1[i]});
    // q sum (1-q^{2k+1})G1 - sum (1-q^k)G1 = (q-q^{2n})G1(n-1)
    row.push_back({"G1-rearranged", false, g1_s - g1_t, rf(q - LaurentPoly::q(2 * n)) * G1[i]});
    // (1-q)(q^3;q^2)_k = (1-q^{2k+1})(q;q^2)_k at k = n-1
    row.push_back({"q3-shift", false, rf((one - q) * pochhammer({1, 3, 2, k})),
                   rf((one - LaurentPoly::q(2 * k + 1)) * pochhammer({1, 1, 2, k}))});
    // sum G1 + sum F1 = (q;q^2)_{n-1}/(q;q)_{n-1} (1+q^{n-1})
    row.push_back({"thm1-combined", false, g1_sum + f1_sum, g2_end * rf(one + qk)});
    // q sum F2 q^k - sum F2 q^{2k} = (q-1)(q;q^2)_{n-1}/(q;q)_{n-1}
    row.push_back({"thm1-second", false, rf(q) * f1_sum - f2_q2k, rf(q - one) * g2_end});
    // sum G1 - q sum G2 q^{2k} = (1-q^{2n-1})(q;q^2)_{n-1}/(q;q)_{n-1}
    row.push_back({"thm2-combined", false, g1_sum - rf(q) * g2_q2k, rf(one - LaurentPoly::q(2 * n - 1)) * g2_end});
    for (auto& r : row) r.holds = r.lhs == r.rhs;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace qcongr
