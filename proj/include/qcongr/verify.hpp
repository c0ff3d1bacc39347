#pragma once

// Named congruence checks evaluated in Q[q]/(Phi_n^e), and sweeps over odd n.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcongr/poly_io.hpp"
#include "qcongr/qobjects.hpp"
#include "qcongr/rational_function.hpp"
#include "qcongr/residue.hpp"

namespace qcongr {

/// Which power of -1 a closed form carries.
enum class SignParity {
  none,        // no signed monomial at all
  plus,        // +1
  n_minus_1,   // (-1)^{(n-1)/2}
  n_plus_1,    // (-1)^{(n+1)/2}
};

/// Exponent (a2 n^2 + a1 n + a0) / 4.
struct QuarterQuadratic {
  long a2 = 0;
  long a1 = 0;
  long a0 = 0;

  Exponent at(long n) const {
    const long v = a2 * n * n + a1 * n + a0;
    if (v % 4 != 0) throw std::logic_error("closed form exponent is not an integer at n = " + std::to_string(n));
    return v / 4;
  }
};

/// sign * q^exponent + correction * [n]
struct ClosedForm {
  SignParity sign = SignParity::none;
  QuarterQuadratic exponent;
  LaurentPoly correction;  // zero when there is no [n] term
};

enum class LhsKind {
  sum,            // sum_{k<n} (q^a;q^2)_k / (q;q)_k q^{ck}
  poch_quotient,  // (q;q^2)_{n-1} / (q;q)_{n-1}
  central,        // gaussian_binomial(2n-2, n-1)
  neg_poch,       // (-q;q)_{n-1}
  exact_lemma,    // rational-function identity, no modulus
};

struct CongruenceCheck {
  std::string id;
  int e = 1;  // 0 for exact identities
  LhsKind kind = LhsKind::sum;
  Exponent a = 1;
  Exponent c = 1;
  ClosedForm rhs;
};

inline int sign_value(SignParity s, long n) {
  switch (s) {
    case SignParity::none: return 0;
    case SignParity::plus: return 1;
    case SignParity::n_minus_1: return ((n - 1) / 2) % 2 == 0 ? 1 : -1;
    case SignParity::n_plus_1: return ((n + 1) / 2) % 2 == 0 ? 1 : -1;
  }
  return 0;
}

/// The catalog, in report order.
inline const std::vector<CongruenceCheck>& catalog() {
  static const std::vector<CongruenceCheck> checks = [] {
    const LaurentPoly one(1);
    const LaurentPoly q = LaurentPoly::q(1);
    const QuarterQuadratic n2m1{1, 0, -1};
    std::vector<CongruenceCheck> v;
    v.push_back({"GZcon", 1, LhsKind::sum, 1, 1, {SignParity::n_minus_1, n2m1, {}}});
    v.push_back({"guokey", 2, LhsKind::sum, 1, 1, {SignParity::n_minus_1, n2m1, {}}});
    v.push_back({"GGcon1", 1, LhsKind::sum, -1, 1, {SignParity::n_plus_1, n2m1, {}}});
    v.push_back({"GGcon2", 1, LhsKind::sum, 3, 1, {SignParity::n_plus_1, {-1, 6, -9}, {}}});
    v.push_back({"thm1.1a", 2, LhsKind::sum, -1, 1, {SignParity::n_plus_1, n2m1, -(one + q)}});
    v.push_back({"thm1.1b", 2, LhsKind::sum, -1, 2, {SignParity::n_plus_1, {1, 0, 3}, LaurentPoly(-2) * q}});
    v.push_back({"thm1.2a", 2, LhsKind::sum, 1, 2, {SignParity::n_minus_1, {1, 0, -5}, one - LaurentPoly::q(-1)}});
    v.push_back({"thm1.2b", 2, LhsKind::sum, 3, 1,
                 {SignParity::n_plus_1, {1, 0, -9}, LaurentPoly::q(-2) + LaurentPoly::q(-1)}});
    v.push_back({"lemma2.2", 2, LhsKind::poch_quotient, 1, 0, {SignParity::none, {}, -q}});
    v.push_back({"aux-central", 2, LhsKind::central, 0, 0, {SignParity::none, {}, -q}});
    v.push_back({"aux-negpoch", 1, LhsKind::neg_poch, 0, 0, {SignParity::plus, {}, {}}});
    v.push_back({"aux-exact-lemma22", 0, LhsKind::exact_lemma, 0, 0, {}});
    return v;
  }();
  return checks;
}

inline const CongruenceCheck& find_check(const std::string& id) {
  for (const auto& c : catalog())
    if (c.id == id) return c;
  throw std::invalid_argument("unknown check id: " + id);
}

/// Shares moduli, and with them the cached inverses of 1 - q^k, across checks.
class ModulusPool {
 public:
  ModulusPtr get(long n, int e) {
    auto key = std::pair(n, e);
    auto it = pool_.find(key);
    if (it == pool_.end()) it = pool_.emplace(key, make_modulus(n, e)).first;
    return it->second;
  }

 private:
  std::map<std::pair<long, int>, ModulusPtr> pool_;
};

namespace detail {

// 1 - q^j for any signed j, as a residue.
inline Residue one_minus_q_power(const ModulusPtr& m, Exponent j) {
  if (j >= 0) {
    ZPoly c(static_cast<std::size_t>(j) + 1);
    c[0] += 1;
    c[static_cast<std::size_t>(j)] -= 1;
    m->reduce_in_place(c);
    return Residue(m, {std::move(c), 1});
  }
  return reduce(m, LaurentPoly(1) - LaurentPoly::q(j));
}

inline Residue unit_residue(const ModulusPtr& m) { return Residue(m, {ZPoly{mpz_class(1)}, 1}); }

}  // namespace detail

/// sum_{k=0}^{n-1} (q^a;q^s)_k / (q;q)_k q^{ck}, each term obtained from
/// the previous one by the ratio (1 - q^{a+s(k-1)}) q^c / (1 - q^k).
inline Residue lhs_sum(const ModulusPtr& m, long n, Exponent a, Exponent c, Exponent s = 2) {
  if (n < 1) throw std::invalid_argument("lhs_sum: n must be positive");
  const Residue qc = q_power(m, c);
  Residue term = detail::unit_residue(m);
  Residue total = term;
  for (long k = 1; k < n; ++k) {
    term = term * detail::one_minus_q_power(m, a + s * (k - 1)) * qc;
    if (term.is_zero()) break;  // (q^a;q^s)_k vanished, and so do all later terms
    term = term * Residue(m, m->one_minus_q_power_inverse(k));
    total += term;
  }
  return total;
}

/// Same sum with every term built from scratch; an oracle for lhs_sum.
inline Residue lhs_sum_naive(const ModulusPtr& m, long n, Exponent a, Exponent c, Exponent s = 2) {
  Residue total(m, {});
  for (long k = 0; k < n; ++k) {
    Residue num = reduce(m, pochhammer({1, a, s, k}));
    Residue den = reduce(m, q_factorial(k));
    total += num * den.inverse() * q_power(m, c * k);
  }
  return total;
}

inline Residue rhs_value(const ModulusPtr& m, long n, const ClosedForm& form) {
  Residue out(m, {});
  const int sign = sign_value(form.sign, n);
  if (sign != 0) out += reduce(m, LaurentPoly(sign) * LaurentPoly::q(form.exponent.at(n)));
  if (!form.correction.is_zero()) out += reduce(m, form.correction * q_integer(n));
  return out;
}

struct CellResult {
  std::string check;
  long n = 0;
  int e = 0;
  bool pass = false;
  json lhs;
  json rhs;
};

inline json to_json(const CellResult& r) {
  return json{{"check", r.check}, {"n", r.n}, {"e", r.e}, {"status", r.pass ? "pass" : "fail"},
              {"lhs", r.lhs}, {"rhs", r.rhs}};
}

inline void require_odd_n(long n) {
  if (n <= 1 || n % 2 == 0) throw std::invalid_argument("n must be an odd integer greater than 1, got " + std::to_string(n));
}

namespace detail {

inline CellResult exact_lemma_cell(const CongruenceCheck& chk, long n) {
  const Exponent k = n - 1;
  RationalFunction lhs = RationalFunction::make(pochhammer({1, 1, 2, k}), q_factorial(k));
  RationalFunction rhs = RationalFunction(gaussian_binomial(2 * k, k)) * RationalFunction::make(1, pochhammer({-1, 1, 1, k}));
  return {chk.id, n, 0, lhs == rhs, qcongr::to_json(lhs), qcongr::to_json(rhs)};
}

inline Residue lhs_value(const ModulusPtr& m, long n, const CongruenceCheck& chk) {
  const Exponent k = n - 1;
  switch (chk.kind) {
    case LhsKind::sum: return lhs_sum(m, n, chk.a, chk.c);
    case LhsKind::poch_quotient: return reduce(m, pochhammer({1, 1, 2, k})) * reduce(m, q_factorial(k)).inverse();
    case LhsKind::central: return reduce(m, gaussian_binomial(2 * k, k));
    case LhsKind::neg_poch: return reduce(m, pochhammer({-1, 1, 1, k}));
    case LhsKind::exact_lemma: break;
  }
  throw std::logic_error("lhs_value: exact identities have no residue");
}

}  // namespace detail

/// The exact factorization behind the central-quotient congruence, for any n >= 1:
/// (q;q^2)_{n-1} / (q;q)_{n-1} = (q;q)_{2n-2} / ((-q;q)_{n-1} (q;q)_{n-1}^2).
inline CellResult check_exact_factorization(long n) {
  if (n < 1) throw std::invalid_argument("check_exact_factorization: n must be positive");
  return detail::exact_lemma_cell(find_check("aux-exact-lemma22"), n);
}

/// Runs one check at odd n > 1. e overrides the stated modulus power.
inline CellResult check_with(const CongruenceCheck& chk, long n, ModulusPool& pool, std::optional<int> e = std::nullopt) {
  require_odd_n(n);
  if (chk.kind == LhsKind::exact_lemma) return detail::exact_lemma_cell(chk, n);
  const int power = e.value_or(chk.e);
  ModulusPtr m = pool.get(n, power);
  Residue lhs = detail::lhs_value(m, n, chk);
  Residue rhs = rhs_value(m, n, chk.rhs);
  return {chk.id, n, power, lhs == rhs, to_json(lhs.rep()), to_json(rhs.rep())};
}

inline CellResult check(const std::string& id, long n, std::optional<int> e = std::nullopt) {
  ModulusPool pool;
  return check_with(find_check(id), n, pool, e);
}

/// All cells for ids x odd n in [3, n_max], ordered by id (as given) then n.
inline std::vector<CellResult> sweep(const std::vector<std::string>& ids, long n_max, std::optional<int> e = std::nullopt) {
  std::vector<const CongruenceCheck*> checks;
  for (const auto& id : ids) {
    const CongruenceCheck* c = &find_check(id);
    if (std::find(checks.begin(), checks.end(), c) == checks.end()) checks.push_back(c);
  }
  std::vector<CellResult> out;
  ModulusPool pool;
  for (const auto* c : checks)
    for (long n = 3; n <= n_max; n += 2) out.push_back(check_with(*c, n, pool, e));
  return out;
}

inline std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const auto& c : catalog()) ids.push_back(c.id);
  return ids;
}

inline std::string render_table(const std::vector<CellResult>& cells) {
  std::ostringstream os;
  std::size_t width = 5;
  for (const auto& c : cells) width = std::max(width, c.check.size());
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  os << pad("check", width) << "  " << pad("n", 4) << "  e  status\n";
  std::size_t failures = 0;
  for (const auto& c : cells) {
    os << pad(c.check, width) << "  " << pad(std::to_string(c.n), 4) << "  " << c.e << "  " << (c.pass ? "pass" : "FAIL")
       << "\n";
    if (!c.pass) {
      ++failures;
      os << "    lhs: " << c.lhs.dump() << "\n    rhs: " << c.rhs.dump() << "\n";
    }
  }
  os << cells.size() - failures << "/" << cells.size() << " cells passed\n";
  return os.str();
}

}  // namespace qcongr
