#pragma once

// Command-line front end. Results go to the output stream (one JSON
// object per line with --format json), diagnostics to the error stream.
// Exit codes: 0 every cell passed, 1 some check failed, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qcongr/padic.hpp"
#include "qcongr/poly_io.hpp"
#include "qcongr/qobjects.hpp"
#include "qcongr/telescope.hpp"
#include "qcongr/verify.hpp"

namespace qcongr::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct VerifyConfig {
  bool all = false;
  std::vector<std::string> checks;
  std::vector<long> n;
  long n_max = 99;
  std::optional<int> e;
  std::string format = "table";
};

struct TelescopeConfig {
  std::string family;
  std::string family_file;
  long n = 10;
  std::string format = "table";
};

struct CorollaryConfig {
  std::string which;
  std::vector<unsigned long> p;
  unsigned long p_max = 0;
  std::vector<unsigned long> r{1};
  std::optional<unsigned long> cap;
  std::string sign_base = "p";
  std::string format = "table";
};

inline int cmd_verify(const VerifyConfig& cfg, std::ostream& out) {
  std::vector<std::string> ids = cfg.all ? catalog_ids() : cfg.checks;
  if (ids.empty()) throw UsageError("verify: pass --all or at least one --check");
  for (const auto& id : ids) find_check(id);  // rejects unknown ids before any work
  if (cfg.e && *cfg.e < 1) throw UsageError("verify: --e must be positive");

  std::vector<CellResult> cells;
  if (cfg.n.empty()) {
    if (cfg.n_max < 3) throw UsageError("verify: --n-max must be at least 3");
    cells = sweep(ids, cfg.n_max, cfg.e);
  } else {
    for (long n : cfg.n) require_odd_n(n);
    std::vector<long> ns = cfg.n;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    ModulusPool pool;
    std::vector<std::string> seen;
    for (const auto& id : ids) {
      if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
      seen.push_back(id);
      for (long n : ns) cells.push_back(check_with(find_check(id), n, pool, cfg.e));
    }
  }

  if (cfg.format == "json") {
    for (const auto& c : cells) out << to_json(c).dump() << '\n';
  } else {
    out << render_table(cells);
  }
  const bool ok = std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.pass; });
  return ok ? kExitPass : kExitFail;
}

inline TermFamily load_family(const TelescopeConfig& cfg) {
  if (!cfg.family.empty() && !cfg.family_file.empty())
    throw UsageError("telescope: pass either --family or --family-file, not both");
  if (!cfg.family_file.empty()) {
    std::ifstream in(cfg.family_file);
    if (!in) throw UsageError("telescope: cannot open family file " + cfg.family_file);
    json j;
    try {
      j = json::parse(in);
      return family_from_json(j);
    } catch (const json::exception& e) {
      throw UsageError(std::string("telescope: malformed family file: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("telescope: malformed family file: ") + e.what());
    } catch (const ZeroDenominator& e) {
      throw UsageError(std::string("telescope: malformed family file: ") + e.what());
    }
  }
  if (cfg.family.empty()) throw UsageError("telescope: pass --family NAME or --family-file PATH");
  auto f = families::find(cfg.family);
  if (!f) throw UsageError("telescope: unknown family " + cfg.family + " (built in: F1, F2, G1, G2)");
  return *f;
}

inline int cmd_telescope(const TelescopeConfig& cfg, std::ostream& out) {
  if (cfg.n < 0) throw UsageError("telescope: --n must be nonnegative");
  const TermFamily f = load_family(cfg);
  std::vector<BoundaryCertificate> certs;
  try {
    certs = certify_family(f, cfg.n);
  } catch (const ZeroRatioDenominator& e) {
    throw UsageError(std::string("telescope: ") + e.what());
  }
  const BiLaurent R = weight(f.S, f.T);
  bool ok = true;
  if (cfg.format == "json") {
    for (const auto& c : certs) {
      ok = ok && c.holds;
      out << json{{"family", f.name},
                  {"n", c.n},
                  {"status", c.holds ? "certified" : "fail"},
                  {"R", to_json(R)},
                  {"lhs", to_json(c.lhs)},
                  {"rhs", to_json(c.rhs)}}
                 .dump()
          << '\n';
    }
  } else {
    out << "family " << f.name << "  (x = q^k)\n";
    out << "  F(0) = " << to_text(f.F0) << "\n";
    out << "  S    = " << to_text(f.S) << "\n";
    out << "  T    = " << to_text(f.T) << "\n";
    out << "  R    = T(k) - S(k+1) = " << to_text(R) << "\n";
    out << "  sum_{k=0}^{n} R(k) F(k) = F(0) T(0) - F(n) S(n+1)\n";
    for (const auto& c : certs) {
      ok = ok && c.holds;
      out << "  n = " << c.n << ": " << (c.holds ? "certified" : "COUNTEREXAMPLE") << "\n";
      if (!c.holds) out << "    lhs = " << to_text(c.lhs) << "\n    rhs = " << to_text(c.rhs) << "\n";
    }
  }
  return ok ? kExitPass : kExitFail;
}

inline int cmd_corollary(const CorollaryConfig& cfg, std::ostream& out) {
  const Corollary which = [&] {
    try {
      return parse_corollary(cfg.which);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  if (cfg.sign_base != "p" && cfg.sign_base != "pr") throw UsageError("corollary: --sign-base must be p or pr");
  const SignBase base = cfg.sign_base == "p" ? SignBase::prime : SignBase::prime_power;
  std::vector<unsigned long> primes = cfg.p;
  if (cfg.p_max > 0) {
    auto more = odd_primes_upto(cfg.p_max);
    primes.insert(primes.end(), more.begin(), more.end());
  }
  if (primes.empty()) throw UsageError("corollary: pass --p or --p-max");
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<unsigned long> rs = cfg.r;
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  const unsigned long cap = cfg.cap.value_or(default_cap());

  std::vector<PadicResult> results;
  for (unsigned long p : primes)
    for (unsigned long r : rs) {
      try {
        results.push_back(check_corollary(which, p, r, cap, base));
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("corollary: ") + e.what());
      } catch (const CapExceeded& e) {
        throw UsageError(std::string("corollary: ") + e.what());
      }
    }

  bool ok = true;
  for (const auto& res : results) ok = ok && res.pass;
  if (cfg.format == "json") {
    for (const auto& res : results) out << to_json(res).dump() << '\n';
  } else {
    std::size_t passed = 0;
    out << "check    p      r  lhs      rhs      status\n";
    for (const auto& res : results) {
      passed += res.pass;
      std::ostringstream row;
      auto col = [&row](const std::string& s, std::size_t w) {
        row << s << std::string(s.size() < w ? w - s.size() : 1, ' ');
      };
      col(res.check, 9);
      col(std::to_string(res.p), 7);
      col(std::to_string(res.r), 3);
      col(res.lhs.get_str(), 9);
      col(res.rhs.get_str(), 9);
      row << (res.pass ? "pass" : "FAIL");
      if (!res.note.empty()) row << "  (" << res.note << ")";
      out << row.str() << "\n";
    }
    out << passed << "/" << results.size() << " cells passed (mod " << (corollary_power(which) == 1 ? "p" : "p^2")
        << ")\n";
  }
  return ok ? kExitPass : kExitFail;
}

/// Runs the CLI on argv-style arguments (program name excluded).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of q-congruences, telescoping identities and their p-adic shadows", "qcongr"};
  app.require_subcommand(1);

  VerifyConfig vcfg;
  auto* verify = app.add_subcommand("verify", "Check congruences in Q[q]/(Phi_n^e) for odd n");
  verify->add_flag("--all", vcfg.all, "Run every check in the catalog");
  verify->add_option("--check", vcfg.checks, "Check id (repeatable)");
  verify->add_option("--n", vcfg.n, "Explicit odd n values");
  verify->add_option("--n-max", vcfg.n_max, "Sweep odd n from 3 to this bound")->capture_default_str();
  verify->add_option("--e", vcfg.e, "Override the modulus power");
  verify->add_option("--format", vcfg.format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();

  TelescopeConfig tcfg;
  auto* telescope = app.add_subcommand("telescope", "Derive R = T - S(k+1) for a term family and certify the boundary identity");
  telescope->add_option("--family", tcfg.family, "Built-in family: F1, F2, G1, G2");
  telescope->add_option("--family-file", tcfg.family_file, "JSON family definition");
  telescope->add_option("--n", tcfg.n, "Certify for every n from 0 to this bound")->capture_default_str();
  telescope->add_option("--format", tcfg.format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();

  CorollaryConfig ccfg;
  auto* corollary = app.add_subcommand("corollary", "Check the binomial-sum congruences modulo p or p^2");
  corollary->add_option("--which", ccfg.which, "1.1, 1.2 or st")->required();
  corollary->add_option("--p", ccfg.p, "Odd primes");
  corollary->add_option("--p-max", ccfg.p_max, "All odd primes up to this bound");
  corollary->add_option("--r", ccfg.r, "Exponents r (sum length p^r)")->capture_default_str();
  corollary->add_option("--cap", ccfg.cap, "Largest allowed p^r (default 20000 or QCONGR_CAP)");
  corollary->add_option("--sign-base", ccfg.sign_base, "Sign base for 1.1/1.2: p as printed, or pr for p^r")
      ->check(CLI::IsMember({"p", "pr"}))
      ->capture_default_str();
  corollary->add_option("--format", ccfg.format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();

  auto* show = app.add_subcommand("show", "Print q-objects");
  show->require_subcommand(1);
  long show_n = 0;
  long show_m = 0;
  long show_k = 0;
  long poch_a = 1;
  long poch_s = 1;
  std::string poch_c = "1";
  auto* cyclo = show->add_subcommand("cyclotomic", "Phi_N(q)");
  cyclo->add_option("N", show_n)->required();
  auto* qint = show->add_subcommand("qint", "[N] = 1 + q + ... + q^{N-1}");
  qint->add_option("N", show_n)->required();
  auto* gauss = show->add_subcommand("gauss", "Gaussian binomial [M choose K]_q");
  gauss->add_option("M", show_m)->required();
  gauss->add_option("K", show_k)->required();
  auto* poch = show->add_subcommand("poch", "(c q^A; q^S)_K");
  poch->add_option("A", poch_a)->required();
  poch->add_option("S", poch_s)->required();
  poch->add_option("K", show_k)->required();
  poch->add_option("--c", poch_c, "Rational coefficient c")->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "qcongr: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(vcfg, out);
    if (telescope->parsed()) return cmd_telescope(tcfg, out);
    if (corollary->parsed()) return cmd_corollary(ccfg, out);
    if (cyclo->parsed()) {
      if (show_n < 1) throw UsageError("show cyclotomic: N must be positive");
      out << to_text(cyclotomic(show_n)) << "\n";
    } else if (qint->parsed()) {
      if (show_n < 1) throw UsageError("show qint: N must be positive");
      out << to_text(q_integer(show_n)) << "\n";
    } else if (gauss->parsed()) {
      if (show_k < 0 || show_m < 0 || show_k > show_m) throw UsageError("show gauss: need 0 <= K <= M");
      out << to_text(gaussian_binomial(show_m, show_k)) << "\n";
    } else if (poch->parsed()) {
      if (show_k < 0 || poch_s < 1) throw UsageError("show poch: need K >= 0 and S >= 1");
      out << to_text(pochhammer({rat_from_string(poch_c), poch_a, poch_s, show_k})) << "\n";
    }
    return kExitPass;
  } catch (const std::invalid_argument& e) {
    // UsageError, domain filters such as even n, malformed numbers
    err << "qcongr: " << e.what() << "\n";
    return kExitUsage;
  }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace qcongr::cli
