// Command-line front end: evaluation, dominance checks, pair generation,
// theorem harnesses, the application solvers and the worked-number tables.
//
// Exit codes: 0 success, 1 a verification or dominance check failed,
// 2 bad usage or input.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "dualrisk/apportionment.hpp"
#include "dualrisk/dominance.hpp"
#include "dualrisk/error.hpp"
#include "dualrisk/harness.hpp"
#include "dualrisk/lottery_io.hpp"
#include "dualrisk/portfolio.hpp"
#include "dualrisk/repro.hpp"
#include "dualrisk/self_protection.hpp"
#include "dualrisk/valuation.hpp"

namespace fs = std::filesystem;
using namespace dualrisk;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

fs::path default_out() {
  if (const char* env = std::getenv("DUALRISK_OUT"); env && *env) return env;
  return ".";
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::DomainError, "cannot write " + path.string());
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty list '" + text + "'");
  return out;
}

// An equally likely lottery from a lottery file: n is the common denominator
// of the probabilities.
EqualProbLottery read_equal_prob(const fs::path& path) {
  const Lottery L = read_lottery_file(path);
  mpz_class n = 1;
  for (const auto& s : L.states()) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), s.probability.get_den_mpz_t());
  if (!n.fits_ulong_p() || n > 100000) throw Error(ErrorCode::DomainError, "probabilities need too many states");
  auto eq = EqualProbLottery::from_lottery(L, n.get_ui());
  if (!eq) throw Error(ErrorCode::DomainError, path.string() + " is not an equally likely lottery");
  return *eq;
}

void print_table(const CsvTable& t, const std::string& format) {
  if (format == "csv") {
    std::cout << t.render();
    return;
  }
  std::vector<std::size_t> width;
  for (const auto& r : t.rows())
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : t.rows()) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    std::cout << line << "\n";
  }
}

void add_value(CsvTable& t, const std::string& item, const std::string& subject, const Number& v) {
  if (v.is_exact())
    t.add_exact(item, subject, v.exact());
  else
    t.add_real(item, subject, v.to_double());
}

struct EvalArgs {
  std::string file;
  std::string weighting = "identity";
  std::string format = "table";
};

int run_eval(const EvalArgs& a) {
  const Lottery L = read_lottery_file(a.file);
  const WeightingSpec w = parse_weighting(a.weighting);
  CsvTable t({"item", "subject", "exact", "decimal"});
  add_value(t, "V", w.to_string(), dt_value(L, w));
  t.add_exact("mean", "", mean(L));
  for (unsigned k = 1; k <= 4; ++k) t.add_exact("dual_moment_" + std::to_string(k), "", dual_moment(L, k));
  for (unsigned k = 2; k <= 4; ++k) t.add_exact("central_moment_" + std::to_string(k), "", primal_moment(L, k));
  print_table(t, a.format);
  return kOk;
}

struct DominanceArgs {
  std::string a, b;
  unsigned degree = 2;
  std::string kind = "dual";
  bool ekern = false;
};

int run_dominance(const DominanceArgs& a) {
  const Lottery A = read_lottery_file(a.a), B = read_lottery_file(a.b);
  const DominanceReport r = a.kind == "dual"
                                ? dual_sd_check(A, B, a.degree)
                                : primal_sd_check(A, B, a.degree, a.ekern ? PrimalVariant::Ekern : PrimalVariant::Plain);
  std::cout << a.kind << " dominance of " << a.b << " over " << a.a << "\n" << to_string(r);
  return r.holds ? kOk : kCheckFailed;
}

struct PairgenArgs {
  unsigned order = 3;
  std::string M = "1";
  std::optional<std::string> M_bad;
  std::optional<std::string> base;
  std::optional<std::string> base_outcomes;
  bool random = false;
  std::uint64_t seed = 42;
  std::optional<std::size_t> n;
  bool parsimonious = false;
  std::size_t position = 0;
  std::string positions = "0,1,0,1";
  std::optional<std::string> gaps_good, gaps_bad;
  std::optional<std::string> replay;
  std::string out;
};

int run_pairgen(const PairgenArgs& a) {
  ApportionmentPair pair = [&] {
    if (a.replay) return replay(parse_provenance(slurp(*a.replay)));
    if (a.random) return random_general_pair(a.seed, a.order, a.n);
    EqualProbLottery base = a.base ? read_equal_prob(*a.base)
                            : a.base_outcomes
                                ? EqualProbLottery::make(parse_list(*a.base_outcomes))
                                : throw Error(ErrorCode::ParseError, "give --base, --base-outcomes, --random or --replay");
    const Rational M = parse_rational(a.M);
    if (M <= 0) throw Error(ErrorCode::DomainError, "M must be positive");
    if (a.parsimonious) return make_parsimonious_pair(base, a.position, a.order, M);
    const Rational M_bad = a.M_bad ? parse_rational(*a.M_bad) : M;
    if (M_bad <= 0) throw Error(ErrorCode::DomainError, "M must be positive");
    const std::vector<Rational> pos = parse_list(a.positions);
    if (pos.size() != 4) throw Error(ErrorCode::ParseError, "--positions needs d_good,d_bad,c_bad,c_good");
    std::vector<std::size_t> idx;
    for (const auto& p : pos) {
      if (p < 0 || p.get_den() != 1) throw Error(ErrorCode::ParseError, "positions are non-negative integers");
      idx.push_back(p.get_num().get_ui());
    }
    const GapSpec gg = a.gaps_good ? parse_gaps(*a.gaps_good) : GapSpec::minimal(a.order);
    const GapSpec gb = a.gaps_bad ? parse_gaps(*a.gaps_bad) : GapSpec::minimal(a.order);
    return make_general_pair(base, a.order, 1 / M, gg, 1 / M_bad, gb, idx[0], idx[1], idx[2], idx[3]);
  }();
  const fs::path dir = a.out.empty() ? default_out() : fs::path(a.out);
  write_file(dir / "C.txt", format_lottery(pair.c_lottery(), "C " + to_string(pair.C)));
  write_file(dir / "D.txt", format_lottery(pair.d_lottery(), "D " + to_string(pair.D)));
  write_file(dir / "provenance.txt", to_string(pair.provenance));
  std::cout << "C=" << to_string(pair.C) << "\nD=" << to_string(pair.D) << "\n" << to_string(pair.provenance);
  return kOk;
}

struct VerifyArgs {
  unsigned theorem = 1;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  std::optional<unsigned> order;
  std::optional<std::string> weighting;
  unsigned grid = 12;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions o;
  o.theorem = a.theorem;
  o.trials = a.trials;
  o.seed = a.seed;
  o.order = a.order;
  o.grid = a.grid;
  if (a.weighting) o.weighting = parse_weighting(*a.weighting);
  const VerifyReport r = verify_theorem(o);
  std::cout << r.summary() << "\n";
  if (!r.passed()) {
    std::string records;
    for (std::size_t i = 0; i < r.failures.size(); ++i)
      records += "# failure " + std::to_string(i + 1) + "\n" + r.failures[i] + "\n";
    const fs::path path = (a.out.empty() ? default_out() : fs::path(a.out)) /
                          ("verify_theorem" + std::to_string(a.theorem) + "_failures.txt");
    write_file(path, records);
    std::cout << records << "replay records written to " << path.string() << "\n";
  }
  return r.passed() ? kOk : kCheckFailed;
}

int run_repro(const std::string& out) {
  for (const auto& path : write_repro(out.empty() ? default_out() : fs::path(out))) std::cout << path.string() << "\n";
  return kOk;
}

struct SelfProtectArgs {
  std::string config;
  std::string format = "csv";
};

int run_selfprotect(const SelfProtectArgs& a) {
  const SelfProtectionConfig cfg = parse_self_protection_config(slurp(a.config));
  const SelfProtectionProblem& sp = cfg.problem;
  CsvTable t({"item", "subject", "exact", "decimal"});
  const std::string subject = cfg.weighting.to_string();
  t.add_text("effort_model", subject, sp.model.to_string());
  t.add_text("case", subject, to_string(sp_case(sp)));
  const BackgroundEffect fx = sp_background_effect(sp, cfg.weighting);
  t.add_real("e_star_with_background_risk", subject, fx.with_risk.e_star);
  t.add_real("e_star_without_background_risk", subject, fx.without_risk.e_star);
  t.add_real("value_at_optimum", subject, fx.with_risk.value);
  t.add_real("loss_probability_at_optimum", subject, fx.with_risk.p_at_opt);
  t.add_real("foc_lhs_at_optimum", subject, fx.with_risk.foc_at_opt);
  t.add_text("optimum_location", subject,
             fx.with_risk.at_lower ? "lower bound" : fx.with_risk.at_upper ? "upper bound" : "interior");
  t.add_text("value_concave_in_effort", subject, fx.with_risk.concave ? "yes" : "no");
  t.add_text("direction", subject, fx.direction > 0 ? "more effort" : fx.direction < 0 ? "less effort" : "unchanged");
  if (fx.shift_at_half)
    t.add_exact("background_shift_term_at_half", subject, *fx.shift_at_half);
  else
    t.add_real("background_shift_term_at_half", subject, fx.shift_at_half_real);
  t.add_real("background_shift_term_at_optimum", subject, fx.shift_at_opt);
  print_table(t, a.format);
  if (fx.with_risk.warning) std::cerr << "warning: " << *fx.with_risk.warning << "\n";
  return kOk;
}

struct PortfolioArgs {
  unsigned order = 3;
  std::optional<std::string> stock_file;
  std::optional<std::string> stock;
  std::optional<std::string> strikes;
  std::string weighting;
  std::string w0 = "1";
  std::string r = "0";
  std::optional<std::string> S0;
  std::string format = "table";
};

int run_portfolio(const PortfolioArgs& a) {
  const EqualProbLottery stock = a.stock_file ? read_equal_prob(*a.stock_file)
                                 : a.stock    ? EqualProbLottery::make(parse_list(*a.stock))
                                              : throw Error(ErrorCode::ParseError, "give --stock or --stock-file");
  std::optional<std::vector<Rational>> strikes;
  if (a.strikes) strikes = parse_list(*a.strikes);
  const DerivativeMenu menu = build_menu(a.order, stock, strikes);
  Rational S0 = 0;
  if (a.S0) {
    S0 = parse_rational(*a.S0);
  } else {
    for (const auto& x : stock.outcomes()) S0 += x;
    S0 /= static_cast<long>(stock.size());
  }
  const PortfolioProblem pp{parse_rational(a.w0), parse_rational(a.r), S0, stock};
  const WeightingSpec w = a.weighting.empty() ? WeightingSpec::dual_power(a.order) : parse_weighting(a.weighting);
  CsvTable t({"item", "subject", "exact", "decimal"});
  t.add_text("menu", "", menu.to_string());
  t.add_text("portfolio_prices", "", to_string(portfolio_prices(stock, menu)));
  add_value(t, "value_stock_return", w.to_string(), portfolio_value(pp, {}, w));
  add_value(t, "value_supplemented_return", w.to_string(), portfolio_value(pp, menu, w));
  t.add_exact("alpha_stock_only", w.to_string(), optimal_alpha(pp, {}, w).alpha);
  t.add_exact("alpha_with_menu", w.to_string(), optimal_alpha(pp, menu, w).alpha);
  print_table(t, a.format);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dualrisk: dual-theory lottery evaluation, dominance and risk apportionment"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"csv", "table"};

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "Value and moments of a lottery file");
  c_eval->add_option("file", eval.file, "Lottery file")->required()->check(CLI::ExistingFile);
  c_eval->add_option("-w,--weighting", eval.weighting, "Weighting function, e.g. quadratic:beta=1/2");
  c_eval->add_option("--format", eval.format)->check(CLI::IsMember(formats));

  DominanceArgs dom;
  auto* c_dom = app.add_subcommand("dominance", "Does B dominate A? Exit 1 when it does not");
  c_dom->add_option("a", dom.a, "Lottery file A")->required()->check(CLI::ExistingFile);
  c_dom->add_option("b", dom.b, "Lottery file B")->required()->check(CLI::ExistingFile);
  c_dom->add_option("-m,--degree", dom.degree)->check(CLI::Range(1u, 64u));
  c_dom->add_option("--kind", dom.kind)->check(CLI::IsMember({"primal", "dual"}));
  c_dom->add_flag("--ekern", dom.ekern, "Primal variant with equal raw moments instead of endpoint conditions");

  PairgenArgs pg;
  auto* c_pg = app.add_subcommand("pairgen", "Write an apportionment pair C, D and its provenance");
  c_pg->add_option("-m,--order", pg.order)->check(CLI::Range(2u, 64u));
  c_pg->add_option("--M", pg.M, "Block size is 1/M");
  c_pg->add_option("--M-bad", pg.M_bad, "Bad block size is 1/M-bad (default: --M)");
  auto* o_base = c_pg->add_option("--base", pg.base, "Equally likely base lottery file")->check(CLI::ExistingFile);
  auto* o_list = c_pg->add_option("--base-outcomes", pg.base_outcomes, "Base outcomes, e.g. 1,2,4");
  auto* o_random = c_pg->add_flag("--random", pg.random, "Random base, blocks and positions");
  c_pg->add_option("--seed", pg.seed);
  c_pg->add_option("--n", pg.n, "Number of base states for --random");
  c_pg->add_flag("--parsimonious", pg.parsimonious, "C = base, D = base + G + B at --position");
  c_pg->add_option("--position", pg.position, "States before the block (parsimonious)");
  c_pg->add_option("--positions", pg.positions, "d_good,d_bad,c_bad,c_good");
  c_pg->add_option("--gaps-good", pg.gaps_good, "Recursion shifts of G, e.g. 1,2");
  c_pg->add_option("--gaps-bad", pg.gaps_bad, "Recursion shifts of B");
  auto* o_replay = c_pg->add_option("--replay", pg.replay, "Provenance file to rebuild")->check(CLI::ExistingFile);
  c_pg->add_option("-o,--out", pg.out, "Output directory (default $DUALRISK_OUT or .)");
  o_base->excludes(o_list)->excludes(o_random)->excludes(o_replay);
  o_list->excludes(o_random)->excludes(o_replay);
  o_random->excludes(o_replay);

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Randomized check of a direct (odd) or converse (even) theorem");
  c_ver->add_option("-t,--theorem", ver.theorem)->required()->check(CLI::Range(1u, 6u));
  c_ver->add_option("--trials", ver.trials)->check(CLI::PositiveNumber);
  c_ver->add_option("--seed", ver.seed);
  c_ver->add_option("--order", ver.order, "Order for theorems 5 and 6 (default 5)")->check(CLI::Range(2u, 12u));
  c_ver->add_option("-w,--weighting", ver.weighting, "Fixed weighting instead of the random family");
  c_ver->add_option("--grid", ver.grid, "Knot grid for converse theorems")->check(CLI::Range(8u, 4096u));
  c_ver->add_option("-o,--out", ver.out, "Directory for failure records");

  std::string repro_out;
  auto* c_rep = app.add_subcommand("repro", "Write the worked-number tables as CSV");
  c_rep->add_option("-o,--out", repro_out, "Output directory (default $DUALRISK_OUT or .)");

  SelfProtectArgs spa;
  auto* c_sp = app.add_subcommand("selfprotect", "Optimal self-protection effort with and without background risk");
  c_sp->add_option("config", spa.config, "key = value problem file")->required()->check(CLI::ExistingFile);
  c_sp->add_option("--format", spa.format)->check(CLI::IsMember(formats));

  PortfolioArgs pf;
  auto* c_pf = app.add_subcommand("portfolio", "Derivative menu improving a stock at order 2, 3 or 4");
  c_pf->add_option("-m,--order", pf.order)->check(CLI::Range(2u, 4u));
  c_pf->add_option("--stock", pf.stock, "Equally likely stock prices, e.g. 1,3,5,7");
  c_pf->add_option("--stock-file", pf.stock_file)->check(CLI::ExistingFile);
  c_pf->add_option("--strikes", pf.strikes, "Strikes overriding the defaults");
  c_pf->add_option("-w,--weighting", pf.weighting, "Default dualpower:m=<order>");
  c_pf->add_option("--w0", pf.w0);
  c_pf->add_option("--r", pf.r, "Risk-free return");
  c_pf->add_option("--S0", pf.S0, "Initial price (default: mean stock price)");
  c_pf->add_option("--format", pf.format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*c_eval) return run_eval(eval);
    if (*c_dom) return run_dominance(dom);
    if (*c_pg) return run_pairgen(pg);
    if (*c_ver) return run_verify(ver);
    if (*c_rep) return run_repro(repro_out);
    if (*c_sp) return run_selfprotect(spa);
    if (*c_pf) return run_portfolio(pf);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
