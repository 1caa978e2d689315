#include "dualrisk/repro.hpp"

#include <cmath>
#include <fstream>

#include "dualrisk/apportionment.hpp"
#include "dualrisk/dominance.hpp"
#include "dualrisk/error.hpp"
#include "dualrisk/portfolio.hpp"
#include "dualrisk/self_protection.hpp"
#include "dualrisk/valuation.hpp"

namespace dualrisk {

namespace {

// RFC 4180 quoting, only where a cell needs it.
std::string csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string yes_no(bool b) { return b ? "holds" : "fails"; }

std::string join(const std::vector<Rational>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + to_string(xs[i]);
  return out.empty() ? "none" : out;
}

Lottery lot(std::initializer_list<std::pair<long, Rational>> states) {
  std::vector<State> out;
  for (const auto& [x, p] : states) out.push_back({Rational(x), p});
  return Lottery::make(std::move(out));
}

EqualProbLottery equal(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return EqualProbLottery::make(std::move(out));
}

void add_number(CsvTable& t, const std::string& item, const std::string& subject, const Number& v) {
  if (v.is_exact())
    t.add_exact(item, subject, v.exact());
  else
    t.add_real(item, subject, v.to_double());
}

CsvTable divergence_table() {
  CsvTable t({"item", "subject", "exact", "decimal"});
  const Lottery I = lot({{2, Rational(1, 2)}, {3, Rational(1, 2)}});
  const Lottery A = lot({{0, Rational(1, 6)}, {3, Rational(5, 6)}});
  const Lottery B = lot({{1, Rational(1, 6)}, {2, Rational(1, 2)}, {4, Rational(1, 3)}});
  const std::vector<std::pair<std::string, const Lottery*>> named{{"I", &I}, {"A", &A}, {"B", &B}};
  for (const auto& [name, L] : named) t.add_text("lottery", name, to_string(*L));
  for (const auto& [name, L] : named) {
    t.add_exact("mean", name, mean(*L));
    for (unsigned k = 2; k <= 3; ++k) t.add_exact("central_moment_" + std::to_string(k), name, primal_moment(*L, k));
    for (unsigned k = 2; k <= 3; ++k) t.add_exact("dual_moment_" + std::to_string(k), name, dual_moment(*L, k));
  }
  for (const Rational& beta : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)}) {
    const WeightingSpec w = WeightingSpec::quadratic(beta);
    const std::string subject = w.to_string();
    const Number va = dt_value(A, w), vb = dt_value(B, w);
    add_number(t, "dt_value_A", subject, va);
    add_number(t, "dt_value_B", subject, vb);
    add_number(t, "dt_value_A_minus_B", subject, va - vb);
  }
  const UtilityFunction u = UtilityFunction::quadratic(Rational(1, 16));
  t.add_exact("eu_value_A", u.to_string(), eu_value(A, u));
  t.add_exact("eu_value_B", u.to_string(), eu_value(B, u));
  t.add_exact("eu_value_A_minus_B", u.to_string(), eu_value(A, u) - eu_value(B, u));
  const DominanceReport dual = dual_sd_check(A, B, 3);
  t.add_text("dual_dominance_degree_3", "B over A", yes_no(dual.holds) + " " + dual.failed_condition.value_or(""));
  t.add_text("primal_dominance_degree_3", "B over A", yes_no(primal_sd_check(A, B, 3).holds));
  return t;
}

CsvTable apportionment_table() {
  CsvTable t({"item", "subject", "exact", "decimal"});
  struct Example {
    std::string label;
    EqualProbLottery base;
    unsigned m;
    long M;
  };
  const std::vector<Example> examples{{"order2_M6", equal({1, 2}), 2, 6},
                                      {"order3_M6", equal({1, 2, 4}), 3, 6},
                                      {"order3_flat_M6", equal({1, 2, 3}), 3, 6},
                                      {"order4_M4", equal({1, 2, 4, 7}), 4, 4}};
  for (const auto& ex : examples) {
    const Rational delta(1, ex.M);
    const GapSpec gaps = GapSpec::minimal(ex.m);
    const ApportionmentPair pair = make_general_pair(ex.base, ex.m, delta, gaps, delta, gaps, 0, 1, 0, 1);
    const Lottery C = pair.c_lottery(), D = pair.d_lottery();
    t.add_text("base", ex.label, to_string(ex.base));
    t.add_text("C", ex.label, to_string(pair.C));
    t.add_text("D", ex.label, to_string(pair.D));
    for (const auto& [name, L] : {std::pair{std::string("C"), &C}, std::pair{std::string("D"), &D}}) {
      t.add_exact("mean_" + name, ex.label, mean(*L));
      for (unsigned k = 2; k <= 4; ++k)
        t.add_exact("central_moment_" + std::to_string(k) + "_" + name, ex.label, primal_moment(*L, k));
      for (unsigned k = 2; k <= ex.m; ++k)
        t.add_exact("dual_moment_" + std::to_string(k) + "_" + name, ex.label, dual_moment(*L, k));
    }
    t.add_text("dual_dominance_D_over_C", ex.label, yes_no(dual_sd_check(C, D, ex.m).holds));
    const CrossingPattern cross = crossing_pattern(C, D);
    t.add_text("cdf_crossings_C_minus_D", ex.label,
               std::string(cross.initial_sign > 0 ? "+" : cross.initial_sign < 0 ? "-" : "0") + " then " +
                   join(cross.changes));
    const WeightingSpec w = WeightingSpec::dual_power(ex.m);
    add_number(t, "premium_D_minus_C_" + w.to_string(), ex.label, preference_direction(pair, w).premium);
  }
  for (unsigned m = 3; m <= 5; ++m) {
    std::vector<Rational> xs;
    for (long i = 0; i <= static_cast<long>(m) + 1; ++i) xs.emplace_back(10 * i);
    const ApportionmentPair pair = make_parsimonious_pair(EqualProbLottery::make(std::move(xs)), 1, m, Rational(1));
    const std::string label = "parsimonious_order" + std::to_string(m) + "_j1_M1";
    t.add_text("C", label, to_string(pair.C));
    t.add_text("D", label, to_string(pair.D));
    t.add_text("increments", label, join(increments(pair)));
  }
  return t;
}

CsvTable portfolio_table() {
  CsvTable t({"item", "subject", "exact", "decimal"});
  const std::vector<std::pair<unsigned, EqualProbLottery>> cases{
      {2, equal({1, 3})}, {3, equal({1, 3, 5, 7})}, {4, equal({1, 3, 5, 7, 9, 11, 13, 15})}};
  for (const auto& [order, stock] : cases) {
    const std::string label = "order" + std::to_string(order);
    const DerivativeMenu menu = build_menu(order, stock);
    const EqualProbLottery port = portfolio_prices(stock, menu);
    t.add_text("stock_prices", label, to_string(stock));
    t.add_text("menu", label, menu.to_string());
    t.add_exact("premium", label, menu.premium);
    t.add_text("portfolio_prices", label, to_string(port));
    t.add_text("dual_dominance_portfolio_over_stock", label,
               yes_no(dual_sd_check(stock.to_lottery(), port.to_lottery(), order).holds));

    Rational S0 = 0;
    for (const auto& x : stock.outcomes()) S0 += x;
    S0 /= static_cast<long>(stock.size());
    const WeightingSpec w = WeightingSpec::dual_power(order);
    const Rational vr = portfolio_value({Rational(100), Rational(0), S0, stock}, {}, w).exact();
    const Rational vbar = portfolio_value({Rational(100), Rational(0), S0, stock}, menu, w).exact();
    const std::string subject = label + " " + w.to_string() + " S0=" + to_string(S0);
    t.add_exact("value_stock_return", subject, vr);
    t.add_exact("value_supplemented_return", subject, vbar);
    const PortfolioProblem pp{Rational(100), (vr + vbar) / 2, S0, stock};
    const std::string at_r = subject + " w0=100 r=" + to_string(pp.r);
    t.add_exact("alpha_stock_only", at_r, optimal_alpha(pp, {}, w).alpha);
    t.add_exact("alpha_with_menu", at_r, optimal_alpha(pp, menu, w).alpha);
    if (order == 3) {
      if (auto eu = find_eu_disagreement(stock, menu)) {
        t.add_exact("eu_gap_portfolio_minus_stock", eu->prefers_portfolio.to_string(), eu->gap_portfolio);
        t.add_exact("eu_gap_portfolio_minus_stock", eu->prefers_stock.to_string(), eu->gap_stock);
      } else {
        t.add_text("eu_disagreement", label, "none found");
      }
    }
  }
  return t;
}

CsvTable self_protection_table() {
  CsvTable t({"item", "subject", "exact", "decimal"});
  const double w0 = 10.0, loss = 4.0, e_c = 0.2;
  for (const WeightingSpec& w : {WeightingSpec::dual_power(3), WeightingSpec::beta_cdf(2, 2)}) {
    const EffortModel model = calibrate_effort(EffortModel::Kind::Hyperbolic, w, loss, e_c, 0.5);
    const std::string name = w.to_string();
    t.add_text("effort_model", name, model.to_string());
    for (double eps : {0.5, 1.5, 2.5}) {
      const SelfProtectionProblem sp{w0, loss, eps, model, 0.0, 1.0};
      const BackgroundEffect fx = sp_background_effect(sp, w);
      const std::string subject = name + " eps=" + format_decimal(eps) + " " + to_string(sp_case(sp));
      t.add_real("e_star_without_background_risk", subject, fx.without_risk.e_star);
      t.add_real("e_star_with_background_risk", subject, fx.with_risk.e_star);
      // The residual itself is rounding noise; only its size is reproducible.
      const bool interior = !fx.with_risk.at_lower && !fx.with_risk.at_upper;
      t.add_text("foc_residual_at_optimum", subject,
                 !interior ? "boundary optimum" : std::abs(fx.with_risk.foc_at_opt) < 1e-9 ? "below 1e-9" : "large");
      t.add_text("direction", subject, fx.direction > 0 ? "more effort" : fx.direction < 0 ? "less effort" : "unchanged");
      t.add_text("value_concave_in_effort", subject, fx.with_risk.concave ? "yes" : "no");
    }
    const SelfProtectionProblem sp{w0, loss, 0.5, model, 0.0, 1.0};
    const BackgroundEffect fx = sp_background_effect(sp, w);
    if (fx.shift_at_half)
      t.add_exact("background_shift_term_at_half", name, *fx.shift_at_half);
    else
      t.add_real("background_shift_term_at_half", name, fx.shift_at_half_real);
  }
  EffortModel expo;
  expo.kind = EffortModel::Kind::Exponential;
  expo.p0 = 0.9;
  expo.k = 2.0;
  const SelfProtectionProblem lin{w0, loss, 0.0, expo, 0.0, 3.0};
  const std::string subject = "identity " + expo.to_string();
  t.add_real("e_star", subject, sp_solve(lin, WeightingSpec::identity()).e_star);
  t.add_real("e_star_closed_form", subject, std::log(expo.k * expo.p0 * loss) / expo.k);
  return t;
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw Error(ErrorCode::DomainError, "CSV row width does not match the header");
  rows_.push_back(std::move(row));
}

void CsvTable::add_exact(const std::string& item, const std::string& subject, const Rational& value) {
  add({item, subject, to_string(value), format_decimal(to_double(value))});
}

void CsvTable::add_real(const std::string& item, const std::string& subject, double value) {
  add({item, subject, "", format_decimal(value)});
}

void CsvTable::add_text(const std::string& item, const std::string& subject, const std::string& text) {
  add({item, subject, text, ""});
}

std::string CsvTable::render() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_cell(cells[i]);
    out += "\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

std::vector<ReproFile> repro_tables() {
  return {{"divergence.csv", divergence_table()},
          {"apportionment.csv", apportionment_table()},
          {"portfolio.csv", portfolio_table()},
          {"self_protection.csv", self_protection_table()}};
}

std::vector<std::filesystem::path> write_repro(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const auto& f : repro_tables()) {
    const auto path = dir / f.name;
    std::ofstream out(path, std::ios::binary);
    out << f.table.render();
    if (!out) throw Error(ErrorCode::DomainError, "cannot write " + path.string());
    paths.push_back(path);
  }
  return paths;
}

}  // namespace dualrisk
