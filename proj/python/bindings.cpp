// Python surface of the library. Rationals cross the boundary as "p/q"
// strings; the package __init__ turns them into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dualrisk/apportionment.hpp"
#include "dualrisk/dominance.hpp"
#include "dualrisk/error.hpp"
#include "dualrisk/harness.hpp"
#include "dualrisk/portfolio.hpp"
#include "dualrisk/repro.hpp"
#include "dualrisk/self_protection.hpp"
#include "dualrisk/valuation.hpp"

namespace py = pybind11;
using namespace dualrisk;

namespace {

using States = std::vector<std::pair<std::string, std::string>>;

Lottery to_lottery(const States& states) {
  std::vector<State> out;
  for (const auto& [x, p] : states) out.push_back({parse_rational(x), parse_rational(p)});
  return Lottery::make(std::move(out));
}

EqualProbLottery to_equal(const std::vector<std::string>& xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) out.push_back(parse_rational(x));
  return EqualProbLottery::make(std::move(out));
}

std::vector<std::string> outcomes(const EqualProbLottery& L) {
  std::vector<std::string> out;
  for (const auto& x : L.outcomes()) out.push_back(to_string(x));
  return out;
}

py::object number(const Number& v) {
  if (v.is_exact()) return py::str(to_string(v.exact()));
  return py::float_(v.to_double());
}

py::dict report(const DominanceReport& r) {
  py::dict d;
  d["degree"] = r.degree;
  d["holds"] = r.holds;
  d["failed_condition"] = r.failed_condition ? py::object(py::str(*r.failed_condition)) : py::object(py::none());
  d["text"] = to_string(r);
  return d;
}

py::dict pair_dict(const ApportionmentPair& p) {
  py::dict d;
  d["C"] = outcomes(p.C);
  d["D"] = outcomes(p.D);
  d["order"] = p.order;
  d["provenance"] = to_string(p.provenance);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dual-theory lottery evaluation, dominance and risk apportionment";
  static py::exception<Error> error_type(m, "DualRiskError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object code = py::str(std::string(to_string(e.code())));
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(py::str(e.what()));
      exc.attr("code") = code;
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def("dt_value", [](const States& s, const std::string& w) { return number(dt_value(to_lottery(s), parse_weighting(w))); },
        py::arg("states"), py::arg("weighting"));
  m.def("mean", [](const States& s) { return to_string(mean(to_lottery(s))); });
  m.def("dual_moment", [](const States& s, unsigned k) { return to_string(dual_moment(to_lottery(s), k)); });
  m.def("primal_moment", [](const States& s, unsigned k) { return to_string(primal_moment(to_lottery(s), k)); });
  m.def("eu_value", [](const States& s, const std::string& u) {
    return to_string(eu_value(to_lottery(s), parse_utility(u)));
  });

  m.def("dual_sd_check", [](const States& a, const States& b, unsigned deg) {
    return report(dual_sd_check(to_lottery(a), to_lottery(b), deg));
  });
  m.def(
      "primal_sd_check",
      [](const States& a, const States& b, unsigned deg, bool ekern) {
        return report(primal_sd_check(to_lottery(a), to_lottery(b), deg,
                                      ekern ? PrimalVariant::Ekern : PrimalVariant::Plain));
      },
      py::arg("a"), py::arg("b"), py::arg("degree"), py::arg("ekern") = false);

  m.def("finite_difference_sign", [](const std::string& w, unsigned order, unsigned grid) {
    return std::string(to_string(finite_difference_sign(parse_weighting(w), order, grid).kind));
  });

  m.def("make_general_pair",
        [](const std::vector<std::string>& base, unsigned order, const std::string& M, std::vector<std::size_t> pos) {
          if (pos.size() != 4) throw Error(ErrorCode::DomainError, "positions are d_good, d_bad, c_bad, c_good");
          const Rational delta = 1 / parse_rational(M);
          const GapSpec gaps = GapSpec::minimal(order);
          return pair_dict(make_general_pair(to_equal(base), order, delta, gaps, delta, gaps, pos[0], pos[1], pos[2], pos[3]));
        },
        py::arg("base"), py::arg("order"), py::arg("M"), py::arg("positions") = std::vector<std::size_t>{0, 1, 0, 1});
  m.def("make_parsimonious_pair", [](const std::vector<std::string>& base, std::size_t j, unsigned order, const std::string& M) {
    return pair_dict(make_parsimonious_pair(to_equal(base), j, order, parse_rational(M)));
  });
  m.def("random_general_pair", [](std::uint64_t seed, unsigned order) { return pair_dict(random_general_pair(seed, order)); });
  m.def("replay", [](const std::string& provenance) { return pair_dict(replay(parse_provenance(provenance))); });
  m.def("preference_direction", [](const std::string& provenance, const std::string& w) {
    const Preference p = preference_direction(replay(parse_provenance(provenance)), parse_weighting(w));
    return py::make_tuple(p.sign, number(p.premium));
  });

  m.def(
      "verify_theorem",
      [](unsigned theorem, std::size_t trials, std::uint64_t seed, std::optional<unsigned> order,
         std::optional<std::string> weighting) {
        VerifyOptions o;
        o.theorem = theorem;
        o.trials = trials;
        o.seed = seed;
        o.order = order;
        if (weighting) o.weighting = parse_weighting(*weighting);
        const VerifyReport r = verify_theorem(o);
        py::dict d;
        d["passed"] = r.passed();
        d["summary"] = r.summary();
        d["checks"] = r.checks;
        d["vacuous"] = r.vacuous;
        d["failures"] = r.failures;
        return d;
      },
      py::arg("theorem"), py::arg("trials") = 100, py::arg("seed") = 42, py::arg("order") = py::none(),
      py::arg("weighting") = py::none());

  m.def("build_menu", [](unsigned order, const std::vector<std::string>& stock) {
    const EqualProbLottery prices = to_equal(stock);
    const DerivativeMenu menu = build_menu(order, prices);
    py::dict d;
    d["menu"] = menu.to_string();
    d["premium"] = to_string(menu.premium);
    d["portfolio"] = outcomes(portfolio_prices(prices, menu));
    return d;
  });

  m.def("self_protection", [](const std::string& config) {
    const SelfProtectionConfig cfg = parse_self_protection_config(config);
    const BackgroundEffect fx = sp_background_effect(cfg.problem, cfg.weighting);
    py::dict d;
    d["case"] = to_string(sp_case(cfg.problem));
    d["e_star_with"] = fx.with_risk.e_star;
    d["e_star_without"] = fx.without_risk.e_star;
    d["direction"] = fx.direction;
    d["foc_at_opt"] = fx.with_risk.foc_at_opt;
    d["concave"] = fx.with_risk.concave;
    return d;
  });

  m.def("repro_tables", [] {
    py::dict d;
    for (const auto& f : repro_tables()) d[py::str(f.name)] = f.table.render();
    return d;
  });
}
