#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lpfact/cli.hpp"
#include "lpfact/density.hpp"
#include "lpfact/error.hpp"
#include "lpfact/factor.hpp"
#include "lpfact/hits_csv.hpp"
#include "lpfact/intervals.hpp"
#include "lpfact/primes.hpp"
#include "lpfact/sieve.hpp"

namespace py = pybind11;
using namespace lpfact;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10))); }

std::optional<HalfOpen> to_window(const std::optional<std::pair<u64, u64>>& w) {
  if (!w) return std::nullopt;
  return HalfOpen{w->first, w->second};
}

py::dict factorization_dict(const Factorization& fz) {
  py::list factors;
  for (const auto& f : fz.factors) factors.append(py::make_tuple(to_py(f.prime), f.exponent, f.probable));
  py::dict d;
  d["n"] = fz.n;
  d["value"] = to_py(fz.value);
  d["factors"] = factors;
  d["complete"] = fz.complete;
  d["cofactor"] = to_py(fz.cofactor);
  d["factors_string"] = fz.factors_string();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Largest prime factors of n! + f(n): modular kernels, Wilson sieve, exact oracles";

  // Translators run most-recent-first, so bases are registered before subclasses.
  const auto& error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  const auto& precondition = py::register_exception<PreconditionViolated>(m, "PreconditionViolated", error);
  py::register_exception<ValueIsZero>(m, "ValueIsZero", error);
  py::register_exception<ValueNotAboveOne>(m, "ValueNotAboveOne", error);
  py::register_exception<RangeTooLarge>(m, "RangeTooLarge", error);
  (void)precondition;
  const auto& invariant = py::register_exception<InvariantFailure>(m, "InvariantFailure", error);
  py::register_exception<DivisibilityFailed>(m, "DivisibilityFailed", invariant);
  py::register_exception<MismatchFound>(m, "MismatchFound", invariant);

  m.def("is_prime", &is_prime, py::arg("n"));
  m.def("primes_in", [](u64 lo, u64 hi) { return primes_in(lo, hi).primes; }, py::arg("lo"), py::arg("hi"),
        "Primes in [lo, hi].");
  m.def("factorial_mod", &factorial_mod, py::arg("n"), py::arg("m"));
  m.def(
      "eval_poly_mod", [](const std::string& f, u64 n, u64 mod) { return eval_poly_mod(Poly::parse(f), n, mod); },
      py::arg("f"), py::arg("n"), py::arg("m"));
  m.def(
      "ord_nfact_plus_f",
      [](u64 n, u64 p, const std::string& f) {
        const auto v = ord_nfact_plus_f(n, p, Poly::parse(f));
        return py::make_tuple(v.value, v.exact);
      },
      py::arg("n"), py::arg("p"), py::arg("f") = "1", "(valuation, exact) of n! + f(n) at p.");
  m.def(
      "heath_brown_sum",
      [](u64 y) {
        const auto g = heath_brown_sum(y);
        py::dict d;
        d["y"] = g.y;
        d["sum"] = to_py(g.sum);
        d["ratio_23_18"] = g.ratio_23_18;
        d["prime_count"] = g.prime_count;
        d["next_after_y"] = g.next_after_y;
        return d;
      },
      py::arg("y"));

  m.def(
      "scan_prime",
      [](u64 p, const std::string& f, std::optional<std::pair<u64, u64>> window) {
        return scan_prime(p, to_window(window).value_or(HalfOpen{1, p}), Poly::parse(f));
      },
      py::arg("p"), py::arg("f") = "1", py::arg("window") = py::none(), "All n in the window with p | n! + f(n).");
  m.def(
      "run_sieve",
      [](const std::string& f, u64 pmin, u64 pmax, std::optional<std::pair<u64, u64>> window, const std::string& ord,
         unsigned threads) {
        SieveConfig cfg;
        cfg.f = Poly::parse(f);
        cfg.prime_lo = pmin;
        cfg.prime_hi = pmax;
        cfg.window = to_window(window);
        cfg.ord = ord == "on" ? OrdMode::On : ord == "off" ? OrdMode::Off : OrdMode::Auto;
        cfg.threads = threads;
        HitStore store;
        {
          py::gil_scoped_release release;
          store = run_sieve(cfg);
        }
        return hits_csv_string(store.records());
      },
      py::arg("f") = "1", py::arg("pmin") = 2, py::arg("pmax"), py::arg("window") = py::none(),
      py::arg("ord") = "auto", py::arg("threads") = 1, "Runs the sieve and returns hits.csv text.");

  m.def(
      "factor",
      [](u64 n, const std::string& f, u64 effort) { return factorization_dict(factor_small(n, Poly::parse(f), effort)); },
      py::arg("n"), py::arg("f") = "1", py::arg("effort") = kDefaultEffort, "Factorization of n! + f(n).");
  m.def(
      "p_exact",
      [](u64 n, const std::string& f, u64 effort) {
        const auto lp = p_exact(n, Poly::parse(f), effort);
        return py::make_tuple(to_py(lp.value), lp.exact);
      },
      py::arg("n"), py::arg("f") = "1", py::arg("effort") = kDefaultEffort);

  m.def(
      "build_intervals",
      [](const std::vector<u64>& points) {
        std::vector<std::pair<u64, u64>> out;
        for (const auto& iv : IntervalFamily::build(points).intervals()) out.emplace_back(iv.left, iv.right);
        return out;
      },
      py::arg("points"), "Half-open intervals (left, right] between consecutive sorted points.");

  m.def("paper_constants", [] {
    py::dict d;
    for (const auto& [k, v] : paper_constants().named()) d[py::str(k)] = v;
    return d;
  });
  m.def("target_lambda", &target_lambda, py::arg("eps0"));
  m.def(
      "audit_window_sum",
      [](u64 x, double eps0) {
        const auto r = audit_logZ(AuditConfig::make(x, eps0));
        py::dict d;
        d["window_sum"] = r.window_sum;
        d["split_sum"] = r.split_sum;
        d["asymptotic_sum"] = r.asymptotic_sum;
        d["ratio"] = r.ratio;
        d["relative_deviation"] = r.relative_deviation;
        return d;
      },
      py::arg("x"), py::arg("eps0") = 0.005);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line interface in-process: (exit code, stdout, stderr).");
}
