#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "charsums/addcomb.hpp"
#include "charsums/arith.hpp"
#include "charsums/characters.hpp"
#include "charsums/dickman.hpp"
#include "charsums/error.hpp"
#include "charsums/experiments.hpp"
#include "charsums/multfun.hpp"

namespace py = pybind11;
using namespace charsums;

namespace {

MeanSquareMode mode_from(const std::string& name) {
  if (name == "direct") return MeanSquareMode::direct;
  if (name == "histogram") return MeanSquareMode::histogram;
  throw DomainError("mode must be 'direct' or 'histogram'");
}

ExperimentReport run_named(const std::string& scan, const ExperimentConfig& config, unsigned threads) {
  if (scan == "levelset-scan") return run_levelset_scan(config, threads);
  if (scan == "meansquare-scan") return run_meansquare_scan(config, threads);
  if (scan == "pv-scan") return run_pv_scan(config, threads);
  if (scan == "elementary-scan") return run_elementary_scan(config, threads);
  if (scan == "addcomb-verify") return run_addcomb_verify(config, AddcombOptions{}, threads);
  throw ConfigError("unknown scan '" + scan + "'");
}

}  // namespace

PYBIND11_MODULE(_charsums, m) {
  m.doc() = "Character sums, multiplicative functions, Dickman rho and sumset tools";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);

  // arithmetic
  m.def("primes_up_to", [](u64 limit) {
    const PrimeTable t(limit);
    return std::vector<u32>(t.primes().begin(), t.primes().end());
  }, py::arg("limit"));
  m.def("is_prime", py::overload_cast<u64>(&is_prime), py::arg("n"));
  m.def("least_prime_factor", &least_prime_factor, py::arg("n"));
  m.def("primitive_root", &primitive_root, py::arg("q"));
  m.def("friable_count", py::overload_cast<u64, u64>(&friable_count), py::arg("x"), py::arg("y"));
  m.def("prime_harmonic_sum", py::overload_cast<u64>(&prime_harmonic_sum), py::arg("x"));
  m.def("count_S_delta", &count_S_delta, py::arg("q"), py::arg("delta"));

  // characters
  py::class_<Character>(m, "Character")
      .def(py::init([](u64 q, u64 d, u64 ell) { return make_character(q, d, ell); }),
           py::arg("q"), py::arg("d"), py::arg("ell") = 1)
      .def_property_readonly("q", &Character::q)
      .def_property_readonly("d", &Character::d)
      .def_property_readonly("ell", &Character::ell)
      .def("exponent", &Character::exponent, py::arg("n"))
      .def("value", &Character::value, py::arg("n"))
      .def("exponents", &Character::exponents)
      .def("partial_sum", [](const Character& c, u64 x) { return partial_sum(c, x); }, py::arg("x"))
      .def("max_partial_sum", [](const Character& c) {
        const auto r = max_partial_sum(c);
        return py::make_tuple(r.value, r.argmax_t);
      })
      .def("least_nonone", [](const Character& c) { return least_nonone(c); })
      .def("max_sums_over_powers", [](const Character& c, unsigned threads) {
        return max_sums_over_powers(c, threads);
      }, py::arg("threads") = 1)
      .def("xi_set", [](const Character& c, double eps) { return xi_set(c, eps).elements(); },
           py::arg("epsilon"));

  // multiplicative functions
  py::class_<MultFun>(m, "MultFun")
      .def_static("from_character", &from_character, py::arg("chi"), py::arg("x"))
      .def_static("random", &random_member, py::arg("x"), py::arg("d"), py::arg("seed"),
                  py::arg("zero_rate") = 0.0)
      .def_property_readonly("d", &MultFun::d)
      .def_property_readonly("x_max", &MultFun::x_max)
      .def("exponent", &MultFun::exponent, py::arg("n"))
      .def("level_counts", [](const MultFun& f, u64 x) { return level_histogram(f, x).counts; },
           py::arg("x"))
      .def("mean_square", [](const MultFun& f, u64 x, const std::string& mode) {
        return mean_square_powers(f, x, mode_from(mode));
      }, py::arg("x"), py::arg("mode") = "histogram")
      .def("collision_count", [](const MultFun& f, u64 x) {
        return collision_count(level_histogram(f, x));
      }, py::arg("x"))
      .def("big_sigma", &big_sigma, py::arg("x"))
      .def("distance_to_twist", [](const MultFun& f, u64 x, double T, double step) {
        const auto r = distance_to_twist(f, x, T, step);
        return py::make_tuple(r.value_squared, r.minimizing_t);
      }, py::arg("x"), py::arg("T") = 100.0, py::arg("step") = 1e-3);

  m.def("pretentious_distance_squared", [](const MultFun& f, const MultFun& g, u64 x) {
    return pretentious_distance(f, g, x).value_squared;
  }, py::arg("f"), py::arg("g"), py::arg("x"));

  // Dickman rho
  py::class_<DickmanTable, std::shared_ptr<DickmanTable>>(m, "DickmanTable")
      .def(py::init<double, double>(), py::arg("u_max") = 50.0, py::arg("step") = 1e-4)
      .def("rho", &DickmanTable::rho, py::arg("u"))
      .def("sigma_minus", &DickmanTable::sigma_minus, py::arg("u"))
      .def_property_readonly("clamped", &DickmanTable::clamped);

  // sumsets
  m.def("sumset", [](u64 d, const std::vector<u64>& a, const std::vector<u64>& b) {
    return sumset(CyclicSubset(d, a), CyclicSubset(d, b)).elements();
  }, py::arg("d"), py::arg("a"), py::arg("b"));
  m.def("is_kl_set", [](u64 d, const std::vector<u64>& a, u64 k, u64 l) {
    return is_kl_set(CyclicSubset(d, a), k, l);
  }, py::arg("d"), py::arg("a"), py::arg("k"), py::arg("l"));
  m.def("bhp_bound", &bhp_bound, py::arg("n"), py::arg("k"), py::arg("l"));
  m.def("max_kl_set", [](u64 n, u64 k, u64 l, bool symmetric_only) {
    const auto r = max_kl_set_bruteforce(n, k, l, symmetric_only);
    return py::make_tuple(r.size, r.witness.elements());
  }, py::arg("n"), py::arg("k"), py::arg("l"), py::arg("symmetric_only") = false);
  m.def("doubling_steps", [](u64 d, const std::vector<u64>& a, double c) {
    const auto r = freiman_doubling_check(CyclicSubset(d, a), c);
    return py::make_tuple(r.ceiling, r.first_full);
  }, py::arg("d"), py::arg("a"), py::arg("c"));

  // sweeps
  m.def("default_config_json", [] { return serialize_config(default_config()); });
  m.def("run_scan", [](const std::string& scan, const std::string& config_json, unsigned threads,
                       const std::string& format) {
    const auto config = config_json.empty() ? default_config() : parse_config(config_json);
    ExperimentReport report;
    {
      py::gil_scoped_release release;
      report = run_named(scan, config, threads);
    }
    return format == "json" ? to_json(report) : to_csv(report);
  }, py::arg("scan"), py::arg("config_json") = "", py::arg("threads") = 1, py::arg("format") = "csv");
}
