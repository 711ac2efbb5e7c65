#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "multifol/api.hpp"
#include "multifol/checks/acceptance.hpp"
#include "multifol/error.hpp"
#include "multifol/json_io.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

multifol::io::ReadOptions options(std::size_t max_poset) { return multifol::io::ReadOptions{max_poset}; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw multifol::Error(multifol::ErrorCode::ParseError, "malformed JSON", json{{"byte", e.byte}});
  }
}

template <class F>
std::string guarded(F&& f) {
  try {
    return f().dump();
  } catch (const json::exception& e) {
    throw multifol::Error(multifol::ErrorCode::SchemaError, e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<multifol::Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const multifol::Error& e) {
      error(multifol::io::error_payload(e).dump().c_str());
    }
  });

  const auto limit = multifol::kDefaultAntichainLimit;
  m.def("validate", [](const std::string& doc, const std::string& kind, std::size_t max_poset) {
    return guarded([&] { return multifol::api::validate(parse(doc), kind, options(max_poset)); });
  }, py::arg("doc"), py::arg("kind") = "auto", py::arg("max_poset") = limit);
  m.def("complete", [](const std::string& doc, std::size_t max_poset) {
    return guarded([&] { return multifol::api::complete(parse(doc), options(max_poset)); });
  }, py::arg("system"), py::arg("max_poset") = limit);
  m.def("classify", [](const std::string& doc, std::size_t max_poset) {
    return guarded([&] { return multifol::api::classify(parse(doc), options(max_poset)); });
  }, py::arg("system"), py::arg("max_poset") = limit);
  m.def("dual", [](const std::string& doc, std::size_t max_poset) {
    return guarded([&] { return multifol::api::dual(parse(doc), options(max_poset)); });
  }, py::arg("system"), py::arg("max_poset") = limit);
  m.def("equiv", [](const std::string& s, const std::string& t, std::size_t max_poset) {
    return guarded([&] { return multifol::api::equiv(parse(s), parse(t), options(max_poset)); });
  }, py::arg("s"), py::arg("t"), py::arg("max_poset") = limit);
  m.def("product", [](const std::string& a, const std::string& b, std::size_t max_poset) {
    return guarded([&] { return multifol::api::product(parse(a), parse(b), options(max_poset)); });
  }, py::arg("a"), py::arg("b"), py::arg("max_poset") = limit);
  m.def("weil_eval", [](const std::string& algebra, const std::string& eval) {
    return guarded([&] { return multifol::api::weil_eval(parse(algebra), parse(eval)); });
  }, py::arg("algebra"), py::arg("eval"));
  m.def("fiber_dim", [](const std::string& mu, const std::string& obj, std::size_t max_poset) {
    return guarded([&] { return multifol::api::fiber_dim(parse(mu), parse(obj), options(max_poset)); });
  }, py::arg("weil_system"), py::arg("object"), py::arg("max_poset") = limit);
  m.def("selftest", [](std::uint64_t seed) {
    multifol::checks::SuiteOptions opts;
    opts.seed = seed;
    py::list out;
    std::vector<multifol::checks::CriterionResult> results;
    {
      py::gil_scoped_release release;
      results = multifol::checks::run_acceptance(opts);
    }
    for (const auto& r : results) {
      py::dict d;
      d["id"] = r.id;
      d["name"] = r.name;
      d["passed"] = r.passed();
      d["seconds"] = r.seconds;
      d["bound_seconds"] = r.bound_seconds;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  }, py::arg("seed") = multifol::checks::kDefaultSeed);
}
