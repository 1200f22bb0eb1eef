#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relsep/errors.hpp"
#include "relsep/pipeline.hpp"
#include "relsep/sampler.hpp"
#include "relsep/smallcancel.hpp"

namespace py = pybind11;
using namespace relsep;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const Json& x : j) out.append(json_to_py(x));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items())
        out[py::str(key)] = json_to_py(value);
      return out;
    }
    default:
      throw ConfigError("unsupported JSON value");
  }
}

Json py_to_json(const py::object& obj) {
  py::module_ json = py::module_::import("json");
  return Json::parse(json.attr("dumps")(obj).cast<std::string>());
}

Presentation presentation_arg(const py::object& obj) {
  return presentation_from_json(py_to_json(obj));
}

}  // namespace

PYBIND11_MODULE(_relsep, m) {
  m.doc() = "relator separation toolkit bindings";

  py::register_exception<ConfigError>(m, "ConfigError");
  static py::exception<Error> base_error(m, "RelsepError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError&) {
      throw;  // already translated by the registration above
    } catch (const Error& e) {
      PyErr_SetString(base_error.ptr(), e.what());
    }
  });

  m.def(
      "sample",
      [](const std::string& family, int n, int length, double d,
         std::uint64_t seed) {
        ModelSpec spec;
        spec.family = model_family_from_string(family);
        spec.n = n;
        spec.length = length;
        spec.d = d;
        spec.seed = seed;
        SampleReport rep = sample(spec);
        py::dict out;
        out["presentation"] = json_to_py(to_json(rep.presentation));
        out["collisions"] = rep.collisions;
        return out;
      },
      py::arg("family"), py::arg("n"), py::arg("length"), py::arg("d"),
      py::arg("seed") = 0);

  m.def("halve", [](const py::object& presentation) {
    return json_to_py(to_json(halve(presentation_arg(presentation))));
  });

  m.def(
      "check_sc",
      [](const py::object& presentation, long num, long den) {
        return check_metric(presentation_arg(presentation), num, den);
      },
      py::arg("presentation"), py::arg("num") = 1, py::arg("den") = 6);

  m.def("max_piece", [](const py::object& presentation) {
    PieceReport r = max_piece_length(presentation_arg(presentation));
    py::dict out;
    out["max_piece_length"] = r.max_piece_length;
    out["min_relator_length"] = r.min_relator_length;
    out["lambda_num"] = r.lambda_num;
    out["lambda_den"] = r.lambda_den;
    return out;
  });

  m.def("aspherical_checks", [](const py::object& presentation) {
    AsphericityReport r = asphericity_checks(presentation_arg(presentation));
    py::list violations;
    for (const AsphericityViolation& v : r.violations) {
      py::dict item;
      item["kind"] = v.kind;
      item["detail"] = v.detail;
      violations.append(item);
    }
    return py::make_tuple(r.ok(), violations);
  });

  m.def(
      "count_words",
      [](int n, int l, const std::string& first, const std::string& last,
         bool cyclically_reduced, bool positive) {
        WordConstraints c;
        if (!first.empty()) c.first = from_text(first).at(0);
        if (!last.empty()) c.last = from_text(last).at(0);
        c.cyclically_reduced = cyclically_reduced;
        c.positive = positive;
        BigInt count = count_words(n, l, c);
        return py::module_::import("builtins").attr("int")(count.str());
      },
      py::arg("n"), py::arg("l"), py::arg("first") = "", py::arg("last") = "",
      py::arg("cyclically_reduced") = false, py::arg("positive") = false);

  m.def(
      "concentration_trial",
      [](const std::string& family, int n, int length, double d, double c,
         int trials, std::uint64_t seed) {
        ModelSpec spec;
        spec.family = model_family_from_string(family);
        spec.n = n;
        spec.length = length;
        spec.d = d;
        return json_to_py(to_json(concentration_trial(spec, c, trials, seed)));
      },
      py::arg("family"), py::arg("n"), py::arg("length"), py::arg("d"),
      py::arg("c"), py::arg("trials"), py::arg("seed"));

  m.def(
      "sc_frequency_trial",
      [](const std::string& family, int n, int length, double d, long num,
         long den, int trials, std::uint64_t seed) {
        ModelSpec spec;
        spec.family = model_family_from_string(family);
        spec.n = n;
        spec.length = length;
        spec.d = d;
        return json_to_py(
            to_json(sc_frequency_trial(spec, num, den, trials, seed)));
      },
      py::arg("family"), py::arg("n"), py::arg("length"), py::arg("d"),
      py::arg("num"), py::arg("den"), py::arg("trials"), py::arg("seed"));

  m.def("run_pipeline", [](const py::object& config) {
    PipelineConfig cfg = pipeline_config_from_json(py_to_json(config));
    apply_env_seed(cfg);
    PipelineResult r = run_pipeline(cfg);
    py::dict out;
    out["exit_code"] = r.exit_code;
    out["status"] = r.status;
    out["reached"] = r.reached;
    out["warnings"] = r.warnings;
    out["report"] = json_to_py(r.report);
    return out;
  });
}
