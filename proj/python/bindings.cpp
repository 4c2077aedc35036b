#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>

#include "taskcodes/error.hpp"
#include "taskcodes/mismatch.hpp"
#include "taskcodes/partition.hpp"
#include "taskcodes/probability.hpp"
#include "taskcodes/task_code.hpp"

namespace py = pybind11;
namespace tc = taskcodes;

namespace {

py::object to_fraction(const tc::Rational& r) {
  static const py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(boost::multiprecision::numerator(r).str())),
                  py::int_(py::str(boost::multiprecision::denominator(r).str())));
}

tc::Rational from_number(const py::object& value) {
  // Accepts int, fractions.Fraction, or anything Fraction() understands.
  static const py::object fraction = py::module_::import("fractions").attr("Fraction");
  const py::object f = fraction(value);
  const std::string num = py::str(f.attr("numerator"));
  const std::string den = py::str(f.attr("denominator"));
  return tc::Rational(boost::multiprecision::cpp_int(num),
                      boost::multiprecision::cpp_int(den));
}

tc::Rate to_rate(const py::object& value) {
  if (py::isinstance<py::str>(value)) return tc::Rate::parse(value.cast<std::string>());
  return tc::Rate::from_double(value.cast<double>());
}

std::vector<tc::Budget> to_budgets(const std::vector<double>& values) {
  std::vector<tc::Budget> out;
  out.reserve(values.size());
  for (double v : values) {
    if (std::isinf(v) && v > 0) {
      out.push_back(tc::Budget::infinite());
    } else if (v >= 1 && v == std::floor(v)) {
      out.push_back(tc::Budget(static_cast<std::uint64_t>(v)));
    } else {
      throw tc::Error(tc::Errc::invalid_argument,
                      "budgets must be positive integers or inf");
    }
  }
  return out;
}

std::vector<std::vector<tc::Element>> blocks_of(const tc::Partition& p) {
  std::vector<std::vector<tc::Element>> out;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    auto s = p.block(b);
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

py::dict report_dict(const tc::MomentReport& r) {
  py::dict d;
  d["n"] = r.n;
  d["R"] = r.rate;
  d["rho"] = r.rho;
  d["M"] = r.descriptions;
  d["N"] = r.used;
  d["moment"] = r.moment;
  d["lower"] = r.lower;
  d["upper"] = r.upper;
  d["m_tilde"] = r.m_tilde;
  d["delta"] = r.delta;
  if (r.mismatch_exponent) d["mismatch_exponent"] = *r.mismatch_exponent;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fixed-length task description codes";

  static py::exception<tc::Error> error(m, "TaskCodeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const tc::Error& e) {
      const auto cls = py::reinterpret_borrow<py::object>(error.ptr());
      py::object exc = cls(std::string(tc::errc_name(e.code())) + ": " + e.what());
      exc.attr("code") = std::string(tc::errc_name(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.attr("DEFAULT_CAP") = tc::kDefaultEnumerationCap;

  py::class_<tc::Pmf>(m, "Pmf")
      .def(py::init<std::vector<double>>(), py::arg("masses"))
      .def_static("from_weights",
                  [](const std::vector<double>& w) { return tc::Pmf::from_weights(w); })
      .def_static("uniform", &tc::Pmf::uniform)
      .def_property_readonly("masses", [](const tc::Pmf& p) {
        return std::vector<double>(p.masses().begin(), p.masses().end());
      })
      .def("support_size", &tc::Pmf::support_size)
      .def("__len__", &tc::Pmf::size)
      .def("__getitem__", [](const tc::Pmf& p, std::size_t i) {
        if (i >= p.size()) throw py::index_error();
        return p[i];
      })
      .def("__eq__", [](const tc::Pmf& a, const tc::Pmf& b) { return a == b; })
      .def("__repr__", [](const tc::Pmf& p) {
        return "Pmf(size=" + std::to_string(p.size()) + ")";
      });

  py::class_<tc::MarkovSource>(m, "MarkovSource")
      .def(py::init<tc::Pmf, std::vector<double>>(), py::arg("initial"),
           py::arg("transitions"))
      .def_static("sticky", &tc::MarkovSource::sticky, py::arg("states"), py::arg("stay"))
      .def_static("iid", &tc::MarkovSource::iid)
      .def_property_readonly("states", &tc::MarkovSource::states)
      .def("transition", &tc::MarkovSource::transition);

  py::class_<tc::JointLaw>(m, "JointLaw")
      .def_property_readonly("block_length", &tc::JointLaw::block_length)
      .def_property_readonly("base_size", &tc::JointLaw::base_size)
      .def("__len__", &tc::JointLaw::size)
      .def("mass", &tc::JointLaw::mass)
      .def("log_mass", &tc::JointLaw::log_mass)
      .def("index_of", [](const tc::JointLaw& j, const std::vector<std::size_t>& t) {
        return j.index_of(t);
      });

  m.def("renyi_entropy", py::overload_cast<const tc::Pmf&, double>(&tc::renyi_entropy),
        py::arg("p"), py::arg("alpha"));
  m.def("renyi_entropy",
        py::overload_cast<const tc::JointLaw&, double>(&tc::renyi_entropy),
        py::arg("law"), py::arg("alpha"));
  m.def("renyi_rho", py::overload_cast<const tc::Pmf&, double>(&tc::renyi_rho),
        py::arg("p"), py::arg("rho"));
  m.def("renyi_rho", py::overload_cast<const tc::JointLaw&, double>(&tc::renyi_rho),
        py::arg("law"), py::arg("rho"));
  m.def("iid_joint", &tc::iid_joint, py::arg("p"), py::arg("n"),
        py::arg("cap") = tc::kDefaultEnumerationCap);
  m.def("markov_joint", &tc::markov_joint, py::arg("source"), py::arg("n"),
        py::arg("cap") = tc::kDefaultEnumerationCap);
  m.def("markov_renyi_sum", &tc::markov_renyi_sum, py::arg("source"),
        py::arg("alpha"), py::arg("n"));
  m.def("kl_divergence", &tc::kl_divergence);

  py::class_<tc::Partition>(m, "Partition")
      .def(py::init<std::size_t, const std::vector<std::vector<tc::Element>>&>(),
           py::arg("ground_size"), py::arg("blocks"))
      .def_static("from_labels", [](const std::vector<std::size_t>& labels) {
        return tc::Partition::from_labels(labels);
      })
      .def_static("from_text", [](const std::string& t) {
        return tc::partition_from_text(t);
      })
      .def_property_readonly("ground_size", &tc::Partition::ground_size)
      .def_property_readonly("block_count", &tc::Partition::block_count)
      .def_property_readonly("blocks", &blocks_of)
      .def("containing_size", &tc::Partition::containing_size)
      .def("to_text", &tc::partition_to_text)
      .def("__eq__", [](const tc::Partition& a, const tc::Partition& b) { return a == b; });

  py::class_<tc::LambdaBudget>(m, "LambdaBudget")
      .def(py::init([](const std::vector<double>& v) {
             return tc::LambdaBudget(to_budgets(v));
           }),
           "Budgets as positive integers, math.inf for unbounded")
      .def("__len__", &tc::LambdaBudget::size)
      .def("mu", [](const tc::LambdaBudget& l) { return to_fraction(l.mu()); });

  m.def("kraft_sum", [](const tc::Partition& p) { return to_fraction(tc::kraft_sum(p)); });
  m.def("subset_count_bound", [](const py::object& mu, std::size_t size) {
    const auto b = tc::subset_count_bound(from_number(mu), size);
    py::dict d;
    d["value"] = b.value;
    d["alpha"] = b.alpha;
    d["grid_value"] = b.grid_value;
    d["grid_alpha"] = b.grid_alpha;
    d["at_alpha_two"] = b.at_alpha_two;
    return d;
  }, py::arg("mu"), py::arg("alphabet_size"));
  m.def("build_partition", &tc::build_partition);
  m.def("verify_budget", [](const tc::Partition& p, const tc::LambdaBudget& l) {
    const auto r = tc::verify_budget(p, l);
    return py::make_tuple(r.ok, r.violation ? py::cast(*r.violation) : py::none());
  });

  py::class_<tc::TaskEncoder>(m, "TaskEncoder")
      .def(py::init<const tc::Partition&, std::uint64_t>(), py::arg("partition"),
           py::arg("description_count"))
      .def_property_readonly("description_count", &tc::TaskEncoder::description_count)
      .def_property_readonly("used_descriptions", &tc::TaskEncoder::used_descriptions)
      .def_property_readonly("partition", &tc::TaskEncoder::partition)
      .def_property_readonly("assignment", [](const tc::TaskEncoder& e) {
        return std::vector<std::uint64_t>(e.assignment().begin(), e.assignment().end());
      });

  m.def("lambda_from_law",
        py::overload_cast<const tc::Pmf&, double, std::uint64_t>(&tc::lambda_from_law),
        py::arg("p"), py::arg("rho"), py::arg("M"));
  m.def("build_encoder",
        py::overload_cast<const tc::Pmf&, double, std::uint64_t>(&tc::build_encoder),
        py::arg("p"), py::arg("rho"), py::arg("M"));
  m.def("moment",
        py::overload_cast<const tc::Pmf&, const tc::TaskEncoder&, double>(&tc::moment),
        py::arg("p"), py::arg("encoder"), py::arg("rho"));
  m.def("moment",
        py::overload_cast<const tc::Pmf&, const tc::Partition&, double>(&tc::moment),
        py::arg("p"), py::arg("partition"), py::arg("rho"));
  m.def("lower_bound", &tc::lower_bound, py::arg("p"), py::arg("M"), py::arg("rho"));
  m.def("upper_bound", &tc::upper_bound, py::arg("p"), py::arg("M"), py::arg("rho"));
  m.def("m_tilde", &tc::m_tilde);
  m.def("brute_force_optimum", [](const tc::Pmf& p, std::uint64_t M, double rho) {
    auto r = tc::brute_force_optimum(p, M, rho);
    return py::make_tuple(r.moment, r.partition);
  }, py::arg("p"), py::arg("M"), py::arg("rho"));
  m.def("description_count", [](unsigned n, const py::object& rate) {
    return tc::description_count(n, to_rate(rate));
  });
  m.def("block_experiment", [](const tc::JointLaw& law, const py::object& rate, double rho) {
    return report_dict(tc::block_experiment(law, to_rate(rate), rho));
  }, py::arg("law"), py::arg("rate"), py::arg("rho"));

  m.def("sundaresan_divergence", [](const tc::Pmf& p, const tc::Pmf& q, double alpha) {
    return tc::sundaresan_divergence(p, q, alpha).value;
  }, py::arg("p"), py::arg("q"), py::arg("alpha"));
  m.def("renyi_divergence", &tc::renyi_divergence);
  m.def("divergence_limits", [](const tc::Pmf& p, const tc::Pmf& q) {
    const auto l = tc::divergence_limits(p, q);
    py::dict d;
    d["at_zero"] = l.at_zero;
    d["at_one"] = l.at_one;
    d["at_infinity"] = l.at_infinity;
    d["probe_zero"] = l.probe_zero;
    d["probe_below_one"] = l.probe_below_one;
    d["probe_above_one"] = l.probe_above_one;
    d["probe_infinity"] = l.probe_infinity;
    d["probes_agree"] = l.probes_agree;
    return d;
  });
  m.def("product_additivity_check", &tc::product_additivity_check, py::arg("p"),
        py::arg("q"), py::arg("alpha"), py::arg("n"),
        py::arg("cap") = tc::kDefaultEnumerationCap);
  m.def("mismatched_bound", [](const tc::Pmf& p, const tc::Pmf& q, std::uint64_t M,
                               double rho) {
    auto r = tc::mismatched_bound(p, q, M, rho);
    return py::make_tuple(r.bound, r.moment, r.divergence, r.encoder);
  }, py::arg("p"), py::arg("q"), py::arg("M"), py::arg("rho"));
  m.def("mismatched_block_experiment",
        [](const tc::Pmf& p, const tc::Pmf& q, const py::object& rate, double rho,
           unsigned n) {
          return report_dict(tc::mismatched_block_experiment(p, q, to_rate(rate), rho, n));
        },
        py::arg("p"), py::arg("q"), py::arg("rate"), py::arg("rho"), py::arg("n"));
}
