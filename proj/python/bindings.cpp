#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "iccsi/bounds.hpp"
#include "iccsi/codec.hpp"
#include "iccsi/error.hpp"
#include "iccsi/harness.hpp"
#include "iccsi/minrank.hpp"

namespace py = pybind11;
using namespace iccsi;

namespace {

using Rows = std::vector<std::vector<Elem>>;

Matrix matrix_of(const Instance& inst, const Rows& rows) {
  if (rows.empty()) throw ValidationError("matrix must have at least one row");
  return Matrix::from_rows(inst.field(), rows);
}

py::int_ to_py(const BigInt& v) {
  std::ostringstream s;
  s << v;
  return py::int_(py::module_::import("builtins").attr("int")(s.str()));
}

py::object to_py(const Rational& v) {
  return py::module_::import("fractions")
      .attr("Fraction")(to_py(boost::multiprecision::numerator(v)),
                        to_py(boost::multiprecision::denominator(v)));
}

py::dict report_dict(const BoundReport& r) {
  py::dict d;
  d["name"] = r.name;
  py::dict params;
  for (const auto& [k, v] : r.params) params[py::str(k)] = v;
  d["params"] = params;
  d["value"] = to_py(r.value);
  d["raw"] = to_py(r.raw);
  d["decimal"] = r.decimal;
  d["verdict"] = r.verdict ? py::object(py::bool_(*r.verdict)) : py::object(py::none());
  d["warning"] = r.warning;
  return d;
}

py::dict certificate_dict(const EcicCertificate& c) {
  py::dict d;
  d["passed"] = c.passed();
  d["exhaustive"] = c.exhaustive;
  d["checked"] = c.checked;
  d["violations"] = c.violations.size();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Index coding with coded side information";

  static py::exception<BudgetExceeded> budget_exc(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const BudgetExceeded& e) {
      py::set_error(budget_exc, e.what());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def_static("load", &load_instance, py::arg("path"))
      .def_static("parse", [](const std::string& text) { return parse_instance(text); }, py::arg("text"))
      .def_property_readonly("q", [](const Instance& i) { return i.field().q(); })
      .def_property_readonly("t", &Instance::t)
      .def_property_readonly("n", &Instance::n)
      .def_property_readonly("m", &Instance::m)
      .def_property_readonly("sender_dim", &Instance::sender_dim)
      .def("to_json", &serialize_instance)
      .def("__repr__", [](const Instance& i) {
        std::ostringstream s;
        s << "Instance(q=" << i.field().q() << ", t=" << i.t() << ", n=" << i.n() << ", m=" << i.m()
          << ", d_S=" << i.sender_dim() << ")";
        return s.str();
      });

  m.def("min_rank", [](const Instance& inst, std::uint64_t budget) {
    const auto r = min_rank(inst, budget);
    py::dict d;
    d["kappa"] = r.kappa;
    d["witness"] = r.witness.to_rows();
    d["coset_size"] = to_py(r.coset_size);
    return d;
  }, py::arg("instance"), py::arg("budget") = kDefaultBudget);

  m.def("alpha", [](const Instance& inst, std::uint64_t budget) {
    const auto r = alpha(inst, budget);
    py::dict d;
    d["alpha"] = r.alpha;
    d["witness"] = r.witness.empty() ? Rows{} : r.witness.to_rows();
    return d;
  }, py::arg("instance"), py::arg("budget") = kDefaultBudget);

  m.def("realizes_ic", [](const Instance& inst, const Rows& l) { return realizes_ic(matrix_of(inst, l), inst); },
        py::arg("instance"), py::arg("encoder"));

  m.def("verify_ecic", [](const Instance& inst, const Rows& l, std::size_t delta, const std::string& metric) {
    return certificate_dict(verify_ecic(matrix_of(inst, l), inst, delta, parse_metric(metric)));
  }, py::arg("instance"), py::arg("encoder"), py::arg("delta"), py::arg("metric") = "hamming");

  m.def("coset_encoder", [](const Instance& inst) { return coset_encoder(inst).l.to_rows(); },
        py::arg("instance"));
  m.def("concatenated_encoder",
        [](const Instance& inst, std::size_t delta) { return concatenated_encoder(inst, delta).l.to_rows(); },
        py::arg("instance"), py::arg("delta"));

  m.def("length_bracket", [](std::size_t alpha, std::size_t kappa, std::size_t delta, std::uint64_t q) {
    const auto b = alpha_kappa_bracket(alpha, kappa, delta, q);
    return py::make_tuple(b.lower, b.upper ? py::object(py::int_(*b.upper)) : py::object(py::none()));
  }, py::arg("alpha"), py::arg("kappa"), py::arg("delta"), py::arg("q"));

  m.def("zippel_ic_prob",
        [](std::uint64_t q, std::uint64_t m_prime, std::uint64_t n_len, std::uint64_t d_s) {
          return report_dict(zippel_ic_prob(q, m_prime, n_len, d_s));
        },
        py::arg("q"), py::arg("m_prime"), py::arg("length"), py::arg("sender_dim"));
  m.def("subspace_existence_prob",
        [](const std::vector<std::size_t>& w, std::uint64_t d_s, std::uint64_t n_len, std::uint64_t q) {
          return report_dict(subspace_existence_prob(w, d_s, n_len, q));
        },
        py::arg("intersection_dims"), py::arg("sender_dim"), py::arg("length"), py::arg("q"));

  m.def("bound_table", [](const std::string& name) {
    BoundTable table;
    if (name == "ic-by-users") table = BoundTable::IcExistenceByUsers;
    else if (name == "ic-max-users") table = BoundTable::IcExistenceMaxUsers;
    else if (name == "rank-ecic") table = BoundTable::RankEcicExistence;
    else throw ValidationError("unknown table '" + name + "'");
    py::list out;
    for (const auto& row : bound_table(table)) {
      py::dict d = report_dict(row.report);
      d["q"] = row.q;
      d["t"] = row.t;
      d["n"] = row.n;
      d["N"] = row.n_len;
      d["delta"] = row.delta;
      d["m"] = row.m;
      out.append(d);
    }
    return out;
  }, py::arg("name"));

  m.def("simulate_json",
        [](const Instance& inst, const Rows& l, std::size_t delta, const std::string& model,
           std::size_t magnitude, std::size_t pad, std::uint64_t trials, std::uint64_t seed, bool guarantee) {
          SimConfig cfg;
          cfg.delta = delta;
          cfg.model = parse_metric(model) == Metric::Rank ? ErrorModel::Rank : ErrorModel::Hamming;
          cfg.magnitude = magnitude;
          cfg.pad = pad;
          cfg.trials = trials;
          cfg.seed = seed;
          cfg.require_certificate = guarantee;
          const auto enc = make_encoder(inst, matrix_of(inst, l), Provenance::File);
          py::gil_scoped_release release;
          return report_json(run_simulation(inst, enc, cfg));
        },
        py::arg("instance"), py::arg("encoder"), py::arg("delta"), py::arg("model"), py::arg("magnitude"),
        py::arg("pad") = 0, py::arg("trials") = 1000, py::arg("seed") = 1, py::arg("guarantee") = false);
}
