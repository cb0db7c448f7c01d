#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "ordertop/completion.hpp"
#include "ordertop/convergence.hpp"
#include "ordertop/errors.hpp"
#include "ordertop/gallery.hpp"
#include "ordertop/io.hpp"
#include "ordertop/measure.hpp"
#include "ordertop/poset.hpp"

namespace py = pybind11;
using namespace ordertop;

namespace {

py::object to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<StepFunction> parse_all(const std::vector<std::string>& texts) {
  std::vector<StepFunction> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(StepFunction::parse(t));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "OrdertopError", PyExc_ValueError);

  py::class_<FinitePoset>(m, "Poset")
      .def_static("parse", &parse_poset, py::arg("text"))
      .def_static("from_covers", &FinitePoset::from_covers, py::arg("labels"), py::arg("covers"))
      .def("__len__", &FinitePoset::size)
      .def_property_readonly("labels", &FinitePoset::labels)
      .def("leq",
           [](const FinitePoset& p, const std::string& a, const std::string& b) {
             return p.leq(p.index_of(a), p.index_of(b));
           })
      .def("covers",
           [](const FinitePoset& p) {
             std::vector<std::pair<std::string, std::string>> out;
             for (auto [a, b] : p.covers()) out.emplace_back(p.label(a), p.label(b));
             return out;
           })
      .def("is_lattice", [](const FinitePoset& p) { return is_lattice(p); })
      .def("to_text", [](const FinitePoset& p) { return format_poset(p); })
      .def("to_dot", [](const FinitePoset& p) { return to_dot(p); });

  m.def("random_poset", &random_poset, py::arg("n"), py::arg("density"), py::arg("seed"));

  m.def(
      "complete",
      [](const FinitePoset& p) {
        auto c = dm_complete(p);
        py::dict d;
        py::list cuts;
        for (const auto& cut : c.cuts) cuts.append(p.labels_of(cut));
        py::dict embedding;
        for (Element x = 0; x < p.size(); ++x) embedding[py::str(p.label(x))] = c.embedding[x];
        d["cuts"] = cuts;
        d["embedding"] = embedding;
        d["lattice"] = c.lattice;
        return d;
      },
      py::arg("poset"));

  m.def(
      "verify_dm",
      [](const FinitePoset& p, std::size_t exhaustive_bound, std::uint64_t seed) {
        VerifyOptions opts;
        opts.exhaustive_bound = exhaustive_bound;
        opts.seed = seed;
        auto r = verify_completion_properties(dm_complete(p), opts);
        py::dict d;
        d["all_pass"] = r.all_pass();
        d["exhaustive"] = r.exhaustive;
        d["properties"] = to_py(to_json(r));
        return d;
      },
      py::arg("poset"), py::arg("exhaustive_bound") = 8, py::arg("seed") = 1);

  m.def(
      "converges",
      [](const FinitePoset& p, const std::string& seq, const std::string& target,
         const std::string& mode) {
        auto md = parse_mode(mode);
        if (!md) throw py::value_error("unknown mode: " + mode);
        return converges(p, parse_lasso(p, seq), p.index_of(target), *md).converges;
      },
      py::arg("poset"), py::arg("seq"), py::arg("target"), py::arg("mode") = "o3");

  m.def(
      "wolk_certificates",
      [](std::size_t n, std::size_t bound) {
        py::list out;
        out.append(to_py(wolk_no_directed_sup_one(n, bound).to_json()));
        out.append(to_py(wolk_o3_to_top(n).to_json()));
        return out;
      },
      py::arg("n"), py::arg("exhaustive_bound") = 8);

  m.def(
      "olejcek_certificates",
      [](std::size_t k, std::size_t n, std::size_t window_start) {
        py::list out;
        out.append(to_py(olejcek_zero_sequence_converges(k, n, window_start).to_json()));
        out.append(to_py(olejcek_b_set_o1_closed(k, n).to_json()));
        return out;
      },
      py::arg("k"), py::arg("n"), py::arg("window_start") = 2);

  py::class_<StepFunction>(m, "StepFunction")
      .def_static("parse", &StepFunction::parse, py::arg("text"))
      .def("to_text", &StepFunction::to_text)
      .def("integral", [](const StepFunction& f) { return to_string(integral(f)); })
      .def("__add__", [](const StepFunction& a, const StepFunction& b) { return a + b; })
      .def("__sub__", [](const StepFunction& a, const StepFunction& b) { return a - b; })
      .def("__mul__", [](const StepFunction& a, const StepFunction& b) { return a * b; })
      .def("__eq__", [](const StepFunction& a, const StepFunction& b) { return a == b; })
      .def("__repr__", [](const StepFunction& f) { return "StepFunction('" + f.to_text() + "')"; });

  m.def(
      "pairing",
      [](const StepFunction& f, const StepFunction& g) { return to_string(pairing(f, g)); },
      py::arg("f"), py::arg("g"));

  m.def(
      "t5_escape",
      [](const std::vector<std::string>& generators, std::size_t depth, const std::string& gauge) {
        EscapeGauge gg;
        if (gauge == "solid")
          gg = EscapeGauge::Solid;
        else if (gauge == "hull")
          gg = EscapeGauge::Hull;
        else
          throw py::value_error("gauge must be 'solid' or 'hull'");
        auto w = t5_escape_witness(parse_all(generators), depth, gg);
        py::dict d;
        d["m"] = w.m;
        d["n"] = w.n;
        d["gamma"] = to_string(w.gamma);
        return d;
      },
      py::arg("generators"), py::arg("depth") = 128, py::arg("gauge") = "solid");

  m.def(
      "sigma_pq_separation",
      [](unsigned p, unsigned q, const std::string& alpha, std::size_t depth,
         const std::string& epsilon) {
        return to_py(
            sigma_pq_separation(p, q, parse_rational(alpha), depth, parse_rational(epsilon))
                .to_json());
      },
      py::arg("p"), py::arg("q"), py::arg("alpha"), py::arg("depth"), py::arg("epsilon") = "1/10");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "ordertop");
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
