// Python bindings. Exact values cross the boundary as fractions.Fraction;
// decimal inputs (eps, density) are strings so nothing is rounded.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mfas/cli.hpp"
#include "mfas/covering.hpp"
#include "mfas/error.hpp"
#include "mfas/generator.hpp"
#include "mfas/instance.hpp"
#include "mfas/oracle.hpp"
#include "mfas/repair.hpp"
#include "mfas/solution.hpp"

namespace py = pybind11;
using namespace mfas;

namespace {

using ArcList = std::vector<std::pair<Vertex, Vertex>>;

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::str(r.str()));
}
py::object fraction(const Cost& c) { return fraction(c.to_rational()); }

DeltaSolution delta_of(const Instance& inst, const ArcList& arcs) {
  DeltaSolution d(inst.size());
  for (auto [i, j] : arcs) {
    if (i >= inst.size() || j >= inst.size() || i == j) fail(ErrorCode::kFormat, "arc out of range");
    d.set({i, j}, true);
  }
  require_compatible(d, inst);
  return d;
}

ArcList arcs_of(const DeltaSolution& d) {
  ArcList out;
  for (const Arc& a : d.support()) out.emplace_back(a.from, a.to);
  return out;
}

ArcList arcs_of(const std::vector<Arc>& v) {
  ArcList out;
  for (const Arc& a : v) out.emplace_back(a.from, a.to);
  return out;
}

py::list violations_of(const std::vector<Violation>& vs) {
  py::list out;
  for (const Violation& v : vs) {
    py::dict d;
    d["kind"] = std::string(to_string(v.kind));
    d["arcs"] = arcs_of(v.arcs);
    d["witnesses"] = arcs_of(v.witnesses);
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_mfas, m) {
  m.doc() = "Precedence-constrained minimum feedback arc set: cover relaxation and repair";
  m.attr("ENGINE") = std::string(kEngine);

  static py::exception<Error> error(m, "MfasError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const auto type = py::reinterpret_borrow<py::object>(error.ptr());
      py::object exc = type(py::str(std::string(to_string(e.code())) + ": " + e.what()));
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def_static("parse", [](const std::string& text) { return parse_instance_text(text); })
      .def_static("read", &read_instance_file)
      .def_static("bundled", [](const std::string& name) { return bundled_instance(name); })
      .def_static(
          "generate",
          [](Vertex n, std::uint64_t seed, const std::string& density, const std::string& mode, int k) {
            GenSpec g;
            g.n = n;
            g.seed = seed;
            g.poset_density = parse_decimal_rational(density);
            g.mode = parse_gen_mode(mode);
            g.k = k;
            return generate(g);
          },
          py::arg("n"), py::arg("seed"), py::arg("density") = "0", py::arg("mode") = "hemimetric_closure",
          py::arg("k") = 3)
      .def_property_readonly("n", &Instance::size)
      .def("weight", [](const Instance& inst, Vertex i, Vertex j) { return fraction(Cost(inst.w(i, j))); })
      .def("poset_pairs", [](const Instance& inst) { return arcs_of(inst.poset().pairs()); })
      .def("digest", &instance_digest)
      .def("serialize", &serialize_instance)
      .def("is_hemimetric", [](const Instance& inst) { return validate_hemimetric(inst, 1).is_hemimetric; })
      .def("is_kgonal", [](const Instance& inst, int k) { return validate_kgonal(inst, k).is_hemimetric; })
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& inst) {
        return "<mfas.Instance n=" + std::to_string(inst.size()) + " digest=" + instance_digest(inst) + ">";
      });

  m.def(
      "solve",
      [](const Instance& inst, bool bound, const std::string& eps) {
        SolveOptions opts;
        opts.with_bound = bound;
        opts.eps = parse_decimal_rational(eps);
        const SolveReport r = solve_pipeline(inst, opts);
        py::dict d;
        d["order"] = r.order.order;
        d["total_cost"] = fraction(r.total_cost);
        d["variable_cost"] = fraction(r.variable_cost);
        d["fixed_cost"] = fraction(r.fixed_cost);
        d["cover_cost"] = fraction(r.cover_cost);
        d["iterations"] = r.iterations;
        d["contradicting_initial"] = r.contradicting_initial;
        if (r.lower_bound) d["lower_bound"] = fraction(*r.lower_bound);
        if (r.guarantee_certified) d["guarantee_certified"] = *r.guarantee_certified;
        return d;
      },
      py::arg("instance"), py::arg("bound") = false, py::arg("eps") = "0.05");

  m.def(
      "exact",
      [](const Instance& inst) {
        const OracleResult r = exact_min_extension(inst);
        py::dict d;
        d["order"] = r.best_perm.order;
        d["total_cost"] = fraction(r.best_total_cost);
        d["variable_cost"] = fraction(r.best_variable_cost);
        d["states_explored"] = r.explored;
        return d;
      },
      py::arg("instance"));

  m.def(
      "exact_cover",
      [](const Instance& inst) {
        const CoverOracleResult r = exact_min_cover(inst);
        return py::make_tuple(arcs_of(r.delta), fraction(r.variable_cost));
      },
      py::arg("instance"), "Minimum-cost 0/1 cover as (arcs, variable cost).");

  m.def(
      "bound",
      [](const Instance& inst, const std::string& eps) {
        const FractionalBound b = mwu_fractional_cover(inst, parse_decimal_rational(eps));
        return py::make_tuple(fraction(b.lower_bound), fraction(b.primal_value));
      },
      py::arg("instance"), py::arg("eps") = "0.05", "(lower bound, fractional cover value).");

  m.def(
      "cover", [](const Instance& inst) { return arcs_of(minimalize(primal_dual_cover(inst), inst)); },
      py::arg("instance"), "Minimal primal-dual cover.");

  m.def(
      "repair",
      [](const Instance& inst, const ArcList& arcs) {
        const RepairResult r = repair(delta_of(inst, arcs), inst);
        const DeltaSolution& d = r.delta;
        return py::make_tuple(permutation_from_delta(d, inst).order, fraction(variable_cost(d, inst)),
                              r.trace.iterations.size());
      },
      py::arg("instance"), py::arg("arcs"), "(order, variable cost, iterations).");

  m.def(
      "check",
      [](const Instance& inst, const ArcList& arcs, const std::string& formulation, int max_cycle) {
        const DeltaSolution d = delta_of(inst, arcs);
        if (formulation == "fas") return violations_of(check_fas_feasible(d, inst));
        if (formulation == "cover") return violations_of(check_cover_feasible(d, inst));
        if (formulation == "cycles") return violations_of(check_alternating_cycles(d, inst, max_cycle));
        fail(ErrorCode::kUnknownName, "unknown formulation: " + formulation);
      },
      py::arg("instance"), py::arg("arcs"), py::arg("formulation") = "cover", py::arg("max_cycle") = 3);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a command-line subcommand; returns (exit code, stdout, stderr).");
}
