#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ahm/energy.hpp"
#include "ahm/errors.hpp"
#include "ahm/map_model.hpp"
#include "ahm/mobius.hpp"
#include "ahm/radial.hpp"
#include "ahm/verify.hpp"

namespace py = pybind11;
using namespace ahm;

namespace {

RadialProfile make_profile(int n, std::vector<double> values) {
  return RadialProfile(n, std::move(values));
}

py::dict solve_dict(const SolveResult& r) {
  py::dict d;
  d["alpha"] = r.alpha;
  d["energy"] = r.energy;
  d["residual_sup"] = r.residual_sup;
  d["grad_norm"] = r.grad_norm;
  d["degree_int"] = r.degree_int;
  d["r1"] = r.r1;
  d["r2"] = r.r2;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["status"] = r.status;
  d["profile"] = std::vector<double>(r.profile.values().begin(), r.profile.values().end());
  d["energy_trace"] = r.energy_trace;
  return d;
}

py::dict bound_dict(const BoundCheck& b) {
  py::dict d;
  d["name"] = b.name;
  d["lhs"] = b.lhs;
  d["rhs"] = b.rhs;
  d["margin"] = b.margin;
  d["passed"] = b.passed;
  d["regime"] = to_string(b.regime);
  d["constant"] = b.constant;
  return d;
}

MapHandle named_map(const std::string& name) {
  if (name == "identity") return identity_map();
  if (name == "constant") return constant_map();
  if (name == "conjugation") return conjugation_map();
  throw DomainError("unknown map '" + name + "'");
}

py::dict report_dict(const EnergyReport& r) {
  py::dict d;
  d["alpha"] = r.alpha;
  d["e_alpha"] = r.e_alpha;
  d["e_dirichlet_plus_area"] = r.e_dirichlet_plus_area;
  d["degree"] = r.degree;
  d["degree_int"] = r.degree_int;
  d["degree_near_integer"] = r.degree_near_integer;
  d["floor_2_2a1_pi"] = r.floor_2_2a1_pi;
  d["passes_floor"] = r.passes_floor;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Alpha-energy of maps between 2-spheres";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DegenerateMatrixError>(m, "DegenerateMatrixError", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
  py::register_exception<ShotFailedError>(m, "ShotFailedError", PyExc_ArithmeticError);

  py::class_<MobiusElement>(m, "Mobius")
      .def(py::init([](Complex a, Complex b, Complex c, Complex d) {
             return MobiusElement::normalized(a, b, c, d);
           }),
           py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_static("dilation", &MobiusElement::dilation)
      .def_readonly("a", &MobiusElement::a)
      .def_readonly("b", &MobiusElement::b)
      .def_readonly("c", &MobiusElement::c)
      .def_readonly("d", &MobiusElement::d)
      .def("__call__", [](const MobiusElement& e, Complex z) {
        const StereoPoint p = mobius_apply(e, StereoPoint::from(z));
        return p.at_infinity ? py::object(py::none()) : py::object(py::cast(p.value()));
      })
      .def("__mul__", [](const MobiusElement& l, const MobiusElement& r) { return l * r; });

  m.def("mobius_svd", [](const MobiusElement& e) {
    const MobiusSVD s = mobius_svd(e);
    return py::make_tuple(s.U, s.lambda, s.V);
  }, "Returns (U, lambda, V) with M = U diag(lambda^1/2, lambda^-1/2) V^*.");
  m.def("norm_grad_log_chi", &norm_grad_log_chi_L2, py::arg("lambda_"));
  m.def("norm_grad_log_chi_bound", &norm_grad_log_chi_bound, py::arg("lambda_"));

  m.def("rotation_energy", &rotation_energy, py::arg("alpha"));
  m.def("dilation_energy", [](double alpha, double lambda) {
    const DilationEnergyResult r = dilation_energy(alpha, lambda);
    py::dict d;
    d["tau"] = r.tau;
    d["sigma"] = r.sigma;
    d["value"] = r.value;
    d["G"] = r.G;
    d["xi"] = r.xi;
    return d;
  }, py::arg("alpha"), py::arg("lambda_"));
  m.def("growth_function", [](double alpha, double sigma) {
    const GrowthValues g = growth_function(alpha, sigma);
    return py::make_tuple(g.G, g.G_prime);
  }, py::arg("alpha"), py::arg("sigma"));
  m.def("xi_bounds", [](double alpha, double lambda) {
    py::list out;
    for (const BoundCheck& b : check_xi_lower_bounds(alpha, lambda)) out.append(bound_dict(b));
    return out;
  }, py::arg("alpha"), py::arg("lambda_"));

  m.def("energy_report", [](const std::string& map, double alpha, int grid_nodes,
                            std::optional<MobiusElement> mobius) {
    MapHandle u = named_map(map);
    if (mobius) u = pullback(u, *mobius);
    return report_dict(energy_report(*u, alpha, make_grid(grid_nodes, grid_nodes)));
  }, py::arg("map"), py::arg("alpha"), py::arg("grid_nodes") = 256,
        py::arg("mobius") = std::nullopt,
        "Energy report of identity/constant/conjugation, optionally pulled back by a Mobius map.");
  m.def("mobius_energy_report", [](const MobiusElement& e, double alpha, int grid_nodes) {
    return report_dict(energy_report(*mobius_map(e), alpha, make_grid(grid_nodes, grid_nodes)));
  }, py::arg("mobius"), py::arg("alpha"), py::arg("grid_nodes") = 256);

  m.def("radial_energy", [](int n, std::vector<double> f, double alpha) {
    return radial_energy(make_profile(n, std::move(f)), alpha);
  }, py::arg("n"), py::arg("profile"), py::arg("alpha"));
  m.def("radial_residual", [](int n, std::vector<double> f, double alpha) {
    const RadialResidual r = radial_residual(make_profile(n, std::move(f)), alpha);
    return py::make_tuple(r.r, r.value, r.sup);
  }, py::arg("n"), py::arg("profile"), py::arg("alpha"));
  m.def("radial_degree", [](int n, std::vector<double> f) {
    return radial_degree(make_profile(n, std::move(f)));
  }, py::arg("n"), py::arg("profile"));
  m.def("minimize_radial", [](double alpha, int n, int cells, const std::string& method,
                              int max_iters, double grad_tol, double residual_tol) {
    SolveOptions o;
    if (method == "newton") o.method = Descent::newton;
    else if (method == "gradient") o.method = Descent::gradient;
    else if (method == "cg") o.method = Descent::conjugate_gradient;
    else throw DomainError("unknown method '" + method + "'");
    o.max_iters = max_iters;
    o.grad_tol = grad_tol;
    o.residual_tol = residual_tol;
    std::optional<SolveResult> r;
    {
      py::gil_scoped_release release;
      r.emplace(minimize_radial(alpha, n, cells, std::nullopt, o));
    }
    return solve_dict(*r);
  }, py::arg("alpha"), py::arg("n"), py::arg("cells"), py::arg("method") = "newton",
        py::arg("max_iters") = 200000, py::arg("grad_tol") = 1e-8, py::arg("residual_tol") = 1e-4);
  m.def("shoot_radial", [](double alpha, int n, double slope0, int cells) {
    const RadialProfile p = shoot_radial(alpha, n, slope0, cells);
    return std::vector<double>(p.values().begin(), p.values().end());
  }, py::arg("alpha"), py::arg("n"), py::arg("slope0"), py::arg("cells"));

  m.def("verify", [](std::vector<int> criteria, std::uint64_t seed) {
    VerifyOptions o;
    o.seed = seed;
    o.only = std::move(criteria);
    VerifyReport report;
    {
      py::gil_scoped_release release;
      report = run_verify(o);
    }
    py::list out;
    for (const CriterionResult& c : report.criteria) {
      py::dict d;
      d["id"] = c.id;
      d["title"] = c.title;
      d["passed"] = c.passed;
      d["checks"] = c.checks;
      d["failures"] = c.failures;
      out.append(d);
    }
    return out;
  }, py::arg("criteria") = std::vector<int>{}, py::arg("seed") = 20240917);
}
