#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <stdexcept>
#include <tuple>

#include <ellshell/report.hpp>

namespace py = pybind11;
using namespace ellshell;

namespace {

Route parse_route(const std::string& r) {
  if (r == "structural") return Route::Structural;
  if (r == "coefficient") return Route::Coefficient;
  throw std::invalid_argument("route must be 'structural' or 'coefficient'");
}

std::map<std::string, double> curvatures_py(double a, double phi) {
  const CurvatureData k = curvatures(EllipsoidParams{a}, phi);
  return {{"kappa1", k.kappa1},
          {"kappa2", k.kappa2},
          {"gauss", k.gauss},
          {"sqrt_gauss", k.sqrt_gauss},
          {"grad_rho_norm", k.grad_rho_norm}};
}

std::map<std::string, std::tuple<double, double, double>> frame_py(double a, double phi,
                                                                   double theta) {
  const Frame f = frame_at(EllipsoidParams{a}, {Chart::Scaling, 1.0, phi, theta});
  auto t = [](const Vec3& v) { return std::make_tuple(v.x, v.y, v.z); };
  return {{"e1", t(f.e1)}, {"e2", t(f.e2)}, {"n", t(f.n)}};
}

std::tuple<double, double> apply_operator_py(double a, const std::string& op,
                                             const std::string& route,
                                             const std::string& field, double phi,
                                             double theta, double h) {
  const EllipsoidParams par{a};
  const TangentField u = preset_field(par, field);
  const TanVec r = apply_operator(par, parse_operator(op), parse_route(route), u,
                                  {phi, theta}, h);
  return {r.c1, r.c2};
}

std::map<std::string, double> replay_py(double a, const std::string& scenario,
                                        const std::string& field, double phi, double theta,
                                        double h1, double h2, int order) {
  const EllipsoidParams par{a};
  const ReplayResult r = replay(par, parse_scenario(scenario), preset_field(par, field),
                                {phi, theta}, h1, h2, order);
  return {{"oracle1", r.oracle.c1},
          {"oracle2", r.oracle.c2},
          {"intrinsic1", r.intrinsic.c1},
          {"intrinsic2", r.intrinsic.c2},
          {"residual", r.residual}};
}

std::string verify_json_py(const std::vector<std::string>& suites,
                           const std::vector<double>& a, int samples, std::uint64_t seed) {
  RunConfig cfg;
  cfg.suites = suites;
  if (!a.empty()) cfg.a_values = a;
  cfg.samples = samples;
  cfg.seed = seed;
  RunMeta meta;
  meta.command = "verify";
  return report_json(meta, cfg, run_all(cfg));
}

}  // namespace

PYBIND11_MODULE(_ellshell, m) {
  m.doc() = "shell calculus on ellipsoids of revolution";
  m.def("lambda_of", [](double a, double phi) { return lambda_of(EllipsoidParams{a}, phi); },
        py::arg("a"), py::arg("phi"), "profile function sqrt(a^2 cos^2 + sin^2)");
  m.def("c313", [](double a, double phi) { return c313(EllipsoidParams{a}, phi); },
        py::arg("a"), py::arg("phi"), "frame structure function, zero on the sphere");
  m.def("sigma_max", [](double a) { return sigma_max(EllipsoidParams{a}); }, py::arg("a"),
        "tube half-width of the normal chart");
  m.def("curvatures", &curvatures_py, py::arg("a"), py::arg("phi"));
  m.def("frame", &frame_py, py::arg("a"), py::arg("phi"), py::arg("theta"));
  m.def("apply_operator", &apply_operator_py, py::arg("a"), py::arg("op"), py::arg("route"),
        py::arg("field"), py::arg("phi"), py::arg("theta"), py::arg("h") = kDefaultH1);
  m.def("replay", &replay_py, py::arg("a"), py::arg("scenario"), py::arg("field"),
        py::arg("phi"), py::arg("theta"), py::arg("h1") = kDefaultH1,
        py::arg("h2") = kDefaultH2, py::arg("order") = 2);
  m.def("verify_json", &verify_json_py, py::arg("suites"), py::arg("a"),
        py::arg("samples") = 50, py::arg("seed") = 42,
        "run the named suites and return the JSON report");
}
