#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <ellshell/geometry.hpp>

namespace ellshell {

constexpr double kDefaultH1 = 1e-4;  // first-derivative FD step (angles, radial)
constexpr double kDefaultH2 = 1e-3;  // second-derivative / Cartesian stencil step

// Scalar field on the surface, f(phi, theta). Carries optional analytic
// partials; d_phi/d_theta fall back to centered FD when they are absent, so
// derived quantities can be differentiated uniformly.
struct ScalarField {
  using Fn = std::function<double(double, double)>;
  Fn f, fp, ft, fpp, fpt, ftt;

  ScalarField() : ScalarField(0.0) {}
  explicit ScalarField(double c) {
    f = [c](double, double) { return c; };
    fp = ft = fpp = fpt = ftt = [](double, double) { return 0.0; };
  }
  explicit ScalarField(Fn fn) : f(std::move(fn)) {}
  double operator()(double phi, double theta) const { return f(phi, theta); }

  ScalarField d_phi(double h = kDefaultH1) const;
  ScalarField d_theta(double h = kDefaultH1) const;
};

// Trigonometric polynomials coef * sin^p(phi) cos^q(phi) * {cos,sin}(m theta):
// closed under both partial derivatives, which makes preset fields analytic to
// every order that the tests differentiate.
struct TrigTerm {
  double coef;
  int p, q, m;
  bool is_cos;  // theta factor cos(m theta) if true, sin(m theta) otherwise
};

struct TrigPoly {
  std::vector<TrigTerm> terms;

  double eval(double phi, double theta) const;
  TrigPoly d_phi() const;
  TrigPoly d_theta() const;
  TrigPoly scaled(double s) const;
  // divide by sin(phi); requires every term to carry p >= 1
  TrigPoly div_sin() const;
  ScalarField field() const;  // analytic partials through second order
};

// Tangential vector field on E, stored as frame components (c1 along e1,
// c2 along e2). Musical isomorphisms are the identity on these components.
struct TangentField {
  ScalarField c1, c2;
};

// Tangential values at a point.
struct TanVec {
  double c1 = 0.0, c2 = 0.0;

  TanVec operator+(const TanVec& o) const { return {c1 + o.c1, c2 + o.c2}; }
  TanVec operator-(const TanVec& o) const { return {c1 - o.c1, c2 - o.c2}; }
  TanVec operator*(double s) const { return {c1 * s, c2 * s}; }
};
inline double norm(const TanVec& v) { return std::hypot(v.c1, v.c2); }

// Vector field on the shell band, evaluated in Cartesian components. The
// closure receives chart coordinates; ambient_eval converts Cartesian points.
struct AmbientField {
  Chart chart = Chart::Scaling;
  std::function<Vec3(const ShellPoint&)> eval;
};

Vec3 ambient_eval(const EllipsoidParams& par, const AmbientField& v, const Vec3& x);
inline Vec3 ambient_eval(const AmbientField& v, const ShellPoint& q) { return v.eval(q); }

std::array<double, 3> frame_components(const EllipsoidParams& par, const Vec3& v,
                                       const ShellPoint& q);

// ---- surface calculus in the orthonormal frame ----

// e1(f) = f_phi / lambda, e2(f) = f_theta / (a sin phi) on E.
ScalarField e1_of(const EllipsoidParams& par, const ScalarField& f, double h = kDefaultH1);
ScalarField e2_of(const EllipsoidParams& par, const ScalarField& f, double h = kDefaultH1);

// Covariant derivative along a frame direction as a field; nonzero connection
// coefficients are Gamma^2_{21} = -Gamma^1_{22} = cot(phi)/lambda.
TangentField covar_e1(const EllipsoidParams& par, const TangentField& u, double h = kDefaultH1);
TangentField covar_e2(const EllipsoidParams& par, const TangentField& u, double h = kDefaultH1);

TanVec covar_surface(const EllipsoidParams& par, const TangentField& x,
                     const TangentField& y, const SurfacePoint& p, double h = kDefaultH1);

TangentField surface_lie_bracket(const EllipsoidParams& par, const TangentField& x,
                                 const TangentField& y, double h = kDefaultH1);

ScalarField div_surface(const EllipsoidParams& par, const TangentField& u, double h = kDefaultH1);

// two-form coefficient of d(u_flat): e1(u2) - e2(u1) + gamma*u2
ScalarField curl2_surface(const EllipsoidParams& par, const TangentField& u, double h = kDefaultH1);

// Symmetric surface 2-tensor in the frame.
struct SymTensorField {
  ScalarField t11, t12, t22;
};
SymTensorField deformation_surface(const EllipsoidParams& par, const TangentField& u,
                                   double h = kDefaultH1);
TangentField div_sym_tensor(const EllipsoidParams& par, const SymTensorField& t,
                            double h = kDefaultH1);

// Lie derivative of the one-form u_flat along x, components on {e1,e2}:
// route "covariant":  (L_x u)_i = g(covar_x u, e_i) + g(u, covar_{e_i} x)
// route "cartan":     i_x d(u_flat) + d i_x(u_flat)
TanVec lie_deriv_oneform_covariant(const EllipsoidParams& par, const TangentField& x,
                                   const TangentField& u, const SurfacePoint& p,
                                   double h = kDefaultH1);
TanVec lie_deriv_oneform_cartan(const EllipsoidParams& par, const TangentField& x,
                                const TangentField& u, const SurfacePoint& p,
                                double h = kDefaultH1);

// ---- ambient (Cartesian) finite-difference calculus ----

Vec3 dir_deriv_cart(const EllipsoidParams& par, const AmbientField& v, const Vec3& x,
                    const Vec3& dir, double h = kDefaultH1);
Mat3 jacobian_cart(const EllipsoidParams& par, const AmbientField& v, const Vec3& x,
                   double h = kDefaultH1);
double divergence_cart(const EllipsoidParams& par, const AmbientField& v, const Vec3& x,
                       double h = kDefaultH1);
Vec3 curl_cart(const EllipsoidParams& par, const AmbientField& v, const Vec3& x,
               double h = kDefaultH1);
Vec3 lie_bracket_cart(const EllipsoidParams& par, const AmbientField& xf,
                      const AmbientField& yf, const Vec3& x, double h = kDefaultH1);

// Normal derivative of a shell scalar: two-term chart formula
// n(f) = (lambda/a) f_rho + a rho g^{rho phi} e1(f), vs. Cartesian FD along
// the normal line (the test oracle).
double n_deriv_intrinsic(const EllipsoidParams& par,
                         const std::function<double(const ShellPoint&)>& f,
                         const ShellPoint& q, double h = kDefaultH1);
double n_deriv_cartesian(const EllipsoidParams& par,
                         const std::function<double(const Vec3&)>& f, const Vec3& x,
                         const Vec3& n, double h = kDefaultH1);

// ---- exterior-algebra identities in R^3 (component bookkeeping) ----

// | alpha_sharp x beta_sharp - star(alpha wedge beta) | via independent
// wedge/star index manipulation; exact up to roundoff.
double cross_wedge_residual(const Vec3& alpha, const Vec3& beta);

// | curl v - (star d v_flat)_sharp | at x; both sides share the FD Jacobian,
// the residual checks the star/sharp bookkeeping.
double curl_star_residual(const EllipsoidParams& par, const AmbientField& v, const Vec3& x,
                          double h = kDefaultH1);

// ---- preset field library ----

// Names: "rotation" (azimuthal a sin(phi) e2), "meridian" (sin^2(phi) e1),
// "mixed:m=<int>", "random:seed=<u64>", "stream:seed=<u64>" (divergence-free,
// rotated gradient of a random stream function). Throws std::invalid_argument
// on unknown names.
TangentField preset_field(const EllipsoidParams& par, const std::string& name);

// Random tangential field with polynomial-trig components (not div-free).
TangentField random_field(const EllipsoidParams& par, std::uint64_t seed);

// Divergence-free field from a random stream function psi: u = (-e2 psi, e1 psi).
TangentField random_divfree_field(const EllipsoidParams& par, std::uint64_t seed);
TangentField stream_to_field(const EllipsoidParams& par, const TrigPoly& psi);

double max_surface_divergence(const EllipsoidParams& par, const TangentField& u,
                              int n_samples, std::uint64_t seed, double delta_pole,
                              double h = kDefaultH1);

// Scalar multiple that preserves whichever analytic partials are present.
ScalarField scaled_field(const ScalarField& f, double s);
TangentField scaled_field(const TangentField& u, double s);

}  // namespace ellshell
