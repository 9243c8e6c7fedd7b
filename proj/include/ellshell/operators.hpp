#pragma once

#include <string>

#include <ellshell/fields.hpp>

namespace ellshell {

// The seven second-order operators on tangential fields of E:
//   Bochner  connection Laplacian  (-div grad, positive spectrum)
//   Hodge    d*d + dd* on one-forms
//   DefLap   -2 div Def
//   O1..O4   thin-shell limit candidates:
//     O1 = DefLap u + [c e1, u] + 2 c^2 u^1 e1   (scaling Navier, tangential)
//     O2 = Hodge u + L_{c e1}(u_flat)            (scaling Hodge, tangential)
//     O3 = DefLap u + [c e1, u]                  (scaling Navier, div-free)
//     O4 = Hodge u + L_{c e1}(u_flat) - 2 c^2 u^1 e1  (scaling Hodge, div-free)
// with c = c313. The displayed forms match the coefficient summaries exactly
// on divergence-free u; otherwise they differ by grad(div u) coming from the
// dd* term the Weitzenbock rewrite absorbs.
enum class OperatorKind { Bochner, Hodge, DefLap, O1, O2, O3, O4 };

// Two independent assembly routes per operator. Structural nests the covariant
// derivative / exterior-calculus primitives; Coefficient expands everything
// into scalar frame derivatives with closed-form coefficients.
enum class Route { Structural, Coefficient };

OperatorKind parse_operator(const std::string& tag);  // "bochner", "o1", ...
std::string operator_tag(OperatorKind k);

TanVec apply_operator(const EllipsoidParams& par, OperatorKind kind, Route route,
                      const TangentField& u, const SurfacePoint& p, double h = kDefaultH1);

// Ricci as an endomorphism: gauss curvature times the identity (surface case).
TanVec ricci_op(const EllipsoidParams& par, const TangentField& u, const SurfacePoint& p);

// c313 as a scalar field with analytic first partials.
ScalarField c313_field(const EllipsoidParams& par);

// Residuals for the covariant-derivative lemma of the field c*e1:
//   defining:    (g(w, covar_. (c e1)))_sharp vs covar_w (c e1)
//   closed_form: -covar_w(c e1) vs Ric w + coefficient table * w
struct Key1Residuals {
  double defining = 0.0;
  double closed_form = 0.0;
};
Key1Residuals key1_check(const EllipsoidParams& par, const TangentField& w,
                         const SurfacePoint& p, double h = kDefaultH1);

// The zero-order coefficient tables are encoded both in curvature-interpreted
// form and as rationals in lambda; returns their max pointwise discrepancy.
double coefficient_forms_residual(const EllipsoidParams& par, double phi);

}  // namespace ellshell
