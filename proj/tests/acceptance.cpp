// Acceptance gate: nine end-to-end criteria, one PASS/FAIL line each.
// Exit status is the number of failed criteria.
#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include <ellshell/report.hpp>

using namespace ellshell;

namespace {

struct Gate {
  bool ok = true;
  int rows = 0;
  double worst_max = 0.0;    // largest value among <= gated rows
  double worst_dev = 0.0;    // largest |value - target| among band rows
  double worst_min = 1e300;  // smallest value among >= gated rows
};

bool id_matches(const std::string& id, const std::string& pat) {
  if (!pat.empty() && pat.back() == '*')
    return id.rfind(pat.substr(0, pat.size() - 1), 0) == 0;
  return id == pat;
}

void gate_max(Gate& g, const std::vector<CheckResult>& rows, const std::string& pat,
              double tol) {
  for (const CheckResult& r : rows)
    if (id_matches(r.id, pat)) {
      ++g.rows;
      g.worst_max = std::max(g.worst_max, r.value);
      if (!(r.value <= tol)) g.ok = false;
    }
}

void gate_min(Gate& g, const std::vector<CheckResult>& rows, const std::string& pat,
              double floor) {
  for (const CheckResult& r : rows)
    if (id_matches(r.id, pat)) {
      ++g.rows;
      g.worst_min = std::min(g.worst_min, r.value);
      if (!(r.value >= floor)) g.ok = false;
    }
}

void gate_band(Gate& g, const std::vector<CheckResult>& rows, const std::string& pat,
               double target, double width) {
  for (const CheckResult& r : rows)
    if (id_matches(r.id, pat)) {
      ++g.rows;
      const double dev = std::fabs(r.value - target);
      g.worst_dev = std::max(g.worst_dev, dev);
      if (!(dev <= width)) g.ok = false;
    }
}

int report(int idx, const Gate& g, const std::string& what, const std::string& detail) {
  const bool ok = g.ok && g.rows > 0;
  std::printf("[%d] %s  %s (%s%s)\n", idx, ok ? "PASS" : "FAIL", what.c_str(),
              detail.c_str(), g.rows == 0 ? "; no matching checks ran" : "");
  std::fflush(stdout);
  return ok ? 0 : 1;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

}  // namespace

int main() {
  int failed = 0;

  // dense geometry sweep over four shapes, prolate through strongly oblate
  RunConfig geo_cfg;
  geo_cfg.a_values = {0.5, 1.0, 2.0, 5.0};
  geo_cfg.samples = 1000;
  geo_cfg.seed = 20260813;
  const auto geo = run_suite("geometry", geo_cfg);
  const auto idn = run_suite("identities", geo_cfg);

  {
    Gate g;
    gate_max(g, geo, "geometry.frame_orthonormality", 1e-12);
    gate_max(g, geo, "geometry.chart_frame_coincidence", 1e-12);
    gate_max(g, geo, "geometry.frame_component_roundtrip", 1e-12);
    gate_max(g, geo, "geometry.metric_inverse", 1e-12);
    const double exact_worst = g.worst_max;
    gate_max(g, geo, "geometry.metric_vs_embedding_fd", 1e-6);
    gate_max(g, geo, "geometry.weingarten_eigen", 1e-6);
    gate_max(g, idn, "identities.helpful_formulas", 1e-6);
    gate_band(g, geo, "geometry.weingarten_fd_slope", 2.0, 0.2);
    failed += report(1, g,
                     "frames, charts, metrics exact; Weingarten and profile "
                     "identities hold under FD with quadratic slope",
                     "closed-form " + fmt(exact_worst) + ", FD " + fmt(g.worst_max) +
                         ", slope dev " + fmt(g.worst_dev));
  }
  {
    Gate g;
    gate_max(g, geo, "geometry.c313_triple", 1e-6);
    gate_max(g, geo, "geometry.sphere_c_vanishes", 1e-15);
    failed += report(2, g,
                     "structure function: three independent representations "
                     "agree, identically zero on the sphere",
                     "worst gap " + fmt(g.worst_max));
  }

  RunConfig bc_cfg;
  bc_cfg.a_values = {0.5, 1.0, 2.0};
  bc_cfg.samples = 200;
  bc_cfg.seed = 20260813;
  const auto bnd = run_suite("boundary", bc_cfg);
  {
    Gate g;
    gate_max(g, bnd, "boundary.navier_routes", 1e-6);
    gate_max(g, bnd, "boundary.hodge_routes", 1e-6);
    gate_max(g, bnd, "boundary.nh_relation", 1e-6);
    failed += report(3, g,
                     "boundary-condition routes agree pairwise on tangential "
                     "fields; one-form/vector bridge holds",
                     "worst gap " + fmt(g.worst_max));
  }

  RunConfig lim_cfg;
  lim_cfg.a_values = {1.0, 2.0};
  lim_cfg.samples = 100;
  lim_cfg.seed = 20260813;
  const auto lim = run_suite("limits", lim_cfg);
  {
    Gate g;
    gate_max(g, lim, "limits.gauss_formula", 1e-5);
    failed += report(4, g,
                     "tangential Laplacian decomposition matches the extrinsic "
                     "FD oracle termwise",
                     "worst residual " + fmt(g.worst_max));
  }

  RunConfig op_cfg;
  op_cfg.a_values = {0.5, 1.0, 2.0};
  op_cfg.samples = 200;
  op_cfg.seed = 20260813;
  const auto ops = run_suite("operators", op_cfg);
  {
    Gate g;
    gate_max(g, ops, "operators.route_agreement.*", 1e-5);
    const double routes_worst = g.worst_max;
    gate_max(g, ops, "operators.key1", 1e-6);
    gate_max(g, ops, "operators.difference_o1_o3", 1e-6);
    gate_max(g, ops, "operators.difference_o2_o4", 1e-6);
    failed += report(5, g,
                     "structural and coefficient routes agree for all seven "
                     "operators; advection lemma and candidate differences hold",
                     "routes " + fmt(routes_worst) + ", lemmas " + fmt(g.worst_max));
  }
  {
    Gate g;
    gate_max(g, ops, "operators.sphere_collapse", 1e-10);
    gate_max(g, ops, "operators.killing_annihilation", 1e-6);
    failed += report(6, g,
                     "limit candidates collapse to their base operators on the "
                     "sphere; rotation field annihilated for every shape",
                     "worst " + fmt(g.worst_max));
  }
  {
    Gate g;
    gate_max(g, lim, "limits.replay.*", 1e-4);
    const double replay_worst = g.worst_max;
    gate_band(g, lim, "limits.replay_slope.*", 2.0, 0.3);
    gate_min(g, lim, "limits.replay_negative_control", 10.0);
    failed += report(7, g,
                     "derivation replay: oracle matches the intrinsic operator "
                     "for all six scenarios, residual decays as h^2, corrupted "
                     "jets detected",
                     "residual " + fmt(replay_worst) + ", slope dev " + fmt(g.worst_dev) +
                         ", detection ratio " + fmt(g.worst_min));
  }
  {
    // solved jets: either a measurable quadratic decay of the outer-leaf
    // relation, or (degenerate shapes) the relation holds at roundoff
    Gate g;
    for (const CheckResult& r : lim)
      if (id_matches(r.id, "limits.eps_audit.*")) {
        ++g.rows;
        if (r.kind == "min") {
          g.worst_min = std::min(g.worst_min, r.value);
          if (!(r.value >= 1.8)) g.ok = false;
        } else {
          g.worst_max = std::max(g.worst_max, r.value);
          if (!(r.value <= 1e-12)) g.ok = false;
        }
      }
    const double solved_slope = g.worst_min;
    Gate gn;
    gate_max(gn, lim, "limits.eps_audit_negative", 0.5);
    g.ok = g.ok && gn.ok;
    g.rows += gn.rows;
    failed += report(8, g,
                     "outer-leaf matching relation decays quadratically for "
                     "solved jets and stalls for unsolved ones",
                     "solved slope " + fmt(solved_slope) + ", unsolved |slope| " +
                         fmt(gn.worst_max));
  }
  {
    RunConfig det_cfg;
    det_cfg.a_values = {2.0};
    det_cfg.samples = 25;
    det_cfg.seed = 99;
    const RunMeta meta{"verify", ""};
    const std::string r1 = report_json(meta, det_cfg, run_all(det_cfg));
    const std::string r2 = report_json(meta, det_cfg, run_all(det_cfg));
    Gate g;
    g.rows = 1;
    g.ok = (r1 == r2) && !r1.empty();
    failed += report(9, g, "verification reports are byte-stable across identical runs",
                     r1 == r2 ? "identical" : "mismatch");
  }

  std::printf("%d of 9 criteria failed\n", failed);
  return failed;
}
