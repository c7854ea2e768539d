#include "wnls/fibering.hpp"

#include <cmath>

namespace wnls {

double fiber_energy(const CoeffSet& c, const Components& v, double t) {
  const double ay = std::isinf(c.a_y) ? 0.0 : c.a_y;
  return 0.5 * ay * v.B + 0.5 * t * t * v.A +
         c.s_p * std::pow(t, 0.5 * c.p * c.d) * v.P +
         c.s_q * std::pow(t, 0.5 * c.q * c.d) * v.R;
}

double fiber_q(const CoeffSet& c, const Components& v, double t) {
  return t * t * v.A +
         0.5 * c.p * c.d * c.s_p * std::pow(t, 0.5 * c.p * c.d) * v.P +
         0.5 * c.q * c.d * c.s_q * std::pow(t, 0.5 * c.q * c.d) * v.R;
}

double fiber_y(const CoeffSet& c, const Components& v, double t) {
  return fiber_q(c, v, t) / t;
}

namespace {

double fiber_y_prime(const CoeffSet& c, const Components& v, double t) {
  const double ep = 0.5 * c.p * c.d - 1.0;
  const double eq = 0.5 * c.q * c.d - 1.0;
  return v.A + 0.5 * c.p * c.d * ep * c.s_p * std::pow(t, ep - 1.0) * v.P +
         0.5 * c.q * c.d * eq * c.s_q * std::pow(t, eq - 1.0) * v.R;
}

}  // namespace

FiberResult find_tstar_scalar(const CoeffSet& c, const Components& v,
                              double tol) {
  if (!(v.A > 0.0))
    throw PreconditionError("find_tstar: zero x-gradient, no fiber map");
  const bool q_focusing = (c.s_q < 0.0 && v.R > 0.0);
  const bool p_focusing = (c.s_p < 0.0 && v.P > 0.0);
  if (!q_focusing && !p_focusing)
    throw PreconditionError(
        "find_tstar: no focusing term present, y(t) has no root");

  FiberResult res;
  // y(t) > 0 for small t (the t A term dominates); double T until y(T) < 0
  double lo = 1e-6, hi = 1.0;
  if (fiber_y(c, v, lo) <= 0.0) {
    // extremely concentrated data; shrink further
    while (lo > 1e-300 && fiber_y(c, v, lo) <= 0.0) lo *= 0.5;
  }
  int guard = 0;
  while (fiber_y(c, v, hi) > 0.0 && guard++ < 2100) hi *= 2.0;
  if (guard >= 2100)
    throw DivergedError("find_tstar: no sign change found while doubling T");
  res.bracket_lo = lo;
  res.bracket_hi = hi;

  // bisection to a loose bracket, then Newton
  double a = lo, b = hi;
  for (int it = 0; it < 80 && (b - a) > 1e-12 * b; ++it) {
    const double mid = 0.5 * (a + b);
    if (fiber_y(c, v, mid) > 0.0)
      a = mid;
    else
      b = mid;
  }
  double t = 0.5 * (a + b);
  for (int it = 0; it < 60; ++it) {
    const double f = fiber_y(c, v, t);
    const double fp = fiber_y_prime(c, v, t);
    if (fp == 0.0) break;
    double tn = t - f / fp;
    if (!(tn > a && tn < b)) tn = 0.5 * (a + b);
    if (fiber_y(c, v, tn) > 0.0)
      a = tn;
    else
      b = tn;
    if (std::abs(tn - t) <= 1e-16 * t) {
      t = tn;
      break;
    }
    t = tn;
  }
  res.t_star = t;
  res.q_at_tstar = fiber_q(c, v, t);
  if (std::abs(res.q_at_tstar) > tol)
    throw DivergedError("find_tstar: |Q(u^{t*})| above tolerance");

  // one sign change of y over a wide log grid around t*
  int changes = 0;
  double prev = fiber_y(c, v, t * 1e-3);
  for (int i = 1; i <= 200; ++i) {
    const double ti = t * 1e-3 * std::pow(1e6, i / 200.0);
    const double yi = fiber_y(c, v, ti);
    if (yi == 0.0) continue;
    if ((prev > 0.0) != (yi > 0.0)) ++changes;
    prev = yi;
  }
  res.unique_sign_change = (changes == 1);
  return res;
}

FiberResult find_tstar(Workspace& ws, const Field& u, const ModelParams& mp,
                       double tol) {
  mp.validate();
  const Components v = compute_components(ws, u, mp.p, mp.q);
  return find_tstar_scalar(core_coeffs(mp), v, tol);
}

std::vector<FiberProfileRow> fiber_profile(Workspace& ws, const Field& u,
                                           const ModelParams& mp,
                                           const std::vector<double>& t_grid) {
  mp.validate();
  const Components v = compute_components(ws, u, mp.p, mp.q);
  const CoeffSet c = core_coeffs(mp);
  std::vector<FiberProfileRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid)
    rows.push_back({t, fiber_energy(c, v, t), fiber_q(c, v, t)});
  return rows;
}

}  // namespace wnls
