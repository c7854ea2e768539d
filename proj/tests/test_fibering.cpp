#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "wnls/fibering.hpp"
#include "wnls/kernels.hpp"

using namespace wnls;
using namespace wnls::testing;

namespace {

const ModelParams kFF{-1, 5.0, 6.0, 1};

// Closed-form component integrals of exp(-x^2/2) on R x T, d = 1.
Components gaussian_components() {
  Components c;
  c.M = 2 * M_PI * std::sqrt(M_PI);
  c.A = std::pow(M_PI, 1.5);
  c.B = 0.0;
  c.P = 2 * M_PI * std::sqrt(2 * M_PI / 7.0);
  c.R = 2 * M_PI * std::sqrt(2 * M_PI / 8.0);
  return c;
}

// Brute-force bisection oracle on the scalar map written out in full:
// y(t) = t A - pd/(2(p+2)) t^(pd/2-1) P - qd/(2(q+2)) t^(qd/2-1) R
// (focusing-focusing case).
double bisect_oracle(const Components& v, double p, double q, int d) {
  auto y = [&](double t) {
    return t * v.A -
           p * d / (2 * (p + 2)) * std::pow(t, 0.5 * p * d - 1) * v.P -
           q * d / (2 * (q + 2)) * std::pow(t, 0.5 * q * d - 1) * v.R;
  };
  double lo = 1e-8, hi = 1.0;
  while (y(hi) > 0) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (y(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("t* against the closed-form bisection oracle") {
  const Components v = gaussian_components();
  const double t_oracle = bisect_oracle(v, kFF.p, kFF.q, kFF.d);
  auto res = find_tstar_scalar(core_coeffs(kFF), v, 1e-9);
  CHECK(std::abs(res.t_star - t_oracle) <= 1e-10 * t_oracle);
  CHECK(res.unique_sign_change);

  // and through the field path, within quadrature error
  auto g = make_grid(1, 16 * M_PI, 256, 32);
  Workspace ws(g);
  Field u = gaussian_field(g);
  auto resf = find_tstar(ws, u, kFF, 1e-8);
  CHECK(std::abs(resf.t_star - t_oracle) <= 1e-6 * t_oracle);
}

TEST_CASE("t* = 1 iff Q = 0; t* < 1 iff Q < 0") {
  const CoeffSet c = core_coeffs(kFF);
  Components v = gaussian_components();
  auto base = find_tstar_scalar(c, v, 1e-9);

  // components of u^{t*} via the exact scaling laws: now Q = 0 and t* = 1
  Components w;
  const double t = base.t_star;
  w.M = v.M;
  w.B = v.B;
  w.A = t * t * v.A;
  w.P = std::pow(t, 0.5 * kFF.p * kFF.d) * v.P;
  w.R = std::pow(t, 0.5 * kFF.q * kFF.d) * v.R;
  CHECK(std::abs(semivirial_of(c, w)) <= 1e-9 * w.A);
  auto r1 = find_tstar_scalar(c, w, 1e-9);
  CHECK(std::abs(r1.t_star - 1.0) <= 1e-9);

  // Q(u) < 0 forces t* < 1 (scale past the root)
  Components neg;
  const double s = 1.5 * t;
  neg.M = v.M;
  neg.B = v.B;
  neg.A = s * s * v.A;
  neg.P = std::pow(s, 0.5 * kFF.p * kFF.d) * v.P;
  neg.R = std::pow(s, 0.5 * kFF.q * kFF.d) * v.R;
  CHECK(semivirial_of(c, neg) < 0.0);
  auto r2 = find_tstar_scalar(c, neg, 1e-9);
  CHECK(r2.t_star < 1.0);
}

TEST_CASE("fiber profile: slope identity and strict maximum at t*") {
  auto g = make_grid(1, 16 * M_PI, 256, 32);
  Workspace ws(g);
  for (std::uint64_t s = 0; s < 8; ++s) {
    Field u = balanced_field(ws, g, 200 + s, kFF);
    const Components v = compute_components(ws, u, kFF.p, kFF.q);
    const CoeffSet c = core_coeffs(kFF);
    auto res = find_tstar_scalar(c, v, 1e-10 * (1.0 + v.A));

    // dE/dt matches Q(u^t)/t by centered differences
    const double dt = 1e-5;
    for (double t : {0.5 * res.t_star, res.t_star, 2.0 * res.t_star}) {
      const double slope =
          (fiber_energy(c, v, t + dt) - fiber_energy(c, v, t - dt)) / (2 * dt);
      const double want = fiber_q(c, v, t) / t;
      CHECK(std::abs(slope - want) <=
            1e-6 * std::max(1.0, std::abs(want)));
    }

    // strict maximum at t*
    const double e_star = fiber_energy(c, v, res.t_star);
    CHECK(e_star > fiber_energy(c, v, res.t_star / 2));
    CHECK(e_star > fiber_energy(c, v, res.t_star * 2));

    // exactly one sign change of Q(u^t) on a wide log grid
    CHECK(res.unique_sign_change);
  }
}

TEST_CASE("degenerate fields have no fiber map") {
  const CoeffSet c = core_coeffs(kFF);
  Components v = gaussian_components();
  v.A = 0.0;
  CHECK_THROWS_AS(find_tstar_scalar(c, v, 1e-9), PreconditionError);
}

TEST_CASE("t* invariant under phase rotation and y-translation") {
  auto g = make_grid(1, 8 * M_PI, 128, 16);
  Workspace ws(g);
  Field u = random_smooth_field(g, 77);
  auto r0 = find_tstar(ws, u, kFF, 1e-6);

  Field rot = u;
  const cplx ph(std::cos(1.1), std::sin(1.1));
  for (auto& z : rot.v) z *= ph;
  auto r1 = find_tstar(ws, rot, kFF, 1e-6);
  CHECK(rel_err(r1.t_star, r0.t_star) <= 1e-12);

  Field sh(g);  // translate by 3 grid cells in y
  for (int i = 0; i < g->n_x; ++i)
    for (int j = 0; j < g->n_y; ++j)
      sh.v[index1(*g, i, j)] = u.v[index1(*g, i, (j + 3) % g->n_y)];
  auto r2 = find_tstar(ws, sh, kFF, 1e-6);
  CHECK(rel_err(r2.t_star, r0.t_star) <= 1e-12);
}
