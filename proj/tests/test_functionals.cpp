#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "wnls/functionals.hpp"
#include "wnls/kernels.hpp"

using namespace wnls;
using namespace wnls::testing;

namespace {
const ModelParams kFF{-1, 5.0, 6.0, 1};  // focusing-focusing
const ModelParams kDF{+1, 5.0, 6.0, 1};  // defocusing-focusing
}  // namespace

TEST_CASE("parameter admissibility window") {
  CHECK_THROWS_AS((ModelParams{-1, 3.0, 6.0, 1}).validate(), ConfigError);
  CHECK_THROWS_AS((ModelParams{-1, 6.0, 5.0, 1}).validate(), ConfigError);
  CHECK_THROWS_AS((ModelParams{-1, 2.5, 4.5, 2}).validate(), ConfigError);
  CHECK_NOTHROW((ModelParams{-1, 2.5, 3.5, 2}).validate());
  CHECK_NOTHROW(kFF.validate());
}

TEST_CASE("core functionals on the unit Gaussian") {
  auto g = make_grid(1, 16 * M_PI, 512, 32);
  Workspace ws(g);
  Field u = gaussian_field(g);
  auto r = eval_core(ws, u, kFF, 0.5);

  const double M = 2 * M_PI * std::sqrt(M_PI);
  const double A = std::pow(M_PI, 1.5);
  const double P = 2 * M_PI * std::sqrt(2 * M_PI / 7.0);
  const double R = 2 * M_PI * std::sqrt(2 * M_PI / 8.0);
  CHECK(rel_err(r.mass, M) <= 1e-8);
  CHECK(rel_err(r.c.A, A) <= 1e-8);
  CHECK(rel_err(r.c.P, P) <= 1e-8);
  CHECK(rel_err(r.c.R, R) <= 1e-8);
  CHECK(r.c.B <= 1e-12);

  const double E = 0.5 * A - P / 7.0 - R / 8.0;
  const double Q = A - 5.0 / 14.0 * P - 3.0 / 8.0 * R;
  CHECK(rel_err(r.energy, E) <= 1e-8);
  CHECK(rel_err(r.semivirial, Q) <= 1e-8);
  CHECK(rel_err(r.action, E + 0.25 * M) <= 1e-8);

  Field zero(g);
  auto rz = eval_core(ws, zero, kFF, 1.0);
  CHECK(rz.mass == 0.0);
  CHECK(rz.energy == 0.0);
  CHECK(rz.semivirial == 0.0);
  CHECK(rz.reduced == 0.0);
}

TEST_CASE("reduced functional identity I = E - (2/pd) Q") {
  auto g = make_grid(1, 8 * M_PI, 128, 16);
  Workspace ws(g);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Field u = random_smooth_field(g, s);
    for (const ModelParams& mp : {kFF, kDF}) {
      auto r = eval_core(ws, u, mp, 1.0);
      const double rhs = r.energy - 2.0 / (mp.p * mp.d) * r.semivirial;
      CHECK(rel_err(r.reduced, rhs) <= 1e-12);
    }
  }
}

TEST_CASE("energy decompositions of the semivirial") {
  auto g = make_grid(1, 8 * M_PI, 128, 16);
  Workspace ws(g);
  for (std::uint64_t s = 0; s < 10; ++s) {
    Field u = random_smooth_field(g, 100 + s);
    {
      // mu = +1: Q = dq/2 E + (1-dq/4)|grad u|^2 - |d_y u|^2
      //          + d/2 (p-q)/(p+2) |u|_{p+2}^{p+2}
      auto r = eval_core(ws, u, kDF, 1.0);
      const double d = kDF.d, p = kDF.p, q = kDF.q;
      const double grad2 = r.c.A + r.c.B;
      const double rhs = 0.5 * d * q * r.energy + (1 - 0.25 * d * q) * grad2 -
                         r.c.B + 0.5 * d * (p - q) / (p + 2) * r.c.P;
      CHECK(rel_err(r.semivirial, rhs) <= 1e-12);
    }
    {
      // mu = -1: Q = dp/2 E + (1-dp/4)|grad u|^2 - |d_y u|^2
      //          + d/2 (p-q)/(q+2) |u|_{q+2}^{q+2}
      auto r = eval_core(ws, u, kFF, 1.0);
      const double d = kFF.d, p = kFF.p, q = kFF.q;
      const double grad2 = r.c.A + r.c.B;
      const double rhs = 0.5 * d * p * r.energy + (1 - 0.25 * d * p) * grad2 -
                         r.c.B + 0.5 * d * (p - q) / (q + 2) * r.c.R;
      CHECK(rel_err(r.semivirial, rhs) <= 1e-12);
    }
  }
}

TEST_CASE("rescaled families") {
  auto g = make_grid(1, 8 * M_PI, 128, 16);
  Workspace ws(g);
  Field u = random_smooth_field(g, 5);
  auto core = eval_core(ws, u, kFF, 1.0);

  SUBCASE("lambda = 1 reduces to the unscaled functionals") {
    for (Family fam : {Family::sub, Family::sup}) {
      auto r = eval_rescaled(ws, u, kFF, 1.0, fam, false);
      CHECK(rel_err(r.H, core.energy) <= 1e-12);
      CHECK(rel_err(r.K, core.semivirial) <= 1e-12);
      CHECK(rel_err(r.I, core.reduced) <= 1e-12);
    }
  }
  SUBCASE("lambda = inf drops the p-term in the sub family") {
    Field flat = gaussian_field(g);
    auto r = eval_rescaled(ws, flat, kFF, kInf, Family::sub, false);
    const double single_power = -1.0 / (kFF.q + 2.0) * r.c.R + 0.5 * r.c.A;
    CHECK(rel_err(r.H, single_power) <= 1e-12);
    CHECK_THROWS_AS(eval_rescaled(ws, u, kFF, kInf, Family::sup, false),
                    UnsupportedError);
    CHECK_THROWS_AS(eval_rescaled(ws, u, kFF, 0.0, Family::sub, false),
                    DomainError);
  }
  SUBCASE("hatted evaluation divides out the torus") {
    Field flat = gaussian_field(g);
    auto full = eval_rescaled(ws, flat, kFF, 4.0, Family::sub, false);
    auto hat = eval_rescaled(ws, flat, kFF, 4.0, Family::sub, true);
    CHECK(rel_err(hat.c.M, full.c.M / (2 * M_PI)) <= 1e-12);
    CHECK(rel_err(hat.c.R, full.c.R / (2 * M_PI)) <= 1e-12);
    CHECK_THROWS_AS(eval_rescaled(ws, u, kFF, 4.0, Family::sub, true),
                    PreconditionError);
  }
}

TEST_CASE("fiber scaling laws under spectral resampling") {
  auto g = make_grid(1, 6 * M_PI, 512, 16);
  Workspace ws(g);
  Field u = gaussian_field(g);
  auto c0 = compute_components(ws, u, kFF.p, kFF.q);

  SUBCASE("t = 1 is the identity") {
    auto s = fiber_scale(ws, u, 1.0);
    double diff = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      diff = std::max(diff, std::abs(s.f.v[i] - u.v[i]));
    CHECK(diff <= 1e-12);
  }
  SUBCASE("gradient and potential terms follow the exact exponents") {
    const double t = 2.0;
    auto s = fiber_scale(ws, u, t);
    auto c1 = compute_components(ws, s.f, kFF.p, kFF.q);
    CHECK(rel_err(c1.M, c0.M) <= 1e-8);
    CHECK(rel_err(c1.A, t * t * c0.A) <= 1e-6);
    CHECK(rel_err(c1.A, 4 * std::pow(M_PI, 1.5)) <= 1e-6);
    CHECK(rel_err(c1.P, std::pow(t, 0.5 * kFF.p * kFF.d) * c0.P) <= 1e-6);
    CHECK(rel_err(c1.R, std::pow(t, 0.5 * kFF.q * kFF.d) * c0.R) <= 1e-6);
  }
  SUBCASE("random smooth fields keep their mass") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      Field f = random_smooth_field(g, 40 + s);
      const double m0 = integrate_pow(f, 2.0);
      for (double t : {0.5, 1.3, 2.0}) {
        auto sf = fiber_scale(ws, f, t);
        CHECK(rel_err(integrate_pow(sf.f, 2.0), m0) <= 1e-8);
      }
    }
  }
  SUBCASE("aliasing guards") {
    CHECK_THROWS_AS(fiber_scale(ws, u, 1e-3), DomainError);
    CHECK_THROWS_AS(fiber_scale(ws, u, 64.0), DomainError);
  }
}

TEST_CASE("T_lambda scaling laws") {
  auto g = make_grid(1, 6 * M_PI, 512, 16);
  Workspace ws(g);
  Field u = gaussian_field(g);
  const double M = 2 * M_PI * std::sqrt(M_PI);

  auto id = t_lambda_scale(ws, u, 1.0, 5.0);
  double diff = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    diff = std::max(diff, std::abs(id.f.v[i] - u.v[i]));
  CHECK(diff <= 1e-12);

  const double lambda = 2.0, alpha = 5.0;
  auto s = t_lambda_scale(ws, u, lambda, alpha);
  auto c1 = compute_components(ws, s.f, kFF.p, kFF.q);
  // |T u|_2^2 = lambda^(4/alpha - d) |u|_2^2
  CHECK(rel_err(c1.M, std::pow(lambda, 4.0 / alpha - 1.0) * M) <= 1e-6);
  // |grad_x T u|^2 = lambda^(2 + 4/alpha - d) |grad_x u|^2
  CHECK(rel_err(c1.A, std::pow(lambda, 2.0 + 4.0 / alpha - 1.0) *
                          std::pow(M_PI, 1.5)) <= 1e-6);

  // Q(T_lambda u) <= 0 for lambda >= 1 when Q(u) = 0 and mu = -1:
  // checked in the groundstate tests on solver output.
}

TEST_CASE("multiplier omega") {
  auto g = make_grid(1, 8 * M_PI, 128, 16);
  Workspace ws(g);
  Field u = random_smooth_field(g, 11);
  const double w0 = multiplier_omega(ws, u, kFF);
  Field v = u;
  const cplx phase(std::cos(0.7), std::sin(0.7));
  for (auto& z : v.v) z *= phase;
  CHECK(rel_err(multiplier_omega(ws, v, kFF), w0) <= 1e-12);
  Field zero(g);
  CHECK_THROWS_AS(multiplier_omega(ws, zero, kFF), PreconditionError);
}

TEST_CASE("GN ratio invariances") {
  auto g = make_grid(1, 6 * M_PI, 512, 16);
  Workspace ws(g);

  SUBCASE("invariant under u -> u^t") {
    Field u = random_smooth_field(g, 3, 1.5, 0.5);
    const double r0 = gn_ratio(ws, u, kFF, 5.0);
    for (double t : {0.5, 2.0, 4.0}) {
      auto s = fiber_scale(ws, u, t);
      CHECK(rel_err(gn_ratio(ws, s.f, kFF, 5.0), r0) <= 1e-6);
    }
  }
  SUBCASE("invariant under amplitude scaling (homogeneity bookkeeping)") {
    Field u = random_smooth_field(g, 4);
    const double r0 = gn_ratio(ws, u, kFF, 6.0);
    Field v = u;
    kern::ops().scale(v.data(), v.size(), 3.7);
    // both sides are homogeneous of degree alpha + 2, so the analytic
    // exponent of the ratio under u -> cu is zero
    CHECK(rel_err(gn_ratio(ws, v, kFF, 6.0), r0) <= 1e-12);
  }
  SUBCASE("degenerate input") {
    Field zero(g);
    CHECK_THROWS_AS(gn_ratio(ws, zero, kFF, 5.0), PreconditionError);
  }
}

TEST_CASE("stationary residual of zero field vanishes") {
  auto g = make_grid(1, 8 * M_PI, 128, 16);
  Workspace ws(g);
  Field zero(g);
  CHECK(residual_stationary(ws, zero, 1.0, kFF) == 0.0);
  Field u = random_smooth_field(g, 2);
  CHECK(residual_stationary(ws, u, 1.0, kFF) > 0.1);
}
