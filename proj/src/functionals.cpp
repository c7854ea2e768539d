#include "wnls/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "wnls/kernels.hpp"

namespace wnls {

void ModelParams::validate() const {
  if (mu != -1 && mu != 1) throw ConfigError("mu must be -1 or +1");
  if (d != 1 && d != 2)
    throw UnsupportedError("d must be 1 or 2, got " + std::to_string(d));
  const double lo = 4.0 / d;
  const double hi = (d == 1) ? kInf : 4.0 / (d - 1);
  if (!(p > lo))
    throw ConfigError("admissibility violated: 4/d < p fails (p = " +
                      std::to_string(p) + ", 4/d = " + std::to_string(lo) +
                      ")");
  if (!(q > p))
    throw ConfigError("admissibility violated: p < q fails (p = " +
                      std::to_string(p) + ", q = " + std::to_string(q) + ")");
  if (!(q < hi))
    throw ConfigError("admissibility violated: q < 4/(d-1) fails (q = " +
                      std::to_string(q) + ", 4/(d-1) = " + std::to_string(hi) +
                      ")");
}

CoeffSet core_coeffs(const ModelParams& mp) {
  return {mp.p, mp.q, mp.d, 1.0, mp.mu / (mp.p + 2.0), -1.0 / (mp.q + 2.0)};
}

CoeffSet sub_coeffs(const ModelParams& mp, double lambda) {
  if (!(lambda > 0.0))
    throw DomainError("sub family: lambda must be positive (or inf)");
  // the number inf^(p/q-1) is zero by convention
  const double w =
      std::isinf(lambda) ? 0.0 : std::pow(lambda, mp.p / mp.q - 1.0);
  const double ay = std::isinf(lambda) ? kInf : lambda;
  return {mp.p, mp.q, mp.d, ay, mp.mu * w / (mp.p + 2.0),
          -1.0 / (mp.q + 2.0)};
}

CoeffSet sup_coeffs(const ModelParams& mp, double lambda) {
  if (std::isinf(lambda))
    throw UnsupportedError(
        "sup family: lambda = inf is not defined (q/p-1 > 0)");
  if (lambda < 0.0) throw DomainError("sup family: lambda must be >= 0");
  const double w =
      (lambda == 0.0) ? 0.0 : std::pow(lambda, mp.q / mp.p - 1.0);
  return {mp.p, mp.q, mp.d, lambda, mp.mu / (mp.p + 2.0),
          -w / (mp.q + 2.0)};
}

CoeffSet family_coeffs(const ModelParams& mp, Family f, double lambda) {
  return f == Family::sub ? sub_coeffs(mp, lambda) : sup_coeffs(mp, lambda);
}

Components compute_components(Workspace& ws, const Field& u, double p,
                              double q) {
  Components r;
  const GridSpec& g = *u.spec;
  const double w = g.quad_weight();
  r.M = w * kern::ops().pow_sum(u.data(), u.size(), 2.0);
  r.P = w * kern::ops().pow_sum(u.data(), u.size(), p + 2.0);
  r.R = w * kern::ops().pow_sum(u.data(), u.size(), q + 2.0);
  // gradient norms from the mode sums (Parseval)
  std::vector<cplx>& m = ws.scratch(3);
  ws.to_modes(u, m);
  const auto& k2x = ws.fft().k2x();
  const auto& k2y = ws.fft().k2y();
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double n2 = std::norm(m[i]);
    a += k2x[i] * n2;
    b += k2y[i] * n2;
  }
  const double inv_n = 1.0 / static_cast<double>(m.size());
  r.A = w * a * inv_n;
  r.B = w * b * inv_n;
  return r;
}

double energy_of(const CoeffSet& c, const Components& v) {
  const double ay = std::isinf(c.a_y) ? 0.0 : c.a_y;  // only valid if B == 0
  return 0.5 * v.A + 0.5 * ay * v.B + c.s_p * v.P + c.s_q * v.R;
}

double semivirial_of(const CoeffSet& c, const Components& v) {
  return v.A + 0.5 * c.p * c.d * c.s_p * v.P + 0.5 * c.q * c.d * c.s_q * v.R;
}

double reduced_of(const CoeffSet& c, const Components& v) {
  const double ay = std::isinf(c.a_y) ? 0.0 : c.a_y;
  return 0.5 * ay * v.B + (0.5 - 2.0 / (c.p * c.d)) * v.A +
         c.s_q * (1.0 - c.q / c.p) * v.R;
}

double action_of(const CoeffSet& c, const Components& v, double omega) {
  return energy_of(c, v) + 0.5 * omega * v.M;
}

double multiplier_of(const CoeffSet& c, const Components& v) {
  const double ay = std::isinf(c.a_y) ? 0.0 : c.a_y;
  return (-v.A - ay * v.B - (c.p + 2.0) * c.s_p * v.P -
          (c.q + 2.0) * c.s_q * v.R) /
         v.M;
}

FunctionalRecord eval_core(Workspace& ws, const Field& u,
                           const ModelParams& mp, double omega) {
  mp.validate();
  const CoeffSet c = core_coeffs(mp);
  FunctionalRecord r;
  r.c = compute_components(ws, u, mp.p, mp.q);
  r.mass = r.c.M;
  r.energy = energy_of(c, r.c);
  r.semivirial = semivirial_of(c, r.c);
  r.reduced = reduced_of(c, r.c);
  r.action = r.energy + 0.5 * omega * r.mass;
  r.omega = omega;
  return r;
}

namespace {

// max |u - (y-mean of u)| over the grid
double y_variation(const Field& u) {
  const GridSpec& g = *u.spec;
  if (g.reduced()) return 0.0;
  double dev = 0.0;
  const std::size_t nx_total = u.size() / g.n_y;
  for (std::size_t b = 0; b < nx_total; ++b) {
    cplx mean(0.0);
    const cplx* row = u.data() + b * g.n_y;
    for (int j = 0; j < g.n_y; ++j) mean += row[j];
    mean /= static_cast<double>(g.n_y);
    for (int j = 0; j < g.n_y; ++j) dev = std::max(dev, std::abs(row[j] - mean));
  }
  return dev;
}

}  // namespace

RescaledRecord eval_rescaled(Workspace& ws, const Field& u,
                             const ModelParams& mp, double lambda, Family fam,
                             bool hatted) {
  mp.validate();
  const CoeffSet c = family_coeffs(mp, fam, lambda);
  RescaledRecord r;
  r.family = fam;
  r.lambda = lambda;
  r.hatted = hatted;
  r.c = compute_components(ws, u, mp.p, mp.q);
  if (hatted && !u.spec->reduced()) {
    const double scale = sup_abs(u);
    if (y_variation(u) > 1e-12 * std::max(scale, 1e-300))
      throw PreconditionError(
          "eval_rescaled: hatted evaluation requires a y-independent field");
    const double inv2pi = 1.0 / (2.0 * M_PI);
    r.c.M *= inv2pi;
    r.c.A *= inv2pi;
    r.c.B = 0.0;
    r.c.P *= inv2pi;
    r.c.R *= inv2pi;
  }
  if (std::isinf(c.a_y) && r.c.B > 1e-14 * std::max(r.c.M, 1.0))
    throw PreconditionError(
        "eval_rescaled: lambda = inf requires a y-independent field");
  r.H = energy_of(c, r.c);
  r.K = semivirial_of(c, r.c);
  r.I = reduced_of(c, r.c);
  r.S1 = 0.5 * r.c.M + r.H;
  return r;
}

namespace {

// Applies the one-dimensional stretched inverse transform
//   out_i = (1/n) sum_k m_k exp(i k (t x_i + L))
// along one x-dimension of a mode array (the trigonometric interpolant of
// the samples evaluated at the stretched points; the +L offset is the grid
// origin of the FFT indexing).
void stretch_axis(const GridSpec& g, int axis, double t,
                  std::vector<cplx>& modes) {
  const int n = g.n_x;
  std::vector<cplx> E(static_cast<std::size_t>(n) * n);
  const double inv_n = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    const double xi = g.x(i) * t + g.L;
    for (int k = 0; k < n; ++k) {
      const double ph = g.kx[k] * xi;
      E[static_cast<std::size_t>(i) * n + k] =
          cplx(std::cos(ph) * inv_n, std::sin(ph) * inv_n);
    }
  }
  const std::size_t total = modes.size();
  std::vector<cplx> out(total, cplx(0.0));
  if (axis == 0) {
    const std::size_t blk = total / n;  // contiguous block per leading index
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        kern::ops().axpy(out.data() + static_cast<std::size_t>(i) * blk,
                         modes.data() + static_cast<std::size_t>(k) * blk, blk,
                         E[static_cast<std::size_t>(i) * n + k]);
  } else {
    // axis == 1 (d = 2): blocks of n_y within each leading slab
    const std::size_t ny = g.n_y;
    for (int i0 = 0; i0 < n; ++i0) {
      const std::size_t base = static_cast<std::size_t>(i0) * n * ny;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          kern::ops().axpy(out.data() + base + static_cast<std::size_t>(i) * ny,
                           modes.data() + base + static_cast<std::size_t>(k) * ny,
                           ny, E[static_cast<std::size_t>(i) * n + k]);
    }
  }
  modes.swap(out);
}

// 1 - frac quantile of per-axis spectral bandwidth
double spectral_band(const Spectral& fft, const std::vector<cplx>& modes,
                     double frac) {
  const GridSpec& g = *fft.grid();
  const int half = g.n_x / 2;
  std::vector<double> shell(half + 1, 0.0);
  double total = 0.0;
  const auto& k2x = fft.k2x();
  const double dk = M_PI / g.L;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double kmax = std::sqrt(k2x[i]);  // radial in the x-wavenumbers
    int bin = std::min<int>(half, static_cast<int>(kmax / dk + 0.5));
    const double w = std::norm(modes[i]);
    shell[bin] += w;
    total += w;
  }
  if (total <= 0.0) return 0.0;
  double acc = 0.0;
  for (int b = half; b >= 0; --b) {
    acc += shell[b];
    if (acc > frac * total) return (b + 1) * dk;
  }
  return 0.0;
}

ScaledField resample_x(Workspace& ws, const Field& u, double t,
                       double amplitude) {
  const GridSpec& g = *u.spec;
  if (!(t > 0.0) || !std::isfinite(t))
    throw DomainError("resample: scale factor must be positive and finite");
  const double mass0 = integrate_pow(u, 2.0);
  std::vector<cplx> m;
  ws.to_modes(u, m);
  if (t != 1.0 && mass0 > 0.0) {
    if (t < 1.0) {
      const double r = mass_radius(u, 1e-6);
      if (r / t > 0.98 * g.L)
        throw DomainError(
            "resample: aliasing guard (support radius " + std::to_string(r) +
            " expands past the box at t = " + std::to_string(t) + ")");
    } else {
      const double band = spectral_band(ws.fft(), m, 1e-6);
      const double knyq = M_PI / g.h_x;
      if (t * band > 0.98 * knyq)
        throw DomainError(
            "resample: aliasing guard (bandwidth " + std::to_string(band) +
            " exceeds the grid Nyquist at t = " + std::to_string(t) + ")");
    }
  }
  for (int axis = 0; axis < g.d; ++axis) stretch_axis(g, axis, t, m);
  ws.fft().backward_y(m);
  Field out(u.spec);
  out.v = std::move(m);
  kern::ops().scale(out.data(), out.size(), amplitude);
  if (t > 1.0) {
    // for |x| > L/t the interpolant sees the periodic image of u, not u
    // itself; the true u(tx) is below the boundary amplitude there, so those
    // samples are cleared
    const double cut = g.L / t;
    if (g.d == 1) {
      for (int i = 0; i < g.n_x; ++i)
        if (std::abs(g.x(i)) > cut)
          for (int j = 0; j < g.n_y; ++j) out.v[index1(g, i, j)] = 0.0;
    } else {
      for (int i0 = 0; i0 < g.n_x; ++i0)
        for (int i1 = 0; i1 < g.n_x; ++i1)
          if (std::abs(g.x(i0)) > cut || std::abs(g.x(i1)) > cut)
            for (int j = 0; j < g.n_y; ++j) out.v[index2(g, i0, i1, j)] = 0.0;
    }
  }
  ScaledField res{std::move(out), 0.0};
  // the change of variables preserves amp^2 t^-d times the mass exactly; the
  // measured drift doubles as the interpolation-error estimate
  const double mass1 = integrate_pow(res.f, 2.0);
  const double expected = mass0 * amplitude * amplitude * std::pow(t, -g.d);
  if (mass0 > 0.0)
    res.interp_error = std::abs(mass1 - expected) / std::max(expected, 1e-300);
  return res;
}

}  // namespace

ScaledField fiber_scale(Workspace& ws, const Field& u, double t) {
  const double amp = std::pow(t, 0.5 * u.spec->d);
  return resample_x(ws, u, t, amp);
}

ScaledField t_lambda_scale(Workspace& ws, const Field& u, double lambda,
                           double alpha) {
  if (!(alpha > 0.0)) throw DomainError("t_lambda_scale: alpha must be > 0");
  const double amp = std::pow(lambda, 2.0 / alpha);
  return resample_x(ws, u, lambda, amp);
}

double multiplier_omega(Workspace& ws, const Field& u, const ModelParams& mp) {
  mp.validate();
  const Components v = compute_components(ws, u, mp.p, mp.q);
  if (v.M < 1e-14)
    throw PreconditionError("multiplier_omega: degenerate input (mass ~ 0)");
  return multiplier_of(core_coeffs(mp), v);
}

double gn_ratio(Workspace& ws, const Field& u, const ModelParams& mp,
                double alpha) {
  mp.validate();
  const double lo = 4.0 / mp.d;
  const double hi = (mp.d == 1) ? kInf : 4.0 / (mp.d - 1);
  if (!(alpha > lo && alpha < hi))
    throw DomainError("gn_ratio: alpha outside (4/d, 4/(d-1))");
  Components v = compute_components(ws, u, alpha, alpha);
  // compute_components gave P at exponent alpha+2 in the P slot
  const double Pa = v.P;
  if (v.M <= 0.0 || v.A <= 0.0)
    throw PreconditionError("gn_ratio: degenerate input (zero x-gradient)");
  const double rhs = std::pow(v.A, 0.25 * alpha * mp.d) *
                     std::pow(v.M, 0.25 * (4.0 - alpha * (mp.d - 1))) *
                     (std::pow(v.M, 0.25 * alpha) + std::pow(v.B, 0.25 * alpha));
  return Pa / rhs;
}

double residual_stationary_gen(Workspace& ws, const Field& u,
                               const CoeffSet& c, double omega) {
  std::vector<cplx>& m = ws.scratch(1);
  ws.to_modes(u, m);
  const auto& k2x = ws.fft().k2x();
  const auto& k2y = ws.fft().k2y();
  const double ay = std::isinf(c.a_y) ? 0.0 : c.a_y;
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] *= (k2x[i] + ay * k2y[i] + omega);
  Field lin = ws.from_modes(m);
  // lin currently holds (-lap_x - a_y d_y^2 + omega) u; add the nonlinearity
  Field nl(u.spec);
  kern::ops().nl_mul(nl.data(), u.data(), u.size(), 0.0,
                     (c.p + 2.0) * c.s_p, c.p, (c.q + 2.0) * c.s_q, c.q);
  kern::ops().axpy(lin.data(), nl.data(), lin.size(), cplx(1.0));
  return std::sqrt(integrate_pow(lin, 2.0));
}

double residual_stationary(Workspace& ws, const Field& u, double omega,
                           const ModelParams& mp) {
  mp.validate();
  return residual_stationary_gen(ws, u, core_coeffs(mp), omega);
}

double mass_radius(const Field& u, double frac) {
  const GridSpec& g = *u.spec;
  const double total = integrate_pow(u, 2.0);
  if (total <= 0.0) return 0.0;
  // radial mass profile over |x| bins
  const int nb = g.n_x / 2 + 2;
  std::vector<double> bins(nb, 0.0);
  const double w = g.quad_weight();
  if (g.d == 1) {
    for (int i = 0; i < g.n_x; ++i) {
      const double r = std::abs(g.x(i));
      int b = std::min<int>(nb - 1, static_cast<int>(r / g.h_x + 0.5));
      double s = 0.0;
      for (int j = 0; j < g.n_y; ++j) s += std::norm(u.v[index1(g, i, j)]);
      bins[b] += w * s;
    }
  } else {
    for (int i0 = 0; i0 < g.n_x; ++i0)
      for (int i1 = 0; i1 < g.n_x; ++i1) {
        const double r = std::hypot(g.x(i0), g.x(i1));
        int b = std::min<int>(nb - 1, static_cast<int>(r / g.h_x + 0.5));
        double s = 0.0;
        for (int j = 0; j < g.n_y; ++j)
          s += std::norm(u.v[index2(g, i0, i1, j)]);
        bins[b] += w * s;
      }
  }
  double acc = 0.0;
  for (int b = nb - 1; b >= 0; --b) {
    acc += bins[b];
    if (acc > frac * total) return std::min((b + 1) * g.h_x, g.L * std::sqrt(2.0));
  }
  return 0.0;
}

}  // namespace wnls
