#include "wnls/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "wnls/kernels.hpp"

namespace wnls {

namespace {

bool power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> wavenumbers(int n, double dk) {
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) {
    const int s = (i < n / 2 || n == 1) ? i : i - n;
    k[i] = dk * s;
  }
  return k;
}

}  // namespace

GridPtr make_grid(int d, double L, int n_x, int n_y) {
  if (d != 1 && d != 2)
    throw UnsupportedError("make_grid: d must be 1 or 2, got " +
                           std::to_string(d));
  if (!(L > 0.0)) throw ConfigError("make_grid: L must be positive");
  if (!power_of_two(n_x) || n_x < 8)
    throw ConfigError("make_grid: n_x must be a power of two >= 8, got " +
                      std::to_string(n_x));
  if (!power_of_two(n_y) || n_y < 8)
    throw ConfigError("make_grid: n_y must be a power of two >= 8, got " +
                      std::to_string(n_y));
  auto g = std::make_shared<GridSpec>();
  g->d = d;
  g->L = L;
  g->n_x = n_x;
  g->n_y = n_y;
  g->h_x = 2.0 * L / n_x;
  g->h_y = 2.0 * M_PI / n_y;
  g->kx = wavenumbers(n_x, M_PI / L);
  g->ky = wavenumbers(n_y, 1.0);
  return g;
}

GridPtr make_grid_rd(int d, double L, int n_x) {
  if (d != 1 && d != 2)
    throw UnsupportedError("make_grid_rd: d must be 1 or 2");
  if (!(L > 0.0)) throw ConfigError("make_grid_rd: L must be positive");
  if (!power_of_two(n_x) || n_x < 8)
    throw ConfigError("make_grid_rd: n_x must be a power of two >= 8");
  auto g = std::make_shared<GridSpec>();
  g->d = d;
  g->L = L;
  g->n_x = n_x;
  g->n_y = 1;
  g->h_x = 2.0 * L / n_x;
  g->h_y = 0.0;
  g->kx = wavenumbers(n_x, M_PI / L);
  g->ky = {0.0};
  return g;
}

Spectral::Spectral(GridPtr g) : grid_(std::move(g)) {
  const GridSpec& s = *grid_;
  const std::size_t n = s.size();
  std::vector<cplx> tmp(n);
  int dims[3];
  int rank = 0;
  for (int j = 0; j < s.d; ++j) dims[rank++] = s.n_x;
  if (!s.reduced()) dims[rank++] = s.n_y;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan_fwd_ = fftw_plan_dft(
        rank, dims, reinterpret_cast<fftw_complex*>(tmp.data()),
        reinterpret_cast<fftw_complex*>(tmp.data()), FFTW_FORWARD,
        FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft(
        rank, dims, reinterpret_cast<fftw_complex*>(tmp.data()),
        reinterpret_cast<fftw_complex*>(tmp.data()), FFTW_BACKWARD,
        FFTW_ESTIMATE);
    if (!s.reduced()) {
      int ny = s.n_y;
      int howmany = static_cast<int>(n) / ny;
      plan_bwd_y_ = fftw_plan_many_dft(
          1, &ny, howmany, reinterpret_cast<fftw_complex*>(tmp.data()), nullptr,
          1, ny, reinterpret_cast<fftw_complex*>(tmp.data()), nullptr, 1, ny,
          FFTW_BACKWARD, FFTW_ESTIMATE);
    }
  }
  // |k|^2 tables, grid-ordered
  k2_.resize(n);
  k2x_.resize(n);
  k2y_.resize(n);
  if (s.d == 1) {
    for (int i = 0; i < s.n_x; ++i)
      for (int j = 0; j < s.n_y; ++j) {
        const std::size_t id = index1(s, i, j);
        k2x_[id] = s.kx[i] * s.kx[i];
        k2y_[id] = s.ky[j] * s.ky[j];
        k2_[id] = k2x_[id] + k2y_[id];
      }
  } else {
    for (int i0 = 0; i0 < s.n_x; ++i0)
      for (int i1 = 0; i1 < s.n_x; ++i1)
        for (int j = 0; j < s.n_y; ++j) {
          const std::size_t id = index2(s, i0, i1, j);
          k2x_[id] = s.kx[i0] * s.kx[i0] + s.kx[i1] * s.kx[i1];
          k2y_[id] = s.ky[j] * s.ky[j];
          k2_[id] = k2x_[id] + k2y_[id];
        }
  }
}

Spectral::~Spectral() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  if (plan_bwd_y_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_y_));
}

void Spectral::backward_y(std::vector<cplx>& a) const {
  if (grid_->reduced()) return;
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_y_),
                   reinterpret_cast<fftw_complex*>(a.data()),
                   reinterpret_cast<fftw_complex*>(a.data()));
  kern::ops().scale(a.data(), a.size(), 1.0 / grid_->n_y);
}

void Spectral::forward(std::vector<cplx>& a) const {
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_),
                   reinterpret_cast<fftw_complex*>(a.data()),
                   reinterpret_cast<fftw_complex*>(a.data()));
}

void Spectral::backward(std::vector<cplx>& a) const {
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_),
                   reinterpret_cast<fftw_complex*>(a.data()),
                   reinterpret_cast<fftw_complex*>(a.data()));
  kern::ops().scale(a.data(), a.size(), 1.0 / static_cast<double>(a.size()));
}

std::vector<double> Spectral::k_axis(int axis) const {
  const GridSpec& s = *grid_;
  std::vector<double> t(s.size());
  if (s.d == 1) {
    for (int i = 0; i < s.n_x; ++i)
      for (int j = 0; j < s.n_y; ++j)
        t[index1(s, i, j)] = (axis == 0) ? s.kx[i] : s.ky[j];
  } else {
    for (int i0 = 0; i0 < s.n_x; ++i0)
      for (int i1 = 0; i1 < s.n_x; ++i1)
        for (int j = 0; j < s.n_y; ++j) {
          double v = (axis == 0) ? s.kx[i0] : (axis == 1 ? s.kx[i1] : s.ky[j]);
          t[index2(s, i0, i1, j)] = v;
        }
  }
  return t;
}

void Workspace::to_modes(const Field& f, std::vector<cplx>& out) const {
  out = f.v;
  fft_.forward(out);
}

Field Workspace::from_modes(std::vector<cplx> modes) const {
  fft_.backward(modes);
  Field f(fft_.grid());
  f.v = std::move(modes);
  return f;
}

std::vector<cplx>& Workspace::scratch(int which) { return scratch_[which]; }

namespace {

void check_same_grid(const Field& f, const GridSpec& g, const char* who) {
  if (!f.spec || !f.spec->same_as(g))
    throw DomainError(std::string(who) + ": field grid does not match");
}

}  // namespace

Field apply_operator(Workspace& ws, const Field& f, Op op) {
  const GridSpec& g = *ws.grid();
  check_same_grid(f, g, "apply_operator");
  std::vector<cplx>& m = ws.scratch(0);
  ws.to_modes(f, m);
  const std::size_t n = m.size();
  switch (op) {
    case Op::grad_x0:
    case Op::grad_x1: {
      int axis = (op == Op::grad_x0) ? 0 : 1;
      if (axis >= g.d) throw DomainError("apply_operator: no such x-axis");
      auto k = ws.fft().k_axis(axis);
      for (std::size_t i = 0; i < n; ++i) m[i] *= cplx(0.0, k[i]);
      break;
    }
    case Op::d_y: {
      if (g.reduced()) throw DomainError("apply_operator: reduced grid has no y");
      auto k = ws.fft().k_axis(g.d);
      for (std::size_t i = 0; i < n; ++i) m[i] *= cplx(0.0, k[i]);
      break;
    }
    case Op::laplacian: {
      const auto& k2 = ws.fft().k2();
      for (std::size_t i = 0; i < n; ++i) m[i] *= -k2[i];
      break;
    }
  }
  return ws.from_modes(std::move(m));
}

Field free_propagator(Workspace& ws, const Field& f, double t) {
  const GridSpec& g = *ws.grid();
  check_same_grid(f, g, "free_propagator");
  if (!std::isfinite(t)) throw DomainError("free_propagator: t must be finite");
  std::vector<cplx>& m = ws.scratch(0);
  ws.to_modes(f, m);
  const auto& k2 = ws.fft().k2();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double ph = -t * k2[i];
    m[i] *= cplx(std::cos(ph), std::sin(ph));
  }
  return ws.from_modes(std::move(m));
}

double integrate_pow(const Field& f, double r) {
  if (r < 0.0) throw DomainError("integrate_pow: exponent must be >= 0");
  return f.spec->quad_weight() * kern::ops().pow_sum(f.data(), f.size(), r);
}

cplx inner(const Field& f, const Field& g) {
  if (!f.spec->same_as(*g.spec))
    throw DomainError("inner: fields live on different grids");
  return f.spec->quad_weight() * kern::ops().dotc(f.data(), g.data(), f.size());
}

double sup_abs(const Field& f) {
  return kern::ops().sup_abs(f.data(), f.size());
}

bool all_finite(const Field& f) {
  for (const cplx& z : f.v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double exterior_mass(const Field& f, double radius) {
  const GridSpec& g = *f.spec;
  const double r2 = radius * radius;
  double acc = 0.0;
  if (g.d == 1) {
    for (int i = 0; i < g.n_x; ++i) {
      const double x = g.x(i);
      if (x * x < r2) continue;
      for (int j = 0; j < g.n_y; ++j) acc += std::norm(f.v[index1(g, i, j)]);
    }
  } else {
    for (int i0 = 0; i0 < g.n_x; ++i0)
      for (int i1 = 0; i1 < g.n_x; ++i1) {
        const double x0 = g.x(i0), x1 = g.x(i1);
        if (x0 * x0 + x1 * x1 < r2) continue;
        for (int j = 0; j < g.n_y; ++j)
          acc += std::norm(f.v[index2(g, i0, i1, j)]);
      }
  }
  return g.quad_weight() * acc;
}

}  // namespace wnls
