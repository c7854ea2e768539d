#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "wnls/errors.hpp"

namespace wnls {

using cplx = std::complex<double>;

// Discretization of R^d x T: periodic box [-L,L]^d in x, the 2pi-torus in y.
// Samples are row-major with y fastest, then the x dimensions.
//
// A spec with n_y == 1 is a reduced R^d grid (no torus direction); it is used
// internally for the y-independent problems and skips the h_y quadrature
// factor.
struct GridSpec {
  int d = 1;
  double L = 0.0;
  int n_x = 0;
  int n_y = 0;
  double h_x = 0.0;
  double h_y = 0.0;
  std::vector<double> kx;  // size n_x, order matching FFT bins
  std::vector<double> ky;  // size n_y

  std::size_t size() const {
    std::size_t s = static_cast<std::size_t>(n_y);
    for (int j = 0; j < d; ++j) s *= static_cast<std::size_t>(n_x);
    return s;
  }
  bool reduced() const { return n_y == 1; }
  double quad_weight() const {
    double w = reduced() ? 1.0 : h_y;
    for (int j = 0; j < d; ++j) w *= h_x;
    return w;
  }
  double x(int i) const { return -L + h_x * i; }
  double y(int j) const { return h_y * j; }

  bool same_as(const GridSpec& o) const {
    return d == o.d && L == o.L && n_x == o.n_x && n_y == o.n_y;
  }
};

using GridPtr = std::shared_ptr<const GridSpec>;

GridPtr make_grid(int d, double L, int n_x, int n_y);
// Reduced R^d grid (internal to the y-independent solves).
GridPtr make_grid_rd(int d, double L, int n_x);

struct Field {
  GridPtr spec;
  std::vector<cplx> v;

  Field() = default;
  explicit Field(GridPtr s) : spec(std::move(s)), v(spec->size(), cplx(0.0)) {}
  std::size_t size() const { return v.size(); }
  cplx* data() { return v.data(); }
  const cplx* data() const { return v.data(); }
};

// Flat index helpers (y fastest).
inline std::size_t index1(const GridSpec& g, int ix, int iy) {
  return static_cast<std::size_t>(ix) * g.n_y + iy;
}
inline std::size_t index2(const GridSpec& g, int ix0, int ix1, int iy) {
  return (static_cast<std::size_t>(ix0) * g.n_x + ix1) * g.n_y + iy;
}

// FFT engine bound to one grid. Plans are created once (serialized globally);
// transforms are in-place on caller buffers. Forward is unnormalized, the
// inverse divides by the total point count.
class Spectral {
 public:
  explicit Spectral(GridPtr g);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const GridPtr& grid() const { return grid_; }

  void forward(std::vector<cplx>& a) const;
  void backward(std::vector<cplx>& a) const;  // includes 1/N

  // |k|^2 = sum_j kx_j^2 + ky^2 per mode, grid-ordered.
  const std::vector<double>& k2() const { return k2_; }
  // x-part and y-part of |k|^2, grid-ordered.
  const std::vector<double>& k2x() const { return k2x_; }
  const std::vector<double>& k2y() const { return k2y_; }
  // per-mode wavenumber of x-dimension j (0-based) / of y.
  std::vector<double> k_axis(int axis) const;  // axis in [0,d) -> kx_j; axis==d -> ky

  // inverse transform along y only (no-op on reduced grids); divides by n_y.
  void backward_y(std::vector<cplx>& a) const;

 private:
  GridPtr grid_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
  void* plan_bwd_y_ = nullptr;
  std::vector<double> k2_, k2x_, k2y_;
};

// Mutable helper bundling a Spectral engine with scratch buffers. Not shared
// between threads; all Fields passed in are treated as immutable.
class Workspace {
 public:
  explicit Workspace(GridPtr g) : fft_(std::move(g)) {}
  const GridPtr& grid() const { return fft_.grid(); }
  const Spectral& fft() const { return fft_; }

  // modes of f (forward transform of a copy)
  void to_modes(const Field& f, std::vector<cplx>& out) const;
  Field from_modes(std::vector<cplx> modes) const;

  std::vector<cplx>& scratch(int which);

 private:
  Spectral fft_;
  std::vector<cplx> scratch_[4];
};

enum class Op { grad_x0, grad_x1, d_y, laplacian };

// Spectral derivative / Laplacian.
Field apply_operator(Workspace& ws, const Field& f, Op op);
// exp(i t Laplacian): multiplies mode k by exp(-i t |k|^2). Unitary.
Field free_propagator(Workspace& ws, const Field& f, double t);

// Rectangle-rule quadrature of |f|^r (the r-th power, not the root).
double integrate_pow(const Field& f, double r);
// Sesquilinear pairing integral of f * conj(g).
cplx inner(const Field& f, const Field& g);

double sup_abs(const Field& f);
bool all_finite(const Field& f);

// Mass outside |x| >= radius (x-distance only, quadrature).
double exterior_mass(const Field& f, double radius);

}  // namespace wnls
