// Centered sampling grid, sampled signals and the centered discrete Fourier transform.
#ifndef UPLAB_CORE_HPP
#define UPLAB_CORE_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uplab/numerics.hpp"

namespace uplab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

enum class Axis { time, frequency };

inline const char* to_string(Axis a) { return a == Axis::time ? "time" : "frequency"; }

inline Axis axis_from_string(std::string_view s) {
  if (s == "time" || s == "t") return Axis::time;
  if (s == "frequency" || s == "freq" || s == "omega") return Axis::frequency;
  throw std::invalid_argument("unknown axis '" + std::string(s) + "'");
}

inline Axis dual(Axis a) { return a == Axis::time ? Axis::frequency : Axis::time; }

/// Uniform grid t_j = (j - n/2) dx with dual grid w_k = (k - n/2) dw, dw = 1/(n dx).
class Grid {
 public:
  Grid(int n, double dx) : n_(n), dx_(dx) {
    if (n < 4 || n % 2 != 0)
      throw std::invalid_argument("grid size must be even and >= 4, got " + std::to_string(n));
    if (!(dx > 0.0) || !std::isfinite(dx))
      throw std::invalid_argument("grid spacing must be positive and finite");
    dw_ = 1.0 / (static_cast<double>(n) * dx);
  }

  int size() const { return n_; }
  double dx() const { return dx_; }
  double dw() const { return dw_; }
  double length() const { return n_ * dx_; }
  double bandwidth() const { return n_ * dw_; }
  double time(int j) const { return (j - n_ / 2) * dx_; }
  double freq(int k) const { return (k - n_ / 2) * dw_; }
  double coord(Axis a, int j) const { return a == Axis::time ? time(j) : freq(j); }
  double spacing(Axis a) const { return a == Axis::time ? dx_ : dw_; }

  bool operator==(const Grid& o) const { return n_ == o.n_ && dx_ == o.dx_; }

 private:
  int n_;
  double dx_;
  double dw_;
};

inline Grid make_grid(int n, double dx) { return Grid(n, dx); }

/// Complex samples on one axis of a grid.
class Signal {
 public:
  Signal(Grid grid, CVector samples, Axis axis = Axis::time)
      : grid_(grid), samples_(std::move(samples)), axis_(axis) {
    if (samples_.size() != grid_.size())
      throw std::invalid_argument("signal length " + std::to_string(samples_.size()) +
                                  " does not match grid size " + std::to_string(grid_.size()));
  }

  static Signal zeros(Grid grid, Axis axis = Axis::time) {
    return Signal(grid, CVector::Zero(grid.size()), axis);
  }

  template <class F>
  static Signal sample(Grid grid, F&& f, Axis axis = Axis::time) {
    CVector v(grid.size());
    for (int j = 0; j < grid.size(); ++j) v(j) = Complex(f(grid.coord(axis, j)));
    return Signal(grid, std::move(v), axis);
  }

  const Grid& grid() const { return grid_; }
  Axis axis() const { return axis_; }
  int size() const { return grid_.size(); }
  double spacing() const { return grid_.spacing(axis_); }
  double coord(int j) const { return grid_.coord(axis_, j); }
  const CVector& samples() const { return samples_; }
  CVector& samples() { return samples_; }
  Complex operator[](int j) const { return samples_(j); }

  Signal scaled(Complex c) const { return Signal(grid_, samples_ * c, axis_); }

 private:
  Grid grid_;
  CVector samples_;
  Axis axis_;
};

inline void require_compatible(const Signal& a, const Signal& b, const char* what) {
  if (!(a.grid() == b.grid()) || a.axis() != b.axis())
    throw std::invalid_argument(std::string(what) + ": signals live on different grids or axes");
}

namespace detail {

inline double parity(int j) { return (j & 1) ? -1.0 : 1.0; }

/// Unweighted centered sums  out_k = sum_j exp(sign 2 pi i (j-n/2)(k-n/2)/n) in_j.
class CenteredDft {
 public:
  explicit CenteredDft(int n) : n_(n), in_(n), out_(n) {
    fft_.SetFlag(Eigen::FFT<double>::Unscaled);
  }

  void forward(const CVector& x, CVector& y) { run(x, y, false); }
  void backward(const CVector& x, CVector& y) { run(x, y, true); }

  /// c_l = sum_k a_k exp(2 pi i (k-n/2) l / n) for l = 0..n-1.
  void lag_sums(const CVector& a, CVector& c) {
    for (int k = 0; k < n_; ++k) in_[k] = a(k);
    fft_.inv(out_, in_);
    c.resize(n_);
    for (int l = 0; l < n_; ++l) c(l) = parity(l) * out_[l];
  }

  /// y_k = sum_p exp(-2 pi i p (k-n/2) / n) r_p for p = 0..n-1.
  void lag_forward(const CVector& r, CVector& y) {
    for (int p = 0; p < n_; ++p) in_[p] = parity(p) * r(p);
    fft_.fwd(out_, in_);
    y.resize(n_);
    for (int k = 0; k < n_; ++k) y(k) = out_[k];
  }

  int size() const { return n_; }

 private:
  void run(const CVector& x, CVector& y, bool inverse) {
    for (int j = 0; j < n_; ++j) in_[j] = parity(j) * x(j);
    if (inverse)
      fft_.inv(out_, in_);
    else
      fft_.fwd(out_, in_);
    const double s = parity(n_ / 2);
    y.resize(n_);
    for (int k = 0; k < n_; ++k) y(k) = s * parity(k) * out_[k];
  }

  int n_;
  Eigen::FFT<double> fft_;
  std::vector<Complex> in_;
  std::vector<Complex> out_;
};

/// Trigonometric interpolation onto the half-step grid (length 2n, even entries reproduce x).
inline CVector upsample2(const CVector& x) {
  const int n = static_cast<int>(x.size());
  Eigen::FFT<double> fft;
  std::vector<Complex> in(x.data(), x.data() + n), spec;
  fft.fwd(spec, in);
  std::vector<Complex> big(2 * n, Complex(0.0));
  for (int k = 0; k < n / 2; ++k) big[k] = spec[k];
  for (int k = n / 2 + 1; k < n; ++k) big[k + n] = spec[k];
  big[n / 2] = 0.5 * spec[n / 2];
  big[n / 2 + n] = 0.5 * spec[n / 2];
  std::vector<Complex> out;
  fft.inv(out, big);
  CVector y(2 * n);
  for (int j = 0; j < 2 * n; ++j) y(j) = 2.0 * out[j];
  return y;
}

}  // namespace detail

enum class Direction { forward, inverse };

/// Centered DFT scaled so that it approximates the unitary Fourier transform on R.
inline Signal fourier(const Signal& f, Direction dir = Direction::forward) {
  const Axis expected = dir == Direction::forward ? Axis::time : Axis::frequency;
  if (f.axis() != expected)
    throw std::invalid_argument(std::string("fourier: expected a signal on the ") +
                                to_string(expected) + " axis");
  detail::CenteredDft dft(f.size());
  CVector y;
  if (dir == Direction::forward)
    dft.forward(f.samples(), y);
  else
    dft.backward(f.samples(), y);
  y *= f.spacing();
  return Signal(f.grid(), std::move(y), dual(f.axis()));
}

/// Discrete L^q norm with the grid spacing as quadrature weight; q may be infinite.
inline double norm_lq(const Signal& f, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("norm_lq: q must be >= 1");
  const CVector& v = f.samples();
  if (std::isinf(q)) return v.cwiseAbs().maxCoeff();
  if (q == 2.0) return std::sqrt(f.spacing() * v.squaredNorm());
  double s = 0.0;
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  for (int j = 0; j < v.size(); ++j) s += std::pow(std::abs(v(j)) / m, q);
  return m * std::pow(f.spacing() * s, 1.0 / q);
}

inline double energy(const Signal& f) { return f.spacing() * f.samples().squaredNorm(); }

/// <f, g> = sum f conj(g) dx.
inline Complex inner(const Signal& f, const Signal& g) {
  require_compatible(f, g, "inner");
  return f.spacing() * g.samples().dot(f.samples());
}

inline Signal normalized(const Signal& f) {
  const double nrm = norm_lq(f, 2.0);
  if (nrm == 0.0) throw std::invalid_argument("cannot normalize the zero signal");
  return f.scaled(1.0 / nrm);
}

/// Fraction of the energy carried by the `margin` samples nearest to either end.
inline double edge_energy_fraction(const Signal& f, int margin = 3) {
  const double total = f.samples().squaredNorm();
  if (total == 0.0) return 0.0;
  double edge = 0.0;
  const int n = f.size();
  for (int j = 0; j < margin && j < n; ++j) {
    edge += std::norm(f[j]);
    if (n - 1 - j > j) edge += std::norm(f[n - 1 - j]);
  }
  return edge / total;
}

}  // namespace uplab

#endif
