// Gabor transform, spectrogram, Wigner transform and normalized Gaussian windows.
#ifndef UPLAB_TRANSFORMS_HPP
#define UPLAB_TRANSFORMS_HPP

#include <cmath>

#include "uplab/core.hpp"

namespace uplab {

/// Samples on the time-frequency lattice (t_j, w_k); rows are time, columns frequency.
struct TFMatrix {
  Grid grid;
  CMatrix values;

  TFMatrix(Grid g, CMatrix v) : grid(g), values(std::move(v)) {
    if (values.rows() != grid.size() || values.cols() != grid.size())
      throw std::invalid_argument("TF matrix must be n x n");
  }

  static TFMatrix zeros(Grid g) { return TFMatrix(g, CMatrix::Zero(g.size(), g.size())); }

  template <class F>
  static TFMatrix sample(Grid g, F&& a) {
    const int n = g.size();
    CMatrix v(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) v(j, k) = Complex(a(g.time(j), g.freq(k)));
    return TFMatrix(g, std::move(v));
  }

  double cell() const { return grid.dx() * grid.dw(); }
};

struct GaussianWindow {
  double lambda;
  Signal signal;
};

/// (2 lambda)^(d/4), the factor making e^{-pi lambda |x|^2} a unit vector in L^2(R^d).
inline double gaussian_normalization(double lambda, int d = 1) {
  return std::pow(2.0 * lambda, d / 4.0);
}

/// Normalized Gaussian (2 lambda)^{1/4} e^{-pi lambda t^2}.
inline GaussianWindow gaussian_window(double lambda, const Grid& grid) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("gaussian_window: lambda must be positive");
  const double inner_half = grid.length() / 2.0 - 3.0 * grid.dx();
  const double edge_mass = inner_half > 0.0 ? std::erfc(std::sqrt(2.0 * kPi * lambda) * inner_half) : 1.0;
  if (edge_mass > 1e-6)
    throw std::invalid_argument("gaussian_window: lambda = " + std::to_string(lambda) +
                                " is too wide for the grid (edge mass " + std::to_string(edge_mass) + ")");
  const double half_max = std::sqrt(std::log(2.0) / (kPi * lambda));
  int above = 0;
  for (int j = 0; j < grid.size(); ++j)
    if (std::abs(grid.time(j)) <= half_max) ++above;
  if (above < 4)
    throw std::invalid_argument("gaussian_window: lambda = " + std::to_string(lambda) +
                                " is too narrow for the grid spacing");
  const double c = gaussian_normalization(lambda);
  Signal s = Signal::sample(grid, [&](double t) { return c * std::exp(-kPi * lambda * t * t); });
  return {lambda, std::move(s)};
}

/// u(-t) on the centered grid.
inline Signal reflect(const Signal& u) {
  const int n = u.size();
  CVector v(n);
  for (int j = 0; j < n; ++j) v(j) = u[(n - j) % n];
  return Signal(u.grid(), std::move(v), u.axis());
}

/// e^{2 pi i w_k t} psi(t - t_j) with the window shifted cyclically.
inline CVector tf_shift(const Signal& psi, int j, int k) {
  const Grid& g = psi.grid();
  const int n = g.size();
  CVector out(n);
  for (int p = 0; p < n; ++p)
    out(p) = std::polar(1.0, 2.0 * kPi * g.freq(k) * g.time(p)) * psi[(p - j + n / 2 + n) % n];
  return out;
}

/// V_w f[j, k] = dx sum_m e^{-2 pi i t_m w_k} f(t_m) conj(w(t_m - t_j)).
inline TFMatrix gabor_transform(const Signal& f, const Signal& window) {
  require_compatible(f, window, "gabor_transform");
  if (f.axis() != Axis::time) throw std::invalid_argument("gabor_transform: time-axis signals only");
  if (window.samples().cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("gabor_transform: zero window");
  const Grid& g = f.grid();
  const int n = g.size();
  detail::CenteredDft dft(n);
  CMatrix v(n, n);
  CVector x(n), y;
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) x(m) = f[m] * std::conj(window[(m - j + n / 2 + n) % n]);
    dft.forward(x, y);
    v.row(j) = g.dx() * y.transpose();
  }
  return TFMatrix(g, std::move(v));
}

/// (dx dw sum |m|^p)^{1/p}, the maximum modulus at p = inf.
inline double tf_norm_lp(const TFMatrix& m, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("tf_norm_lp: p must be >= 1");
  const double mx = m.values.cwiseAbs().maxCoeff();
  if (std::isinf(p) || mx == 0.0) return mx;
  double s = 0.0;
  for (Eigen::Index j = 0; j < m.values.rows(); ++j)
    for (Eigen::Index k = 0; k < m.values.cols(); ++k) s += std::pow(std::abs(m.values(j, k)) / mx, p);
  return mx * std::pow(m.cell() * s, 1.0 / p);
}

/// V_w f . conj(V_w g).
inline TFMatrix spectrogram(const Signal& f, const Signal& g, const Signal& window) {
  require_compatible(f, g, "spectrogram");
  TFMatrix vf = gabor_transform(f, window);
  if (&f == &g) return TFMatrix(vf.grid, vf.values.cwiseAbs2().cast<Complex>());
  TFMatrix vg = gabor_transform(g, window);
  return TFMatrix(vf.grid, vf.values.cwiseProduct(vg.values.conjugate()));
}

struct Marginals {
  CVector time_profile;  // integrated over frequency
  CVector freq_profile;  // integrated over time
};

inline Marginals marginals(const TFMatrix& m) {
  return {m.grid.dw() * m.values.rowwise().sum(), m.grid.dx() * m.values.colwise().sum().transpose()};
}

/// Wig(f, g)(x, w) = int e^{-2 pi i t w} f(x + t/2) conj(g(x - t/2)) dt.
/// Half-lag samples come from trigonometric interpolation, so the lag step is dx and the
/// frequency axis is the grid's own; lags are restricted to |t| <= L/2, the two end lags sharing
/// one sample with half weight each so that Wig(f, g) = conj(Wig(g, f)) holds exactly.
inline TFMatrix wigner(const Signal& f, const Signal& g) {
  require_compatible(f, g, "wigner");
  if (f.axis() != Axis::time) throw std::invalid_argument("wigner: time-axis signals only");
  const Grid& grid = f.grid();
  const int n = grid.size();
  const CVector u = detail::upsample2(f.samples());
  const CVector v = &f == &g ? u : detail::upsample2(g.samples());
  detail::CenteredDft dft(n);
  CMatrix w(n, n);
  CVector r(n), y;
  const int two_n = 2 * n;
  for (int j = 0; j < n; ++j) {
    for (int l = -n / 2; l < n / 2; ++l) {
      const int a = ((2 * j + l) % two_n + two_n) % two_n;
      const int b = ((2 * j - l) % two_n + two_n) % two_n;
      r((l + n) % n) = u(a) * std::conj(v(b));
    }
    const int a = ((2 * j + n / 2) % two_n + two_n) % two_n;
    const int b = ((2 * j - n / 2) % two_n + two_n) % two_n;
    r(n / 2) = 0.5 * (r(n / 2) + u(a) * std::conj(v(b)));
    dft.lag_forward(r, y);
    w.row(j) = grid.dx() * y.transpose();
  }
  return TFMatrix(grid, std::move(w));
}

}  // namespace uplab

#endif
