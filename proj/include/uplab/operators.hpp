// Dense time-frequency operators: projections, smoothed concentration operators,
// localization operators, Weyl quantization and spectral norms.
#ifndef UPLAB_OPERATORS_HPP
#define UPLAB_OPERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "uplab/concentration.hpp"
#include "uplab/transforms.hpp"

namespace uplab {

enum class Provenance {
  identity,
  projection_time,
  projection_freq,
  multiplication,
  fourier_multiplier,
  localization,
  weyl,
  custom
};

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::identity: return "identity";
    case Provenance::projection_time: return "projection_time";
    case Provenance::projection_freq: return "projection_freq";
    case Provenance::multiplication: return "multiplication";
    case Provenance::fourier_multiplier: return "fourier_multiplier";
    case Provenance::localization: return "localization";
    case Provenance::weyl: return "weyl";
    case Provenance::custom: return "custom";
  }
  return "custom";
}

/// Operator on time-axis sample vectors; the quadrature weight dx is folded into the matrix.
struct LinearOp {
  Grid grid;
  CMatrix matrix;
  Provenance provenance = Provenance::custom;

  LinearOp(Grid g, CMatrix m, Provenance p = Provenance::custom)
      : grid(g), matrix(std::move(m)), provenance(p) {
    if (matrix.rows() != grid.size() || matrix.cols() != grid.size())
      throw std::invalid_argument("operator matrix must be n x n");
  }

  static LinearOp identity(Grid g) {
    return LinearOp(g, CMatrix::Identity(g.size(), g.size()), Provenance::identity);
  }

  Signal apply(const Signal& f) const {
    if (!(f.grid() == grid) || f.axis() != Axis::time)
      throw std::invalid_argument("LinearOp::apply: signal is not on the operator's time grid");
    return Signal(grid, matrix * f.samples(), Axis::time);
  }
};

/// Gaussian-smoothed set indicator, values in [0, 1].
struct SmoothedSymbol {
  Axis axis;
  RVector values;
  double lambda;
  MaskSet mask;
};

inline LinearOp multiplication_operator(const Grid& grid, const CVector& a) {
  if (a.size() != grid.size()) throw std::invalid_argument("multiplier length mismatch");
  return LinearOp(grid, a.asDiagonal().toDenseMatrix(), Provenance::multiplication);
}

/// F^{-1} m F as a circulant matrix.
inline LinearOp fourier_multiplier(const Grid& grid, const CVector& m) {
  const int n = grid.size();
  if (m.size() != n) throw std::invalid_argument("multiplier length mismatch");
  detail::CenteredDft dft(n);
  CVector c;
  dft.lag_sums(m, c);
  const double w = grid.dx() * grid.dw();
  CMatrix mat(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) mat(p, q) = w * c(((p - q) % n + n) % n);
  return LinearOp(grid, std::move(mat), Provenance::fourier_multiplier);
}

inline CVector indicator(const MaskSet& u) {
  CVector v(u.grid().size());
  for (int j = 0; j < v.size(); ++j) v(j) = u.contains(j) ? 1.0 : 0.0;
  return v;
}

inline LinearOp project_time(const MaskSet& mask) {
  if (mask.axis() != Axis::time) throw std::invalid_argument("project_time: mask must be on the time axis");
  LinearOp op = multiplication_operator(mask.grid(), indicator(mask));
  op.provenance = Provenance::projection_time;
  return op;
}

inline LinearOp project_freq(const MaskSet& mask) {
  if (mask.axis() != Axis::frequency)
    throw std::invalid_argument("project_freq: mask must be on the frequency axis");
  LinearOp op = fourier_multiplier(mask.grid(), indicator(mask));
  op.provenance = Provenance::projection_freq;
  return op;
}

/// chi_U * phi_mu with phi_mu(x) = mu^{1/2} e^{-pi mu x^2}, mu = 2 lambda on the time axis and
/// 2 / lambda on the frequency axis. The sampled kernel is renormalized to unit discrete mass.
inline SmoothedSymbol gaussian_smoothed_indicator(const MaskSet& mask, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("gaussian_smoothed_indicator: lambda must be positive");
  const Grid& g = mask.grid();
  const int n = g.size();
  const double h = g.spacing(mask.axis());
  const double mu = mask.axis() == Axis::time ? 2.0 * lambda : 2.0 / lambda;
  const double half_span = n * h / 2.0;
  const double lost = std::erfc(std::sqrt(kPi * mu) * half_span);
  if (lost > 1e-6)
    throw std::invalid_argument("gaussian_smoothed_indicator: kernel for lambda = " + std::to_string(lambda) +
                                " is too wide for the grid (mass lost " + std::to_string(lost) + ")");
  RVector kernel(n);
  for (int l = 0; l < n; ++l) {
    const int lag = l < n / 2 ? l : l - n;
    const double x = lag * h;
    kernel(l) = std::sqrt(mu) * std::exp(-kPi * mu * x * x);
  }
  kernel /= h * kernel.sum();
  RVector values = RVector::Zero(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask.contains(i)) s += kernel(((j - i) % n + n) % n);
    values(j) = h * s;
  }
  return {mask.axis(), std::move(values), lambda, mask};
}

struct SmoothedOps {
  LinearOp l1;
  LinearOp l2;
  SmoothedSymbol f1;
  SmoothedSymbol f2;
};

/// L1 = multiplication by F1, L2 = Fourier multiplier by F2.
inline SmoothedOps smoothed_concentration_ops(const MaskSet& mask_t, const MaskSet& mask_w, double lambda1,
                                              double lambda2) {
  if (mask_t.axis() != Axis::time || mask_w.axis() != Axis::frequency)
    throw std::invalid_argument("smoothed_concentration_ops: expected a time mask and a frequency mask");
  if (!(mask_t.grid() == mask_w.grid()))
    throw std::invalid_argument("smoothed_concentration_ops: masks live on different grids");
  SmoothedSymbol f1 = gaussian_smoothed_indicator(mask_t, lambda1);
  SmoothedSymbol f2 = gaussian_smoothed_indicator(mask_w, lambda2);
  LinearOp l1 = multiplication_operator(mask_t.grid(), f1.values.cast<Complex>());
  LinearOp l2 = fourier_multiplier(mask_w.grid(), f2.values.cast<Complex>());
  return {std::move(l1), std::move(l2), std::move(f1), std::move(f2)};
}

/// L f = sum_{j,k} a[j,k] V_phi f[j,k] e^{2 pi i w_k t} psi(t - t_j) dx dw.
inline LinearOp localization_operator(const TFMatrix& symbol, const Signal& phi, const Signal& psi) {
  require_compatible(phi, psi, "localization_operator");
  if (!(symbol.grid == phi.grid()) || phi.axis() != Axis::time)
    throw std::invalid_argument("localization_operator: symbol and windows live on different grids");
  const Grid& g = symbol.grid;
  const int n = g.size();
  detail::CenteredDft dft(n);
  CMatrix m = CMatrix::Zero(n, n);
  CVector row(n), a_lag;
  const double w = g.dx() * g.dx() * g.dw();
  for (int j = 0; j < n; ++j) {
    row = symbol.values.row(j).transpose();
    if (row.cwiseAbs().maxCoeff() == 0.0) continue;
    dft.lag_sums(row, a_lag);
    for (int p = 0; p < n; ++p) {
      const Complex ps = psi[(p - j + n / 2 + n) % n];
      if (ps == 0.0) continue;
      for (int q = 0; q < n; ++q)
        m(p, q) += ps * std::conj(phi[(q - j + n / 2 + n) % n]) * a_lag(((p - q) % n + n) % n);
    }
  }
  m *= w;
  return LinearOp(g, std::move(m), Provenance::localization);
}

namespace detail {

/// Weyl matrix from symbol values on the half-step x grid: b(i, k) = a((i/2 - n/2) dx, w_k), i < 2n.
inline LinearOp weyl_from_half_grid(const Grid& g, const CMatrix& b) {
  const int n = g.size();
  const int two_n = 2 * n;
  CenteredDft dft(n);
  CMatrix s(two_n, n);
  CVector row(n), c;
  for (int i = 0; i < two_n; ++i) {
    row = b.row(i).transpose();
    dft.lag_sums(row, c);
    s.row(i) = c.transpose();
  }
  CMatrix m(n, n);
  const double w = g.dx() * g.dw();
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      int l = ((p - q) % n + n) % n;
      if (l >= n / 2) l -= n;
      const int lag = (l + n) % n;
      const int mid = ((2 * q + l) % two_n + two_n) % two_n;
      if (l == -n / 2) {
        const int alt = ((2 * q - l) % two_n + two_n) % two_n;
        m(p, q) = w * 0.5 * (s(mid, lag) + s(alt, lag));
      } else {
        m(p, q) = w * s(mid, lag);
      }
    }
  }
  return LinearOp(g, std::move(m), Provenance::weyl);
}

inline void fft2(CMatrix& a, bool inverse) {
  Eigen::FFT<double> fft;
  const Eigen::Index r = a.rows(), c = a.cols();
  std::vector<Complex> in, out;
  for (Eigen::Index i = 0; i < r; ++i) {
    in.assign(c, Complex(0.0));
    for (Eigen::Index k = 0; k < c; ++k) in[k] = a(i, k);
    inverse ? fft.inv(out, in) : fft.fwd(out, in);
    for (Eigen::Index k = 0; k < c; ++k) a(i, k) = out[k];
  }
  for (Eigen::Index k = 0; k < c; ++k) {
    in.assign(r, Complex(0.0));
    for (Eigen::Index i = 0; i < r; ++i) in[i] = a(i, k);
    inverse ? fft.inv(out, in) : fft.fwd(out, in);
    for (Eigen::Index i = 0; i < r; ++i) a(i, k) = out[i];
  }
}

}  // namespace detail

/// Weyl quantization of a closed-form symbol a(x, w), evaluated exactly at the half-grid midpoints.
/// The kernel is K[p, q] = dw sum_k e^{2 pi i (t_p - t_q) w_k} a((t_p + t_q) / 2, w_k) with the
/// lag t_p - t_q taken cyclically in [-L/2, L/2).
template <class Symbol>
LinearOp weyl_operator(const Grid& g, Symbol&& a) {
  const int n = g.size();
  CMatrix b(2 * n, n);
  for (int i = 0; i < 2 * n; ++i) {
    const double x = (0.5 * i - n / 2) * g.dx();
    for (int k = 0; k < n; ++k) b(i, k) = Complex(a(x, g.freq(k)));
  }
  return detail::weyl_from_half_grid(g, b);
}

/// Weyl quantization of a tabulated symbol; midpoints come from trigonometric interpolation in x.
inline LinearOp weyl_operator(const TFMatrix& symbol) {
  const Grid& g = symbol.grid;
  const int n = g.size();
  Eigen::FFT<double> fft;
  std::vector<Complex> col(n), spec;
  double total = 0.0, nyquist = 0.0;
  const int band = std::max(1, n / 32);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) col[j] = symbol.values(j, k);
    fft.fwd(spec, col);
    for (int s = 0; s < n; ++s) {
      const double e = std::norm(spec[s]);
      total += e;
      if (std::abs(s - n / 2) <= band) nyquist += e;
    }
  }
  if (total > 0.0 && nyquist > 1e-8 * total)
    throw std::invalid_argument("weyl_operator: symbol is not resolved in x (relative energy " +
                                std::to_string(nyquist / total) + " near the Nyquist band)");
  CMatrix b(2 * n, n);
  for (int k = 0; k < n; ++k) b.col(k) = detail::upsample2(symbol.values.col(k));
  return detail::weyl_from_half_grid(g, b);
}

/// Weyl symbol of the localization operator: b = a * Wig(psi, phi), i.e. a correlated with
/// Wig(psi~, phi~) where u~(x) = u(-x). Convolution is cyclic on the lattice.
inline TFMatrix localization_weyl_symbol(const TFMatrix& a, const Signal& phi, const Signal& psi) {
  require_compatible(phi, psi, "weyl_from_localization");
  if (!(a.grid == phi.grid())) throw std::invalid_argument("weyl_from_localization: grid mismatch");
  const Grid& g = a.grid;
  const int n = g.size();
  CMatrix wig = wigner(psi, phi).values;
  CMatrix sym = a.values;
  detail::fft2(sym, false);
  detail::fft2(wig, false);
  CMatrix c = sym.cwiseProduct(wig);
  detail::fft2(c, true);
  CMatrix b(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) b(j, k) = a.cell() * c((j + n / 2) % n, (k + n / 2) % n);
  return TFMatrix(g, std::move(b));
}

inline LinearOp weyl_from_localization(const TFMatrix& a, const Signal& phi, const Signal& psi) {
  if (a.values.cwiseAbs().maxCoeff() == 0.0) {
    LinearOp zero(a.grid, CMatrix::Zero(a.grid.size(), a.grid.size()), Provenance::weyl);
    return zero;
  }
  return weyl_operator(localization_weyl_symbol(a, phi, psi));
}

struct ConvergenceError : std::runtime_error {
  int iterations;
  ConvergenceError(const std::string& what, int it) : std::runtime_error(what), iterations(it) {}
};

struct NormEstimate {
  double value;
  int iterations;
};

/// Largest singular value of `a`: Lanczos iteration on A^H A (power iteration accelerated over its
/// Krylov space, fully reorthogonalized) from a fixed-seed start vector. Stops when the Ritz residual
/// of the top Ritz pair is below rtol times the Ritz value.
inline NormEstimate operator_norm_estimate(const CMatrix& a, double rtol = 1e-10, int max_iter = 10000,
                                           std::uint64_t seed = 0x5eedULL) {
  const Eigen::Index n = a.cols();
  if (n == 0 || a.cwiseAbs().maxCoeff() == 0.0) return {0.0, 0};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(nd(rng), nd(rng));
  v.normalize();

  const int steps = static_cast<int>(std::min<Eigen::Index>(max_iter, n));
  CMatrix basis(n, steps);
  std::vector<double> alpha, beta;
  double theta = 0.0;
  for (int k = 0; k < steps; ++k) {
    basis.col(k) = v;
    CVector w = a.adjoint() * (a * v);
    alpha.push_back(w.dot(v).real());
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= k; ++i) w -= basis.col(i).dot(w) * basis.col(i);
    const double b = w.norm();

    const int m = k + 1;
    RVector diag = Eigen::Map<const RVector>(alpha.data(), m);
    RVector sub = m > 1 ? RVector(Eigen::Map<const RVector>(beta.data(), m - 1)) : RVector(0);
    Eigen::SelfAdjointEigenSolver<RMatrix> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    theta = std::max(0.0, es.eigenvalues()(m - 1));
    const double residual = b * std::abs(es.eigenvectors()(m - 1, m - 1));
    if (residual <= rtol * theta || b <= 1e-14 * std::max(theta, 1e-300) || m == n) return {std::sqrt(theta), m};
    beta.push_back(b);
    v = w / b;
  }
  throw ConvergenceError("operator_norm: Lanczos iteration did not converge in " + std::to_string(steps) +
                             " iterations",
                         steps);
}

inline double operator_norm(const LinearOp& op) { return operator_norm_estimate(op.matrix).value; }

}  // namespace uplab

#endif
