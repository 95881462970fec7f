// Shared helpers for the unit suites.
#ifndef UPLAB_TEST_SUPPORT_HPP
#define UPLAB_TEST_SUPPORT_HPP

#include <cstdint>
#include <random>

#include "uplab/uplab.hpp"

namespace uplab::test {

/// Complex white noise, not band limited; for algebraic identities only.
inline Signal noise(const Grid& g, std::uint64_t seed, Axis axis = Axis::time) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CVector v(g.size());
  for (int j = 0; j < g.size(); ++j) v(j) = Complex(nd(rng), nd(rng));
  return Signal(g, std::move(v), axis);
}

/// Direct O(n^2) centered sum dx * sum_j f_j e^{-2 pi i t_j w_k}.
inline CVector naive_dft(const Signal& f) {
  const Grid& g = f.grid();
  CVector out(g.size());
  for (int k = 0; k < g.size(); ++k) {
    Complex s(0.0);
    for (int j = 0; j < g.size(); ++j) s += f[j] * std::polar(1.0, -2.0 * kPi * g.time(j) * g.freq(k));
    out(k) = g.dx() * s;
  }
  return out;
}

/// Euler-Maclaurin evaluation of sum_{j>=0} h c e^{-pi beta (s + j h)^2}: the half-line integral plus
/// endpoint corrections through h^6.
inline double gaussian_half_line_sum(double c, double beta, double s, double h) {
  const double r = std::sqrt(2.0 * kPi * beta);
  const double x = r * s;
  const double g = c * std::exp(-kPi * beta * s * s);
  const double he1 = x, he3 = x * x * x - 3.0 * x, he5 = std::pow(x, 5) - 10.0 * x * x * x + 15.0 * x;
  const double d1 = -r * he1 * g;
  const double d3 = -r * r * r * he3 * g;
  const double d5 = -std::pow(r, 5) * he5 * g;
  const double integral = c / std::sqrt(beta) * 0.5 * std::erfc(std::sqrt(kPi * beta) * s);
  return integral + h / 2.0 * g - h * h / 12.0 * d1 + std::pow(h, 4) / 720.0 * d3 - std::pow(h, 6) / 30240.0 * d5;
}

inline double max_abs_diff(const CVector& a, const CVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace uplab::test

#endif
