// Small numerical helpers shared by the bound and harness layers.
#ifndef UPLAB_NUMERICS_HPP
#define UPLAB_NUMERICS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace uplab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Hoelder conjugate of q in [1, inf]; q == 1 maps to inf and inf to 1.
inline double conjugate_exponent(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("exponent must be >= 1, got " + std::to_string(q));
  if (std::isinf(q)) return 1.0;
  if (q == 1.0) return kInf;
  return q / (q - 1.0);
}

struct GoldenResult {
  double argmax;
  double value;
  int evaluations;
};

/// Maximize a unimodal function on [a, b] by golden-section search.
template <class F>
GoldenResult golden_section_maximize(F&& f, double a, double b, double xtol = 1e-10) {
  if (!(a < b)) throw std::invalid_argument("golden_section_maximize: empty bracket");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  while (b - a > xtol * std::max(1.0, std::abs(c))) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++evals;
    if (evals > 10000) break;
  }
  if (fc >= fd) return {c, fc, evals};
  return {d, fd, evals};
}

}  // namespace uplab

#endif
