// Deterministic test signals.
#ifndef UPLAB_HARNESS_SIGNALS_HPP
#define UPLAB_HARNESS_SIGNALS_HPP

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "uplab/io.hpp"
#include "uplab/transforms.hpp"

namespace uplab {

enum class SignalKind { gaussian, hermite, chirp, indicator, modulated_gaussian, random_bandlimited, csv };

inline const char* to_string(SignalKind k) {
  switch (k) {
    case SignalKind::gaussian: return "gaussian";
    case SignalKind::hermite: return "hermite";
    case SignalKind::chirp: return "chirp";
    case SignalKind::indicator: return "indicator";
    case SignalKind::modulated_gaussian: return "modulated_gaussian";
    case SignalKind::random_bandlimited: return "random_bandlimited";
    case SignalKind::csv: return "csv";
  }
  return "gaussian";
}

inline SignalKind signal_kind_from_string(const std::string& s) {
  for (auto k : {SignalKind::gaussian, SignalKind::hermite, SignalKind::chirp, SignalKind::indicator,
                 SignalKind::modulated_gaussian, SignalKind::random_bandlimited, SignalKind::csv})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown signal kind '" + s + "'");
}

struct SignalSpec {
  SignalKind kind = SignalKind::gaussian;
  double lambda = 1.0;      // gaussian, modulated_gaussian
  int order = 0;            // hermite
  double rate = 1.0;        // chirp
  double half_width = 1.0;  // indicator
  double omega0 = 0.0;      // modulated_gaussian
  double band = 2.0;        // random_bandlimited
  std::uint64_t seed = 0;   // random_bandlimited
  std::filesystem::path path;
};

/// Hermite function of order k normalized in L^2(R): (2 pi)^{1/4} psi_k(sqrt(2 pi) t).
inline double hermite_function(int k, double t) {
  if (k < 0) throw std::invalid_argument("hermite order must be nonnegative");
  const double x = std::sqrt(2.0 * kPi) * t;
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  for (int m = 0; m < k; ++m) {
    const double next = std::sqrt(2.0 / (m + 1)) * x * cur - std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return std::pow(2.0 * kPi, 0.25) * cur;
}

inline Signal generate_signal(const SignalSpec& s, const Grid& grid) {
  switch (s.kind) {
    case SignalKind::gaussian:
      return gaussian_window(s.lambda, grid).signal;
    case SignalKind::hermite: {
      const int k = s.order;
      if (k < 0 || k > 60) throw std::invalid_argument("hermite order out of range");
      return Signal::sample(grid, [k](double t) { return hermite_function(k, t); });
    }
    case SignalKind::chirp: {
      const double c = s.rate;
      return Signal::sample(grid, [c](double t) {
        return std::pow(2.0, 0.25) * std::exp(-kPi * t * t) * std::polar(1.0, kPi * c * t * t);
      });
    }
    case SignalKind::indicator: {
      const double a = s.half_width;
      if (!(a > 0.0) || a > grid.length() / 2.0 - 3.0 * grid.dx())
        throw std::invalid_argument("indicator half width must be positive and fit inside the grid");
      Signal f = Signal::sample(grid, [a](double t) { return std::abs(t) <= a ? 1.0 : 0.0; });
      if (f.samples().squaredNorm() == 0.0) throw std::invalid_argument("indicator narrower than one sample");
      return normalized(f);
    }
    case SignalKind::modulated_gaussian: {
      Signal g = gaussian_window(s.lambda, grid).signal;
      for (int j = 0; j < grid.size(); ++j) g.samples()(j) *= std::polar(1.0, 2.0 * kPi * s.omega0 * grid.time(j));
      return g;
    }
    case SignalKind::random_bandlimited: {
      if (!(s.band > 0.0)) throw std::invalid_argument("band must be positive");
      std::mt19937_64 rng(s.seed);
      std::normal_distribution<double> nd;
      CVector coeff = CVector::Zero(grid.size());
      int active = 0;
      for (int k = 0; k < grid.size(); ++k) {
        if (std::abs(grid.freq(k)) <= s.band) {
          coeff(k) = Complex(nd(rng), nd(rng));
          ++active;
        }
      }
      if (active == 0) throw std::invalid_argument("band contains no frequency samples");
      Signal spectrum(grid, std::move(coeff), Axis::frequency);
      Signal f = fourier(spectrum, Direction::inverse);
      const double sigma = grid.length() / 8.0;
      for (int j = 0; j < grid.size(); ++j) {
        const double t = grid.time(j);
        f.samples()(j) *= std::exp(-t * t / (2.0 * sigma * sigma));
      }
      return normalized(f);
    }
    case SignalKind::csv: {
      Signal f = load_signal_csv(s.path);
      if (!(f.grid() == grid)) throw std::invalid_argument("CSV signal grid differs from the scenario grid");
      if (f.axis() != Axis::time) throw std::invalid_argument("CSV signal must be on the time axis");
      return f;
    }
  }
  throw std::invalid_argument("unknown signal kind");
}

/// Smooth random time-frequency symbol: a sum of Gaussian bumps with random centers, widths and
/// complex amplitudes, kept inside the middle half of both axes.
inline TFMatrix random_symbol(const Grid& grid, std::uint64_t seed, int bumps = 6) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.25, 0.25);
  std::uniform_real_distribution<double> width(0.5, 2.0);
  std::normal_distribution<double> nd;
  struct Bump {
    double x, w, s, c;
    Complex amp;
  };
  std::vector<Bump> bs;
  for (int b = 0; b < bumps; ++b)
    bs.push_back({uni(rng) * grid.length(), uni(rng) * grid.bandwidth(), width(rng), width(rng),
                  Complex(nd(rng), nd(rng))});
  return TFMatrix::sample(grid, [&](double x, double w) {
    Complex v(0.0);
    for (const auto& b : bs) v += b.amp * std::exp(-kPi * (b.s * (x - b.x) * (x - b.x) + b.c * (w - b.w) * (w - b.w)));
    return v;
  });
}

inline Signal random_smooth_signal(const Grid& grid, std::uint64_t seed, double band = 2.0) {
  SignalSpec s;
  s.kind = SignalKind::random_bandlimited;
  s.seed = seed;
  s.band = band;
  return generate_signal(s, grid);
}

}  // namespace uplab

#endif
