// Invariant suite behind `uplab selftest`.
#ifndef UPLAB_HARNESS_SELFTEST_HPP
#define UPLAB_HARNESS_SELFTEST_HPP

#include <Eigen/SVD>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "uplab/bounds.hpp"
#include "uplab/harness/run.hpp"
#include "uplab/harness/signals.hpp"
#include "uplab/operators.hpp"

namespace uplab {

/// Smallest number of samples whose complement carries at most eps^2 of the energy, by enumeration.
inline int brute_force_min_count(const Signal& f, double eps) {
  const int n = f.size();
  if (n > 20) throw std::invalid_argument("brute force limited to n <= 20");
  const double total = f.samples().squaredNorm();
  int best = n;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    const int c = __builtin_popcount(m);
    if (c >= best) continue;
    double outside = 0.0;
    for (int j = 0; j < n; ++j)
      if (!(m & (1u << j))) outside += std::norm(f[j]);
    if (std::sqrt(outside / total) <= eps) best = c;
  }
  return best;
}

inline double dense_spectral_norm(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

inline Report run_selftest(int n = 256, std::uint64_t seed = 1) {
  const Grid grid(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const Grid small(64, 1.0 / 8.0);
  Report report{"selftest", grid, {}, json::object()};
  report.context = {{"seed", seed}, {"n", n}};
  auto add = [&](const std::string& id, const std::function<Verdict()>& body) {
    try {
      Verdict v = body();
      v.id = id;
      report.verdicts.push_back(std::move(v));
    } catch (const std::exception& e) {
      report.verdicts.push_back(failed_verdict(id, e.what()));
    }
  };
  auto rnd = [&](const Grid& g, std::uint64_t k) { return random_smooth_signal(g, seed * 1000003ULL + k); };

  add("core.roundtrip", [&] {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      Signal f = rnd(grid, i);
      Signal back = fourier(fourier(f), Direction::inverse);
      worst = std::max(worst, (back.samples() - f.samples()).norm() / f.samples().norm());
    }
    return make_verdict("", 1e-12, worst, 0.0, 0.0);
  });
  add("core.plancherel", [&] {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      Signal f = rnd(grid, 2 * i + 100), g = rnd(grid, 2 * i + 101);
      const double d = std::abs(inner(f, g) - inner(fourier(f), fourier(g)));
      worst = std::max(worst, d / (norm_lq(f, 2.0) * norm_lq(g, 2.0)));
    }
    return make_verdict("", 1e-10, worst, 0.0, 0.0);
  });
  add("core.gaussian_fixed_point", [&] {
    Signal f = Signal::sample(grid, [](double t) { return std::exp(-kPi * t * t); });
    Signal fh = fourier(f);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(fh[k] - std::exp(-kPi * grid.freq(k) * grid.freq(k))));
    return make_verdict("", 1e-8, worst, 0.0, 0.0);
  });
  add("concentration.greedy_optimal", [&] {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ue(0.0, 1.0);
    const Grid g12(12, 1.0);
    int mismatches = 0;
    for (int t = 0; t < 40; ++t) {
      CVector v(12);
      for (int j = 0; j < 12; ++j) v(j) = Complex(nd(rng), nd(rng));
      Signal f(g12, v);
      const double eps = ue(rng);
      if (minimal_concentration_set(f, eps).set.count() != brute_force_min_count(f, eps)) ++mismatches;
    }
    return make_verdict("", 0.0, mismatches, 0.0, 0.0, "mismatches over 40 signals");
  });
  add("concentration.monotone_in_eps", [&] {
    Signal f = rnd(grid, 7);
    double prev = kInf;
    int violations = 0;
    for (int i = 0; i <= 20; ++i) {
      const double m = minimal_concentration_set(f, i / 20.0).set.measure();
      if (m > prev) ++violations;
      prev = m;
    }
    return make_verdict("", 0.0, violations, 0.0, 0.0);
  });
  add("transforms.lieb", [&] {
    std::vector<Verdict> vs;
    for (int i = 0; i < 10; ++i) {
      Signal f = rnd(grid, 200 + 2 * i), g = rnd(grid, 201 + 2 * i);
      const TFMatrix v = gabor_transform(f, g);
      const double scale = norm_lq(f, 2.0) * norm_lq(g, 2.0);
      for (double p : {2.0, 3.0, 4.0, 8.0, kInf})
        vs.push_back(make_verdict("", lieb_constant(p) * scale, tf_norm_lp(v, p), 0.0, 1e-8 * scale));
    }
    return detail::tightest(vs);
  });
  add("transforms.orthogonality", [&] {
    Signal f = rnd(grid, 300), g = rnd(grid, 301);
    const double lhs = tf_norm_lp(gabor_transform(f, g), 2.0);
    const double rhs = norm_lq(f, 2.0) * norm_lq(g, 2.0);
    return make_verdict("", 1e-8, std::abs(lhs - rhs) / rhs, 0.0, 0.0);
  });
  add("transforms.wigner_gaussian", [&] {
    double worst = 0.0;
    for (double lam : {0.5, 1.0, 2.0}) {
      const TFMatrix w = wigner(gaussian_window(lam, grid).signal, gaussian_window(lam, grid).signal);
      const double c2 = std::sqrt(2.0 * lam);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double x = grid.time(j), o = grid.freq(k);
          const double ref = c2 * std::sqrt(2.0 / lam) * std::exp(-2.0 * kPi * lam * x * x) * std::exp(-kPi * (2.0 / lam) * o * o);
          worst = std::max(worst, std::abs(w.values(j, k) - ref));
        }
    }
    return make_verdict("", 1e-6, worst, 0.0, 0.0);
  });
  add("operators.projections", [&] {
    Signal f = rnd(small, 400);
    const MaskSet t = minimal_concentration_set(f, 0.2).set;
    const MaskSet w = minimal_concentration_set(fourier(f), 0.2).set;
    double worst = 0.0;
    for (const LinearOp& op : {project_time(t), project_freq(w)}) {
      worst = std::max(worst, (op.matrix * op.matrix - op.matrix).cwiseAbs().maxCoeff());
      worst = std::max(worst, (op.matrix.adjoint() - op.matrix).cwiseAbs().maxCoeff());
    }
    return make_verdict("", 1e-12, worst, 0.0, 0.0);
  });
  add("operators.smoothed_range", [&] {
    Signal f = rnd(grid, 500);
    const MaskSet t = minimal_concentration_set(f, 0.1).set;
    const MaskSet w = minimal_concentration_set(fourier(f), 0.1).set;
    double excess = 0.0;
    for (double l : {1.0, 4.0, 16.0, 64.0}) {
      const RVector v = gaussian_smoothed_indicator(t, l).values;
      excess = std::max({excess, v.maxCoeff() - 1.0, -v.minCoeff()});
    }
    for (double l : {1.0, 0.25, 1.0 / 16.0, 1.0 / 64.0}) {
      const RVector v = gaussian_smoothed_indicator(w, l).values;
      excess = std::max({excess, v.maxCoeff() - 1.0, -v.minCoeff()});
    }
    return make_verdict("", 1e-12, excess, 0.0, 0.0);
  });
  add("operators.energy_estimate", [&] {
    Signal f = rnd(small, 600);
    const MaskSet t = minimal_concentration_set(f, 0.2).set;
    const MaskSet w = minimal_concentration_set(fourier(f), 0.2).set;
    const SmoothedOps ops = smoothed_concentration_ops(t, w, 1.0, 1.0);
    std::vector<Verdict> vs;
    for (int i = 0; i < 5; ++i) {
      Signal g = rnd(small, 610 + i);
      for (const LinearOp* op : {&ops.l1, &ops.l2}) {
        Signal lg = op->apply(g);
        const double rhs = std::pow(norm_lq(Signal(small, g.samples() - lg.samples()), 2.0), 2.0);
        vs.push_back(make_verdict("", energy(g) - energy(lg), rhs, 0.0, 1e-10 * energy(g)));
      }
    }
    return detail::tightest(vs);
  });
  add("operators.localization_norm_bound", [&] {
    std::vector<Verdict> vs;
    for (int i = 0; i < 5; ++i) {
      const TFMatrix a = random_symbol(small, seed * 7919 + i);
      Signal phi = rnd(small, 700 + 2 * i), psi = rnd(small, 701 + 2 * i);
      const double nrm = operator_norm(localization_operator(a, phi, psi));
      const double w = norm_lq(phi, 2.0) * norm_lq(psi, 2.0);
      for (double q : {1.0, 1.5, 2.0, 4.0, kInf}) {
        const double aq = tf_norm_lp(a, q);
        vs.push_back(make_verdict("", locop_constant(q) * w * aq, nrm, 0.0, 1e-6 * w * aq));
      }
    }
    return detail::tightest(vs);
  });
  add("operators.locweyl", [&] {
    const TFMatrix a = random_symbol(small, seed * 31 + 5);
    Signal phi = rnd(small, 800), psi = rnd(small, 801);
    const LinearOp l = localization_operator(a, phi, psi);
    const LinearOp w = weyl_from_localization(a, phi, psi);
    return make_verdict("", 1e-5, (l.matrix - w.matrix).norm() / l.matrix.norm(), 0.0, 0.0);
  });
  add("operators.weyl_multipliers", [&] {
    auto ax = [](double x, double) { return std::exp(-kPi * x * x) * std::cos(x); };
    auto aw = [](double, double w) { return std::exp(-kPi * w * w); };
    const LinearOp mx = weyl_operator(small, ax);
    const LinearOp mw = weyl_operator(small, aw);
    CVector dx(64), dw(64);
    for (int j = 0; j < 64; ++j) {
      dx(j) = ax(small.time(j), 0.0);
      dw(j) = aw(0.0, small.freq(j));
    }
    const double e1 = (mx.matrix - multiplication_operator(small, dx).matrix).norm();
    const double e2 = (mw.matrix - fourier_multiplier(small, dw).matrix).norm();
    return make_verdict("", 1e-10, std::max(e1, e2), 0.0, 0.0);
  });
  add("operators.norm_vs_svd", [&] {
    std::mt19937_64 rng(seed + 99);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int t = 0; t < 3; ++t) {
      CMatrix m(64, 64);
      for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) m(i, j) = Complex(nd(rng), nd(rng));
      const double ref = dense_spectral_norm(m);
      worst = std::max(worst, std::abs(operator_norm_estimate(m).value - ref) / ref);
    }
    return make_verdict("", 1e-8, worst, 0.0, 0.0);
  });
  add("bounds.improved_dominates", [&] {
    std::vector<Verdict> vs;
    for (int d = 1; d <= 3; ++d)
      for (int i = 0; i < 20; ++i)
        for (int k = 0; k < 20; ++k) {
          const double et = 0.025 * i, ew = 0.025 * k;
          const double eps = et + ew;
          const double floor = std::max(1.0 - eps, std::pow(4.0, d) * (1.0 - eps) * (1.0 - eps));
          vs.push_back(make_verdict("", improved_bound(et, ew, d).value, floor, 1e-12, 0.0));
        }
    return detail::tightest(vs);
  });
  add("bounds.beta_gamma", [&] {
    double worst = 0.0;
    for (double a : {0.6, 0.75, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(price_k(1, a, 2.0) / price_k1(1, a) - 1.0));
    return make_verdict("", 1e-12, worst, 0.0, 0.0);
  });
  add("bounds.alpha_k_minimum", [&] {
    double best = kInf, arg = 0.0;
    for (int i = 0; i <= 100000; ++i) {
      const double k = i == 0 ? kInf : 100000.0 / i;
      const double v = alpha_k_profile(k);
      if (v < best) {
        best = v;
        arg = k;
      }
    }
    return make_verdict("", 1e-12, std::abs(best - 0.5) + std::abs(arg - 2.0), 0.0, 0.0,
                        "argmin k=" + detail::fmt(arg));
  });
  std::stable_sort(report.verdicts.begin(), report.verdicts.end(),
                   [](const Verdict& a, const Verdict& b) { return a.id < b.id; });
  return report;
}

}  // namespace uplab

#endif
