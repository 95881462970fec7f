#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace uplab;

namespace {

const Grid kGrid(256, 1.0 / 16.0);

Signal unit_gaussian() { return gaussian_window(1.0, kGrid).signal; }

double improved_objective(double r, double eps, int d) {
  return std::pow(1.0 - eps, r) * std::pow(r / (r - 1.0), 2.0 * d * (r - 1.0));
}

}  // namespace

TEST(Constants, Lieb) {
  EXPECT_DOUBLE_EQ(lieb_constant(2.0, 1), 1.0);
  EXPECT_DOUBLE_EQ(lieb_constant(2.0, 3), 1.0);
  EXPECT_DOUBLE_EQ(lieb_constant(kInf), 1.0);
  EXPECT_NEAR(lieb_constant(4.0), 0.8408964152537145, 1e-15);
  EXPECT_THROW(lieb_constant(1.5), std::invalid_argument);
}

TEST(Constants, LocalizationOperator) {
  EXPECT_DOUBLE_EQ(locop_constant(kInf, 3), 1.0);
  EXPECT_DOUBLE_EQ(locop_constant(1.0), 1.0);
  EXPECT_NEAR(locop_constant(2.0), std::sqrt(0.5), 1e-15);
  EXPECT_THROW(locop_constant(0.5), std::invalid_argument);
}

TEST(Constants, AlphaProfile) {
  EXPECT_DOUBLE_EQ(alpha_k_profile(2.0), 0.5);
  EXPECT_DOUBLE_EQ(alpha_k_profile(1.0), 1.0);
  EXPECT_DOUBLE_EQ(alpha_k_profile(kInf), 1.0);
  double best = kInf, arg = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double k = 1.0 + 99.0 * i / 99990.0;
    if (alpha_k_profile(k) < best) {
      best = alpha_k_profile(k);
      arg = k;
    }
  }
  EXPECT_NEAR(best, 0.5, 1e-12);
  EXPECT_NEAR(arg, 2.0, 1e-12);
}

TEST(DonohoStark, Classical) {
  EXPECT_DOUBLE_EQ(ds_bound(0.0, 0.0), 1.0);
  EXPECT_NEAR(ds_bound(0.2, 0.2), 0.36, 1e-15);
  EXPECT_THROW(ds_bound(0.6, 0.5), std::invalid_argument);
  EXPECT_THROW(ds_bound(-0.1, 0.0), std::invalid_argument);
}

TEST(DonohoStark, ImprovedAtZero) {
  const auto b = improved_bound(0.0, 0.0, 1);
  EXPECT_NEAR(b.value, 7.38905609893065, 1e-9 * 7.39);
  EXPECT_TRUE(b.supremum_only);
  EXPECT_TRUE(std::isinf(*b.argmax));
  EXPECT_NEAR(improved_bound(0.0, 0.0, 2).value, std::exp(4.0), 1e-9 * std::exp(4.0));
}

TEST(DonohoStark, ImprovedDominatesMembers) {
  const auto b = improved_bound(0.1, 0.1, 1);
  EXPECT_GE(b.value, 2.56);
  EXPECT_GE(b.value, 0.8);
  EXPECT_FALSE(b.supremum_only);
  EXPECT_NEAR(improved_ds_r2(0.1, 0.1), 2.56, 1e-12);
}

TEST(DonohoStark, ImprovedMatchesBruteForceGrid) {
  for (double eps : {0.05, 0.2, 0.5, 0.9}) {
    const auto b = improved_bound(eps / 2.0, eps / 2.0, 1);
    double best = 0.0, arg = 0.0;
    const int points = 1000000;
    const double hi = 4.0 * *b.argmax;
    for (int i = 1; i <= points; ++i) {
      const double r = 1.0 + (hi - 1.0) * i / points;
      const double v = improved_objective(r, eps, 1);
      if (v > best) {
        best = v;
        arg = r;
      }
    }
    EXPECT_GE(b.value * (1.0 + 1e-12), best) << eps;
    EXPECT_NEAR(b.value, best, 1e-9 * best) << eps;
    EXPECT_NEAR(*b.argmax, arg, 1e-3 * arg) << eps;
  }
}

TEST(DonohoStark, ImprovedDominatesClassicalAndIsContinuousDecreasing) {
  for (int d : {1, 2, 3}) {
    double prev = improved_bound(0.0, 0.0, d).value;
    for (int i = 1; i < 1000; ++i) {
      const double eps = i * 1e-3;
      const double v = improved_bound(eps / 2.0, eps / 2.0, d).value;
      EXPECT_GE(v, ds_bound(eps / 2.0, eps / 2.0));
      EXPECT_GE(v * (1.0 + 1e-12), std::pow(4.0, d) * (1.0 - eps) * (1.0 - eps));
      EXPECT_GE(v * (1.0 + 1e-12), 1.0 - eps);
      const double nearby = improved_bound(eps / 2.0 + 5e-8, eps / 2.0 + 5e-8, d).value;
      EXPECT_LT(std::abs(nearby - v), 1e-2 * std::max(1.0, v)) << d << " " << eps;
      EXPECT_LE(v, prev * (1.0 + 1e-12));
      prev = v;
    }
    const double tail = improved_bound(0.4995, 0.4995, d).value;
    EXPECT_GE(tail, 1e-3 * (1.0 - 1e-12));
    EXPECT_LT(tail, 1e-2);
    EXPECT_EQ(improved_bound(0.5, 0.5, d).value, 0.0);
  }
  EXPECT_THROW(improved_bound(0.6, 0.6, 1), std::invalid_argument);
}

TEST(Price, K1ClosedForms) {
  EXPECT_NEAR(price_k1(1, 1.0), 2.0 * kPi, 1e-12 * 2.0 * kPi);
  EXPECT_NEAR(price_k1(2, 2.0), kPi * kPi, 1e-12 * kPi * kPi);
  EXPECT_THROW(price_k1(1, 0.5), std::invalid_argument);
  EXPECT_THROW(price_k1(1, 0.5 + 1e-14), std::invalid_argument);
  EXPECT_GT(price_k1(1, 0.5 + 1e-9), 1e6);
}

TEST(Price, BetaGammaIdentity) {
  for (double a : {0.6, 0.75, 1.0, 2.0, 5.0}) {
    const double k1 = price_k1(1, a);
    EXPECT_NEAR(price_k(1, a, 2.0), k1, 1e-12 * k1) << a;
  }
  EXPECT_THROW(price_k(1, 0.4, 2.0), std::invalid_argument);
}

TEST(Price, InfiniteExponentLimit) {
  for (double a : {1.5, 2.0, 4.0}) {
    const double lim = price_ktilde(1, a, kInf);
    EXPECT_NEAR(lim, 2.0 * a / (a - 1.0), 1e-14 * lim);
    EXPECT_NEAR(price_ktilde(1, a, 1e6), lim, 1e-4 * lim) << a;
  }
}

TEST(Price, FiniteOnParameterGrid) {
  for (double q : {1.1, 1.5, 2.0, 3.0, 8.0, kInf}) {
    const double lower = 1.0 / conjugate_exponent(q);
    for (double a = lower + 0.05; a < 10.0; a *= 1.3) {
      const double k = price_k(1, a, q);
      EXPECT_TRUE(std::isfinite(k) && k > 0.0) << q << " " << a;
    }
  }
}

TEST(Price, RightHandSide) {
  const Signal f = unit_gaussian();
  const PriceMoments m = price_moments(f, 0.0, 1.0, 2.0);
  EXPECT_NEAR(price_rhs(m, 1.0, 1, 1.0, 2.0), std::sqrt(kPi), 1e-6);
  EXPECT_DOUBLE_EQ(price_rhs(m, 0.0, 1, 1.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(price_rhs(m, 2.0, 1, 1.0, 2.0), 2.0 * price_rhs(m, 1.0, 1, 1.0, 2.0));
  const MaskSet omega = MaskSet::from_coordinates(kGrid, Axis::frequency, -0.5, 0.5);
  const double lhs = energy(restrict_to(fourier(f), omega));
  const double h = kGrid.dw(), c = std::sqrt(2.0);
  const double ref = 2.0 * test::gaussian_half_line_sum(c, 2.0, 0.0, h) - h * c -
                     2.0 * test::gaussian_half_line_sum(c, 2.0, 0.5 + h, h);
  EXPECT_NEAR(lhs, ref, 1e-6);
  EXPECT_LT(lhs, 1.0);
  EXPECT_LE(lhs, price_rhs(m, omega.measure(), 1, 1.0, 2.0));
}

TEST(SignalConstant, GaussianWitness) {
  const Signal f = unit_gaussian(), fh = fourier(f);
  const CfWitness w{0.0, 0.0, 2.0, 1.0, 2.0, 1.0};
  EXPECT_NEAR(cf_quotient(f, fh, w), 1.0 / kPi, 1e-6);
  const auto b = cf_bound(f, fh);
  EXPECT_GE(b.value, 1.0 / kPi - 1e-6);
  EXPECT_NEAR(cf_quotient(f, fh, *b.argmax), b.value, 1e-12 * b.value);
}

TEST(SignalConstant, MonotoneUnderRefinement) {
  const Signal f = random_smooth_signal(kGrid, 3), fh = fourier(f);
  CfSearch coarse;
  coarse.q_values = {2.0};
  coarse.alpha_points = 6;
  coarse.center_points = 1;
  CfSearch fine;
  fine.q_values = {1.5, 2.0, 4.0};
  fine.alpha_points = 6;
  fine.center_points = 1;
  EXPECT_GE(cf_bound(f, fh, fine).value, cf_bound(f, fh, coarse).value);
  EXPECT_GE(cf_bound(f, fh).value, cf_bound(f, fh, coarse).value);
  EXPECT_EQ(cf_bound(f, fh).value, cf_bound(f, fh).value);
}

TEST(SignalConstant, SeparateBounds) {
  const Signal f = unit_gaussian(), fh = fourier(f);
  const CfWitness w{0.0, 0.0, 2.0, 1.0, 2.0, 1.0};
  const auto s = separate_measure_bounds(f, fh, 0.1, 0.2, w);
  EXPECT_NEAR(s.lb_t, 0.99 / std::sqrt(kPi), 1e-6);
  EXPECT_NEAR(s.lb_omega, 0.96 / std::sqrt(kPi), 1e-6);
  EXPECT_NEAR(s.lb_t * s.lb_omega, 0.99 * 0.96 * cf_quotient(f, fh, w), 1e-12);
  EXPECT_EQ(separate_measure_bounds(f, fh, 1.0, 0.2, w).lb_t, 0.0);
}

TEST(Heisenberg, GaussianEquality) {
  const Signal f = unit_gaussian(), fh = fourier(f);
  EXPECT_NEAR(std_dev(f) * std_dev(fh), 1.0 / (4.0 * kPi), 1e-6);
  const auto b = delta_bound(f, 2.0, 3.0, 0.1, 0.1);
  EXPECT_NEAR(b.heisenberg_floor, 1.0 / (4.0 * kPi), 1e-12);
  EXPECT_EQ(delta_bound(f, 2.0, 3.0, 1.0, 1.0).rhs, 0.0);
  EXPECT_NEAR(delta_bound(f, 4.0, 3.0, 0.1, 0.1).rhs, b.rhs / 2.0, 1e-15);
  EXPECT_THROW(delta_bound(f, 0.0, 3.0, 0.1, 0.1), std::invalid_argument);
}

TEST(MixedSupport, Gaussian) {
  const Signal f = unit_gaussian(), fh = fourier(f);
  const Verdict v = mixed_bound_check(f, fh, 1.0, 0.0, Axis::time, 0.0);
  EXPECT_EQ(v.status, Status::pass);
  EXPECT_NEAR(v.lhs, 16.0 / (2.0 * std::sqrt(kPi)), 1e-6);
  EXPECT_NEAR(v.rhs, 1.0 / (2.0 * kPi), 1e-12);
  EXPECT_EQ(mixed_bound_check(Signal::zeros(kGrid), Signal::zeros(kGrid, Axis::frequency), 1.0, 0.0, Axis::time)
                .status,
            Status::skipped);
  for (Axis axis : {Axis::time, Axis::frequency}) {
    double prev = 0.0;
    for (double th : {1e-2, 1e-4, 1e-8, 1e-12, 0.0}) {
      const Verdict w = mixed_bound_check(f, fh, 1.0, 0.0, axis, th);
      EXPECT_EQ(w.status, Status::pass) << th;
      EXPECT_GE(w.lhs, prev);
      prev = w.lhs;
    }
  }
}
