#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace uplab;

namespace {

const Grid kGrid(256, 1.0 / 16.0);

double gaussian_wigner(double lam, double x, double w) {
  const double c2 = std::sqrt(2.0 * lam);
  return c2 * std::sqrt(2.0 / lam) * std::exp(-2.0 * kPi * lam * x * x) * std::exp(-kPi * (2.0 / lam) * w * w);
}

}  // namespace

TEST(GaussianWindow, NormalizationAndContainment) {
  const auto w = gaussian_window(1.0, kGrid);
  EXPECT_NEAR(norm_lq(w.signal, 2.0), 1.0, 1e-8);
  EXPECT_DOUBLE_EQ(gaussian_normalization(2.0), std::sqrt(2.0));
  EXPECT_NEAR(gaussian_window(2.0, kGrid).signal[kGrid.size() / 2].real(), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(gaussian_window(1e-9, kGrid), std::invalid_argument);
  EXPECT_THROW(gaussian_window(1e6, kGrid), std::invalid_argument);
  EXPECT_THROW(gaussian_window(-1.0, kGrid), std::invalid_argument);
}

TEST(Gabor, ZeroShiftOfUnitGaussian) {
  const Signal g = gaussian_window(1.0, kGrid).signal;
  const TFMatrix v = gabor_transform(g, g);
  EXPECT_NEAR(std::abs(v.values(128, 128) - 1.0), 0.0, 1e-8);
  EXPECT_EQ(gabor_transform(Signal::zeros(kGrid), g).values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(gabor_transform(g, Signal::zeros(kGrid)), std::invalid_argument);
}

TEST(Gabor, MatchesDirectSum) {
  const Grid g(16, 0.3);
  const Signal f = test::noise(g, 3), w = test::noise(g, 4);
  const TFMatrix v = gabor_transform(f, w);
  const int n = g.size();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Complex s(0.0);
      for (int m = 0; m < n; ++m)
        s += f[m] * std::conj(w[(m - j + n / 2 + n) % n]) * std::polar(1.0, -2.0 * kPi * g.time(m) * g.freq(k));
      EXPECT_NEAR(std::abs(v.values(j, k) - g.dx() * s), 0.0, 1e-12);
    }
}

TEST(Gabor, TranslationCovariance) {
  const Signal f = random_smooth_signal(kGrid, 8), w = gaussian_window(1.0, kGrid).signal;
  const int a = 7, n = kGrid.size();
  Signal shifted = Signal::zeros(kGrid);
  for (int j = 0; j < n; ++j) shifted.samples()(j) = f[(j - a + n) % n];
  const RMatrix m0 = gabor_transform(f, w).values.cwiseAbs();
  const RMatrix m1 = gabor_transform(shifted, w).values.cwiseAbs();
  for (int j = 0; j < n; ++j) EXPECT_LT((m1.row((j + a) % n) - m0.row(j)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TFNorm, AllOnes) {
  const TFMatrix m(Grid(4, 1.0), CMatrix::Ones(4, 4));
  EXPECT_DOUBLE_EQ(tf_norm_lp(m, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(tf_norm_lp(m, kInf), 1.0);
  EXPECT_DOUBLE_EQ(tf_norm_lp(m, 2.0), 2.0);
}

TEST(Gabor, OrthogonalityRelation) {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const Signal f = random_smooth_signal(kGrid, 40 + s), w = random_smooth_signal(kGrid, 50 + s);
    const double lhs = tf_norm_lp(gabor_transform(f, w), 2.0);
    EXPECT_NEAR(lhs, norm_lq(f, 2.0) * norm_lq(w, 2.0), 1e-8);
  }
}

TEST(Gabor, LiebInequality) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Signal f = random_smooth_signal(kGrid, 60 + s), w = random_smooth_signal(kGrid, 70 + s);
    const TFMatrix v = gabor_transform(f, w);
    const double scale = norm_lq(f, 2.0) * norm_lq(w, 2.0);
    for (double p : {2.0, 3.0, 4.0, 8.0, kInf})
      EXPECT_LE(tf_norm_lp(v, p), lieb_constant(p) * scale + 1e-8 * scale) << p;
  }
}

TEST(Gabor, GaussianAttainsLiebConstant) {
  const Signal g = gaussian_window(1.0, kGrid).signal;
  const TFMatrix v = gabor_transform(g, g);
  for (double p : {3.0, 4.0, 8.0}) EXPECT_NEAR(tf_norm_lp(v, p), lieb_constant(p), 1e-8) << p;
}

TEST(Spectrogram, MassAndMarginals) {
  const Signal f = random_smooth_signal(kGrid, 12), w = gaussian_window(2.0, kGrid).signal;
  const TFMatrix sp = spectrogram(f, f, w);
  EXPECT_EQ(sp.values.imag().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GE(sp.values.real().minCoeff(), 0.0);
  const double mass = sp.cell() * sp.values.sum().real();
  EXPECT_NEAR(mass, energy(f) * energy(w), 1e-8);
  const Marginals mg = marginals(sp);
  EXPECT_NEAR(kGrid.dx() * mg.time_profile.sum().real(), mass, 1e-12);
  EXPECT_NEAR(kGrid.dw() * mg.freq_profile.sum().real(), mass, 1e-12);
  EXPECT_EQ(spectrogram(Signal::zeros(kGrid), Signal::zeros(kGrid), w).values.cwiseAbs().maxCoeff(), 0.0);
  const Marginals zero = marginals(TFMatrix::zeros(kGrid));
  EXPECT_EQ(zero.time_profile.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Spectrogram, CrossTermIsProductOfTransforms) {
  const Signal f = random_smooth_signal(kGrid, 1), h = random_smooth_signal(kGrid, 2);
  const Signal w = gaussian_window(1.0, kGrid).signal;
  const TFMatrix sp = spectrogram(f, h, w);
  const CMatrix ref = gabor_transform(f, w).values.cwiseProduct(gabor_transform(h, w).values.conjugate());
  EXPECT_LT((sp.values - ref).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Wigner, GaussianClosedForm) {
  for (double lam : {0.5, 1.0, 2.0}) {
    const Signal g = gaussian_window(lam, kGrid).signal;
    const TFMatrix w = wigner(g, g);
    double worst = 0.0;
    for (int j = 0; j < kGrid.size(); ++j)
      for (int k = 0; k < kGrid.size(); ++k)
        worst = std::max(worst, std::abs(w.values(j, k) - gaussian_wigner(lam, kGrid.time(j), kGrid.freq(k))));
    EXPECT_LT(worst, 1e-6) << lam;
  }
}

TEST(Wigner, TimeFrequencyShiftCovariance) {
  const double x0 = 0.75, w0 = -1.25;
  const Signal g = Signal::sample(kGrid, [&](double t) {
    return std::pow(2.0, 0.25) * std::exp(-kPi * (t - x0) * (t - x0)) * std::polar(1.0, 2.0 * kPi * w0 * t);
  });
  const TFMatrix w = wigner(g, g);
  for (int j = 0; j < kGrid.size(); j += 3)
    for (int k = 0; k < kGrid.size(); k += 3)
      EXPECT_NEAR(std::abs(w.values(j, k) - gaussian_wigner(1.0, kGrid.time(j) - x0, kGrid.freq(k) - w0)), 0.0,
                  1e-6);
}

TEST(Wigner, HermitianSymmetryAndMarginal) {
  const Signal f = random_smooth_signal(kGrid, 21), h = random_smooth_signal(kGrid, 22);
  const TFMatrix a = wigner(f, h), b = wigner(h, f);
  EXPECT_LT((a.values - b.values.conjugate()).cwiseAbs().maxCoeff(), 1e-10);
  const TFMatrix self = wigner(f, f);
  EXPECT_LT(self.values.imag().cwiseAbs().maxCoeff(), 1e-10);
  const Marginals mg = marginals(self);
  for (int j = 0; j < kGrid.size(); ++j) EXPECT_NEAR(std::abs(mg.time_profile(j) - std::norm(f[j])), 0.0, 1e-6);
}

TEST(Wigner, RealEvenSignalIsReal) {
  const Signal f = Signal::sample(kGrid, [](double t) { return std::exp(-kPi * t * t) * (1.0 + t * t); });
  EXPECT_LT(wigner(f, f).values.imag().cwiseAbs().maxCoeff(), 1e-10);
}
