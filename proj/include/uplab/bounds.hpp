// Constants and right-hand sides of the uncertainty inequalities.
#ifndef UPLAB_BOUNDS_HPP
#define UPLAB_BOUNDS_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "uplab/concentration.hpp"
#include "uplab/numerics.hpp"
#include "uplab/verdict.hpp"

namespace uplab {

template <class Witness>
struct BoundValue {
  double value = 0.0;
  std::optional<Witness> argmax;
  bool supremum_only = false;  // value is a supremum that no parameter attains
};

inline void require_dimension(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be a positive integer");
}

/// (2/p)^{d/p}, 1 at p = inf.
inline double lieb_constant(double p, int d = 1) {
  require_dimension(d);
  if (!(p >= 2.0)) throw std::invalid_argument("lieb_constant: p must be >= 2");
  if (std::isinf(p)) return 1.0;
  return std::pow(2.0 / p, d / p);
}

/// (1/q')^{d/q'}, with value 1 at q = 1 (q' = inf) and q = inf (q' = 1).
inline double locop_constant(double q, int d = 1) {
  require_dimension(d);
  const double qp = conjugate_exponent(q);
  if (std::isinf(qp)) return 1.0;
  return std::pow(1.0 / qp, d / qp);
}

/// (1/k)^{1/k} (1/k')^{1/k'} with 0^0 = 1.
inline double alpha_k_profile(double k) {
  if (!(k >= 1.0)) throw std::invalid_argument("alpha_k_profile: k must be >= 1");
  const double x = std::isinf(k) ? 0.0 : 1.0 / k;
  auto pw = [](double t) { return t == 0.0 ? 1.0 : std::pow(t, t); };
  return pw(x) * pw(1.0 - x);
}

inline void require_eps(double eps_t, double eps_w) {
  if (!(eps_t >= 0.0 && eps_t <= 1.0 && eps_w >= 0.0 && eps_w <= 1.0))
    throw std::invalid_argument("concentration defects must lie in [0, 1]");
}

/// (1 - eps_T - eps_Omega)^2.
inline double ds_bound(double eps_t, double eps_w) {
  require_eps(eps_t, eps_w);
  if (eps_t + eps_w >= 1.0) throw std::invalid_argument("ds_bound: hypothesis violated, eps_T + eps_Omega >= 1");
  const double s = 1.0 - eps_t - eps_w;
  return s * s;
}

/// 4^d (1 - eps)^2, the r = 2 member of the improved family.
inline double improved_ds_r2(double eps_t, double eps_w, int d = 1) {
  require_eps(eps_t, eps_w);
  require_dimension(d);
  const double s = 1.0 - eps_t - eps_w;
  if (s < 0.0) throw std::invalid_argument("improved_ds_r2: hypothesis violated, eps_T + eps_Omega > 1");
  return std::pow(4.0, d) * s * s;
}

/// log of (1 - eps)^r (r / (r - 1))^{2d (r - 1)} for r > 1.
inline double improved_log_objective(double r, double eps, int d) {
  return r * std::log1p(-eps) + 2.0 * d * (r - 1.0) * std::log1p(1.0 / (r - 1.0));
}

/// sup over r in [1, inf) of (1 - eps)^r (r / (r - 1))^{2d (r - 1)}, eps = eps_T + eps_Omega.
inline BoundValue<double> improved_bound(double eps_t, double eps_w, int d = 1) {
  require_eps(eps_t, eps_w);
  require_dimension(d);
  const double eps = eps_t + eps_w;
  if (eps > 1.0) throw std::invalid_argument("improved_bound: hypothesis violated, eps_T + eps_Omega > 1");
  if (eps == 0.0) return {std::exp(2.0 * d), kInf, true};
  if (eps == 1.0) return {0.0, 1.0, false};
  const double log1m = std::log1p(-eps);
  auto slope = [&](double r) { return log1m + 2.0 * d * (std::log1p(1.0 / (r - 1.0)) - 1.0 / r); };
  double hi = 2.0;
  while (slope(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("improved_bound: could not bracket the maximizer");
  }
  const double lo = 1.0 + 1e-9;
  GoldenResult best = golden_section_maximize([&](double r) { return improved_log_objective(r, eps, d); }, lo, hi,
                                              1e-12);
  // the objective tends to 1 - eps as r -> 1+, which golden search may approach but not exceed
  const double at_one = log1m;
  if (at_one >= best.value) return {1.0 - eps, 1.0, true};
  return {std::exp(best.value), best.argmax, false};
}

inline void require_price_alpha(double alpha, double bound, const char* what) {
  if (!(alpha - bound > 1e-12))
    throw std::invalid_argument(std::string(what) + ": alpha = " + std::to_string(alpha) +
                                " must exceed " + std::to_string(bound));
}

/// Surface measure of the unit sphere in R^d.
inline double sphere_area(int d) { return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0); }

/// (pi^{d/2}/alpha) Gamma(d/2)^{-1} Gamma(d/2a) Gamma(1 - d/2a) (2a/d - 1)^{d/2a} (1 - d/2a)^{-1}.
inline double price_k1(int d, double alpha) {
  require_dimension(d);
  require_price_alpha(alpha, d / 2.0, "price_k1");
  const double x = d / (2.0 * alpha);
  const double log_k = 0.5 * d * std::log(kPi) - std::log(alpha) - std::lgamma(0.5 * d) + std::lgamma(x) +
                       std::lgamma(1.0 - x) + x * std::log(2.0 * alpha / d - 1.0) - std::log1p(-x);
  return std::exp(log_k);
}

/// K~ in the sup-norm estimate ||f^||_inf <= K~ ||f||_q^{1 - d/aq'} || |t|^a f ||_q^{d/aq'}.
inline double price_ktilde(int d, double alpha, double q) {
  require_dimension(d);
  if (!(q > 1.0)) throw std::invalid_argument("price_ktilde: q must exceed 1");
  const double qp = conjugate_exponent(q);
  require_price_alpha(alpha, d / qp, "price_ktilde");
  if (std::isinf(q)) {
    // q' = 1: the bracket exponent tends to 1, the two trailing factors to 1, and
    // (1/aq) B(d/aq, 1/(q-1) - d/aq) tends to a / (d (a - d)).
    return sphere_area(d) * alpha / (d * (alpha - d));
  }
  const double x = d / (alpha * q);
  const double y = 1.0 / (q - 1.0) - x;
  const double log_beta = std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
  const double log_bracket = std::log(sphere_area(d)) - std::log(alpha * q) + log_beta;
  const double log_k = (q - 1.0) / q * log_bracket + d / (q * qp * alpha) * std::log(alpha * qp / d - 1.0) -
                       std::log1p(-d / (alpha * qp)) / q;
  return std::exp(log_k);
}

/// K(d, alpha, q) = K~^2.
inline double price_k(int d, double alpha, double q) {
  const double k = price_ktilde(d, alpha, q);
  return k * k;
}

/// Exponent 2d / (alpha q') of the moment factor.
inline double price_exponent(int d, double alpha, double q) { return 2.0 * d / (alpha * conjugate_exponent(q)); }

struct PriceMoments {
  double lq_norm;      // ||f||_q
  double moment_norm;  // || |t - c|^alpha f ||_q
};

inline PriceMoments price_moments(const Signal& f, double center, double alpha, double q) {
  return {norm_lq(f, q), weighted_moment_norm(f, center, alpha, q)};
}

/// K |Omega| ||f||_q^{2 - e} || |t - c|^alpha f ||_q^{e}, e = 2d/(alpha q').
inline double price_rhs(const PriceMoments& m, double omega_measure, int d, double alpha, double q) {
  if (!(omega_measure >= 0.0)) throw std::invalid_argument("price_rhs: measure must be nonnegative");
  const double k = price_k(d, alpha, q);
  const double e = price_exponent(d, alpha, q);
  if (omega_measure == 0.0) return 0.0;
  return k * omega_measure * std::pow(m.lq_norm, 2.0 - e) * std::pow(m.moment_norm, e);
}

struct CfWitness {
  double t_center;
  double w_center;
  double q1;
  double alpha1;
  double q2;
  double alpha2;
};

inline std::string describe(const CfWitness& w) {
  std::ostringstream os;
  os.precision(6);
  os << "t_center=" << w.t_center << " w_center=" << w.w_center << " q1=" << w.q1 << " alpha1=" << w.alpha1
     << " q2=" << w.q2 << " alpha2=" << w.alpha2;
  return os.str();
}

/// Candidate grids for the signal-dependent constant.
struct CfSearch {
  std::vector<double> q_values{1.5, 2.0, 3.0, 4.0, kInf};
  int alpha_points = 24;
  double alpha_max = 8.0;
  int center_points = 9;       // coarse grid over [-span, span] of each axis
  double center_span = 0.25;   // fraction of the axis length
  int d = 1;
};

/// log of ||g||_q^{e} / (K ||g||_q^2 || |x - c|^alpha g ||_q^{e}); the factor of one Price estimate.
inline double price_log_factor(const Signal& g, double center, double alpha, double q, int d) {
  const double k = price_k(d, alpha, q);
  const double e = price_exponent(d, alpha, q);
  const double nq = norm_lq(g, q);
  const double mq = weighted_moment_norm(g, center, alpha, q);
  if (nq == 0.0) throw std::invalid_argument("price factor: zero signal");
  if (mq == 0.0) return kInf;
  return e * std::log(nq) - std::log(k) - 2.0 * std::log(nq) - e * std::log(mq);
}

/// Quotient defining the signal-dependent constant, evaluated at one parameter witness.
inline double cf_quotient(const Signal& f, const Signal& fhat, const CfWitness& w, int d = 1) {
  const double n2 = norm_lq(f, 2.0);
  const double lt = price_log_factor(fhat, w.w_center, w.alpha1, w.q1, d);
  const double lw = price_log_factor(f, w.t_center, w.alpha2, w.q2, d);
  return std::exp(4.0 * std::log(n2) + lt + lw);
}

namespace detail {

inline std::vector<double> alpha_grid(double lower, double upper, int points) {
  std::vector<double> out;
  if (!(upper > lower)) return out;
  for (int i = 1; i <= points; ++i) out.push_back(lower * std::pow(upper / lower, static_cast<double>(i) / points));
  return out;
}

inline std::vector<double> center_grid(const Signal& g, const CfSearch& s) {
  std::vector<double> out{energy_centroid(g)};
  const double extent = g.axis() == Axis::time ? g.grid().length() : g.grid().bandwidth();
  const double span = s.center_span * extent;
  if (s.center_points == 1) out.push_back(0.0);
  for (int i = 0; i < s.center_points && s.center_points > 1; ++i)
    out.push_back(-span + 2.0 * span * i / (s.center_points - 1));
  return out;
}

struct FactorBest {
  double log_value = -kInf;
  double center = 0.0;
  double q = 0.0;
  double alpha = 0.0;
};

inline FactorBest best_factor(const Signal& g, const CfSearch& s) {
  FactorBest best;
  for (double c : center_grid(g, s)) {
    for (double q : s.q_values) {
      const double lower = s.d / conjugate_exponent(q);
      for (double a : alpha_grid(lower, s.alpha_max, s.alpha_points)) {
        if (!(a - lower > 1e-12)) continue;
        const double v = price_log_factor(g, c, a, q, s.d);
        if (std::isfinite(v) && v > best.log_value) best = {v, c, q, a};
      }
    }
  }
  return best;
}

}  // namespace detail

/// Largest quotient over the candidate grid; the witness certifies a lower bound for C_f.
inline BoundValue<CfWitness> cf_bound(const Signal& f, const Signal& fhat, const CfSearch& search = {}) {
  if (f.axis() != Axis::time || fhat.axis() != Axis::frequency)
    throw std::invalid_argument("cf_bound: expected a time signal and its transform");
  if (norm_lq(f, 2.0) == 0.0) throw std::invalid_argument("cf_bound: zero signal");
  const detail::FactorBest bt = detail::best_factor(fhat, search);
  const detail::FactorBest bw = detail::best_factor(f, search);
  if (!std::isfinite(bt.log_value) || !std::isfinite(bw.log_value))
    throw std::invalid_argument("cf_bound: no feasible (q, alpha) candidate");
  CfWitness w{bw.center, bt.center, bt.q, bt.alpha, bw.q, bw.alpha};
  return {cf_quotient(f, fhat, w, search.d), w, false};
}

struct SeparateBounds {
  double lb_t;
  double lb_omega;
};

/// Lower bounds for |T| and |Omega| separately at a fixed witness.
inline SeparateBounds separate_measure_bounds(const Signal& f, const Signal& fhat, double eps_t, double eps_w,
                                              const CfWitness& w, int d = 1) {
  require_eps(eps_t, eps_w);
  const double n2sq = std::pow(norm_lq(f, 2.0), 2.0);
  const double lt = price_log_factor(fhat, w.w_center, w.alpha1, w.q1, d);
  const double lw = price_log_factor(f, w.t_center, w.alpha2, w.q2, d);
  return {(1.0 - eps_t * eps_t) * n2sq * std::exp(lt), (1.0 - eps_w * eps_w) * n2sq * std::exp(lw)};
}

struct DeltaBound {
  double rhs;                // (1 - eT^2)(1 - eW^2) ||f||^2 / (4 pi^2 |T||Omega|)
  double heisenberg_floor;   // ||f||^2 / (4 pi)
  bool exceeds_floor;        // |T||Omega| <= (1 - eT^2)(1 - eW^2) / pi
};

inline DeltaBound delta_bound(const Signal& f, double meas_t, double meas_w, double eps_t, double eps_w) {
  require_eps(eps_t, eps_w);
  if (!(meas_t > 0.0 && meas_w > 0.0)) throw std::invalid_argument("delta_bound: set measures must be positive");
  const double e = energy(f);
  const double conc = (1.0 - eps_t * eps_t) * (1.0 - eps_w * eps_w);
  return {conc * e / (4.0 * kPi * kPi * meas_t * meas_w), e / (4.0 * kPi), meas_t * meas_w <= conc / kPi};
}

/// |supp f| || |w - c|^alpha f^ ||_2^{d/alpha} > ||f||_2^{d/alpha} / K(d, alpha, 2) for axis = time,
/// and the dual statement with the roles of f and f^ exchanged for axis = frequency.
inline Verdict mixed_bound_check(const Signal& f, const Signal& fhat, double alpha, double center, Axis axis,
                                 double threshold = 1e-12, double rel_tol = 1e-6, int d = 1) {
  const std::string id = axis == Axis::time ? "mixed_support_time" : "mixed_support_freq";
  if (f.samples().cwiseAbs().maxCoeff() == 0.0) return skipped_verdict(id, "zero signal");
  const Signal& supp_of = axis == Axis::time ? f : fhat;
  const Signal& moment_of = axis == Axis::time ? fhat : f;
  const double k = price_k(d, alpha, 2.0);
  const double supp = support_mask(supp_of, threshold).measure();
  const double mom = weighted_moment_norm(moment_of, center, alpha, 2.0);
  const double lhs = supp * std::pow(mom, d / alpha);
  const double rhs = std::pow(norm_lq(f, 2.0), d / alpha) / k;
  std::ostringstream note;
  note.precision(6);
  note << "support measure " << supp << " at threshold " << threshold;
  return make_verdict(id, lhs, rhs, rel_tol, 0.0, note.str());
}

}  // namespace uplab

#endif
