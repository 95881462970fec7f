// Scenario runner: evaluates every requested inequality on one signal.
#ifndef UPLAB_HARNESS_RUN_HPP
#define UPLAB_HARNESS_RUN_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uplab/bounds.hpp"
#include "uplab/harness/scenario.hpp"
#include "uplab/harness/signals.hpp"
#include "uplab/io.hpp"
#include "uplab/operators.hpp"
#include "uplab/transforms.hpp"
#include "uplab/verdict.hpp"

namespace uplab {

struct Report {
  std::string scenario;
  Grid grid;
  std::vector<Verdict> verdicts;
  json context = json::object();

  int count(Status s) const {
    return static_cast<int>(std::count_if(verdicts.begin(), verdicts.end(), [s](const Verdict& v) { return v.status == s; }));
  }
  bool ok() const { return count(Status::fail) == 0; }
  const Verdict* find(const std::string& id) const {
    for (const auto& v : verdicts)
      if (v.id == id) return &v;
    return nullptr;
  }
};

inline json verdict_to_json(const Verdict& v) {
  auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  return {{"id", v.id},         {"lhs", num(v.lhs)},           {"rhs", num(v.rhs)},
          {"margin", num(v.margin)}, {"tolerance", num(v.tolerance)}, {"status", to_string(v.status)},
          {"notes", v.notes}};
}

inline json report_to_json(const Report& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(verdict_to_json(v));
  return {{"scenario", r.scenario},
          {"grid", grid_to_json(r.grid)},
          {"context", r.context},
          {"verdicts", verdicts},
          {"summary",
           {{"total", r.verdicts.size()},
            {"pass", r.count(Status::pass)},
            {"fail", r.count(Status::fail)},
            {"skipped", r.count(Status::skipped)}}}};
}

inline std::string report_to_csv(const Report& r) {
  std::ostringstream os;
  os.precision(17);
  os << "id,lhs,rhs,margin,status,notes\n";
  for (const auto& v : r.verdicts) {
    std::string notes = v.notes;
    std::string quoted;
    for (char c : notes) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    os << v.id << "," << v.lhs << "," << v.rhs << "," << v.margin << "," << to_string(v.status) << ",\"" << quoted
       << "\"\n";
  }
  return os.str();
}

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(8);
  os << x;
  return os.str();
}

/// Relative margin used to pick the tightest of several instances of one inequality.
inline double relative_margin(const Verdict& v) {
  const double scale = std::max({std::abs(v.lhs), std::abs(v.rhs), 1e-300});
  return v.margin / scale;
}

inline Verdict tightest(std::vector<Verdict> vs) {
  if (vs.empty()) throw std::invalid_argument("no admissible parameter instance");
  auto it = std::min_element(vs.begin(), vs.end(),
                             [](const Verdict& a, const Verdict& b) {
                               if (a.status != b.status) return a.status == Status::fail;
                               return relative_margin(a) < relative_margin(b);
                             });
  return *it;
}

inline double masked_energy(const Signal& f, const MaskSet& u) { return energy(restrict_to(f, u)); }

/// Shared state of one scenario run, with lazily computed expensive pieces.
struct RunContext {
  const Scenario& s;
  Grid grid;
  Signal f;
  Signal fhat;
  MaskSet set_t;
  MaskSet set_w;
  double eps_t;
  double eps_w;
  std::string truncation_note;
  std::optional<SmoothedOps> ops;
  std::optional<BoundValue<CfWitness>> cf;

  double product() const { return set_t.measure() * set_w.measure(); }

  const SmoothedOps& smoothed() {
    if (!ops) ops = smoothed_concentration_ops(set_t, set_w, s.lambda1, s.lambda2);
    return *ops;
  }
  const BoundValue<CfWitness>& cf_value() {
    if (!cf) {
      CfSearch search = s.cf;
      search.d = s.d;
      cf = cf_bound(f, fhat, search);
    }
    return *cf;
  }
  std::string eps_note() const { return "eps_T=" + fmt(eps_t) + " eps_Omega=" + fmt(eps_w); }
  std::string with_truncation(std::string note) const {
    if (!truncation_note.empty()) note += (note.empty() ? "" : "; ") + truncation_note;
    return note;
  }
};

inline MaskSet resolve_set(const SetSpec& spec, const Signal& g, double& eps) {
  if (spec.auto_epsilon) {
    ConcentrationResult r = minimal_concentration_set(g, *spec.auto_epsilon);
    eps = *spec.auto_epsilon;
    return r.set;
  }
  MaskSet m = MaskSet::from_intervals(g.grid(), g.axis(), spec.intervals);
  eps = concentration_defect(g, m);
  return m;
}

inline Signal apply_fourier_symbol(const Signal& f, const RVector& symbol) {
  Signal fh = fourier(f);
  for (int k = 0; k < fh.size(); ++k) fh.samples()(k) *= symbol(k);
  return fourier(fh, Direction::inverse);
}

inline Verdict check_approx_identity(RunContext& c, bool time) {
  const std::string id = time ? "approx_identity_time" : "approx_identity_freq";
  const auto& sweep = time ? c.s.lambda1_sweep : c.s.lambda2_sweep;
  if (sweep.size() < 2) return skipped_verdict(id, "sweep needs at least two values");
  const MaskSet& mask = time ? c.set_t : c.set_w;
  const Signal target =
      time ? restrict_to(c.f, c.set_t) : fourier(restrict_to(c.fhat, c.set_w), Direction::inverse);
  std::vector<double> errs;
  for (double lam : sweep) {
    SmoothedSymbol sym = gaussian_smoothed_indicator(mask, lam);
    Signal lf = c.f;
    if (time)
      for (int j = 0; j < lf.size(); ++j) lf.samples()(j) *= sym.values(j);
    else
      lf = apply_fourier_symbol(c.f, sym.values);
    errs.push_back(norm_lq(Signal(c.grid, lf.samples() - target.samples()), 2.0));
  }
  double worst = kInf;
  for (std::size_t i = 1; i < errs.size(); ++i) worst = std::min(worst, errs[i - 1] - errs[i]);
  std::string note = "errors:";
  for (double e : errs) note += " " + fmt(e);
  return make_verdict(id, worst, 0.0, 0.0, 1e-10, note);
}

inline Verdict check_operator_energy(RunContext& c, double tol) {
  const auto& ops = c.smoothed();
  const double e = energy(c.f);
  std::vector<Verdict> vs;
  for (const LinearOp* op : {&ops.l1, &ops.l2}) {
    Signal lf = op->apply(c.f);
    const double lhs = e - energy(lf);
    const double rhs = norm_lq(Signal(c.grid, c.f.samples() - lf.samples()), 2.0);
    vs.push_back(make_verdict("operator_energy_estimate", lhs, rhs * rhs, tol, 1e-10 * e,
                              op == &ops.l1 ? "L1" : "L2"));
  }
  return tightest(std::move(vs));
}

inline Verdict check_price(RunContext& c, bool freq_side, double tol) {
  const std::string id = freq_side ? "price_local_freq" : "price_local_time";
  // freq side: energy of f^ on Omega against moments of f; time side: energy of f on T against moments of f^
  const Signal& moments_of = freq_side ? c.f : c.fhat;
  const Signal& energy_of = freq_side ? c.fhat : c.f;
  const MaskSet& set = freq_side ? c.set_w : c.set_t;
  const double center = energy_centroid(moments_of);
  const double lhs_energy = masked_energy(energy_of, set);
  std::vector<Verdict> vs;
  for (const auto& p : c.s.price) {
    if (!(p.alpha - c.s.d / conjugate_exponent(p.q) > 1e-12)) continue;
    const double bound = price_rhs(price_moments(moments_of, center, p.alpha, p.q), set.measure(), c.s.d, p.alpha, p.q);
    vs.push_back(make_verdict(id, bound, lhs_energy, tol, 0.0,
                              c.with_truncation("q=" + fmt(p.q) + " alpha=" + fmt(p.alpha) + " center=" + fmt(center))));
  }
  return tightest(std::move(vs));
}

inline Verdict run_check(const std::string& id, RunContext& c) {
  const double tol = c.s.tolerance_for(id);
  const double eps = c.eps_t + c.eps_w;
  if (id == "ds_classical") {
    if (eps >= 1.0) return skipped_verdict(id, "hypothesis violated: eps_T + eps_Omega >= 1");
    return make_verdict(id, c.product(), ds_bound(c.eps_t, c.eps_w), tol, 0.0, c.eps_note());
  }
  if (id == "ds_improved_sup") {
    if (eps > 1.0) return skipped_verdict(id, "hypothesis violated: eps_T + eps_Omega > 1");
    const auto b = improved_bound(c.eps_t, c.eps_w, c.s.d);
    return make_verdict(id, c.product(), b.value, tol, 0.0, c.eps_note() + " argmax r=" + fmt(*b.argmax));
  }
  if (id == "ds_improved_r2") {
    if (eps > 1.0) return skipped_verdict(id, "hypothesis violated: eps_T + eps_Omega > 1");
    return make_verdict(id, c.product(), improved_ds_r2(c.eps_t, c.eps_w, c.s.d), tol, 0.0, c.eps_note());
  }
  if (id == "operator_hypotheses") {
    const auto& ops = c.smoothed();
    const double e = energy(c.f);
    const double et = std::sqrt(std::clamp(1.0 - energy(ops.l1.apply(c.f)) / e, 0.0, 1.0));
    const double ew = std::sqrt(std::clamp(1.0 - energy(ops.l2.apply(c.f)) / e, 0.0, 1.0));
    const std::string note = "operator eps_T=" + fmt(et) + " eps_Omega=" + fmt(ew) + " lambda1=" + fmt(c.s.lambda1) +
                             " lambda2=" + fmt(c.s.lambda2);
    if (et + ew > 1.0) return skipped_verdict(id, "hypothesis violated: " + note);
    return make_verdict(id, c.product(), improved_bound(et, ew, c.s.d).value, tol, 0.0, note);
  }
  if (id == "spectrogram_marginals") {
    const Signal fn = normalized(c.f);
    const Signal& g = fn;
    const Signal w1 = gaussian_window(c.s.lambda1, c.grid).signal;
    const Signal w2 = gaussian_window(c.s.lambda2, c.grid).signal;
    const Marginals m1 = marginals(spectrogram(fn, g, w1));
    const Marginals m2 = marginals(spectrogram(fn, g, w2));
    Complex it(0.0), iw(0.0);
    for (int j = 0; j < c.grid.size(); ++j) {
      if (c.set_t.contains(j)) it += c.grid.dx() * m1.time_profile(j);
      if (c.set_w.contains(j)) iw += c.grid.dw() * m2.freq_profile(j);
    }
    const double et = std::sqrt(std::clamp(1.0 - std::norm(it), 0.0, 1.0));
    const double ew = std::sqrt(std::clamp(1.0 - std::norm(iw), 0.0, 1.0));
    const std::string note = "g = f/||f||; marginal eps_T=" + fmt(et) + " eps_Omega=" + fmt(ew);
    if (et + ew > 1.0) return skipped_verdict(id, "hypothesis violated: " + note);
    return make_verdict(id, c.product(), improved_bound(et, ew, c.s.d).value, tol, 0.0, note);
  }
  if (id == "price_local_freq") return check_price(c, true, tol);
  if (id == "price_local_time") return check_price(c, false, tol);
  if (id == "ds_signal_dependent") {
    if (eps > 1.0) return skipped_verdict(id, "hypothesis violated: eps_T + eps_Omega > 1");
    const auto& cf = c.cf_value();
    const double rhs = cf.value * (1.0 - eps) * (1.0 - eps);
    const double universal = improved_bound(c.eps_t, c.eps_w, c.s.d).value;
    return make_verdict(id, c.product(), rhs, tol, 0.0,
                        c.with_truncation("C_f>=" + fmt(cf.value) + " (" + describe(*cf.argmax) +
                                          "); universal improved bound " + fmt(universal) + " vs C_f bound " +
                                          fmt(rhs)));
  }
  if (id == "separate_t" || id == "separate_omega") {
    const auto& cf = c.cf_value();
    const SeparateBounds sb = separate_measure_bounds(c.f, c.fhat, c.eps_t, c.eps_w, *cf.argmax, c.s.d);
    if (id == "separate_t")
      return make_verdict(id, c.set_t.measure(), sb.lb_t, tol, 0.0, c.with_truncation(c.eps_note()));
    return make_verdict(id, c.set_w.measure(), sb.lb_omega, tol, 0.0, c.with_truncation(c.eps_note()));
  }
  if (id == "delta_concentration" || id == "heisenberg") {
    const double spread = std_dev(c.f, 0.0) * std_dev(c.fhat, 0.0);
    if (id == "heisenberg") return make_verdict(id, spread, energy(c.f) / (4.0 * kPi), tol, 0.0, c.with_truncation(""));
    if (!(c.set_t.measure() > 0.0 && c.set_w.measure() > 0.0))
      return skipped_verdict(id, "empty concentration set");
    const DeltaBound db = delta_bound(c.f, c.set_t.measure(), c.set_w.measure(), c.eps_t, c.eps_w);
    const std::string note = c.eps_note() + "; Heisenberg floor " + fmt(db.heisenberg_floor) +
                             (db.rhs > db.heisenberg_floor ? " (concentration bound is larger)"
                                                           : " (Heisenberg floor is larger)");
    return make_verdict(id, spread, db.rhs, tol, 0.0, c.with_truncation(note));
  }
  if (id == "mixed_support_time" || id == "mixed_support_freq") {
    const bool time = id == "mixed_support_time";
    const double center = energy_centroid(time ? c.fhat : c.f);
    Verdict v = mixed_bound_check(c.f, c.fhat, c.s.mixed_alpha, center, time ? Axis::time : Axis::frequency,
                                  c.s.support_threshold, tol, c.s.d);
    v.notes = c.with_truncation(v.notes);
    return v;
  }
  if (id == "approx_identity_time") return check_approx_identity(c, true);
  if (id == "approx_identity_freq") return check_approx_identity(c, false);
  if (id == "operator_energy_estimate") return check_operator_energy(c, tol);
  if (id == "lieb") {
    const Signal w = gaussian_window(c.s.lambda1, c.grid).signal;
    const TFMatrix v = gabor_transform(c.f, w);
    const double scale = norm_lq(c.f, 2.0) * norm_lq(w, 2.0);
    std::vector<Verdict> vs;
    for (double p : c.s.lieb_p)
      vs.push_back(make_verdict(id, lieb_constant(p, c.s.d) * scale, tf_norm_lp(v, p), 0.0, tol * scale,
                                "p=" + fmt(p)));
    return tightest(std::move(vs));
  }
  if (id == "locop_norm") {
    const auto& ops = c.smoothed();
    const double n1 = operator_norm(ops.l1);
    const double n2 = operator_norm(ops.l2);
    return make_verdict(id, 1.0, std::max(n1, n2), 0.0, 1e-10,
                        "||L1||=" + fmt(n1) + " ||L2||=" + fmt(n2));
  }
  throw std::invalid_argument("unknown check '" + id + "'");
}

}  // namespace detail

inline Report run_scenario(const Scenario& s) {
  Grid grid(s.n, s.dx);
  Report report{s.name, grid, {}, json::object()};
  std::optional<detail::RunContext> ctx;
  try {
    Signal f = generate_signal(s.signal, grid);
    Signal fhat = fourier(f);
    double et = 0.0, ew = 0.0;
    MaskSet st = detail::resolve_set(s.set_t, f, et);
    MaskSet sw = detail::resolve_set(s.set_omega, fhat, ew);
    const double edge_f = edge_energy_fraction(f);
    const double edge_fh = edge_energy_fraction(fhat);
    std::string trunc;
    if (edge_f > 1e-6 || edge_fh > 1e-6)
      trunc = "truncation-sensitive (edge energy " + detail::fmt(edge_f) + " / " + detail::fmt(edge_fh) + ")";
    report.context = {{"signal", to_string(s.signal.kind)},
                      {"epsilon_T", et},
                      {"epsilon_Omega", ew},
                      {"set_T", mask_to_json(st)},
                      {"set_Omega", mask_to_json(sw)},
                      {"edge_energy_time", edge_f},
                      {"edge_energy_freq", edge_fh}};
    ctx.emplace(detail::RunContext{s, grid, std::move(f), std::move(fhat), std::move(st), std::move(sw), et, ew,
                                   trunc, std::nullopt, std::nullopt});
  } catch (const std::exception& e) {
    for (const auto& id : s.checks) report.verdicts.push_back(failed_verdict(id, std::string("setup: ") + e.what()));
    return report;
  }
  for (const auto& id : s.checks) {
    try {
      report.verdicts.push_back(detail::run_check(id, *ctx));
    } catch (const std::exception& e) {
      report.verdicts.push_back(failed_verdict(id, e.what()));
    }
  }
  std::stable_sort(report.verdicts.begin(), report.verdicts.end(),
                   [](const Verdict& a, const Verdict& b) { return a.id < b.id; });
  return report;
}

}  // namespace uplab

#endif
