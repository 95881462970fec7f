// Scenario description and its JSON form.
#ifndef UPLAB_HARNESS_SCENARIO_HPP
#define UPLAB_HARNESS_SCENARIO_HPP

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uplab/bounds.hpp"
#include "uplab/harness/signals.hpp"
#include "uplab/io.hpp"

namespace uplab {

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> ids{
      "approx_identity_freq", "approx_identity_time", "delta_concentration", "ds_classical",
      "ds_improved_r2",       "ds_improved_sup",      "ds_signal_dependent", "heisenberg",
      "lieb",                 "locop_norm",           "mixed_support_freq",  "mixed_support_time",
      "operator_energy_estimate", "operator_hypotheses", "price_local_freq", "price_local_time",
      "separate_omega",       "separate_t",           "spectrogram_marginals"};
  return ids;
}

/// Either an automatically chosen minimal set for a target epsilon, or explicit index ranges.
struct SetSpec {
  std::optional<double> auto_epsilon;
  std::vector<std::pair<int, int>> intervals;  // half-open
};

struct PriceParam {
  double q;
  double alpha;
};

struct Scenario {
  std::string name = "scenario";
  int n = 256;
  double dx = 1.0 / 16.0;
  SignalSpec signal;
  SetSpec set_t{0.1, {}};
  SetSpec set_omega{0.1, {}};
  int d = 1;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  std::vector<double> lambda1_sweep{1.0, 4.0, 16.0, 64.0};
  std::vector<double> lambda2_sweep{1.0, 0.25, 1.0 / 16.0, 1.0 / 64.0};
  std::vector<PriceParam> price{{1.5, 1.0}, {2.0, 1.0}, {4.0, 1.0}, {kInf, 2.0}};
  std::vector<double> lieb_p{2.0, 3.0, 4.0, 8.0, kInf};
  double mixed_alpha = 1.0;
  double support_threshold = 1e-12;
  CfSearch cf;
  std::vector<std::string> checks;
  double tolerance = 1e-6;
  std::map<std::string, double> tolerance_overrides;

  double tolerance_for(const std::string& id) const {
    auto it = tolerance_overrides.find(id);
    return it == tolerance_overrides.end() ? tolerance : it->second;
  }
};

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double json_real(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return kInf;
  }
  throw ScenarioError(what + " must be a number or \"inf\"");
}

inline std::vector<double> json_reals(const json& j, const std::string& what) {
  if (!j.is_array()) throw ScenarioError(what + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(json_real(v, what));
  return out;
}

inline SetSpec parse_set(const json& j, const std::string& what) {
  if (!j.is_object()) throw ScenarioError(what + " must be an object");
  SetSpec s;
  if (j.contains("intervals")) {
    for (const auto& r : j.at("intervals")) {
      if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
        throw ScenarioError(what + ": intervals must be [begin, end) index pairs");
      s.intervals.emplace_back(r[0].get<int>(), r[1].get<int>());
    }
  } else if (j.contains("epsilon")) {
    const double e = json_real(j.at("epsilon"), what + ".epsilon");
    if (!(e >= 0.0 && e <= 1.0)) throw ScenarioError(what + ": epsilon must lie in [0, 1]");
    s.auto_epsilon = e;
  } else {
    throw ScenarioError(what + " needs either \"epsilon\" or \"intervals\"");
  }
  return s;
}

inline void expect_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
      throw ScenarioError(what + ": unknown field '" + it.key() + "'");
  }
}

}  // namespace detail

inline Scenario parse_scenario(const json& j, const std::filesystem::path& base_dir = {}) {
  using detail::json_real;
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
  detail::expect_keys(j, {"name", "grid", "signal", "sets", "parameters", "checks", "tolerance", "tolerances"},
                      "scenario");
  Scenario s;
  try {
    s.name = j.value("name", s.name);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      s.n = g.at("n").get<int>();
      s.dx = g.at("dx").get<double>();
    }
    Grid(s.n, s.dx);

    if (!j.contains("signal")) throw ScenarioError("scenario needs a signal");
    const auto& sig = j.at("signal");
    detail::expect_keys(sig, {"kind", "lambda", "order", "rate", "half_width", "omega0", "band", "seed", "path"},
                        "signal");
    s.signal.kind = signal_kind_from_string(sig.at("kind").get<std::string>());
    s.signal.lambda = sig.value("lambda", s.signal.lambda);
    s.signal.order = sig.value("order", s.signal.order);
    s.signal.rate = sig.value("rate", s.signal.rate);
    s.signal.half_width = sig.value("half_width", s.signal.half_width);
    s.signal.omega0 = sig.value("omega0", s.signal.omega0);
    s.signal.band = sig.value("band", s.signal.band);
    s.signal.seed = sig.value("seed", s.signal.seed);
    if (sig.contains("path")) {
      std::filesystem::path p = sig.at("path").get<std::string>();
      s.signal.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
    if (s.signal.kind == SignalKind::csv && s.signal.path.empty()) throw ScenarioError("csv signal needs a path");

    if (j.contains("sets")) {
      const auto& sets = j.at("sets");
      detail::expect_keys(sets, {"T", "Omega"}, "sets");
      if (sets.contains("T")) s.set_t = detail::parse_set(sets.at("T"), "sets.T");
      if (sets.contains("Omega")) s.set_omega = detail::parse_set(sets.at("Omega"), "sets.Omega");
    }

    if (j.contains("parameters")) {
      const auto& p = j.at("parameters");
      detail::expect_keys(p, {"d", "lambda1", "lambda2", "lambda1_sweep", "lambda2_sweep", "price", "lieb_p",
                              "mixed_alpha", "support_threshold", "cf"},
                          "parameters");
      s.d = p.value("d", s.d);
      if (s.d != 1) throw ScenarioError("sampled scenarios are one-dimensional (d = 1)");
      s.lambda1 = p.value("lambda1", s.lambda1);
      s.lambda2 = p.value("lambda2", s.lambda2);
      if (p.contains("lambda1_sweep")) s.lambda1_sweep = detail::json_reals(p.at("lambda1_sweep"), "lambda1_sweep");
      if (p.contains("lambda2_sweep")) s.lambda2_sweep = detail::json_reals(p.at("lambda2_sweep"), "lambda2_sweep");
      if (p.contains("price")) {
        s.price.clear();
        for (const auto& e : p.at("price"))
          s.price.push_back({json_real(e.at("q"), "price.q"), json_real(e.at("alpha"), "price.alpha")});
      }
      if (p.contains("lieb_p")) s.lieb_p = detail::json_reals(p.at("lieb_p"), "lieb_p");
      s.mixed_alpha = p.value("mixed_alpha", s.mixed_alpha);
      s.support_threshold = p.value("support_threshold", s.support_threshold);
      if (p.contains("cf")) {
        const auto& c = p.at("cf");
        detail::expect_keys(c, {"q_values", "alpha_points", "alpha_max", "center_points", "center_span"}, "cf");
        if (c.contains("q_values")) s.cf.q_values = detail::json_reals(c.at("q_values"), "cf.q_values");
        s.cf.alpha_points = c.value("alpha_points", s.cf.alpha_points);
        s.cf.alpha_max = c.value("alpha_max", s.cf.alpha_max);
        s.cf.center_points = c.value("center_points", s.cf.center_points);
        s.cf.center_span = c.value("center_span", s.cf.center_span);
      }
    }

    if (j.contains("checks")) {
      for (const auto& c : j.at("checks")) {
        const auto id = c.get<std::string>();
        if (id == "all") {
          s.checks.insert(s.checks.end(), known_checks().begin(), known_checks().end());
          continue;
        }
        if (std::find(known_checks().begin(), known_checks().end(), id) == known_checks().end())
          throw ScenarioError("unknown check '" + id + "'");
        s.checks.push_back(id);
      }
      std::sort(s.checks.begin(), s.checks.end());
      s.checks.erase(std::unique(s.checks.begin(), s.checks.end()), s.checks.end());
    }
    s.tolerance = j.value("tolerance", s.tolerance);
    if (j.contains("tolerances")) {
      for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it) {
        if (std::find(known_checks().begin(), known_checks().end(), it.key()) == known_checks().end())
          throw ScenarioError("tolerance override for unknown check '" + it.key() + "'");
        s.tolerance_overrides[it.key()] = it.value().get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("malformed scenario: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("invalid scenario: ") + e.what());
  }
  return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ScenarioError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_scenario(j, path.parent_path());
}

}  // namespace uplab

#endif
