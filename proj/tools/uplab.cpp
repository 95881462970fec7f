// uplab: run uncertainty-principle scenarios, print constants and bounds, run the self test.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "uplab/bounds.hpp"
#include "uplab/harness/run.hpp"
#include "uplab/harness/scenario.hpp"
#include "uplab/harness/selftest.hpp"
#include "uplab/io.hpp"

namespace {

using uplab::json;

double parse_real(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Infinity") return uplab::kInf;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

json real_json(double x) { return std::isinf(x) ? json("inf") : json(x); }

std::string sig8(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os << std::setprecision(8) << x;
  return os.str();
}

void print_verdicts(const uplab::Report& r, std::ostream& os) {
  for (const auto& v : r.verdicts) {
    os << std::left << std::setw(8) << uplab::to_string(v.status) << std::setw(34) << v.id;
    if (v.status != uplab::Status::skipped) os << " lhs=" << sig8(v.lhs) << " rhs=" << sig8(v.rhs);
    if (!v.notes.empty()) os << "  [" << v.notes << "]";
    os << "\n";
  }
  os << r.scenario << ": " << r.count(uplab::Status::pass) << " pass, " << r.count(uplab::Status::fail) << " fail, "
     << r.count(uplab::Status::skipped) << " skipped\n";
}

int cmd_run(const std::string& path, const std::string& out, const std::string& csv) {
  uplab::Scenario s;
  try {
    s = uplab::load_scenario(path);
  } catch (const uplab::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const uplab::Report r = uplab::run_scenario(s);
  const json j = uplab::report_to_json(r);
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out);
    if (!os) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    os << j.dump(2) << "\n";
    print_verdicts(r, std::cout);
  }
  if (!csv.empty()) {
    std::ofstream os(csv);
    if (!os) {
      std::cerr << "error: cannot write " << csv << "\n";
      return 2;
    }
    os << uplab::report_to_csv(r);
  }
  return r.ok() ? 0 : 1;
}

int cmd_bounds(double et, double ew, int d, bool as_json) {
  const auto ib = uplab::improved_bound(et, ew, d);
  const double r2 = uplab::improved_ds_r2(et, ew, d);
  const bool ds_ok = et + ew < 1.0;
  const double ds = ds_ok ? uplab::ds_bound(et, ew) : 0.0;
  if (as_json) {
    json j = {{"eps_T", et},
              {"eps_Omega", ew},
              {"d", d},
              {"improved", ib.value},
              {"argmax_r", real_json(*ib.argmax)},
              {"supremum_only", ib.supremum_only},
              {"r2", r2},
              {"classical", ds_ok ? json(ds) : json(nullptr)}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << sig8(ib.value) << "\n";
  std::cout << "argmax r: " << sig8(*ib.argmax) << (ib.supremum_only ? " (supremum, not attained)" : "") << "\n";
  std::cout << "r = 2 bound: " << sig8(r2) << "\n";
  std::cout << "classical bound: " << (ds_ok ? sig8(ds) : std::string("hypothesis violated")) << "\n";
  return 0;
}

int cmd_constants(const std::string& which, int d, double alpha, const std::string& q_text, const std::string& p_text) {
  json params = {{"d", d}};
  double value = 0.0;
  auto need = [](const std::string& t, const char* name) {
    if (t.empty()) throw std::invalid_argument(std::string("--") + name + " is required for this constant");
    return parse_real(t);
  };
  if (which == "k1") {
    params["alpha"] = alpha;
    value = uplab::price_k1(d, alpha);
  } else if (which == "ktilde" || which == "k") {
    const double q = need(q_text, "q");
    params["alpha"] = alpha;
    params["q"] = real_json(q);
    value = which == "k" ? uplab::price_k(d, alpha, q) : uplab::price_ktilde(d, alpha, q);
  } else if (which == "lieb") {
    const double p = need(p_text, "p");
    params["p"] = real_json(p);
    value = uplab::lieb_constant(p, d);
  } else if (which == "locop") {
    const double q = need(q_text, "q");
    params["q"] = real_json(q);
    value = uplab::locop_constant(q, d);
  } else if (which == "alphak") {
    const double k = need(q_text, "q");
    params = {{"k", real_json(k)}};
    value = uplab::alpha_k_profile(k);
  } else {
    throw std::invalid_argument("unknown constant '" + which + "'");
  }
  json j = {{"name", which}, {"params", params}, {"value", value}};
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_selftest(int n, std::uint64_t seed, const std::string& out) {
  const uplab::Report r = uplab::run_selftest(n, seed);
  print_verdicts(r, std::cout);
  if (!out.empty()) {
    std::ofstream os(out);
    os << uplab::report_to_json(r).dump(2) << "\n";
  }
  return r.ok() ? 0 : 1;
}

int cmd_generate(const std::string& kind, int n, double dx, double lambda, int order, double rate, double half_width,
                 double omega0, double band, std::uint64_t seed, const std::string& out) {
  uplab::SignalSpec spec;
  spec.kind = uplab::signal_kind_from_string(kind);
  spec.lambda = lambda;
  spec.order = order;
  spec.rate = rate;
  spec.half_width = half_width;
  spec.omega0 = omega0;
  spec.band = band;
  spec.seed = seed;
  const uplab::Signal f = uplab::generate_signal(spec, uplab::Grid(n, dx));
  if (out.empty()) {
    uplab::write_signal_csv(std::cout, f);
  } else {
    std::ofstream os(out);
    uplab::write_signal_csv(os, f);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uplab: numerical checks of time-frequency uncertainty principles"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, csv_path;
  auto* run = app.add_subcommand("run", "Run a scenario and report one verdict per check");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out_path, "Write the JSON report here instead of stdout");
  run->add_option("--csv", csv_path, "Also write a CSV table of verdicts");

  double eps_t = 0.0, eps_w = 0.0;
  int dim = 1;
  bool as_json = false;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the Donoho-Stark type lower bounds for |T||Omega|");
  bounds->add_option("--eps-t", eps_t, "Concentration defect on T")->required();
  bounds->add_option("--eps-omega", eps_w, "Concentration defect on Omega")->required();
  bounds->add_option("--dim", dim, "Dimension d");
  bounds->add_flag("--json", as_json, "Print JSON");

  std::string which, q_text, p_text;
  double alpha = 1.0;
  int cd = 1;
  auto* constants = app.add_subcommand("constants", "Print one constant as JSON");
  constants->add_option("--which", which, "k1 | ktilde | k | lieb | locop | alphak")->required();
  constants->add_option("--d", cd, "Dimension d");
  constants->add_option("--alpha", alpha, "Moment exponent alpha");
  constants->add_option("--q", q_text, "Exponent q (or k for alphak); 'inf' allowed");
  constants->add_option("--p", p_text, "Exponent p; 'inf' allowed");

  int n = 256;
  std::uint64_t seed = 1;
  std::string self_out;
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->add_option("--n", n, "Grid size");
  selftest->add_option("--seed", seed, "Random seed");
  selftest->add_option("--out", self_out, "Write the JSON report here");

  std::string kind = "gaussian", gen_out;
  int gn = 256, order = 0;
  double gdx = 1.0 / 16.0, lambda = 1.0, rate = 1.0, half_width = 1.0, omega0 = 0.0, band = 2.0;
  std::uint64_t gseed = 0;
  auto* generate = app.add_subcommand("generate", "Write a generated signal as CSV");
  generate->add_option("--kind", kind, "gaussian | hermite | chirp | indicator | modulated_gaussian | random_bandlimited");
  generate->add_option("--n", gn, "Grid size");
  generate->add_option("--dx", gdx, "Grid spacing");
  generate->add_option("--lambda", lambda, "Gaussian parameter");
  generate->add_option("--order", order, "Hermite order");
  generate->add_option("--rate", rate, "Chirp rate");
  generate->add_option("--half-width", half_width, "Indicator half width");
  generate->add_option("--omega0", omega0, "Modulation frequency");
  generate->add_option("--band", band, "Band limit");
  generate->add_option("--seed", gseed, "Random seed");
  generate->add_option("--out", gen_out, "Output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(scenario_path, out_path, csv_path);
    if (*bounds) return cmd_bounds(eps_t, eps_w, dim, as_json);
    if (*constants) return cmd_constants(which, cd, alpha, q_text, p_text);
    if (*selftest) return cmd_selftest(n, seed, self_out);
    if (*generate)
      return cmd_generate(kind, gn, gdx, lambda, order, rate, half_width, omega0, band, gseed, gen_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
