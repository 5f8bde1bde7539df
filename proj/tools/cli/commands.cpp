// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "noisypaper/copula.hpp"
#include "noisypaper/errors.hpp"
#include "noisypaper/infotheory.hpp"
#include "noisypaper/json.hpp"
#include "noisypaper/typicality.hpp"
#include "verify.hpp"

namespace noisypaper::cli {
namespace {

using nlohmann::json;

// Model flags shared by capacity and sweep. Optional members stay empty unless
// the flag was given, so that they override a --config file only when present.
struct ModelFlags {
  std::string config;
  std::optional<double> p, q1, q2, n, rho_xs1, rho_xs2, rho_xz, rho_s1s2, rho_s1z, rho_s2z;
  bool markov = false;

  void attach(CLI::App& app) {
    app.add_option("--config", config, "JSON file with model keys (flags override it)");
    app.add_option("--p", p, "input power P");
    app.add_option("--q1", q1, "power of the transmitter side information S1");
    app.add_option("--q2", q2, "power of the receiver side information S2 (0 = absent)");
    app.add_option("--n", n, "noise power N");
    app.add_option("--rho-xs1", rho_xs1);
    app.add_option("--rho-xs2", rho_xs2, "must equal rho_xs1 * rho_s1s2; derived when omitted");
    app.add_option("--rho-xz", rho_xz, "derived as rho_xs1 * rho_s1z under --markov");
    app.add_option("--rho-s1s2", rho_s1s2);
    app.add_option("--rho-s1z", rho_s1z);
    app.add_option("--rho-s2z", rho_s2z);
    app.add_flag("--markov", markov, "assert X -> (S1,S2) -> Z");
  }

  ChannelParams params() const {
    ChannelParams out;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw Error(ErrorKind::RangeError, "cannot open config " + config);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw Error(ErrorKind::RangeError, "config " + config + ": " + e.what());
      }
      out = params_from_json(j);
    }
    auto set = [](double& field, const std::optional<double>& v) {
      if (v) field = *v;
    };
    set(out.p, p);
    set(out.q1, q1);
    set(out.q2, q2);
    set(out.n, n);
    set(out.rho_xs1, rho_xs1);
    set(out.rho_s1s2, rho_s1s2);
    set(out.rho_s1z, rho_s1z);
    set(out.rho_s2z, rho_s2z);
    if (rho_xs2) out.rho_xs2 = rho_xs2;
    if (rho_xz) out.rho_xz = rho_xz;
    if (markov) out.markov_noise = true;
    return out;
  }
};

template <typename F>
std::optional<double> try_value(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return std::nullopt;
  }
}

json optional_number(const std::optional<double>& v) { return v ? json_number(*v) : json(nullptr); }

void print_capacity_text(std::ostream& out, const PointResult& r) {
  auto line = [&](const char* label, const std::string& value) {
    out << std::left << std::setw(12) << label << "= " << value << '\n';
  };
  if (r.capacity) {
    line("C", format_number(r.capacity->bits()) + " bits (" + format_number(r.capacity->nats) + " nats)");
  } else {
    line("C", "n/a (noise not Markov given the side information)");
  }
  line("R_G", r.lower ? format_number(r.lower->nats) + " nats" : "n/a");
  line("alpha*", r.alpha_star ? format_number(*r.alpha_star) : "n/a");
  line("I(S1S2;Z)", r.mi_side_noise ? format_number(*r.mi_side_noise) + " nats" : "n/a");
  out << "minors:\n";
  const json minors = to_json(r.minors);
  for (auto it = minors.begin(); it != minors.end(); ++it) {
    out << "  " << std::left << std::setw(9) << it.key() << "= " << format_number(it.value().get<double>())
        << '\n';
  }
}

json capacity_json(const PointResult& r) {
  json j{{"model", to_json(r.model)},
         {"capacity", r.capacity ? to_json(*r.capacity) : json(nullptr)},
         {"lower_bound_general", r.lower ? to_json(*r.lower) : json(nullptr)},
         {"alpha_star", optional_number(r.alpha_star)},
         {"mi_s1s2_z_nats", optional_number(r.mi_side_noise)},
         {"minors", to_json(r.minors)}};
  if (r.model.markov_noise()) j["upper_minor_path"] = to_json(upper_bound_minor_path(r.model));
  return j;
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

PointResult evaluate_point(const ChannelModel& input) {
  ChannelModel model = input;
  if (!model.markov_noise() &&
      std::abs(model.rho_xz() - model.rho_xs1() * model.rho_s1z()) <= kRedundancyTolerance) {
    model = markov_complete(model);
  }
  PointResult r{model, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                compute_minors(assemble_covariance(model))};
  if (model.markov_noise()) r.capacity = capacity_markov(model);
  try {
    r.lower = lower_bound_general(model);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CrossCheckFailed) throw;
  }
  r.alpha_star = try_value([&] { return alpha_star(model); });
  r.mi_side_noise = mi_side_noise(model);
  return r;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(12) << v;
  return s.str();
}

ChannelParams apply_sweep_value(ChannelParams base, const std::string& param, double value) {
  if (param == "rho_xs1") {
    base.rho_xs1 = value;
  } else if (param == "rho_s1z") {
    base.rho_s1z = value;
  } else if (param == "rho_s2z") {
    base.rho_s2z = value;
  } else if (param == "rho_s1s2") {
    base.rho_s1s2 = value;
  } else if (param == "snr_db") {
    base.p = base.n * std::pow(10.0, value / 10.0);
  } else if (param == "mi_s1z") {
    if (value < 0) throw Error(ErrorKind::RangeError, "mutual information must be nonnegative");
    base.rho_s1z = std::sqrt(-std::expm1(-2.0 * value));
  } else {
    throw Error(ErrorKind::RangeError, "unknown sweep parameter '" + param + "'");
  }
  return base;
}

std::vector<double> sweep_grid(double from, double to, int steps) {
  if (steps < 1) throw Error(ErrorKind::RangeError, "sweep needs steps >= 1");
  if (!std::isfinite(from) || !std::isfinite(to)) throw Error(ErrorKind::RangeError, "sweep range must be finite");
  std::vector<double> v(static_cast<std::size_t>(steps));
  const double n = steps - 1;
  for (int i = 0; i < steps; ++i)
    v[static_cast<std::size_t>(i)] = steps == 1 ? from : (from * (n - i) + to * i) / n;
  return v;
}

void write_sweep_csv(std::ostream& out, const ChannelParams& base, const std::string& param,
                     const std::vector<double>& values, unsigned threads) {
  if (std::find(kSweepParams.begin(), kSweepParams.end(), param) == kSweepParams.end())
    throw Error(ErrorKind::RangeError, "unknown sweep parameter '" + param + "'");

  std::vector<std::string> rows(values.size());
  auto row_for = [&](std::size_t i) {
    const std::string head = param + "," + format_number(values[i]) + ",";
    try {
      const PointResult r = evaluate_point(new_channel(apply_sweep_value(base, param, values[i])));
      auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
      rows[i] = head + (r.capacity ? format_number(r.capacity->bits()) : "") + "," +
                (r.capacity ? format_number(r.capacity->nats) : "") + "," +
                (r.lower ? format_number(r.lower->nats) : "") + "," + opt(r.alpha_star) + "," +
                opt(r.mi_side_noise);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CrossCheckFailed) throw;
      rows[i] = head + "skip,,,,";
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(values.size(), 1)));
  std::vector<std::exception_ptr> failures(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < values.size(); i += threads) row_for(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  out << "param,value,C_bits,C_nats,RG_nats,alpha_star,mi_s1s2_z_nats\n";
  for (const auto& row : rows) out << row << '\n';
}

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("NOISYPAPER_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  return (end != nullptr && *end == '\0') ? static_cast<std::uint64_t>(v) : fallback;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity and achievable rates of the Gaussian channel with two-sided state information"};
  app.name("noisypaper");
  app.require_subcommand(1);

  ModelFlags cap_flags;
  bool cap_json = false;
  auto* capacity = app.add_subcommand("capacity", "capacity, R_G, alpha*, I(S1S2;Z) and the minor set");
  cap_flags.attach(*capacity);
  capacity->add_flag("--json", cap_json, "print JSON instead of text");

  ModelFlags sweep_flags;
  std::string sweep_param;
  double sweep_from = 0, sweep_to = 0;
  int sweep_steps = 11;
  unsigned sweep_threads = 0;
  auto* sweep = app.add_subcommand("sweep", "CSV sweep of one parameter");
  sweep->add_option("param", sweep_param, "rho_xs1, rho_s1z, rho_s2z, rho_s1s2, snr_db or mi_s1z")->required();
  sweep->add_option("--from", sweep_from)->required();
  sweep->add_option("--to", sweep_to)->required();
  sweep->add_option("--steps", sweep_steps, "number of grid points (inclusive)");
  sweep->add_option("--threads", sweep_threads, "worker threads (0 = all cores)");
  sweep_flags.attach(*sweep);

  VerifyOptions vopt;
  vopt.seed = default_seed();
  std::string suite;
  int trials = 0;
  auto* verify = app.add_subcommand("verify", "closed forms against independent oracles");
  verify->add_option("suite", suite, "minors, rates, mc, copula, typicality or all")->required();
  auto* trials_opt = verify->add_option("--trials", trials, "number of random models");
  verify->add_option("--seed", vopt.seed, "base seed (default: NOISYPAPER_SEED or 42)");
  verify->add_option("--n", vopt.n, "Monte Carlo sample count");
  verify->add_option("--marginal", vopt.marginal, "copula marginal (X, and S unless --marginal-s)");
  verify->add_option("--marginal-s", vopt.marginal_s, "copula marginal of S");
  verify->add_option("--rho", vopt.rho, "copula target correlation");

  std::string cop_x = "uniform", cop_s;
  double cop_rho = 0.2;
  std::size_t cop_n = 1'000'000;
  std::uint64_t cop_seed = default_seed();
  auto* copula = app.add_subcommand("copula", "build and sample an FGM pair with a target correlation");
  copula->add_option("--x", cop_x, "marginal of X: uniform(a,b), normal(mu,sigma), exponential(l), table:<csv>");
  copula->add_option("--s", cop_s, "marginal of S (default: same as --x)");
  copula->add_option("--rho", cop_rho, "target correlation");
  copula->add_option("--n", cop_n, "sample count");
  copula->add_option("--seed", cop_seed);

  std::size_t demo_n = 10'000;
  double demo_q1 = 1.0;
  std::uint64_t demo_seed = default_seed();
  auto* demo = app.add_subcommand("demo-self-interference", "typicality statistic for X = S1");
  demo->add_option("--n", demo_n, "block length (>= 10)");
  demo->add_option("--q1", demo_q1, "power of S1");
  demo->add_option("--seed", demo_seed);

  std::vector<const char*> argv{"noisypaper"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (capacity->parsed()) {
      const PointResult r = evaluate_point(new_channel(cap_flags.params()));
      if (cap_json) {
        print_json(out, capacity_json(r));
      } else {
        print_capacity_text(out, r);
      }
      return 0;
    }
    if (sweep->parsed()) {
      write_sweep_csv(out, sweep_flags.params(), sweep_param, sweep_grid(sweep_from, sweep_to, sweep_steps),
                      sweep_threads);
      return 0;
    }
    if (verify->parsed()) {
      if (std::find(std::begin(kVerifySuites), std::end(kVerifySuites), suite) == std::end(kVerifySuites))
        throw Error(ErrorKind::RangeError, "unknown verify suite '" + suite + "'");
      if (trials_opt->count() > 0) vopt.trials = trials;
      const json report = run_verify_suite(suite, vopt);
      print_json(out, report);
      return report.at("pass").get<bool>() ? 0 : 1;
    }
    if (copula->parsed()) {
      const FgmSpec spec =
          build_fgm(Marginal::parse(cop_x), Marginal::parse(cop_s.empty() ? cop_x : cop_s), cop_rho);
      const FgmCorrelationReport rep = verify_fgm_correlation(spec, cop_n, cop_seed);
      json j = to_json(rep);
      j["achievable_correlation"] = spec.achievable_correlation();
      j["mean_x"] = spec.mean_x;
      j["mean_s"] = spec.mean_s;
      j["sigma_x"] = spec.sigma_x;
      j["sigma_s"] = spec.sigma_s;
      print_json(out, j);
      return rep.pass ? 0 : 1;
    }
    if (demo->parsed()) {
      print_json(out, to_json(self_interference_demo(demo_n, demo_q1, demo_seed)));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::CrossCheckFailed ? 1 : 2;
  }
  return 2;
}

}  // namespace noisypaper::cli
