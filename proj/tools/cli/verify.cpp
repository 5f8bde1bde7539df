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

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "noisypaper/copula.hpp"
#include "noisypaper/errors.hpp"
#include "noisypaper/infotheory.hpp"
#include "noisypaper/json.hpp"
#include "noisypaper/mc_oracle.hpp"
#include "noisypaper/minors.hpp"
#include "noisypaper/rates.hpp"
#include "noisypaper/rng.hpp"
#include "noisypaper/typicality.hpp"

namespace noisypaper::cli {
namespace {

using nlohmann::json;

// Tolerances of the individual checks.
constexpr double kIdentityTol = 1e-10;
constexpr double kCoincidenceTol = 1e-10;
constexpr double kAlphaTol = 1e-6;
constexpr double kArgmaxSlack = 1e-12;
constexpr double kInvarianceTol = 1e-12;
constexpr double kMcTol = 0.01;

// Worst-case error accumulator for one named check.
struct Check {
  std::string name;
  double tolerance;
  double worst = 0.0;
  int count = 0;

  void add(double err) {
    // NaN counts as a failure.
    worst = std::isnan(err) ? err : (std::isnan(worst) ? worst : std::max(worst, err));
    ++count;
  }
  bool pass() const { return !std::isnan(worst) && worst < tolerance; }
  json to_json() const {
    return json{{"name", name}, {"achieved", json_number(worst)}, {"tolerance", tolerance},
                {"samples", count}, {"pass", pass()}};
  }
};

double rel_err(double direct, double formula, double scale) {
  return std::abs(direct - formula) / std::max(std::abs(direct), kDegenerateTolerance * scale);
}

json finish(const std::string& suite, std::vector<json> checks) {
  bool all = true;
  for (const auto& c : checks) all = all && c.at("pass").get<bool>();
  return json{{"suite", suite}, {"checks", checks}, {"pass", all}};
}

json suite_minors(const VerifyOptions& o) {
  const int trials = o.trials.value_or(200);
  Rng rng(o.seed, 0);
  RandomChannelOptions opts;
  opts.markov = false;
  opts.s2_absent_probability = 0.1;
  Check y_s2{"det cov(Y,S2) = minor combination", kIdentityTol};
  Check u_y_s2{"det cov(U,Y,S2) = minor combination in alpha", kIdentityTol};
  Check u_s1{"det cov(U,S1) = d_Q2N", kIdentityTol};
  Check ins{"det cov(X+Z,S1,S2) = d_N + 2 d_L0 + d_P", kIdentityTol};
  Check norm{"d_P_norm invariant under rescaling Q1, Q2, N", kIdentityTol};
  for (int t = 0; t < trials; ++t) {
    const ChannelModel m = random_channel(rng, opts);
    const MinorSet ms = compute_minors(working_covariance(m));
    for (int k = 0; k < 5; ++k) {
      const double alpha = rng.uniform(-2.0, 2.0);
      const DerivedCovariances dc = derived_covariances(m, alpha);
      y_s2.add(rel_err(dc.y_s2.determinant(), det_y_s2_from_minors(ms), hadamard_scale(dc.y_s2.matrix())));
      u_y_s2.add(rel_err(dc.u_y_s2.determinant(), det_u_y_s2_from_minors(ms, alpha),
                         hadamard_scale(dc.u_y_s2.matrix())));
      u_s1.add(rel_err(dc.u_s1.determinant(), det_u_s1_from_minors(ms), hadamard_scale(dc.u_s1.matrix())));
    }
    const CovMatrix c = input_noise_side_covariance(m);
    ins.add(rel_err(c.determinant(), det_input_noise_side_from_minors(ms), hadamard_scale(c.matrix())));

    ChannelParams scaled = m.params();
    scaled.q1 *= rng.uniform(0.1, 10.0);
    if (scaled.q2 > 0) scaled.q2 *= rng.uniform(0.1, 10.0);
    scaled.n *= rng.uniform(0.1, 10.0);
    norm.add(std::abs(compute_minors(working_covariance(new_channel(scaled))).d_p_norm - ms.d_p_norm));
  }
  return finish("minors", {y_s2.to_json(), u_y_s2.to_json(), u_s1.to_json(), ins.to_json(), norm.to_json()});
}

json suite_rates(const VerifyOptions& o) {
  const int trials = o.trials.value_or(100);
  Rng rng(o.seed, 1);
  RandomChannelOptions markov_opts;
  RandomChannelOptions general_opts;
  general_opts.markov = false;

  Check lower{"R_G = C (Markov models)", kCoincidenceTol};
  Check upper{"upper minor path = C (Markov models)", kCoincidenceTol};
  Check mi_form{"C ratio form = C MI form", kInvarianceTol};
  Check q_inv{"C invariant under Q1, Q2 rescaling by 0.1 and 10", kInvarianceTol};
  Check alpha{"closed-form alpha* = golden-section argmax", kAlphaTol};
  Check argmax{"R(alpha*) >= R(alpha) on 2001-point grid (shortfall)", kArgmaxSlack};
  Check chain{"R(alpha) minors = entropy chain", kIdentityTol};
  Check rg{"R_G = R(alpha*) (general models)", kCoincidenceTol};

  for (int t = 0; t < trials; ++t) {
    const ChannelModel m = random_channel(rng, markov_opts);
    const double c = capacity_markov(m).nats;
    lower.add(std::abs(lower_bound_general(m).nats - c) / c);
    upper.add(std::abs(upper_bound_minor_path(m).nats - c) / c);
    mi_form.add(std::abs(capacity_markov_mi_form(m) - c) / c);
    for (double f : {0.1, 10.0}) {
      ChannelParams p = m.params();
      p.q1 *= f;
      p.q2 *= f;
      q_inv.add(std::abs(capacity_markov(new_channel(p)).nats - c) / c);
    }

    const ChannelModel g = random_channel(rng, general_opts);
    const double a = alpha_star(g);
    alpha.add(std::abs(numeric_alpha_star(g) - a));
    const double best = rate_alpha(g, a).nats;
    double shortfall = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double trial_alpha = a - 3.0 + 6.0 * i / 2000.0;
      shortfall = std::max(shortfall, rate_alpha(g, trial_alpha).nats - best);
    }
    argmax.add(shortfall);
    rg.add(std::abs(lower_bound_general(g).nats - best) / std::max(best, 1e-300));

    const double probe = rng.uniform(-2.0, 2.0);
    const DerivedCovariances dc = derived_covariances(g, probe);
    const CovMatrix s1{{working_covariance(g)(1, 1)}};
    const CovMatrix u{{dc.u_s1(0, 0)}};
    const double i_u_ys2 = gaussian_entropy(u) + gaussian_entropy(dc.y_s2) - gaussian_entropy(dc.u_y_s2);
    const double i_u_s1 = gaussian_entropy(u) + gaussian_entropy(s1) - gaussian_entropy(dc.u_s1);
    const double r = rate_alpha(g, probe).nats;
    chain.add(std::abs((i_u_ys2 - i_u_s1) - r) / std::max(1.0, std::abs(r)));
  }
  return finish("rates", {lower.to_json(), upper.to_json(), mi_form.to_json(), q_inv.to_json(),
                          alpha.to_json(), argmax.to_json(), rg.to_json(), chain.to_json()});
}

json suite_mc(const VerifyOptions& o) {
  const int trials = o.trials.value_or(10);
  Rng rng(o.seed, 2);
  RandomChannelOptions opts;
  opts.markov = false;
  opts.min_eigenvalue = 0.05;
  std::vector<json> records;
  Check rate{"MC rate estimate vs R(alpha*)", kMcTol};
  Check mi{"MC I(S1,S2;Z) vs closed form", kMcTol};
  for (int t = 0; t < trials; ++t) {
    const ChannelModel m = random_channel(rng, opts);
    const double a = alpha_star(m);
    const auto stream = static_cast<std::uint64_t>(2 * t);
    VerificationRecord r{"R(alpha*)", rate_alpha(m, a).nats, mc_rate_estimate(m, a, o.n, o.seed, stream),
                         o.n, o.seed};
    r.abs_error = std::abs(r.closed_form - r.mc_estimate);
    r.pass = r.abs_error < kMcTol;
    rate.add(r.abs_error);
    records.push_back(to_json(r));

    VerificationRecord s{"I(S1,S2;Z)", mi_side_noise(m), mc_mi_side_noise(m, o.n, o.seed, stream + 1),
                         o.n, o.seed};
    s.abs_error = std::abs(s.closed_form - s.mc_estimate);
    s.pass = s.abs_error < kMcTol;
    mi.add(s.abs_error);
    records.push_back(to_json(s));
  }
  json out = finish("mc", {rate.to_json(), mi.to_json()});
  out["records"] = records;
  return out;
}

Marginal marginal_from_option(const std::string& name) { return Marginal::parse(name); }

json suite_copula(const VerifyOptions& o) {
  const std::string sx = o.marginal;
  const std::string ss = o.marginal_s.empty() ? o.marginal : o.marginal_s;
  const FgmSpec spec = build_fgm(marginal_from_option(sx), marginal_from_option(ss), o.rho);
  const FgmCorrelationReport rep = verify_fgm_correlation(spec, o.n, o.seed);
  Check rho{"empirical correlation vs target", kFgmRhoTolerance};
  rho.add(std::abs(rep.empirical_rho - rep.target_rho));
  Check ksx{"KS distance of X marginal", kFgmKsThreshold};
  ksx.add(rep.marginal_ks_x);
  Check kss{"KS distance of S marginal", kFgmKsThreshold};
  kss.add(rep.marginal_ks_s);
  json out = finish("copula", {rho.to_json(), ksx.to_json(), kss.to_json()});
  out["report"] = to_json(rep);
  return out;
}

json suite_typicality(const VerifyOptions& o) {
  const SelfInterferenceReport rep = self_interference_demo(10'000, 1.0, o.seed);
  Check slope{"statistic / n vs Q1 (relative, X = S1)", 0.1};
  slope.add(std::abs(rep.ratio - rep.q1) / rep.q1);
  // Stored as scale / statistic so that "below tolerance" means separated.
  Check separation{"independent-X scale / self-interference statistic", 0.1};
  separation.add(rep.independent_scale / rep.statistic);

  constexpr std::size_t n = 1000;
  int accepted = 0;
  int self_accepted = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(o.seed, 100 + static_cast<std::uint64_t>(trial));
    std::vector<double> x(n), s(n);
    for (auto& v : s) v = rng.normal();
    for (auto& v : x) v = rng.normal();
    const double delta = default_delta(1.0, 1.0, n);
    accepted += feasibility(x, s, 0.5, delta) ? 1 : 0;
    self_accepted += feasibility(s, s, 0.5, delta) ? 1 : 0;
  }
  Check indep{"independent X rejected (fraction of 100 seeds, n = 1000)", 0.01 + 1e-12};
  indep.add(1.0 - accepted / 100.0);
  Check self{"X = S1 accepted (fraction of 100 seeds, n = 1000)", 1e-12};
  self.add(self_accepted / 100.0);
  json out = finish("typicality", {slope.to_json(), separation.to_json(), indep.to_json(), self.to_json()});
  out["report"] = to_json(rep);
  return out;
}

}  // namespace

json run_verify_suite(const std::string& suite, const VerifyOptions& options) {
  if (suite == "minors") return suite_minors(options);
  if (suite == "rates") return suite_rates(options);
  if (suite == "mc") return suite_mc(options);
  if (suite == "copula") return suite_copula(options);
  if (suite == "typicality") return suite_typicality(options);
  if (suite == "all") {
    std::vector<json> parts;
    bool all = true;
    for (const char* s : {"minors", "rates", "mc", "copula", "typicality"}) {
      parts.push_back(run_verify_suite(s, options));
      all = all && parts.back().at("pass").get<bool>();
    }
    return json{{"suite", "all"}, {"suites", parts}, {"pass", all}};
  }
  throw Error(ErrorKind::RangeError, "unknown verify suite '" + suite + "'");
}

}  // namespace noisypaper::cli
