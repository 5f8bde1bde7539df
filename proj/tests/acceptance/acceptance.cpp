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

// One PASS/FAIL line per acceptance criterion, with the measured error and
// wall time next to the pinned tolerance and time limit.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "fixtures.hpp"
#include "noisypaper/copula.hpp"
#include "noisypaper/errors.hpp"
#include "noisypaper/infotheory.hpp"
#include "noisypaper/mc_oracle.hpp"
#include "noisypaper/minors.hpp"
#include "noisypaper/rates.hpp"
#include "noisypaper/typicality.hpp"

using namespace noisypaper;
using test::rel_err;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;
  std::function<void(Outcome&)> body;
};

ChannelModel markov_model(ChannelParams p) {
  p.markov_noise = true;
  return new_channel(p);
}

void costa_recovery(Outcome& o) {
  double worst = 0;
  for (double pn : {0.1, 1.0, 7.5}) {
    ChannelParams p;
    p.p = pn;
    p.n = pn;
    p.q1 = 3.0;
    p.q2 = 0.0;
    worst = std::max(worst, std::abs(capacity_markov(markov_model(p)).bits() - 0.5));
    worst = std::max(worst, std::abs(special_case_capacity(SpecialCase::Costa, pn, pn, {}).bits() - 0.5));
  }
  o.detail << "max |C - 0.5 bits| = " << worst;
  o.require(worst < 1e-12, "tolerance 1e-12");
}

void bound_coincidence(Outcome& o) {
  double lower = 0, upper = 0;
  for (const ChannelModel& m : test::random_models(500, 101, true, 0.1)) {
    const double c = capacity_markov(m).nats;
    lower = std::max(lower, std::abs(lower_bound_general(m).nats - c) / c);
    upper = std::max(upper, std::abs(upper_bound_minor_path(m).nats - c) / c);
  }
  o.detail << "500 models, max rel |R_G - C| = " << lower << ", max rel |upper - C| = " << upper;
  o.require(lower < 1e-10 && upper < 1e-10, "tolerance 1e-10");
}

void alpha_correctness(Outcome& o) {
  double worst = 0;
  for (const ChannelModel& m : test::random_models(100, 102, false, 0.1))
    worst = std::max(worst, std::abs(alpha_star(m) - numeric_alpha_star(m)));
  o.detail << "100 models, max |alpha* - golden-section argmax| = " << worst;
  o.require(worst < 1e-6, "tolerance 1e-6");
}

void determinant_identities(Outcome& o) {
  Rng rng(103, 1);
  double e60 = 0, e68 = 0, e72 = 0, e87 = 0;
  for (const ChannelModel& m : test::random_models(200, 103, false, 0.1)) {
    const MinorSet s = compute_minors(working_covariance(m));
    for (int k = 0; k < 5; ++k) {
      const double alpha = rng.uniform(-2.0, 2.0);
      const DerivedCovariances d = derived_covariances(m, alpha);
      e60 = std::max(e60, rel_err(d.y_s2.determinant(), det_y_s2_from_minors(s)));
      e68 = std::max(e68, rel_err(d.u_y_s2.determinant(), det_u_y_s2_from_minors(s, alpha)));
      e72 = std::max(e72, rel_err(d.u_s1.determinant(), det_u_s1_from_minors(s)));
    }
    e87 = std::max(e87, rel_err(input_noise_side_covariance(m).determinant(), det_input_noise_side_from_minors(s)));
  }
  o.detail << "200 models x 5 alpha, max rel err: cov(Y,S2) " << e60 << ", cov(U,Y,S2) " << e68
           << ", cov(U,S1) " << e72 << ", cov(X+Z,S1,S2) " << e87;
  o.require(std::max({e60, e68, e72, e87}) < 1e-10, "tolerance 1e-10");
}

void monte_carlo(Outcome& o) {
  constexpr std::size_t n = 1'000'000;
  double rate = 0, mi = 0;
  int i = 0;
  for (const ChannelModel& m : test::random_models(10, 104, false, 0.2, 0.05)) {
    const double a = alpha_star(m);
    const auto stream = static_cast<std::uint64_t>(2 * i++);
    rate = std::max(rate, std::abs(mc_rate_estimate(m, a, n, 104, stream) - rate_alpha(m, a).nats));
    mi = std::max(mi, std::abs(mc_mi_side_noise(m, n, 104, stream + 1) - mi_side_noise(m)));
  }
  o.detail << "10 models at n = 1e6, max |MC - R(alpha*)| = " << rate << " nats, max |MC - I(S1,S2;Z)| = " << mi
           << " nats";
  o.require(rate < 0.01 && mi < 0.01, "tolerance 0.01 nats");
}

// Values go through the same evaluation the sweep command uses for each CSV row.
cli::PointResult sweep_point(ChannelParams base, const std::string& param, double v) {
  base.markov_noise = true;
  return cli::evaluate_point(new_channel(cli::apply_sweep_value(base, param, v)));
}

void figures(Outcome& o) {
  // rho_xs1 sweep, P/N = 1, sides independent of the noise.
  const std::vector<double> g5 = cli::sweep_grid(-0.99, 0.99, 199);
  std::vector<double> c5;
  for (double v : g5) c5.push_back(sweep_point({}, "rho_xs1", v).capacity->bits());
  double asym = 0;
  bool mono5 = true;
  for (std::size_t i = 0; i < g5.size(); ++i) {
    asym = std::max(asym, std::abs(c5[i] - c5[g5.size() - 1 - i]));
    if (i > 0 && i <= 99) mono5 = mono5 && c5[i] > c5[i - 1];
    if (i > 99) mono5 = mono5 && c5[i] < c5[i - 1];
  }
  const double peak = std::abs(c5[99] - 0.5);
  o.require(g5[99] == 0.0 && peak < 1e-12, "rho_xs1 sweep peaks at 0.5 bits at 0");
  o.require(asym < 1e-15, "rho_xs1 sweep symmetric");
  o.require(mono5, "rho_xs1 sweep monotone in |rho_xs1|");

  // rho_s1z sweep, P/N = 1.
  bool mono7 = true;
  double last = -1;
  for (double v : cli::sweep_grid(0, 0.99, 100)) {
    const double c = sweep_point({}, "rho_s1z", v).capacity->bits();
    mono7 = mono7 && c > last;
    last = c;
  }
  o.require(mono7, "rho_s1z sweep increasing");

  // I(S1;Z) sweep against the closed form 1/2 log(1 + P / (N (1 - rho^2))).
  bool mono9 = true;
  double err9 = 0;
  last = -1;
  for (double v : cli::sweep_grid(0, 4, 101)) {
    const cli::PointResult r = sweep_point({}, "mi_s1z", v);
    const double rho = r.model.rho_s1z();
    const double closed = 0.5 * std::log1p(1.0 / (1.0 - rho * rho));
    const std::array<double, 1> tx{rho};
    err9 = std::max({err9, rel_err(r.capacity->nats, closed),
                     rel_err(r.capacity->nats, special_case_capacity(SpecialCase::TxOnly, 1, 1, tx).nats)});
    mono9 = mono9 && r.capacity->nats > last;
    last = r.capacity->nats;
  }
  o.require(mono9, "I(S1;Z) sweep increasing");
  o.require(err9 < 1e-12, "I(S1;Z) sweep matches the transmitter-only closed form");
  o.detail << "rho_xs1 sweep: peak err " << peak << ", asymmetry " << asym << "; I(S1;Z) sweep: max rel err vs closed form " << err9;
}

void corollary_limits(Outcome& o) {
  double zero = 0;
  for (double r : {1.0, -1.0}) {
    for (double s1z : {0.0, 0.5, -0.8}) {
      ChannelParams p;
      p.rho_xs1 = r;
      p.rho_s1z = s1z;
      p.rho_s1s2 = 0.3;
      zero = std::max(zero, std::abs(capacity_markov(markov_model(p)).nats));
    }
  }
  o.require(zero == 0.0, "rho_xs1 = +-1 gives C = 0");

  double peak = 0;
  double last = -1;
  bool growing = true;
  double closed_err = 0;
  for (int k = 1; k <= 10; ++k) {
    const double eps = std::pow(10.0, -k);
    ChannelParams p;
    p.rho_s1z = 0.6;
    p.rho_s2z = std::sqrt(0.64 - eps);
    const ChannelModel m = markov_model(p);
    const double c = capacity_markov(m).nats;
    const double d = 1 - p.rho_s1z * p.rho_s1z - p.rho_s2z * p.rho_s2z;
    closed_err = std::max(closed_err, rel_err(c, 0.5 * std::log1p(1.0 / d)));
    growing = growing && c > last;
    last = c;
    peak = c;
  }
  o.require(growing && peak > 10.0, "C exceeds 10 nats before the PSD boundary");
  o.require(closed_err < 1e-12, "matches 1/2 log(1 + P/(N(1 - r1^2 - r2^2)))");
  const std::array<double, 2> edge{0.6, 0.8};
  o.require(special_case_capacity(SpecialCase::UncorrelatedSides, 1, 1, edge).infinite(), "infinite at the boundary");
  o.detail << "C(rho_xs1 = +-1) = " << zero << "; C at rho_s1z^2 + rho_s2z^2 = 1 - 1e-10: " << peak
           << " nats; max rel err vs closed form " << closed_err;
}

void copula(Outcome& o) {
  const FgmCorrelationReport r = verify_fgm_correlation(build_fgm(Marginal::uniform(), Marginal::uniform(), 0.2), 1'000'000, 108);
  o.detail << "uniform rho 0.2: empirical " << r.empirical_rho << ", KS " << r.marginal_ks_x << " / "
           << r.marginal_ks_s;
  o.require(std::abs(r.empirical_rho - 0.2) < 0.01, "correlation within 0.01");
  o.require(r.marginal_ks_x < 0.005 && r.marginal_ks_s < 0.005, "KS < 0.005");
  bool rejected = false;
  try {
    build_fgm(Marginal::normal(), Marginal::normal(), 0.5);
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::OutOfRange;
  }
  o.require(rejected, "normal target 0.5 raises OutOfRange");
  o.detail << "; normal 0.5 " << (rejected ? "rejected (OutOfRange)" : "accepted");
}

void self_interference(Outcome& o) {
  const SelfInterferenceReport r = self_interference_demo(10'000, 1.0, 109);
  const double slope = std::abs(r.ratio - r.q1) / r.q1;
  const double separation = r.statistic / r.independent_scale;
  o.detail << "statistic/n = " << r.ratio << " (rel dev " << slope << "), separation x" << separation;
  o.require(slope < 0.1, "within 10% of Q1");
  o.require(separation >= 10, "at least 10x the independent scale");
}

void q_invariance(Outcome& o) {
  double worst = 0;
  for (const ChannelModel& m : test::random_models(200, 110, true)) {
    const double c = capacity_markov(m).nats;
    for (double f1 : {0.1, 10.0}) {
      for (double f2 : {0.1, 10.0}) {
        ChannelParams p = m.params();
        p.q1 *= f1;
        p.q2 *= f2;
        worst = std::max(worst, rel_err(capacity_markov(new_channel(p)).nats, c));
      }
    }
  }
  o.detail << "200 models x 4 rescalings, max rel change = " << worst;
  o.require(worst < 1e-12, "tolerance 1e-12");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Costa recovery", 1e-3, costa_recovery},
      {2, "bound coincidence", 1.0, bound_coincidence},
      {3, "alpha* correctness", 5.0, alpha_correctness},
      {4, "determinant identities", 1.0, determinant_identities},
      {5, "Monte Carlo oracle", 60.0, monte_carlo},
      {6, "figure reproduction", std::numeric_limits<double>::infinity(), figures},
      {7, "corollary limits", std::numeric_limits<double>::infinity(), corollary_limits},
      {8, "FGM copula", 30.0, copula},
      {9, "self-interference demo", 1.0, self_interference},
      {10, "Q-invariance", std::numeric_limits<double>::infinity(), q_invariance},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.time_limit_s) {
      o.pass = false;
      o.detail << " [over time limit " << c.time_limit_s << " s]";
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s AC%-2d %-24s %s (%.4f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str(),
                secs);
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
