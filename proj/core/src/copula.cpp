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

#include "noisypaper/copula.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "noisypaper/errors.hpp"
#include "noisypaper/quadrature.hpp"

namespace noisypaper {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCdfBisectionTolerance = 1e-10;

double bisect_quantile(const Marginal::Fn& cdf, double u, double lo, double hi) {
  if (std::isinf(lo) || std::isinf(hi)) {
    double a = std::isinf(lo) ? -1.0 : lo;
    double b = std::isinf(hi) ? 1.0 : hi;
    for (int i = 0; i < 2000 && std::isinf(lo) && cdf(a) > u; ++i) a *= 2.0;
    for (int i = 0; i < 2000 && std::isinf(hi) && cdf(b) < u; ++i) b *= 2.0;
    lo = a;
    hi = b;
  }
  if (cdf(lo) > u || cdf(hi) < u)
    throw Error(ErrorKind::InversionFailure, "could not bracket quantile " + std::to_string(u));
  for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> parse_args(std::string_view text) {
  std::vector<double> out;
  std::string buf(text);
  std::replace(buf.begin(), buf.end(), ',', ' ');
  std::istringstream in(buf);
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw Error(ErrorKind::RangeError, "bad marginal arguments: " + std::string(text));
  return out;
}

}  // namespace

Marginal::Marginal(std::string name, Fn pdf, Fn cdf, Fn quantile, std::vector<double> breakpoints)
    : name_(std::move(name)),
      pdf_(std::move(pdf)),
      cdf_(std::move(cdf)),
      quantile_(std::move(quantile)),
      breakpoints_(std::move(breakpoints)) {
  if (!pdf_ || !cdf_) throw Error(ErrorKind::RangeError, "marginal needs pdf and cdf handles");
  if (breakpoints_.size() < 2 || !std::is_sorted(breakpoints_.begin(), breakpoints_.end()))
    throw Error(ErrorKind::RangeError, "marginal breakpoints must be sorted support ends");
}

double Marginal::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorKind::InversionFailure, "quantile level outside (0,1)");
  if (quantile_) return quantile_(u);
  return bisect_quantile(cdf_, u, lower(), upper());
}

Marginal Marginal::uniform(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw Error(ErrorKind::RangeError, "uniform(a,b) needs finite a < b");
  const double w = b - a;
  std::ostringstream name;
  name << "uniform(" << a << "," << b << ")";
  return Marginal(
      name.str(), [a, b, w](double x) { return (x >= a && x <= b) ? 1.0 / w : 0.0; },
      [a, b, w](double x) { return x <= a ? 0.0 : (x >= b ? 1.0 : (x - a) / w); },
      [a, w](double u) { return a + w * u; }, {a, b});
}

Marginal Marginal::normal(double mean, double sigma) {
  if (!(std::isfinite(mean) && std::isfinite(sigma) && sigma > 0))
    throw Error(ErrorKind::RangeError, "normal(mu,sigma) needs sigma > 0");
  std::ostringstream name;
  name << "normal(" << mean << "," << sigma << ")";
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  return Marginal(
      name.str(),
      [mean, sigma, norm](double x) {
        const double t = (x - mean) / sigma;
        return norm * std::exp(-0.5 * t * t);
      },
      [mean, sigma](double x) { return 0.5 * std::erfc(-(x - mean) / (sigma * std::numbers::sqrt2)); },
      [mean, sigma](double u) {
        return mean - sigma * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
      },
      {-kInf, kInf});
}

Marginal Marginal::exponential(double lambda) {
  if (!(std::isfinite(lambda) && lambda > 0))
    throw Error(ErrorKind::RangeError, "exponential(lambda) needs lambda > 0");
  std::ostringstream name;
  name << "exponential(" << lambda << ")";
  return Marginal(
      name.str(), [lambda](double x) { return x < 0 ? 0.0 : lambda * std::exp(-lambda * x); },
      [lambda](double x) { return x <= 0 ? 0.0 : -std::expm1(-lambda * x); },
      [lambda](double u) { return -std::log1p(-u) / lambda; }, {0.0, kInf});
}

Marginal Marginal::tabulated(std::vector<std::pair<double, double>> knots, std::string name) {
  if (knots.size() < 2) throw Error(ErrorKind::RangeError, "tabulated CDF needs at least two knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto [x, f] = knots[i];
    if (!std::isfinite(x) || !std::isfinite(f) || f < 0.0 || f > 1.0)
      throw Error(ErrorKind::RangeError, "tabulated CDF values must be finite with F in [0,1]");
    if (i > 0 && (x <= knots[i - 1].first || f < knots[i - 1].second))
      throw Error(ErrorKind::RangeError, "tabulated CDF must have increasing x and nondecreasing F");
  }
  if (knots.front().second != 0.0 || knots.back().second != 1.0)
    throw Error(ErrorKind::RangeError, "tabulated CDF must start at F = 0 and end at F = 1");

  auto table = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(knots));
  auto segment = [table](double x) {
    const auto it = std::upper_bound(table->begin(), table->end(), x,
                                     [](double v, const auto& k) { return v < k.first; });
    return static_cast<std::size_t>(it - table->begin());  // first knot with knot.x > x
  };
  std::vector<double> breaks;
  for (const auto& k : *table) breaks.push_back(k.first);

  return Marginal(
      std::move(name),
      [table, segment](double x) {
        const std::size_t j = segment(x);
        if (j == 0 || j == table->size()) return 0.0;
        const auto& a = (*table)[j - 1];
        const auto& b = (*table)[j];
        return (b.second - a.second) / (b.first - a.first);
      },
      [table, segment](double x) {
        const std::size_t j = segment(x);
        if (j == 0) return 0.0;
        if (j == table->size()) return 1.0;
        const auto& a = (*table)[j - 1];
        const auto& b = (*table)[j];
        return a.second + (b.second - a.second) * (x - a.first) / (b.first - a.first);
      },
      [table](double u) {
        const auto it = std::lower_bound(table->begin(), table->end(), u,
                                         [](const auto& k, double v) { return k.second < v; });
        const std::size_t j = std::max<std::size_t>(1, static_cast<std::size_t>(it - table->begin()));
        const auto& a = (*table)[j - 1];
        const auto& b = (*table)[j];
        return a.first + (b.first - a.first) * (u - a.second) / (b.second - a.second);
      },
      std::move(breaks));
}

Marginal Marginal::tabulated_csv(std::istream& in, std::string name) {
  std::vector<std::pair<double, double>> knots;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, f;
    if (!(row >> x >> f)) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw Error(ErrorKind::RangeError, "bad tabulated CDF row: " + line);
    }
    first = false;
    knots.emplace_back(x, f);
  }
  return tabulated(std::move(knots), std::move(name));
}

Marginal Marginal::parse(std::string_view spec) {
  if (spec.starts_with("table:")) {
    const std::string path(spec.substr(6));
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::RangeError, "cannot open tabulated CDF " + path);
    return tabulated_csv(in, "table:" + path);
  }
  const auto open = spec.find('(');
  const std::string_view family = spec.substr(0, open);
  std::vector<double> args;
  if (open != std::string_view::npos) {
    if (!spec.ends_with(")")) throw Error(ErrorKind::RangeError, "unterminated marginal arguments");
    args = parse_args(spec.substr(open + 1, spec.size() - open - 2));
  }
  auto arg = [&](std::size_t i, double fallback) { return i < args.size() ? args[i] : fallback; };
  if (family == "uniform" && args.size() <= 2) return uniform(arg(0, 0.0), arg(1, 1.0));
  if (family == "normal" && args.size() <= 2) return normal(arg(0, 0.0), arg(1, 1.0));
  if (family == "exponential" && args.size() <= 1) return exponential(arg(0, 1.0));
  throw Error(ErrorKind::RangeError, "unknown marginal '" + std::string(spec) +
                                         "' (expected uniform, normal, exponential or table:<csv>)");
}

double FgmSpec::density(double xv, double sv) const {
  const double fx = x.pdf(xv);
  const double fs = s.pdf(sv);
  if (fx == 0.0 || fs == 0.0) return 0.0;
  return fx * fs * (1.0 + rho_param * (2.0 * x.cdf(xv) - 1.0) * (2.0 * s.cdf(sv) - 1.0));
}

double FgmSpec::conditional_cdf(double sv, double xv) const {
  const double v = s.cdf(sv);
  return v * (1.0 - rho_param * (2.0 * x.cdf(xv) - 1.0) * (1.0 - v));
}

double fgm_moment(const Marginal& m) {
  return integrate_piecewise([&m](double t) { return t * m.pdf(t) * (2.0 * m.cdf(t) - 1.0); },
                             m.breakpoints());
}

double fgm_existence_integral(const Marginal& m) {
  return integrate_piecewise(
      [&m](double t) {
        const double f = m.cdf(t);
        return f * (1.0 - f);
      },
      m.breakpoints());
}

FgmSpec build_fgm(Marginal x, Marginal s, double rho_target) {
  if (!std::isfinite(rho_target) || rho_target < -1.0 || rho_target > 1.0)
    throw Error(ErrorKind::RangeError, "target correlation must lie in [-1, 1]");

  auto moments = [](const Marginal& m, double& mean, double& sigma, double& a) {
    mean = integrate_piecewise([&m](double t) { return t * m.pdf(t); }, m.breakpoints());
    const double var = integrate_piecewise(
        [&m, mean](double t) { return (t - mean) * (t - mean) * m.pdf(t); }, m.breakpoints());
    if (!(var > 0.0) || !std::isfinite(var))
      throw Error(ErrorKind::RangeError, m.name() + " has no finite positive variance");
    sigma = std::sqrt(var);
    a = fgm_moment(m);
    if (!(a > 0.0)) throw Error(ErrorKind::RangeError, m.name() + " gives a nonpositive FGM moment");
  };

  FgmSpec spec{std::move(x), std::move(s)};
  moments(spec.x, spec.mean_x, spec.sigma_x, spec.a_x);
  moments(spec.s, spec.mean_s, spec.sigma_s, spec.a_s);
  spec.rho_target = rho_target;
  spec.rho_param = spec.sigma_x * spec.sigma_s / (spec.a_x * spec.a_s) * rho_target;
  if (std::abs(spec.rho_param) > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "target correlation " << rho_target << " needs copula parameter " << spec.rho_param
        << "; " << spec.x.name() << " x " << spec.s.name() << " reaches at most "
        << spec.achievable_correlation();
    throw Error(ErrorKind::OutOfRange, msg.str());
  }
  spec.rho_param = std::clamp(spec.rho_param, -1.0, 1.0);
  return spec;
}

SampleSet sample_fgm(const FgmSpec& spec, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 2) throw Error(ErrorKind::RangeError, "need at least 2 samples");
  Rng rng(seed, stream);
  SampleSet out;
  out.data.resize(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < out.data.rows(); ++i) {
    const double xv = spec.x.quantile(rng.uniform_open());
    const double w = rng.uniform_open();
    const double tilt = spec.rho_param * (2.0 * spec.x.cdf(xv) - 1.0);
    // P(S <= s | x) = v (1 - tilt (1 - v)) with v = F_S(s); increasing in v for |tilt| <= 1.
    auto conditional = [tilt](double v) { return v * (1.0 - tilt * (1.0 - v)); };
    double lo = 0.0;
    double hi = 1.0;
    if (conditional(lo) > w || conditional(hi) < w)
      throw Error(ErrorKind::InversionFailure, "conditional CDF does not bracket " + std::to_string(w));
    while (hi - lo > kCdfBisectionTolerance) {
      const double mid = 0.5 * (lo + hi);
      (conditional(mid) < w ? lo : hi) = mid;
    }
    const double v = std::clamp(0.5 * (lo + hi), 1e-300, 1.0 - 1e-16);
    const double sv = spec.s.quantile(v);
    if (!std::isfinite(xv) || !std::isfinite(sv))
      throw Error(ErrorKind::InversionFailure, "non-finite FGM draw");
    out.data(i, 0) = xv;
    out.data(i, 1) = sv;
  }
  out.seed = seed;
  out.stream = stream;
  out.labels = {"X", "S"};
  out.generator = std::string(Rng::kGenerator) + "/fgm-conditional-bisection";
  return out;
}

double ks_distance(std::span<const double> samples, const Marginal& m) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = m.cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

FgmCorrelationReport verify_fgm_correlation(const FgmSpec& spec, std::size_t n, std::uint64_t seed) {
  const SampleSet draws = sample_fgm(spec, n, seed);
  const auto xs = draws.data.col(0);
  const auto ss = draws.data.col(1);
  const double mx = xs.mean();
  const double ms = ss.mean();
  const double denom = static_cast<double>(n - 1);
  const double cov = ((xs.array() - mx) * (ss.array() - ms)).sum() / denom;
  const double vx = (xs.array() - mx).square().sum() / denom;
  const double vs = (ss.array() - ms).square().sum() / denom;

  FgmCorrelationReport r;
  r.marginal_x = spec.x.name();
  r.marginal_s = spec.s.name();
  r.target_rho = spec.rho_target;
  r.rho_param = spec.rho_param;
  r.empirical_rho = cov / std::sqrt(vx * vs);
  r.a_x = spec.a_x;
  r.a_s = spec.a_s;
  r.empirical_cov = cov;
  r.predicted_cov = spec.rho_param * spec.a_x * spec.a_s;
  const std::vector<double> xv(xs.begin(), xs.end());
  const std::vector<double> sv(ss.begin(), ss.end());
  r.marginal_ks_x = ks_distance(xv, spec.x);
  r.marginal_ks_s = ks_distance(sv, spec.s);
  r.n = n;
  r.seed = seed;
  r.pass = std::abs(r.empirical_rho - r.target_rho) < kFgmRhoTolerance &&
           r.marginal_ks_x < kFgmKsThreshold && r.marginal_ks_s < kFgmKsThreshold;
  return r;
}

}  // namespace noisypaper
