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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commands.hpp"

using namespace noisypaper;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream l(line);
    while (std::getline(l, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("capacity command", "[cli]") {
  const Run text = run({"capacity", "--p", "1", "--n", "1"});
  CHECK(text.code == 0);
  CHECK(text.out.find("C           = 0.5 bits") != std::string::npos);
  CHECK(text.out.find("d_Q1L0") != std::string::npos);

  const Run j = run({"capacity", "--p", "1", "--n", "1", "--json"});
  REQUIRE(j.code == 0);
  const json r = json::parse(j.out);
  CHECK(r.at("capacity").at("bits").get<double>() == Catch::Approx(0.5).margin(1e-15));
  CHECK(r.at("alpha_star").get<double>() == Catch::Approx(0.5).margin(1e-15));
  CHECK(r.at("mi_s1s2_z_nats") == 0.0);
  CHECK(r.at("minors").contains("d_P_norm"));
  CHECK(r.at("model").at("markov_noise") == true);

  const Run zero = run({"capacity", "--p", "1", "--n", "1", "--rho-xs1", "1", "--markov", "--json"});
  CHECK(zero.code == 0);
  CHECK(json::parse(zero.out).at("capacity").at("bits") == 0.0);

  const Run inf = run({"capacity", "--rho-s1z", "1", "--markov", "--json"});
  CHECK(inf.code == 0);
  CHECK(json::parse(inf.out).at("capacity").at("bits") == "inf");
}

TEST_CASE("capacity command validation errors", "[cli]") {
  const Run bad = run({"capacity", "--p", "1", "--n", "1", "--rho-s1z", "0.9", "--rho-s2z", "0.9", "--markov"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("NotPSD") != std::string::npos);

  const Run markov = run({"capacity", "--rho-xs1", "0.5", "--rho-s1s2", "0.6", "--rho-xs2", "0.4"});
  CHECK(markov.code == 2);
  CHECK(markov.err.find("MarkovViolation") != std::string::npos);

  CHECK(run({"capacity", "--p", "-1"}).code == 2);
  CHECK(run({"capacity", "--p", "abc"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("non-Markov noise reports no capacity", "[cli]") {
  const Run r = run({"capacity", "--rho-xs1", "0.3", "--rho-s1z", "0.4", "--rho-xz", "0.5", "--json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("capacity").is_null());
  CHECK(!j.at("lower_bound_general").is_null());
  CHECK(!j.contains("upper_minor_path"));
}

TEST_CASE("config file with flag precedence", "[cli]") {
  const std::string path = "cli_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"p": 3, "n": 1, "rho_s1z": 0.6})";
  }
  const json from_file = json::parse(run({"capacity", "--config", path, "--json"}).out);
  CHECK(from_file.at("model").at("p") == 3.0);
  CHECK(from_file.at("model").at("rho_s1z") == 0.6);
  const json overridden = json::parse(run({"capacity", "--config", path, "--p", "1", "--json"}).out);
  CHECK(overridden.at("model").at("p") == 1.0);
  CHECK(overridden.at("model").at("rho_s1z") == 0.6);
  CHECK(overridden.at("capacity").at("nats").get<double>() == Catch::Approx(0.4704916722322633).margin(1e-14));
  std::remove(path.c_str());

  CHECK(run({"capacity", "--config", "/nonexistent.json"}).code == 2);
}

TEST_CASE("sweep CSV", "[cli]") {
  const Run r = run({"sweep", "rho_xs1", "--from", "-0.99", "--to", "0.99", "--steps", "199", "--markov"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 200);
  CHECK(r.out.rfind("param,value,C_bits,C_nats,RG_nats,alpha_star,mi_s1s2_z_nats\n", 0) == 0);
  CHECK(r.out.find('\r') == std::string::npos);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 7);
    CHECK(rows[i][0] == "rho_xs1");
    // Mirror symmetry of the capacity column.
    CHECK(rows[i][2] == rows[rows.size() - i][2]);
  }
  CHECK(rows[100][1] == "0");
  CHECK(rows[100][2] == "0.5");

  CHECK(run({"sweep", "rho_xs1", "--from", "0", "--to", "1", "--steps", "3", "--markov"}).out ==
        run({"sweep", "rho_xs1", "--from", "0", "--to", "1", "--steps", "3", "--markov", "--threads", "1"}).out);
}

TEST_CASE("sweep with one step equals the capacity command", "[cli]") {
  const json cap = json::parse(run({"capacity", "--p", "2", "--rho-s1z", "0.3", "--rho-xs1", "0.2", "--markov",
                                    "--json"})
                                   .out);
  const auto rows = csv(run({"sweep", "rho_s1z", "--from", "0.3", "--to", "0.9", "--steps", "1", "--p", "2",
                             "--rho-xs1", "0.2", "--markov"})
                            .out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][2] == cli::format_number(cap.at("capacity").at("bits").get<double>()));
  CHECK(rows[1][4] == cli::format_number(cap.at("lower_bound_general").at("nats").get<double>()));
  CHECK(rows[1][5] == cli::format_number(cap.at("alpha_star").get<double>()));
}

TEST_CASE("sweep skips infeasible points and rejects unknown parameters", "[cli]") {
  const auto rows = csv(run({"sweep", "rho_s1z", "--from", "0", "--to", "0.99", "--steps", "12", "--rho-s2z", "0.6",
                             "--markov"})
                            .out);
  bool skipped = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][2] == "skip") {
      skipped = true;
      CHECK(rows[i].size() == 7);
      CHECK(std::stod(rows[i][1]) >= 0.8 - 1e-12);
    }
  }
  CHECK(skipped);
  CHECK(run({"sweep", "rho_xz", "--from", "0", "--to", "1"}).code == 2);
  CHECK(run({"sweep", "rho_xs1", "--from", "0", "--to", "1", "--steps", "0"}).code == 2);
}

TEST_CASE("snr and mutual-information sweeps", "[cli]") {
  const auto snr = csv(run({"sweep", "snr_db", "--from", "0", "--to", "20", "--steps", "3", "--markov"}).out);
  CHECK(snr[1][2] == "0.5");
  CHECK(std::stod(snr[3][3]) == Catch::Approx(0.5 * std::log(101.0)).margin(1e-10));

  const auto mi = csv(run({"sweep", "mi_s1z", "--from", "0", "--to", "2", "--steps", "5", "--markov"}).out);
  for (std::size_t i = 1; i < mi.size(); ++i) {
    CHECK(std::stod(mi[i][6]) == Catch::Approx(std::stod(mi[i][1])).margin(1e-10));
  }
}

TEST_CASE("number formatting", "[cli]") {
  CHECK(cli::format_number(0.5) == "0.5");
  CHECK(cli::format_number(1.0 / 3) == "0.333333333333");
  CHECK(cli::format_number(1e-20) == "1e-20");
  CHECK(cli::format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(cli::sweep_grid(0, 1, 1) == std::vector<double>{0.0});
  CHECK(cli::sweep_grid(0, 1, 3) == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("verify command", "[cli]") {
  const Run minors = run({"verify", "minors", "--trials", "200", "--seed", "7"});
  CHECK(minors.code == 0);
  CHECK(json::parse(minors.out).at("pass") == true);
  const Run rates = run({"verify", "rates", "--trials", "20", "--seed", "7"});
  CHECK(rates.code == 0);
  const Run typ = run({"verify", "typicality", "--seed", "3"});
  CHECK(typ.code == 0);
  const Run cop = run({"verify", "copula", "--marginal", "uniform", "--rho", "0.2", "--n", "1000000"});
  CHECK(cop.code == 0);
  // A sample too small for the KS threshold fails the check rather than erroring.
  CHECK(run({"verify", "copula", "--n", "200"}).code == 1);
  CHECK(run({"verify", "copula", "--marginal", "normal", "--rho", "0.5"}).code == 2);
  CHECK(run({"verify", "bogus"}).code == 2);
  CHECK(run({"verify", "minors", "--trials", "5", "--seed", "7"}).out ==
        run({"verify", "minors", "--trials", "5", "--seed", "7"}).out);
}

TEST_CASE("copula and demo commands", "[cli]") {
  const Run c = run({"copula", "--x", "uniform", "--rho", "0.2", "--n", "200000", "--seed", "1"});
  CHECK(c.code == 0);
  CHECK(json::parse(c.out).at("rho_param").get<double>() == Catch::Approx(0.6).margin(1e-10));
  const Run bad = run({"copula", "--x", "normal", "--rho", "0.5"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("OutOfRange") != std::string::npos);

  const Run d = run({"demo-self-interference", "--n", "10000", "--q1", "1", "--seed", "5"});
  CHECK(d.code == 0);
  const json r = json::parse(d.out);
  CHECK(std::abs(r.at("ratio").get<double>() - 1.0) < 0.05);
  CHECK(run({"demo-self-interference", "--n", "5"}).code == 2);
}

TEST_CASE("seed from the environment", "[cli]") {
  ::setenv("NOISYPAPER_SEED", "1234", 1);
  CHECK(cli::default_seed() == 1234);
  ::setenv("NOISYPAPER_SEED", "x12", 1);
  CHECK(cli::default_seed(9) == 9);
  ::unsetenv("NOISYPAPER_SEED");
  CHECK(cli::default_seed(9) == 9);
}
