//------------------------------------------------------------------------------
//
//   Copyright 2026 The pushbeta Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "pushbeta/cli.hpp"
#include "pushbeta/distribution.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace pushbeta;
using nlohmann::json;

namespace {

struct Outcome
{
  int         code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> const &args, std::string const &input = {})
{
  std::istringstream in(input);
  std::ostringstream out, err;
  int const          code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(std::string const &text)
{
  std::vector<std::string> rows;
  std::istringstream       s(text);
  for (std::string row; std::getline(s, row);)
  {
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> const kParams{"--shape1", "3", "--shape2", "2", "--intensity", "4", "--proportion", "0.6"};

std::vector<std::string> with(std::vector<std::string> head, std::vector<std::string> const &tail = kParams)
{
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_SUITE("cli")
{
  TEST_CASE("density of the symmetric beta")
  {
    Outcome const r = call({"pdf", "--x", "0.5", "--shape1", "2", "--shape2", "2", "--intensity", "0", "--proportion",
                            "0.5"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "1.5\n");
  }

  TEST_CASE("aliases behave like their subcommands")
  {
    CHECK(call(with({"dpushbeta", "--x", "0.3"})).out == call(with({"pdf", "--x", "0.3"})).out);
    CHECK(call(with({"ppushbeta", "--x", "0.3"})).out == call(with({"cdf", "--x", "0.3"})).out);
    CHECK(call(with({"qpushbeta", "--p", "0.3"})).out == call(with({"quantile", "--p", "0.3"})).out);
    CHECK(call(with({"rpushbeta", "--n", "4", "--seed", "2"})).out ==
          call(with({"sample", "--n", "4", "--seed", "2"})).out);
    CHECK(call(with({"HDR.pushbeta", "--cover-prob", "0.5"})).out == call(with({"hdr", "--cover-prob", "0.5"})).out);
  }

  TEST_CASE("printed values agree with the library")
  {
    PushBetaParams const p(3, 2, 4, 0.6);
    double const         q = std::stod(call(with({"quantile", "--p", "0.3"})).out);
    CHECK(q == doctest::Approx(quantile(0.3, p)).epsilon(1e-9));
    double const c = std::stod(call(with({"cdf", "--x", cli::format_number(q)})).out);
    CHECK(c == doctest::Approx(0.3).epsilon(1e-8));
    double const lp = std::stod(call(with({"pdf", "--x", "0.3", "--log"})).out);
    CHECK(lp == doctest::Approx(pdf(0.3, p, true)).epsilon(1e-9));
  }

  TEST_CASE("sampling is reproducible")
  {
    Outcome const a = call(with({"sample", "--n", "25", "--seed", "9"}));
    Outcome const b = call(with({"sample", "--n", "25", "--seed", "9"}));
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out).size() == 25);
  }

  TEST_CASE("posterior as json")
  {
    Outcome const r = call({"--format", "json", "posterior", "--shape1", "1", "--shape2", "1", "--intensity", "0",
                            "--proportion", "0.3333333333333333", "--right", "--n", "340", "--sum", "92"});
    REQUIRE(r.code == 0);
    json const j = json::parse(r.out);
    CHECK(j["shape2"].get<double>() == 93.0);
    CHECK(j["intensity"].get<double>() == 248.0);
    CHECK(j["right"].get<bool>());
    CHECK(j["mean"].get<double>() == doctest::Approx(0.1856468).epsilon(1e-6));
    CHECK(j["sd"].get<double>() == doctest::Approx(0.0701663).epsilon(1e-5));
  }

  TEST_CASE("shape report as json")
  {
    Outcome const r = call(with({"shape", "--format", "json"}));
    REQUIRE(r.code == 0);
    json const j = json::parse(r.out);
    CHECK(j["classification"] == "quasi-concave");
    CHECK(j["mode"].get<double>() == doctest::Approx(0.4100063).epsilon(1e-6));
  }

  TEST_CASE("density curve csv")
  {
    Outcome const r = call({"density-curve", "--shape1", "2", "--shape2", "2", "--intensity", "0,1,5", "--proportion",
                            "0.5", "--points", "11"});
    REQUIRE(r.code == 0);
    auto const rows = lines(r.out);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0] == "x,gamma_0,gamma_1,gamma_5");
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
      CHECK(std::count(rows[i].begin(), rows[i].end(), ',') == 3);
    }
  }

  TEST_CASE("consistency csv")
  {
    Outcome const r = call({"consistency", "--theta0", "0.5", "--phi0", "0.5", "--proportion", "0.5", "--n-schedule",
                            "10,100,1000", "--replications", "3", "--seed", "4"});
    REQUIRE(r.code == 0);
    auto const rows = lines(r.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == "replication,n,post_mean,post_sd,theta_star,abs_err");
  }

  TEST_CASE("kl at the minimiser")
  {
    Outcome const r =
        call({"kl", "--theta0", "0.6", "--phi0", "0.5", "--phi", "0.4", "--theta", "0.75", "--n", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("theta_star 0.75") != std::string::npos);
    Outcome const bad = call({"kl", "--theta0", "0.6", "--phi0", "0.5", "--phi", "0", "--theta", "0.5"});
    CHECK(bad.code != cli::kExitOk);
  }

  TEST_CASE("fit reads data from stdin")
  {
    auto const  data = sample(300, PushBetaParams(2, 3, 0, 0), 4);
    std::string text;
    for (double x : data)
    {
      text += cli::format_number(x) + "\n";
    }
    Outcome const r = call({"fit", "--input", "-", "--fix-phi", "0.5"}, text);
    REQUIRE(r.code == 0);
    json const j = json::parse(r.out);
    CHECK(j["converged"].get<bool>());
    CHECK(j["proportion"].get<double>() == 0.5);
    CHECK(j["n"].get<int>() == 300);
    CHECK(std::isfinite(j["log_likelihood"].get<double>()));
  }

  TEST_CASE("exit codes")
  {
    CHECK(call({}).code == cli::kExitUsage);
    CHECK(call({"bogus"}).code == cli::kExitUsage);
    CHECK(call({"pdf", "--x", "0.5"}).code == cli::kExitUsage);
    CHECK(call(with({"pdf", "--x", "0.5", "--shape1", "-1"}, {})).code == cli::kExitUsage);
    CHECK(call({"posterior", "--shape1", "1", "--shape2", "1", "--intensity", "0", "--proportion", "0.5", "--n", "3",
                "--sum", "4"})
              .code == cli::kExitUsage);
    CHECK(call({"fit", "--input", "-"}, "0.1\nnot-a-number\n").code == cli::kExitUsage);
  }

  TEST_CASE("help lists the subcommands and aliases")
  {
    Outcome const r = call({"--help"});
    CHECK(r.code == cli::kExitOk);
    for (char const *name : {"pdf", "cdf", "quantile", "sample", "moments", "scale", "shape", "hdr", "posterior", "kl",
                             "consistency", "fit", "density-curve", "dpushbeta", "HDR.pushbeta"})
    {
      CAPTURE(name);
      CHECK(r.out.find(name) != std::string::npos);
    }
  }

  TEST_CASE("number formatting")
  {
    CHECK(cli::format_number(1.5) == "1.5");
    CHECK(cli::format_number(1.0 / 3.0) == "0.3333333333");
    CHECK(cli::format_number(INFINITY) == "inf");
  }
}
