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
#include "pushbeta/fitting.hpp"
#include "pushbeta/inference.hpp"
#include "pushbeta/shape.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace pushbeta::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format
{
  Plain,
  Json,
  Csv
};

Format parse_format(std::string const &name, Format fallback)
{
  if (name.empty())
  {
    return fallback;
  }
  if (name == "plain")
  {
    return Format::Plain;
  }
  if (name == "json")
  {
    return Format::Json;
  }
  return Format::Csv;
}

double parse_number(std::string const &text)
{
  std::size_t used = 0;
  double      v    = 0.0;
  try
  {
    v = std::stod(text, &used);
  }
  catch (std::exception const &)
  {
    used = 0;
  }
  if (used == 0 || used != text.size())
  {
    throw std::invalid_argument("invalid number '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string const &text)
{
  std::vector<double> out;
  std::stringstream   ss(text);
  std::string         item;
  while (std::getline(ss, item, ','))
  {
    out.push_back(parse_number(item));
  }
  if (out.empty())
  {
    throw std::invalid_argument("empty number list");
  }
  return out;
}

Json number(double v)
{
  if (std::isfinite(v))
  {
    return std::stod(format_number(v));
  }
  return format_number(v);
}

Json numbers(std::vector<double> const &vs)
{
  Json a = Json::array();
  for (double v : vs)
  {
    a.push_back(number(v));
  }
  return a;
}

std::string plain_scalar(Json const &v)
{
  if (v.is_number_float())
  {
    return format_number(v.get<double>());
  }
  if (v.is_string())
  {
    return v.get<std::string>();
  }
  return v.dump();
}

std::string joined(Json const &array, char sep)
{
  std::string s;
  for (std::size_t i = 0; i < array.size(); ++i)
  {
    if (i > 0)
    {
      s += sep;
    }
    s += array[i].is_array() ? joined(array[i], ' ') : plain_scalar(array[i]);
  }
  return s;
}

// A flat key/value record.
void emit_record(std::ostream &out, Format format, Json const &record)
{
  switch (format)
  {
  case Format::Json:
    out << record.dump(2) << '\n';
    return;
  case Format::Csv:
  {
    std::string header, row;
    for (auto const &[key, value] : record.items())
    {
      header += (header.empty() ? "" : ",") + key;
      row += (row.empty() ? "" : ",") + (value.is_array() ? joined(value, ';') : plain_scalar(value));
    }
    out << header << '\n' << row << '\n';
    return;
  }
  case Format::Plain:
    for (auto const &[key, value] : record.items())
    {
      if (value.is_array() && !value.empty() && value[0].is_array())
      {
        for (auto const &inner : value)
        {
          out << key << ' ' << joined(inner, ' ') << '\n';
        }
      }
      else
      {
        out << key << ' ' << (value.is_array() ? joined(value, ' ') : plain_scalar(value)) << '\n';
      }
    }
    return;
  }
}

struct Table
{
  std::vector<std::string>         columns;
  std::vector<std::vector<double>> rows;
  // First column shown in plain output; earlier columns echo inputs.
  std::size_t plain_from = 0;
};

void emit_table(std::ostream &out, Format format, Table const &t, Json meta = Json::object())
{
  switch (format)
  {
  case Format::Json:
    for (std::size_t c = 0; c < t.columns.size(); ++c)
    {
      Json col = Json::array();
      for (auto const &row : t.rows)
      {
        col.push_back(number(row[c]));
      }
      meta[t.columns[c]] = col;
    }
    out << meta.dump(2) << '\n';
    return;
  case Format::Csv:
    for (std::size_t c = 0; c < t.columns.size(); ++c)
    {
      out << (c ? "," : "") << t.columns[c];
    }
    out << '\n';
    for (auto const &row : t.rows)
    {
      for (std::size_t c = 0; c < row.size(); ++c)
      {
        out << (c ? "," : "") << format_number(row[c]);
      }
      out << '\n';
    }
    return;
  case Format::Plain:
    for (auto const &row : t.rows)
    {
      for (std::size_t c = t.plain_from; c < row.size(); ++c)
      {
        out << (c > t.plain_from ? " " : "") << format_number(row[c]);
      }
      out << '\n';
    }
    return;
  }
}

Json params_json(PushBetaParams const &p)
{
  Json j;
  j["shape1"]     = number(p.alpha());
  j["shape2"]     = number(p.beta());
  j["intensity"]  = number(p.gamma());
  j["proportion"] = number(p.phi());
  j["right"]      = p.is_right();
  return j;
}

// Parameter flags shared by most subcommands.
struct ParamFlags
{
  double      shape1     = 1.0;
  double      shape2     = 1.0;
  std::string intensity  = "0";
  double      proportion = 0.0;
  bool        right      = false;

  void add(CLI::App *app, bool required)
  {
    app->add_option("--shape1", shape1, "First shape parameter alpha > 0")->required(required);
    app->add_option("--shape2", shape2, "Second shape parameter beta > 0")->required(required);
    app->add_option("--intensity", intensity, "Push intensity gamma >= 0")->required(required);
    app->add_option("--proportion", proportion, "Push proportion phi in [0, 1]")->required(required);
    app->add_flag("--right", right, "Right push (1 - phi + x phi)^gamma; left is the default");
  }

  PushBetaParams params() const
  {
    return {shape1, shape2, parse_number(intensity), proportion,
            right ? Direction::Right : Direction::Left};
  }
};

struct QuadratureFlags
{
  std::string method  = "auto";
  std::size_t intvals = 1'000'000;

  void add(CLI::App *app)
  {
    app->add_option("--method", method, "Integration method: auto, adaptive or midpoint")
      ->check(CLI::IsMember({"auto", "adaptive", "midpoint"}));
    app->add_option("--intvals", intvals, "Node count for the quantile-midpoint rule")
      ->check(CLI::PositiveNumber);
  }

  quadrature::QuadratureConfig config() const
  {
    quadrature::QuadratureConfig c;
    c.node_count = intvals;
    c.mode       = method == "adaptive"   ? quadrature::Mode::Adaptive
                   : method == "midpoint" ? quadrature::Mode::QuantileMidpoint
                                          : quadrature::Mode::AutoFallback;
    return c;
  }
};

inference::ModelVariant variant_for(bool right)
{
  return right ? inference::ModelVariant::AbsenceConjunction
               : inference::ModelVariant::PrimaryConjunction;
}

std::vector<double> read_data(std::istream &in)
{
  std::vector<double> data;
  std::string         token;
  while (in >> token)
  {
    data.push_back(parse_number(token));
  }
  if (data.empty())
  {
    throw std::invalid_argument("no data values supplied");
  }
  return data;
}

}  // namespace

std::string format_number(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int run(int argc, char const *const *argv, std::istream &in, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Pushed beta distribution: probability functions, shape, inference and fitting"};
  app.name("pushbeta");
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
    "Aliases: dpushbeta=pdf, ppushbeta=cdf, qpushbeta=quantile, rpushbeta=sample,\n"
    "moments.dpushbeta=moments, scale.pushbeta=scale, HDR.pushbeta=hdr.\n"
    "Exit status: 0 success, 1 computational failure, 2 usage or validation error.");

  std::string format_name;
  app.add_option("--format", format_name, "Output format: plain, json or csv")
    ->check(CLI::IsMember({"plain", "json", "csv"}));

  ParamFlags      pf;
  QuadratureFlags qf;
  bool            log_scale  = false;
  bool            lower_tail = true;

  // pdf
  std::string x_list;
  auto       *pdf_cmd = app.add_subcommand("pdf", "Density at x");
  pdf_cmd->alias("dpushbeta");
  pf.add(pdf_cmd, true);
  qf.add(pdf_cmd);
  pdf_cmd->add_option("--x", x_list, "Comma-separated points in [0, 1]")->required();
  pdf_cmd->add_flag("--log", log_scale, "Return the log density");

  // cdf
  auto *cdf_cmd = app.add_subcommand("cdf", "Distribution function at x");
  cdf_cmd->alias("ppushbeta");
  pf.add(cdf_cmd, true);
  qf.add(cdf_cmd);
  cdf_cmd->add_option("--x", x_list, "Comma-separated points in [0, 1]")->required();
  cdf_cmd->add_flag("--lower-tail,!--upper-tail", lower_tail, "P(X <= x) (default) or P(X > x)");
  cdf_cmd->add_flag("--log", log_scale, "Return the log probability");

  // quantile
  std::string p_list;
  auto       *q_cmd = app.add_subcommand("quantile", "Quantile function");
  q_cmd->alias("qpushbeta");
  pf.add(q_cmd, true);
  qf.add(q_cmd);
  q_cmd->add_option("--p", p_list, "Comma-separated probabilities")->required();
  q_cmd->add_flag("--lower-tail,!--upper-tail", lower_tail, "p is a lower (default) or upper tail");
  q_cmd->add_flag("--log", log_scale, "p is given on the log scale");

  // sample
  std::size_t   sample_n = 0;
  std::uint64_t seed     = 1;
  auto         *r_cmd    = app.add_subcommand("sample", "Random draws by inversion");
  r_cmd->alias("rpushbeta");
  pf.add(r_cmd, true);
  qf.add(r_cmd);
  r_cmd->add_option("--n", sample_n, "Number of draws")->required();
  r_cmd->add_option("--seed", seed, "Generator seed");

  // moments
  bool  include_sd = false, include_logs = false;
  auto *m_cmd      = app.add_subcommand("moments", "Mean and variance");
  m_cmd->alias("moments.dpushbeta");
  pf.add(m_cmd, true);
  qf.add(m_cmd);
  m_cmd->add_flag("--include-sd", include_sd, "Also report the standard deviation");
  m_cmd->add_flag("--expected-logs", include_logs,
                  "Also report E[log X], E[log(1 - X)], E[log push] and entropy");

  // scale
  double upper     = 1.0;
  bool   scale_log = true;
  auto  *s_cmd     = app.add_subcommand("scale", "Normalising integral");
  s_cmd->alias("scale.pushbeta");
  pf.add(s_cmd, true);
  qf.add(s_cmd);
  s_cmd->add_option("--upper", upper, "Upper integration limit in [0, 1]");
  s_cmd->add_flag("--log,!--no-log", scale_log, "Log scale (default) or linear scale");

  // shape
  auto *shape_cmd = app.add_subcommand("shape", "Shape classification, critical points and mode");
  pf.add(shape_cmd, true);

  // hdr
  double cover_prob = 0.95;
  auto  *hdr_cmd    = app.add_subcommand("hdr", "Highest density region");
  hdr_cmd->alias("HDR.pushbeta");
  pf.add(hdr_cmd, true);
  qf.add(hdr_cmd);
  hdr_cmd->add_option("--cover-prob", cover_prob, "Coverage probability in (0, 1)")->required();

  // posterior
  std::uint64_t trials = 0, successes = 0;
  auto         *post_cmd = app.add_subcommand(
    "posterior", "Conjugate update; --right selects the absence-conjunction model");
  pf.add(post_cmd, true);
  post_cmd->add_option("--n", trials, "Number of trials")->required();
  post_cmd->add_option("--sum", successes, "Number of observed ones")->required();

  // kl
  double      theta0 = 0.5, phi0 = 0.5, phi = 0.5;
  std::string theta_list;
  std::uint64_t kl_n = 1;
  auto *kl_cmd = app.add_subcommand("kl", "KL divergence from the true sampling distribution");
  kl_cmd->add_option("--theta0", theta0, "True theta")->required();
  kl_cmd->add_option("--phi0", phi0, "True phi")->required();
  kl_cmd->add_option("--phi", phi, "Analyst phi")->required();
  kl_cmd->add_option("--theta", theta_list, "Comma-separated theta values to evaluate");
  kl_cmd->add_option("--n", kl_n, "Number of trials");
  kl_cmd->add_flag("--right", pf.right, "Absence-conjunction model");

  // consistency
  std::string   schedule = "10,100,1000,10000";
  std::uint32_t replications = 20;
  auto *cons_cmd = app.add_subcommand("consistency", "Posterior trajectory under simulated data");
  pf.add(cons_cmd, false);
  cons_cmd->get_option("--proportion")->required()->description("Analyst phi");
  cons_cmd->add_option("--theta0", theta0, "True theta")->required();
  cons_cmd->add_option("--phi0", phi0, "True phi")->required();
  cons_cmd->add_option("--n-schedule", schedule, "Comma-separated increasing sample sizes");
  cons_cmd->add_option("--replications", replications, "Number of replications");
  cons_cmd->add_option("--seed", seed, "Base seed");

  // fit
  std::string           input = "-";
  std::optional<double> fix_phi;
  fitting::FitConfig    fit_config;
  auto                 *fit_cmd = app.add_subcommand("fit", "Maximum likelihood fit to data");
  pf.add(fit_cmd, false);
  fit_cmd->add_option("--input", input, "Data file, one value per line; - reads standard input");
  fit_cmd->add_option("--fix-phi", fix_phi, "Hold phi fixed at this value");
  fit_cmd->add_option("--max-iterations", fit_config.max_iterations, "Iteration limit");
  fit_cmd->add_option("--tolerance", fit_config.gradient_tolerance, "Gradient norm tolerance");

  // density-curve
  std::size_t points = 401;
  auto *curve_cmd = app.add_subcommand("density-curve", "Density on a grid, one column per intensity");
  pf.add(curve_cmd, true);
  qf.add(curve_cmd);
  curve_cmd->get_option("--intensity")->description("Comma-separated push intensities");
  curve_cmd->add_option("--points", points, "Grid points including both endpoints")
    ->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}));
  curve_cmd->add_flag("--log", log_scale, "Log density");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::CallForHelp const &e)
  {
    return app.exit(e, out, err);
  }
  catch (CLI::CallForAllHelp const &e)
  {
    return app.exit(e, out, err);
  }
  catch (CLI::ParseError const &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App *cmd = app.get_subcommands().front();
  try
  {
    if (cmd == pdf_cmd || cmd == cdf_cmd || cmd == q_cmd)
    {
      PushBeta const            dist(pf.params(), qf.config());
      bool const                is_q  = cmd == q_cmd;
      std::vector<double> const in_v  = parse_list(is_q ? p_list : x_list);
      std::string const         label = cmd == pdf_cmd ? "pdf" : cmd == cdf_cmd ? "cdf" : "quantile";
      Table                     t{{is_q ? "p" : "x", label}, {}, 1};
      for (double v : in_v)
      {
        double const r = cmd == pdf_cmd   ? dist.pdf(v, log_scale)
                         : cmd == cdf_cmd ? dist.cdf(v, lower_tail, log_scale)
                                          : dist.quantile(v, lower_tail, log_scale);
        t.rows.push_back({v, r});
      }
      Json meta;
      meta["params"] = params_json(dist.params());
      emit_table(out, parse_format(format_name, Format::Plain), t, meta);
    }
    else if (cmd == r_cmd)
    {
      PushBeta const            dist(pf.params(), qf.config());
      std::vector<double> const draws = dist.sample(sample_n, seed);
      Table                     t{{"value"}, {}, 0};
      for (double v : draws)
      {
        t.rows.push_back({v});
      }
      Json meta;
      meta["params"]    = params_json(dist.params());
      meta["generator"] = std::string(kGeneratorName);
      meta["seed"]      = seed;
      emit_table(out, parse_format(format_name, Format::Plain), t, meta);
    }
    else if (cmd == m_cmd)
    {
      PushBeta const     dist(pf.params(), qf.config());
      MeanVariance const mv = dist.mean_variance();
      if (mv.clamped)
      {
        err << "warning: negative variance from round-off was clamped to zero\n";
      }
      Json r;
      r["mean"]     = number(mv.mean);
      r["variance"] = number(mv.variance);
      if (include_sd)
      {
        r["sd"] = number(std::sqrt(mv.variance));
      }
      if (include_logs)
      {
        ExpectedLogs const e = dist.expected_logs();
        r["e_log_x"]         = number(e.e_log_x);
        r["e_log_1mx"]       = number(e.e_log_1mx);
        r["e_log_push"]      = number(e.e_log_push);
        r["entropy"]         = number(-e.e_log_x);
      }
      emit_record(out, parse_format(format_name, Format::Plain), r);
    }
    else if (cmd == s_cmd)
    {
      double const h = quadrature::log_integral({upper, pf.params()}, qf.config());
      Json         r;
      r[scale_log ? "log_integral" : "integral"] = number(scale_log ? h : std::exp(h));
      emit_record(out, parse_format(format_name, Format::Plain), r);
    }
    else if (cmd == shape_cmd)
    {
      PushBetaParams const      p   = pf.params();
      shape::ShapeReport const  rep = shape::classify_shape(p);
      std::optional<double> const m = shape::mode(p);
      Json                      r;
      r["classification"] = std::string(shape::to_string(rep.classification));
      Json xs = Json::array(), kinds = Json::array();
      for (auto const &c : rep.interior_critical_points)
      {
        xs.push_back(number(c.x));
        kinds.push_back(std::string(shape::to_string(c.kind)));
      }
      r["critical_points"] = xs;
      r["critical_kinds"]  = kinds;
      r["quadratic"] = numbers({rep.quadratic_coeffs.c0, rep.quadratic_coeffs.c1, rep.quadratic_coeffs.c2});
      r["mode"]      = m ? number(*m) : Json("none");
      double const a1 = p.alpha() - 1.0, b1 = p.beta() - 1.0;
      if (a1 * b1 < 0.0 && p.phi() > 0.0 && p.phi() < 1.0)
      {
        // Thresholds are defined with the shape exponents in Left orientation.
        PushBetaParams const q = p.is_right() ? reflect(p) : p;
        if (q.alpha() > 1.0 && q.beta() < 1.0)
        {
          shape::GammaThresholds const g = shape::gamma_thresholds(q.alpha(), q.beta(), q.phi());
          r["gamma_thresholds"]           = numbers({g.gamma_low, g.gamma_high});
        }
      }
      emit_record(out, parse_format(format_name, Format::Plain), r);
    }
    else if (cmd == hdr_cmd)
    {
      shape::HdrRegion const h = shape::hdr(cover_prob, pf.params(), qf.config());
      Json                   r;
      r["cover_prob"]        = number(cover_prob);
      r["probability"]       = number(h.probability);
      r["log_density_level"] = number(h.log_density_level);
      Json iv                = Json::array();
      for (auto const &i : h.intervals)
      {
        iv.push_back(numbers({i.lo, i.hi}));
      }
      r["interval"] = iv;
      emit_record(out, parse_format(format_name, Format::Plain), r);
    }
    else if (cmd == post_cmd)
    {
      PushBetaParams const post =
        inference::posterior(pf.params(), inference::BinarySample(trials, successes), variant_for(pf.right));
      MeanVariance const mv = mean_variance(post);
      Json               r  = params_json(post);
      r["mean"]             = number(mv.mean);
      r["sd"]               = number(std::sqrt(mv.variance));
      emit_record(out, parse_format(format_name, Format::Plain), r);
    }
    else if (cmd == kl_cmd)
    {
      auto const v = variant_for(pf.right);
      Json       r;
      r["theta_star"] = number(inference::kl_minimizer(theta0, phi0, phi, v));
      if (!theta_list.empty())
      {
        std::vector<double> const thetas = parse_list(theta_list);
        std::vector<double>       kl;
        for (double th : thetas)
        {
          kl.push_back(inference::kl_divergence(theta0, phi0, th, phi, kl_n, v));
        }
        r["theta"]      = numbers(thetas);
        r["divergence"] = numbers(kl);
      }
      emit_record(out, parse_format(format_name, Format::Plain), r);
    }
    else if (cmd == cons_cmd)
    {
      inference::ConsistencySetup setup{theta0, phi0, pf.proportion, variant_for(pf.right),
                                        pf.params(), {}, replications, seed};
      for (double v : parse_list(schedule))
      {
        if (!(v >= 1.0) || v != std::floor(v))
        {
          throw std::invalid_argument("sample sizes must be positive integers");
        }
        setup.n_schedule.push_back(static_cast<std::uint64_t>(v));
      }
      Table t{{"replication", "n", "post_mean", "post_sd", "theta_star", "abs_err"}, {}, 0};
      for (auto const &rec : inference::simulate_consistency(setup))
      {
        t.rows.push_back({static_cast<double>(rec.replication), static_cast<double>(rec.n),
                          rec.post_mean, rec.post_sd, rec.theta_star, rec.abs_err});
      }
      emit_table(out, parse_format(format_name, Format::Csv), t);
    }
    else if (cmd == fit_cmd)
    {
      std::vector<double> data;
      if (input == "-")
      {
        data = read_data(in);
      }
      else
      {
        std::ifstream file(input);
        if (!file)
        {
          throw std::invalid_argument("cannot open " + input);
        }
        data = read_data(file);
      }
      fit_config.fix_phi         = fix_phi;
      Direction const      dir   = pf.right ? Direction::Right : Direction::Left;
      bool const           given = fit_cmd->count("--shape1") > 0 || fit_cmd->count("--shape2") > 0;
      double const         phi_init = fix_phi.value_or(fit_cmd->count("--proportion") ? pf.proportion : 0.5);
      PushBetaParams       init     = fitting::default_init(data, dir, phi_init);
      if (given)
      {
        double const g = fit_cmd->count("--intensity") ? parse_number(pf.intensity) : 0.5;
        init           = PushBetaParams(pf.shape1, pf.shape2, g, phi_init, dir);
      }
      fitting::FitResult const fit = fitting::fit_mle(data, init, fit_config);
      Json r                       = params_json(fit.params);
      r["log_likelihood"]          = number(fit.log_likelihood);
      r["converged"]               = fit.converged;
      r["iterations"]              = fit.iterations;
      r["gradient_norm"]           = number(fit.gradient_norm);
      r["n"]                       = data.size();
      emit_record(out, parse_format(format_name, Format::Json), r);
    }
    else if (cmd == curve_cmd)
    {
      std::vector<double> const gammas = parse_list(pf.intensity);
      Table                     t;
      t.columns.push_back("x");
      std::vector<PushBeta> dists;
      for (double g : gammas)
      {
        t.columns.push_back("gamma_" + format_number(g));
        dists.emplace_back(PushBetaParams(pf.shape1, pf.shape2, g, pf.proportion,
                                          pf.right ? Direction::Right : Direction::Left),
                           qf.config());
      }
      for (std::size_t i = 0; i < points; ++i)
      {
        double const        x = static_cast<double>(i) / static_cast<double>(points - 1);
        std::vector<double> row{x};
        for (auto const &d : dists)
        {
          row.push_back(d.pdf(x, log_scale));
        }
        t.rows.push_back(std::move(row));
      }
      emit_table(out, parse_format(format_name, Format::Csv), t);
    }
  }
  catch (quadrature::QuadratureError const &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  catch (std::logic_error const &e)
  {
    // invalid_argument and domain_error: bad input
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  catch (std::exception const &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

int run(std::vector<std::string> const &args, std::istream &in, std::ostream &out, std::ostream &err)
{
  std::vector<char const *> argv{"pushbeta"};
  for (auto const &a : args)
  {
    argv.push_back(a.c_str());
  }
  return run(static_cast<int>(argv.size()), argv.data(), in, out, err);
}

}  // namespace pushbeta::cli
