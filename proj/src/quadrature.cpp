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

#include "pushbeta/quadrature.hpp"

#include "pushbeta/shape.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pushbeta::quadrature {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxPanels = 6000;
constexpr double kMinPanelWidth = 1e-15;
// Pieces below this fraction of the total are re-integrated on their own.
constexpr double kRefineFraction = 1e-3;

using GaussKronrod = boost::math::quadrature::gauss_kronrod<double, 21>;

// Coefficient times log value, with 0 * (+-inf) = 0.
double scaled_log(double coefficient, double log_value)
{
  return coefficient == 0.0 ? 0.0 : coefficient * log_value;
}

// Kernel terms split by whether they carry a power of x, of (1 - x), or
// neither. The push factor degenerates to a pure power when phi == 1.
struct KernelTerms
{
  double low;   // multiples of log x
  double high;  // multiples of log(1 - x)
  double rest;
};

KernelTerms kernel_terms(double x, double y, double log_x, double log_y, PushBetaParams const &p)
{
  KernelTerms t{scaled_log(p.alpha() - 1.0, log_x), scaled_log(p.beta() - 1.0, log_y), 0.0};
  double const g   = p.gamma();
  double const phi = p.phi();
  if (g == 0.0 || phi == 0.0)
  {
    return t;
  }
  if (!p.is_right())
  {
    // 1 - x phi
    if (phi == 1.0)
    {
      t.high += g * log_y;
    }
    else
    {
      t.rest += g * (x <= 0.5 ? std::log1p(-x * phi) : std::log((1.0 - phi) + phi * y));
    }
  }
  else
  {
    // 1 - phi + x phi = 1 - y phi
    if (phi == 1.0)
    {
      t.low += g * log_x;
    }
    else
    {
      t.rest += g * (y <= 0.5 ? std::log1p(-y * phi) : std::log((1.0 - phi) + phi * x));
    }
  }
  return t;
}

double sum_terms(KernelTerms const &t)
{
  // The only way to meet +inf and -inf together is at an endpoint, which
  // callers resolve before getting here.
  return t.low + t.high + t.rest;
}

// Exponent of x near 0 and of (1 - x) near 1.
double low_exponent(PushBetaParams const &p)
{
  double e = p.alpha() - 1.0;
  if (p.is_right() && p.phi() == 1.0)
  {
    e += p.gamma();
  }
  return e;
}

double high_exponent(PushBetaParams const &p)
{
  double e = p.beta() - 1.0;
  if (!p.is_right() && p.phi() == 1.0)
  {
    e += p.gamma();
  }
  return e;
}

double endpoint_log_kernel(PushBetaParams const &p, bool at_zero)
{
  double const e = at_zero ? low_exponent(p) : high_exponent(p);
  if (e < 0.0)
  {
    return kInf;
  }
  if (e > 0.0)
  {
    return -kInf;
  }
  // Remaining factor evaluated at the endpoint.
  double const x = at_zero ? 0.0 : 1.0;
  double const y = 1.0 - x;
  KernelTerms  t = kernel_terms(x, y, at_zero ? 0.0 : std::log(x), at_zero ? std::log(y) : 0.0, p);
  return at_zero ? t.high + t.rest : t.low + t.rest;
}

// A segment of [0, 1] with an optional power substitution that removes an
// integrable endpoint singularity:
//   Low:  x     = length * t^m, t in [0, 1]
//   High: 1 - x = length * t^m, t in [0, 1]
// with m = 1 / (e + 1) for endpoint exponent e, which makes the mapped
// integrand bounded.
struct Segment
{
  enum class Kind
  {
    Linear,
    Low,
    High
  };
  Kind   kind = Kind::Linear;
  double length = 1.0;
  double log_length = 0.0;
  double power = 1.0;  // m
  double log_jacobian = 0.0;
  double t_power = 0.0;  // residual power of t left by the substitution

  double to_x(double t) const
  {
    switch (kind)
    {
    case Kind::Low: return length * std::pow(t, power);
    case Kind::High: return 1.0 - length * std::pow(t, power);
    default: return t;
    }
  }

  double to_t(double x) const
  {
    switch (kind)
    {
    case Kind::Low: return x <= 0.0 ? 0.0 : std::min(1.0, std::exp((std::log(x) - log_length) / power));
    case Kind::High:
      return x >= 1.0 ? 0.0 : std::min(1.0, std::exp((std::log1p(-x) - log_length) / power));
    default: return x;
    }
  }
};

// Integrand of the shifted kernel in segment coordinates.
class ShiftedKernel
{
public:
  ShiftedKernel(PushBetaParams const &p, double shift)
    : p_(p)
    , shift_(shift)
  {}

  // Returns log of the integrand at t together with x(t) and 1 - x(t).
  double log_value(Segment const &s, double t, double &x_out, double &y_out) const
  {
    double x, y, log_x, log_y;
    switch (s.kind)
    {
    case Segment::Kind::Low:
      log_x = s.log_length + s.power * std::log(t);
      x     = std::exp(log_x);
      y     = 1.0 - x;
      log_y = std::log1p(-x);
      {
        KernelTerms k = kernel_terms(x, y, log_x, log_y, p_);
        x_out         = x;
        y_out         = y;
        return s.log_jacobian + s.t_power * std::log(t) + k.high + k.rest - shift_;
      }
    case Segment::Kind::High:
      log_y = s.log_length + s.power * std::log(t);
      y     = std::exp(log_y);
      x     = 1.0 - y;
      log_x = std::log1p(-y);
      {
        KernelTerms k = kernel_terms(x, y, log_x, log_y, p_);
        x_out         = x;
        y_out         = y;
        return s.log_jacobian + s.t_power * std::log(t) + k.low + k.rest - shift_;
      }
    default:
      x     = t;
      y     = 1.0 - t;
      x_out = x;
      y_out = y;
      return sum_terms(kernel_terms(x, y, std::log(x), std::log1p(-x), p_)) - shift_;
    }
  }

  double value(Segment const &s, double t) const
  {
    double x, y;
    return std::exp(log_value(s, t, x, y));
  }

private:
  PushBetaParams p_;
  double         shift_;
};

struct PanelEstimate
{
  double value;
  double error;
  double l1;
};

template <class F>
PanelEstimate gauss_kronrod(F const &f, double lo, double hi)
{
  // Depth zero gives a single 21-point pass. The value and L1 norm come back
  // scaled to [lo, hi] but the error estimate is left on [-1, 1].
  double       error = 0.0;
  double       l1    = 0.0;
  double const value = GaussKronrod::integrate(f, lo, hi, 0, 0.0, &error, &l1);
  return {value, error * 0.5 * (hi - lo), l1};
}

struct WorkPanel
{
  std::size_t segment;
  double      t_lo;
  double      t_hi;
  double      value;
  double      error;
  double      l1;
};

struct AdaptiveOutcome
{
  std::vector<WorkPanel> panels;
  double                 value = 0.0;
  double                 error = 0.0;
  double                 l1 = 0.0;
};

// Globally adaptive subdivision: repeatedly bisect the panel with the
// largest error estimate until the summed error is below rel_tol times the
// reference magnitude (|value|, or the L1 norm when use_l1 is set).
template <class F>
AdaptiveOutcome adaptive_integrate(std::vector<Segment> const &segments,
                                   std::vector<WorkPanel> initial, F const &integrand,
                                   double rel_tol, bool use_l1)
{
  auto evaluate = [&](WorkPanel &w) {
    Segment const &s  = segments[w.segment];
    auto           fn = [&](double t) { return integrand(s, t); };
    PanelEstimate  e  = gauss_kronrod(fn, w.t_lo, w.t_hi);
    w.value           = e.value;
    w.error           = e.error;
    w.l1              = e.l1;
  };
  auto less_error = [](WorkPanel const &a, WorkPanel const &b) { return a.error < b.error; };

  std::vector<WorkPanel> heap = std::move(initial);
  std::vector<WorkPanel> frozen;
  for (auto &w : heap)
  {
    evaluate(w);
  }
  std::make_heap(heap.begin(), heap.end(), less_error);

  auto totals = [&](double &value, double &error, double &l1) {
    value = error = l1 = 0.0;
    for (auto const *v : {&heap, &frozen})
    {
      for (auto const &w : *v)
      {
        value += w.value;
        error += w.error;
        l1 += w.l1;
      }
    }
  };

  double value, error, l1;
  totals(value, error, l1);
  std::size_t iterations = 0;
  while (!heap.empty() && heap.size() + frozen.size() < kMaxPanels)
  {
    double const reference = use_l1 ? l1 : std::fabs(value);
    if (!(error > rel_tol * reference) && std::isfinite(value))
    {
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), less_error);
    WorkPanel worst = heap.back();
    heap.pop_back();
    if (worst.t_hi - worst.t_lo <= kMinPanelWidth * std::max(1.0, std::fabs(worst.t_lo)))
    {
      frozen.push_back(worst);
      continue;
    }
    double const mid = 0.5 * (worst.t_lo + worst.t_hi);
    WorkPanel    a{worst.segment, worst.t_lo, mid, 0, 0, 0};
    WorkPanel    b{worst.segment, mid, worst.t_hi, 0, 0, 0};
    evaluate(a);
    evaluate(b);
    value += a.value + b.value - worst.value;
    error += a.error + b.error - worst.error;
    l1 += a.l1 + b.l1 - worst.l1;
    heap.push_back(a);
    std::push_heap(heap.begin(), heap.end(), less_error);
    heap.push_back(b);
    std::push_heap(heap.begin(), heap.end(), less_error);
    // Running sums drift; refresh them now and then.
    if (++iterations % 256 == 0)
    {
      totals(value, error, l1);
    }
  }

  AdaptiveOutcome out;
  out.panels = std::move(heap);
  out.panels.insert(out.panels.end(), frozen.begin(), frozen.end());
  for (auto const &w : out.panels)
  {
    out.value += w.value;
    out.error += w.error;
    out.l1 += w.l1;
  }
  return out;
}

double log_prefactor(PushBetaParams const &p)
{
  double const a = p.alpha(), b = p.beta(), g = p.gamma();
  if (p.is_right())
  {
    return std::lgamma(a + g) + std::lgamma(b) - std::lgamma(a + b + g);
  }
  return std::lgamma(a) + std::lgamma(b + g) - std::lgamma(a + b + g);
}

std::pair<double, double> midpoint_shapes(PushBetaParams const &p)
{
  if (p.is_right())
  {
    return {p.beta(), p.alpha() + p.gamma()};
  }
  return {p.alpha(), p.beta() + p.gamma()};
}

double push_log_term(double gamma, double q, double phi)
{
  if (gamma == 0.0)
  {
    return 0.0;
  }
  return gamma * log_slope_ratio(q, phi);
}

}  // namespace

void QuadratureConfig::validate() const
{
  if (node_count < 1)
  {
    throw std::invalid_argument("node_count must be at least 1");
  }
}

double log_kernel(double x, PushBetaParams const &params)
{
  if (!(x >= 0.0 && x <= 1.0))
  {
    return -kInf;
  }
  if (x == 0.0 || x == 1.0)
  {
    return endpoint_log_kernel(params, x == 0.0);
  }
  return sum_terms(kernel_terms(x, 1.0 - x, std::log(x), std::log1p(-x), params));
}

double log_slope_ratio(double x, double phi)
{
  if (!(x >= 0.0 && x < 1.0))
  {
    throw std::domain_error("log_slope_ratio requires 0 <= x < 1");
  }
  return std::log1p(-x * phi) - std::log1p(-x);
}

std::vector<double> beta_quantile_nodes(double a, double b, std::size_t m)
{
  if (!(a > 0.0) || !(b > 0.0))
  {
    throw std::invalid_argument("beta quantile nodes need positive shapes");
  }
  if (m < 1)
  {
    throw std::invalid_argument("beta quantile nodes need at least one node");
  }
  double const lowest  = std::numeric_limits<double>::min();
  double const highest = std::nextafter(1.0, 0.0);
  std::vector<double> nodes(m);
  double const two_m = 2.0 * static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    double const p = (2.0 * static_cast<double>(i) + 1.0) / two_m;
    nodes[i]       = std::clamp(boost::math::ibeta_inv(a, b, p), lowest, highest);
  }
  return nodes;
}

std::vector<double> log_weights(std::span<double const> nodes, double r, WeightSide side)
{
  std::vector<double> w(nodes.size());
  double const threshold = 1.0 - r;
  for (std::size_t i = 0; i < nodes.size(); ++i)
  {
    double const q    = nodes[i];
    double const prev = i == 0 ? 0.0 : nodes[i - 1];
    if (side == WeightSide::Left)
    {
      if (q <= r)
      {
        w[i] = 0.0;
      }
      else if (prev <= r)
      {
        w[i] = std::log(r - prev) - std::log(q - prev);
      }
      else
      {
        w[i] = -kInf;
      }
    }
    else
    {
      if (q < threshold)
      {
        w[i] = -kInf;
      }
      else if (prev < threshold)
      {
        w[i] = std::log(q - threshold) - std::log(q - prev);
      }
      else
      {
        w[i] = 0.0;
      }
    }
  }
  return w;
}

double log_sum_exp(std::span<double const> values)
{
  double top = -kInf;
  for (double v : values)
  {
    if (std::isnan(v))
    {
      return v;
    }
    if (v == kInf)
    {
      return kInf;
    }
    top = std::max(top, v);
  }
  if (top == -kInf)
  {
    return -kInf;
  }
  double sum = 0.0;
  for (double v : values)
  {
    sum += std::exp(v - top);
  }
  return top + std::log(sum);
}

double log_integral_midpoint(LogIntegralRequest const &request, std::size_t node_count)
{
  double const r = request.upper_limit;
  if (!(r >= 0.0 && r <= 1.0))
  {
    throw std::invalid_argument("upper limit must lie in [0, 1]");
  }
  if (r == 0.0)
  {
    return -kInf;
  }
  PushBetaParams const &p      = request.params;
  auto const [shape_a, shape_b] = midpoint_shapes(p);
  std::vector<double> nodes    = beta_quantile_nodes(shape_a, shape_b, node_count);
  std::vector<double> terms =
    log_weights(nodes, r, p.is_right() ? WeightSide::Right : WeightSide::Left);
  for (std::size_t i = 0; i < nodes.size(); ++i)
  {
    if (terms[i] != -kInf)
    {
      terms[i] += push_log_term(p.gamma(), nodes[i], p.phi());
    }
  }
  return log_sum_exp(terms) - std::log(static_cast<double>(node_count)) + log_prefactor(p);
}

double log_integral(LogIntegralRequest const &request, QuadratureConfig const &config)
{
  config.validate();
  double const r = request.upper_limit;
  if (!(r >= 0.0 && r <= 1.0))
  {
    throw std::invalid_argument("upper limit must lie in [0, 1]");
  }
  if (r == 0.0)
  {
    return -kInf;
  }
  if (config.mode == Mode::QuantileMidpoint)
  {
    double const h = log_integral_midpoint(request, config.node_count);
    if (std::isnan(h) || h == kInf)
    {
      throw QuadratureError("quantile-midpoint integral is not finite for " +
                            request.params.describe());
    }
    return h;
  }
  LogIntegralTable const table(request.params, config);
  return r == 1.0 ? table.log_total() : table.log_partial(r);
}

// ---------------------------------------------------------------------------
// LogIntegralTable

namespace {

struct AdaptiveLayout
{
  std::vector<Segment>   segments;
  std::vector<WorkPanel> panels;
  double                 shift;
};

// Power m of the endpoint map x = L t^m. For an endpoint exponent e below one
// the integrand in t behaves like t, which also tames logarithmic weights.
double substitution_power(double e)
{
  return e < 1.0 ? 2.0 / (e + 1.0) : 1.0;
}

AdaptiveLayout adaptive_layout(PushBetaParams const &p)
{
  // Interior critical points of the kernel are roots of the slope quadratic.
  auto const [c0, c1, c2] = shape::quadratic_coeffs(p);
  std::vector<double> critical;
  if (c2 != 0.0)
  {
    double const disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc >= 0.0)
    {
      double const s = std::sqrt(disc);
      double const q = -0.5 * (c1 + std::copysign(s, c1));
      if (q != 0.0)
      {
        critical.push_back(q / c2);
        critical.push_back(c0 / q);
      }
      else
      {
        critical.push_back(0.0);
      }
    }
  }
  else if (c1 != 0.0)
  {
    critical.push_back(-c0 / c1);
  }
  std::erase_if(critical, [](double x) { return !(x > 0.0 && x < 1.0); });

  double shift = -kInf;
  for (double x : critical)
  {
    shift = std::max(shift, log_kernel(x, p));
  }
  constexpr int kGrid = 128;
  for (int i = 0; i < kGrid; ++i)
  {
    shift = std::max(shift, log_kernel((i + 0.5) / kGrid, p));
  }

  std::vector<double> breaks;
  for (int i = 0; i <= 16; ++i)
  {
    breaks.push_back(i / 16.0);
  }
  double const a1 = p.alpha() - 1.0, b1 = p.beta() - 1.0, g = p.gamma(), phi = p.phi();
  for (double c : critical)
  {
    breaks.push_back(c);
    double const push = p.is_right() ? 1.0 - phi + c * phi : 1.0 - c * phi;
    double const curvature =
      -a1 / (c * c) - b1 / ((1.0 - c) * (1.0 - c)) - g * phi * phi / (push * push);
    if (curvature < 0.0)
    {
      double const width = 1.0 / std::sqrt(-curvature);
      for (double k : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0})
      {
        breaks.push_back(c - k * width);
        breaks.push_back(c + k * width);
      }
    }
  }
  std::erase_if(breaks, [](double x) { return !(x >= 0.0 && x <= 1.0); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return b - a < 1e-14; }),
               breaks.end());
  if (breaks.back() < 1.0)
  {
    breaks.back() = 1.0;
  }

  AdaptiveLayout layout;
  layout.shift = shift;
  double const e_low  = low_exponent(p);
  double const e_high = high_exponent(p);
  std::size_t const n = breaks.size() - 1;
  for (std::size_t i = 0; i < n; ++i)
  {
    double const lo = breaks[i], hi = breaks[i + 1];
    Segment s;
    if (i == 0)
    {
      s.kind         = Segment::Kind::Low;
      s.length       = hi;
      s.log_length   = std::log(hi);
      s.power        = substitution_power(e_low);
      s.log_jacobian = (e_low + 1.0) * s.log_length + std::log(s.power);
      s.t_power      = s.power * (e_low + 1.0) - 1.0;
      layout.segments.push_back(s);
      layout.panels.push_back({layout.segments.size() - 1, 0.0, 1.0, 0, 0, 0});
    }
    else if (i == n - 1)
    {
      s.kind         = Segment::Kind::High;
      s.length       = 1.0 - lo;
      s.log_length   = std::log1p(-lo);
      s.power        = substitution_power(e_high);
      s.log_jacobian = (e_high + 1.0) * s.log_length + std::log(s.power);
      s.t_power      = s.power * (e_high + 1.0) - 1.0;
      layout.segments.push_back(s);
      layout.panels.push_back({layout.segments.size() - 1, 0.0, 1.0, 0, 0, 0});
    }
    else
    {
      if (layout.segments.empty() || layout.segments.back().kind != Segment::Kind::Linear)
      {
        layout.segments.push_back(Segment{});
      }
      layout.panels.push_back({layout.segments.size() - 1, lo, hi, 0, 0, 0});
    }
  }
  return layout;
}

}  // namespace

LogIntegralTable::LogIntegralTable(PushBetaParams const &params, QuadratureConfig const &config)
  : params_(params)
  , config_(config)
{
  config_.validate();
  switch (config_.mode)
  {
  case Mode::Adaptive:
    if (!build_adaptive())
    {
      throw QuadratureError("adaptive integration failed for " + params_.describe());
    }
    break;
  case Mode::QuantileMidpoint: build_midpoint(config_.node_count); break;
  case Mode::AutoFallback:
    if (!build_adaptive())
    {
      build_midpoint(config_.node_count);
    }
    break;
  }
}

bool LogIntegralTable::build_adaptive()
{
  AdaptiveLayout layout = adaptive_layout(params_);
  ShiftedKernel  kernel(params_, layout.shift);
  auto integrand = [&kernel](Segment const &s, double t) { return kernel.value(s, t); };
  AdaptiveOutcome out =
    adaptive_integrate(layout.segments, std::move(layout.panels), integrand, kAdaptiveRelTol, false);

  double const rel_error = out.value > 0.0 ? out.error / out.value : kInf;
  bool const   healthy   = std::isfinite(out.value) && out.value > 0.0 && std::isfinite(layout.shift) &&
                       rel_error <= kFallbackRelError;
  bool const usable = healthy || !config_.underflow_guard;
  if (!usable)
  {
    return false;
  }

  segments_.clear();
  for (auto const &s : layout.segments)
  {
    segments_.push_back(
      {static_cast<int>(s.kind), s.length, s.log_length, s.power, s.log_jacobian, s.t_power});
  }
  panels_.clear();
  for (auto const &w : out.panels)
  {
    Segment const &s = layout.segments[w.segment];
    double         x_lo, x_hi;
    if (s.kind == Segment::Kind::High)
    {
      x_lo = s.to_x(w.t_hi);
      x_hi = s.to_x(w.t_lo);
    }
    else
    {
      x_lo = s.to_x(w.t_lo);
      x_hi = s.to_x(w.t_hi);
    }
    panels_.push_back({x_lo, x_hi, w.value, static_cast<long>(w.segment), w.t_lo, w.t_hi});
  }
  std::sort(panels_.begin(), panels_.end(), [](Panel const &a, Panel const &b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  accumulate();

  method_    = Mode::Adaptive;
  shift_     = layout.shift;
  total_     = out.value;
  rel_error_ = rel_error;
  log_total_ = shift_ + std::log(total_);
  return true;
}

void LogIntegralTable::build_midpoint(std::size_t node_count)
{
  auto const [shape_a, shape_b] = midpoint_shapes(params_);
  std::vector<double> nodes    = beta_quantile_nodes(shape_a, shape_b, node_count);
  std::size_t const   m        = nodes.size();
  std::vector<double> terms(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    terms[i] = push_log_term(params_.gamma(), nodes[i], params_.phi());
  }
  double const top = *std::max_element(terms.begin(), terms.end());

  panels_.clear();
  panels_.reserve(m);
  node_x_.clear();
  node_x_.reserve(m);
  node_y_.clear();
  node_y_.reserve(m);
  if (!params_.is_right())
  {
    for (std::size_t i = 0; i < m; ++i)
    {
      double const lo = i == 0 ? 0.0 : nodes[i - 1];
      panels_.push_back({lo, nodes[i], std::exp(terms[i] - top), -1, 0.0, 0.0});
      node_x_.push_back(nodes[i]);
      node_y_.push_back(1.0 - nodes[i]);
    }
  }
  else
  {
    // Node y maps to x = 1 - y; its bin (y_prev, y] becomes [1 - y, 1 - y_prev).
    for (std::size_t j = m; j-- > 0;)
    {
      double const prev = j == 0 ? 0.0 : nodes[j - 1];
      panels_.push_back({1.0 - nodes[j], 1.0 - prev, std::exp(terms[j] - top), -1, 0.0, 0.0});
      node_x_.push_back(1.0 - nodes[j]);
      node_y_.push_back(nodes[j]);
    }
  }
  accumulate();

  method_    = Mode::QuantileMidpoint;
  total_     = cumulative_.back();
  shift_     = top + log_prefactor(params_) - std::log(static_cast<double>(m));
  log_total_ = shift_ + std::log(total_);
  rel_error_ = std::numeric_limits<double>::quiet_NaN();
  if (std::isnan(log_total_) || log_total_ == kInf)
  {
    throw QuadratureError("quantile-midpoint integration failed for " + params_.describe());
  }
}

void LogIntegralTable::accumulate()
{
  std::size_t const n = panels_.size();
  cumulative_.assign(n, 0.0);
  suffix_.assign(n, 0.0);
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    running += panels_[i].mass;
    cumulative_[i] = running;
  }
  running = 0.0;
  for (std::size_t i = n; i-- > 0;)
  {
    running += panels_[i].mass;
    suffix_[i] = running;
  }
  if (n > 0)
  {
    total_ = cumulative_.back();
  }
}

std::size_t LogIntegralTable::locate(double x) const
{
  // First panel whose upper end is >= x.
  auto it = std::lower_bound(panels_.begin(), panels_.end(), x,
                             [](Panel const &p, double v) { return p.hi < v; });
  if (it == panels_.end())
  {
    return panels_.size() - 1;
  }
  return static_cast<std::size_t>(it - panels_.begin());
}

double LogIntegralTable::panel_piece(std::size_t index, double lo, double hi) const
{
  Panel const &p = panels_[index];
  lo             = std::max(lo, p.lo);
  hi             = std::min(hi, p.hi);
  if (!(hi > lo))
  {
    return 0.0;
  }
  if (lo == p.lo && hi == p.hi)
  {
    return p.mass;
  }
  if (p.segment < 0)
  {
    // Midpoint bin: mass is spread linearly across the bin.
    return p.mass * ((hi - lo) / (p.hi - p.lo));
  }
  StoredSegment const &ss = segments_[static_cast<std::size_t>(p.segment)];
  Segment              s{static_cast<Segment::Kind>(ss.kind), ss.length, ss.log_length, ss.power,
            ss.log_jacobian, ss.t_power};
  double               t_a, t_b;
  if (s.kind == Segment::Kind::High)
  {
    t_a = hi == p.hi ? p.t_lo : s.to_t(hi);
    t_b = lo == p.lo ? p.t_hi : s.to_t(lo);
  }
  else
  {
    t_a = lo == p.lo ? p.t_lo : s.to_t(lo);
    t_b = hi == p.hi ? p.t_hi : s.to_t(hi);
  }
  if (!(t_b > t_a))
  {
    return 0.0;
  }
  ShiftedKernel kernel(params_, shift_);
  std::vector<Segment> one{s};
  auto integrand = [&kernel](Segment const &seg, double t) { return kernel.value(seg, t); };
  AdaptiveOutcome out =
    adaptive_integrate(one, {{0, t_a, t_b, 0, 0, 0}}, integrand, kAdaptiveRelTol, false);
  return out.value;
}

double LogIntegralTable::refined_mass(double lo, double hi, double estimate) const
{
  // Panels were refined against the total, so a small piece carries an
  // error that is large relative to itself. Re-run the subdivision on the
  // piece alone.
  if (method_ != Mode::Adaptive || !(estimate > 0.0) || estimate >= kRefineFraction * total_)
  {
    return estimate;
  }
  std::vector<Segment> segments;
  segments.reserve(segments_.size());
  for (auto const &ss : segments_)
  {
    segments.push_back({static_cast<Segment::Kind>(ss.kind), ss.length, ss.log_length, ss.power, ss.log_jacobian,
                        ss.t_power});
  }
  std::vector<WorkPanel> initial;
  for (std::size_t i = locate(lo); i < panels_.size() && panels_[i].lo < hi; ++i)
  {
    Panel const &p = panels_[i];
    Segment const &seg = segments[static_cast<std::size_t>(p.segment)];
    double const a = std::max(lo, p.lo), b = std::min(hi, p.hi);
    if (!(b > a))
    {
      continue;
    }
    double t_a, t_b;
    if (seg.kind == Segment::Kind::High)
    {
      t_a = b == p.hi ? p.t_lo : seg.to_t(b);
      t_b = a == p.lo ? p.t_hi : seg.to_t(a);
    }
    else
    {
      t_a = a == p.lo ? p.t_lo : seg.to_t(a);
      t_b = b == p.hi ? p.t_hi : seg.to_t(b);
    }
    if (t_b > t_a)
    {
      initial.push_back({static_cast<std::size_t>(p.segment), t_a, t_b, 0, 0, 0});
    }
  }
  if (initial.empty())
  {
    return estimate;
  }
  ShiftedKernel   kernel(params_, shift_);
  auto            integrand = [&kernel](Segment const &seg, double t) { return kernel.value(seg, t); };
  AdaptiveOutcome out       = adaptive_integrate(segments, std::move(initial), integrand, kAdaptiveRelTol, false);
  return out.value > 0.0 && std::isfinite(out.value) ? out.value : estimate;
}

double LogIntegralTable::scaled_mass_below(double r) const
{
  if (r <= 0.0 || panels_.empty())
  {
    return 0.0;
  }
  if (r >= 1.0)
  {
    return total_;
  }
  std::size_t const k    = locate(r);
  double const      base = k == 0 ? 0.0 : cumulative_[k - 1];
  return refined_mass(0.0, r, base + panel_piece(k, panels_[k].lo, r));
}

double LogIntegralTable::scaled_mass_above(double r) const
{
  if (r >= 1.0 || panels_.empty())
  {
    return 0.0;
  }
  if (r <= 0.0)
  {
    return total_;
  }
  std::size_t const k    = locate(r);
  double const      tail = k + 1 < panels_.size() ? suffix_[k + 1] : 0.0;
  return refined_mass(r, 1.0, tail + panel_piece(k, r, panels_[k].hi));
}

double LogIntegralTable::log_partial(double r) const
{
  if (!(r >= 0.0 && r <= 1.0))
  {
    throw std::invalid_argument("upper limit must lie in [0, 1]");
  }
  if (r == 1.0)
  {
    return log_total_;
  }
  return shift_ + std::log(scaled_mass_below(r));
}

double LogIntegralTable::log_upper(double r) const
{
  if (!(r >= 0.0 && r <= 1.0))
  {
    throw std::invalid_argument("lower limit must lie in [0, 1]");
  }
  if (r == 0.0)
  {
    return log_total_;
  }
  return shift_ + std::log(scaled_mass_above(r));
}

double LogIntegralTable::probability_below(double x) const
{
  return std::clamp(scaled_mass_below(x) / total_, 0.0, 1.0);
}

double LogIntegralTable::probability_above(double x) const
{
  return std::clamp(scaled_mass_above(x) / total_, 0.0, 1.0);
}

double LogIntegralTable::probability_between(double lo, double hi) const
{
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, 0.0, 1.0);
  if (!(hi > lo))
  {
    return 0.0;
  }
  std::size_t const a = locate(lo);
  std::size_t const b = locate(hi);
  double            mass;
  if (a == b)
  {
    mass = panel_piece(a, lo, hi);
  }
  else
  {
    mass = panel_piece(a, lo, panels_[a].hi) + panel_piece(b, panels_[b].lo, hi);
    if (b > a + 1)
    {
      mass += cumulative_[b - 1] - cumulative_[a];
    }
  }
  return std::clamp(mass / total_, 0.0, 1.0);
}

double LogIntegralTable::expectation(std::function<double(double, double)> const &g) const
{
  if (method_ == Mode::QuantileMidpoint)
  {
    double sum = 0.0;
    for (std::size_t i = 0; i < panels_.size(); ++i)
    {
      double const x = node_x_[i];
      double const y = node_y_[i];
      sum += g(x, y) * panels_[i].mass;
    }
    return sum / total_;
  }

  std::vector<Segment> segments;
  for (auto const &ss : segments_)
  {
    segments.push_back(
      {static_cast<Segment::Kind>(ss.kind), ss.length, ss.log_length, ss.power, ss.log_jacobian,
       ss.t_power});
  }
  std::vector<WorkPanel> start;
  start.reserve(panels_.size());
  for (auto const &p : panels_)
  {
    start.push_back({static_cast<std::size_t>(p.segment), p.t_lo, p.t_hi, 0, 0, 0});
  }
  ShiftedKernel kernel(params_, shift_);
  auto integrand = [&](Segment const &s, double t) {
    double       x, y;
    double const lv = kernel.log_value(s, t, x, y);
    double const w  = std::exp(lv);
    return w == 0.0 ? 0.0 : g(x, y) * w;
  };
  AdaptiveOutcome out = adaptive_integrate(segments, std::move(start), integrand, kAdaptiveRelTol, true);
  return out.value / total_;
}

std::pair<double, double> LogIntegralTable::bracket(double p, bool lower_tail) const
{
  double const target = p * total_;
  if (lower_tail)
  {
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
    std::size_t const k =
      it == cumulative_.end() ? panels_.size() - 1 : static_cast<std::size_t>(it - cumulative_.begin());
    return {panels_[k].lo, panels_[k].hi};
  }
  // suffix_ is nonincreasing; find the last panel whose suffix mass >= target.
  auto it = std::lower_bound(suffix_.begin(), suffix_.end(), target,
                             [](double s, double v) { return s >= v; });
  std::size_t const k = it == suffix_.begin() ? 0 : static_cast<std::size_t>(it - suffix_.begin()) - 1;
  return {panels_[k].lo, panels_[k].hi};
}

}  // namespace pushbeta::quadrature
