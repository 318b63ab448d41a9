#include "cloudmarket/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cloudmarket {

namespace {

bool close_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Integral of k*(s - rho)^(-alpha) over [a, b], b <= s. Switches to the
// logarithmic antiderivative when alpha is numerically 1.
double power_integral(double k, double s, double alpha, double a, double b) {
  if (std::fabs(alpha - 1.0) < 1e-8)
    return k * std::log((s - a) / (s - b));
  return k * (std::pow(s - b, 1.0 - alpha) - std::pow(s - a, 1.0 - alpha)) /
         (alpha - 1.0);
}

// Price limit at rho, taking p_ceil at the exhausted endpoint.
double price_limit(double rho, const PricingParams& p) {
  if (rho >= 1.0) return p.p_ceil + p.op_cost;
  return *unit_price(rho, p);
}

}  // namespace

PricingParams PricingParams::make(double p_floor, double p_ceil, double beta,
                                  double op_cost) {
  PricingParams p;
  p.p_floor = p_floor;
  p.p_ceil = p_ceil;
  p.gamma = p_ceil / p_floor;
  p.op_cost = op_cost;
  p.beta = beta;
  p.validate();
  return p;
}

PricingParams PricingParams::from_gamma(double gamma, double beta,
                                        double p_floor, double op_cost) {
  return make(p_floor, gamma * p_floor, beta, op_cost);
}

void PricingParams::validate() const {
  if (!(p_floor > 0.0) || !std::isfinite(p_floor))
    throw std::invalid_argument("pricing: p_floor must be positive");
  if (!(p_ceil >= p_floor) || !std::isfinite(p_ceil))
    throw std::invalid_argument("pricing: p_ceil must be >= p_floor");
  if (!close_rel(gamma, p_ceil / p_floor, 1e-9))
    throw std::invalid_argument("pricing: gamma inconsistent with p_ceil/p_floor");
  if (!(op_cost >= 0.0) || !std::isfinite(op_cost))
    throw std::invalid_argument("pricing: op_cost must be >= 0");
  if (!(beta >= -1.0) || !std::isfinite(beta))
    throw std::invalid_argument("pricing: beta must be finite and >= -1");
}

const char* regime_name(DemandRegime r) {
  switch (r) {
    case DemandRegime::Slack: return "slack";
    case DemandRegime::LowDemand: return "low";
    case DemandRegime::MidDemand: return "mid";
    case DemandRegime::LargeDemand: return "large";
  }
  return "?";
}

double lambert_w0(double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("lambert_w0: requires finite x >= 0");
  if (x == 0.0) return 0.0;
  double w = std::log1p(x);
  for (int i = 0; i < 50; ++i) {
    double ew = std::exp(w);
    double f = w * ew - x;
    // Halley step for f(w) = w e^w - x
    double step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= step;
    if (std::fabs(step) <= 1e-13 * std::max(1.0, std::fabs(w))) break;
  }
  return w;
}

double beta_zero(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma))
    throw std::domain_error("beta_zero: requires gamma > 1");
  double lg = std::log(gamma);
  return lambert_w0(lg) / lg;
}

RatioConstants competitive_alpha(double gamma, double beta) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma))
    throw std::domain_error("competitive_alpha: requires gamma >= 1");
  RatioConstants rc;
  if (gamma == 1.0) {
    // Degenerate single-price market: every admissible user pays p_floor.
    rc.alpha = 1.0;
    rc.beta_zero = 1.0;
    rc.regime = beta <= 0.0 ? DemandRegime::Slack
               : beta < 1.0 ? DemandRegime::LowDemand
                            : DemandRegime::LargeDemand;
    return rc;
  }
  double lg = std::log(gamma);
  rc.beta_zero = lambert_w0(lg) / lg;
  if (beta <= 0.0) {
    rc.alpha = 1.0;
    rc.regime = DemandRegime::Slack;
  } else if (beta >= 1.0) {
    rc.alpha = lg + 1.0;
    rc.regime = DemandRegime::LargeDemand;
  } else if (beta > rc.beta_zero) {
    rc.alpha = (lg + 1.0) / (beta - std::log(beta));
    rc.regime = DemandRegime::MidDemand;
  } else {
    double w = lambert_w0(beta * std::pow(gamma, 1.0 + beta) * lg);
    rc.alpha = lg / ((1.0 + beta) * lg - w);
    rc.regime = DemandRegime::LowDemand;
  }
  return rc;
}

std::optional<double> unit_price(double rho, const PricingParams& p) {
  p.validate();
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::domain_error("unit_price: rho outside [0, 1]");
  if (rho >= 1.0) return std::nullopt;
  RatioConstants rc = competitive_alpha(p.gamma, p.beta);
  if (rc.regime == DemandRegime::Slack || p.gamma == 1.0)
    return p.p_floor + p.op_cost;
  double a = rc.alpha;
  if (rho <= 1.0 / a) return p.p_floor + p.op_cost;
  double base;
  switch (rc.regime) {
    case DemandRegime::LargeDemand:
      base = p.p_floor * std::exp(a * rho - 1.0);
      break;
    case DemandRegime::MidDemand:
      if (rho <= p.beta)
        base = p.p_floor * std::exp(a * rho - 1.0);
      else
        base = p.p_floor * std::exp(a * p.beta - 1.0) *
               std::pow(1.0 + p.beta - rho, -a);
      break;
    default:  // LowDemand
      base = p.p_floor * p.gamma * std::pow(p.beta, a) *
             std::pow(1.0 + p.beta - rho, -a);
      break;
  }
  return base + p.op_cost;
}

namespace {

// Antiderivative of the cost-free price from 0 to x.
double base_integral_to(double x, const PricingParams& p,
                        const RatioConstants& rc) {
  if (rc.regime == DemandRegime::Slack || p.gamma == 1.0) return p.p_floor * x;
  double a = rc.alpha;
  double flat_end = 1.0 / a;
  if (x <= flat_end) return p.p_floor * x;
  switch (rc.regime) {
    case DemandRegime::LargeDemand:
      return p.p_floor / a * std::exp(a * x - 1.0);
    case DemandRegime::MidDemand: {
      if (x <= p.beta) return p.p_floor / a * std::exp(a * x - 1.0);
      double at_beta = p.p_floor / a * std::exp(a * p.beta - 1.0);
      double k = p.p_floor * std::exp(a * p.beta - 1.0);
      return at_beta + power_integral(k, 1.0 + p.beta, a, p.beta, x);
    }
    default: {  // LowDemand
      double k = p.p_floor * p.gamma * std::pow(p.beta, a);
      return p.p_floor * flat_end +
             power_integral(k, 1.0 + p.beta, a, flat_end, x);
    }
  }
}

}  // namespace

double integrate_price(const PricingParams& p, double a, double b) {
  p.validate();
  if (!(0.0 <= a && a <= b && b <= 1.0))
    throw std::domain_error("integrate_price: requires 0 <= a <= b <= 1");
  RatioConstants rc = competitive_alpha(p.gamma, p.beta);
  return base_integral_to(b, p, rc) - base_integral_to(a, p, rc) +
         p.op_cost * (b - a);
}

namespace {

double simpson_rec(const PricingParams& p, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = price_limit(lm, p), frm = price_limit(rm, p);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(p, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(p, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double simpson_piece(const PricingParams& p, double a, double b, double rel_tol) {
  if (b - a < 1e-300) return 0.0;
  double fa = price_limit(a, p), fb = price_limit(b, p);
  double fm = price_limit(0.5 * (a + b), p);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double tol = rel_tol * std::max(std::fabs(whole), p.p_floor * (b - a));
  return simpson_rec(p, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double integrate_price_numeric(const PricingParams& p, double a, double b,
                               double rel_tol) {
  p.validate();
  if (!(0.0 <= a && a <= b && b <= 1.0))
    throw std::domain_error("integrate_price_numeric: requires 0 <= a <= b <= 1");
  RatioConstants rc = competitive_alpha(p.gamma, p.beta);
  // Split at the kinks so each Simpson piece sees a smooth integrand.
  double cuts[2] = {1.0 / rc.alpha, p.beta};
  double lo = a, total = 0.0;
  if (cuts[0] > cuts[1]) std::swap(cuts[0], cuts[1]);
  for (double c : cuts) {
    if (c > lo && c < b) {
      total += simpson_piece(p, lo, c, rel_tol);
      lo = c;
    }
  }
  return total + simpson_piece(p, lo, b, rel_tol);
}

RatioCurvePoint ratio_curve(double rho_star, const PricingParams& p) {
  p.validate();
  if (p.op_cost != 0.0)
    throw std::invalid_argument("ratio_curve: requires op_cost == 0");
  if (!(rho_star >= 0.0 && rho_star <= 1.0))
    throw std::domain_error("ratio_curve: rho_star outside [0, 1]");
  RatioCurvePoint out;
  RatioConstants rc = competitive_alpha(p.gamma, p.beta);
  out.v_ol = base_integral_to(rho_star, p, rc);
  if (rc.regime == DemandRegime::Slack || p.gamma == 1.0 ||
      rho_star <= 1.0 / rc.alpha) {
    // Flat region: every admissible user is accepted, nothing is left over.
    out.v_opt_sup = out.v_ol;
    out.ratio = 1.0;
    return out;
  }
  if (rho_star <= p.beta) {
    // Unsatisfied demand of total size 1 at unit value just below the price.
    out.v_opt_sup = price_limit(rho_star, p);
  } else {
    out.v_opt_sup = (1.0 + p.beta - rho_star) * price_limit(rho_star, p) +
                    base_integral_to(rho_star, p, rc) -
                    base_integral_to(p.beta, p, rc);
  }
  out.ratio = out.v_opt_sup / out.v_ol;
  return out;
}

BoundInputs make_bound_inputs(const PricingParams& p, double eta,
                              double lambda, int num_resources) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("make_bound_inputs: eta outside (0, 1]");
  if (!(lambda >= 1.0))
    throw std::domain_error("make_bound_inputs: lambda must be >= 1");
  if (num_resources < 1)
    throw std::domain_error("make_bound_inputs: num_resources must be >= 1");
  BoundInputs b;
  b.eta = eta;
  b.lambda = lambda;
  b.num_resources = num_resources;
  b.eta_prime = integrate_price_numeric(p, 0.0, eta) / p.p_ceil;
  return b;
}

double multi_resource_bound(double gamma, double beta_r, double eta) {
  if (!(beta_r > 0.0))
    throw std::domain_error("multi_resource_bound: requires beta > 0");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("multi_resource_bound: eta outside (0, 1]");
  PricingParams p = PricingParams::from_gamma(gamma, beta_r);
  RatioConstants rc = competitive_alpha(gamma, beta_r);
  double theta = (1.0 + beta_r - eta) * (p.p_ceil - price_limit(eta, p)) /
                 integrate_price_numeric(p, 0.0, eta);
  return std::max(rc.alpha / eta, rc.alpha + theta);
}

double multi_slot_bound(double lambda, double eta, const PricingParams& p) {
  p.validate();
  if (!(p.beta > 0.0))
    throw std::domain_error("multi_slot_bound: requires beta > 0");
  if (p.op_cost != 0.0)
    throw std::invalid_argument("multi_slot_bound: requires op_cost == 0");
  if (!(lambda > 1.0))
    throw std::domain_error("multi_slot_bound: requires lambda > 1");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("multi_slot_bound: eta outside (0, 1]");
  RatioConstants rc = competitive_alpha(p.gamma, p.beta);
  double eta_prime = integrate_price_numeric(p, 0.0, eta) / p.p_ceil;
  return (lambda + 1.0) / (lambda - 1.0) *
         std::max(rc.alpha / eta, 1.0 / eta_prime);
}

}  // namespace cloudmarket
