#pragma once

#include <optional>

namespace cloudmarket {

// Parameters of one resource's posted-price schedule. gamma is stored
// explicitly and kept equal to p_ceil / p_floor by the factories.
struct PricingParams {
  double p_floor = 1.0;  // lowest admitted unit valuation, > 0
  double p_ceil = 10.0;  // highest admitted unit valuation, >= p_floor
  double gamma = 10.0;   // p_ceil / p_floor
  double op_cost = 0.0;  // linear operational cost per unit of resource
  double beta = 1.0;     // scarcity level: expected total demand = 1 + beta

  static PricingParams make(double p_floor, double p_ceil, double beta,
                            double op_cost = 0.0);
  static PricingParams from_gamma(double gamma, double beta,
                                  double p_floor = 1.0, double op_cost = 0.0);
  void validate() const;
};

// Demand regime selected by beta relative to (0, beta_zero, 1).
enum class DemandRegime { Slack, LowDemand, MidDemand, LargeDemand };

const char* regime_name(DemandRegime r);

struct RatioConstants {
  double alpha = 1.0;      // guaranteed worst-case welfare ratio
  double beta_zero = 1.0;  // regime split point W(ln gamma)/ln gamma
  DemandRegime regime = DemandRegime::Slack;
};

// Principal branch of the Lambert W function, x >= 0.
double lambert_w0(double x);

// Regime split point W(ln gamma)/ln gamma, gamma > 1.
double beta_zero(double gamma);

// Ratio constant and regime for a (gamma, beta) pair. gamma == 1 is the
// degenerate single-price market: alpha = 1, constant price.
RatioConstants competitive_alpha(double gamma, double beta);

// Posted unit price at utilization rho in [0, 1]. Empty optional means the
// resource is exhausted (rho == 1); no finite price exists there.
std::optional<double> unit_price(double rho, const PricingParams& p);

// Closed-form integral of the unit price (op_cost included) over [a, b].
double integrate_price(const PricingParams& p, double a, double b);

// Same integral via adaptive Simpson; used by the bound computations and as
// an independent check on the closed forms.
double integrate_price_numeric(const PricingParams& p, double a, double b,
                               double rel_tol = 1e-9);

struct RatioCurvePoint {
  double v_ol;       // guaranteed online welfare when prices stop at rho_star
  double v_opt_sup;  // supremum of offline welfare over admissible sequences
  double ratio;      // v_opt_sup / v_ol
};

// Worst-case welfare curves at stop-utilization rho_star. Requires
// op_cost == 0 (the guarantees are stated for cost-free prices).
RatioCurvePoint ratio_curve(double rho_star, const PricingParams& p);

struct BoundInputs {
  double eta = 1.0;        // lowest per-resource utilization share, (0, 1]
  double eta_prime = 0.0;  // integral_0^eta P / p_ceil, derived
  double lambda = 1.0;     // deadline stretch factor
  int num_resources = 1;
};

BoundInputs make_bound_inputs(const PricingParams& p, double eta,
                              double lambda, int num_resources);

// Ratio bound for the multi-resource market with balance parameter eta:
// max{alpha/eta, alpha + theta}.
double multi_resource_bound(double gamma, double beta_r, double eta);

// Ratio bound for the multi-slot market with stretch factor lambda > 1:
// (lambda+1)/(lambda-1) * max{alpha/eta, 1/eta_prime}. Requires op_cost == 0.
double multi_slot_bound(double lambda, double eta, const PricingParams& p);

}  // namespace cloudmarket
