#ifndef STACKMEC_GAME_HPP
#define STACKMEC_GAME_HPP

#include "stackmec/economics.hpp"
#include "stackmec/scenario.hpp"

namespace stackmec {

/// Price thresholds at which the follower's best response hits the
/// full-offload (lambda_min) and zero-offload (lambda_max) corners.
struct PriceBounds {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

PriceBounds price_bounds(const UeProfile& ue, double rate_bps);

/// Follower best response to a posted price: the three-branch rule
///   G           if lambda <= lambda_min,
///   delta/(p/r - eps + lambda) - 1   on the open interval,
///   0           if lambda >= lambda_max,
/// with the interior value clamped to [0, G] against floating-point spill.
double optimal_offload(const UeProfile& ue, double price_per_mb, double rate_bps);

/// Leader's interior optimum for one UE served among `concurrent` offloaders,
/// clamped into [lambda_min, lambda_max]. Throws DegenerateEconomicsError when
/// the radicand is negative (the concave interior analysis does not apply).
double optimal_price(const UeProfile& ue, double rate_bps, int concurrent,
                     const UavProfile& uav, const ChannelConstants& c);

/// optimal_price plus the clamp flag, for callers that record boundary hits.
struct PriceSolution {
  double price = 0.0;
  bool clamped = false;
};
PriceSolution optimal_price_solution(const UeProfile& ue, double rate_bps,
                                     int concurrent, const UavProfile& uav,
                                     const ChannelConstants& c);

struct EquilibriumCertificate {
  StrategyProfile profile;
  double max_ue_gain = 0.0;          ///< best unilateral follower improvement found
  double max_controller_gain = 0.0;  ///< best single-price leader improvement found
  double tolerance = 0.0;            ///< relative tolerance the gains were tested at
  bool certified = false;
};

struct VerifyOptions {
  double relative_tolerance = 1e-6;
  int offload_grid_points = 2001;
  int price_grid_points = 4001;
};

/// Searches unilateral deviations on a grid. Follower side: each g_i over
/// [0, G_i] with everything else fixed. Leader side: each lambda_i over
/// [lambda_min, lambda_max] with UE i re-best-responding (backward induction)
/// and the full controller utility re-evaluated. Gains are certified against
/// tolerance * max(1, |utility|) of the deviating party.
EquilibriumCertificate verify_equilibrium(const StrategyProfile& profile,
                                          const Assignment& a, const Scenario& s,
                                          const VerifyOptions& opts = {});

}  // namespace stackmec

#endif  // STACKMEC_GAME_HPP
