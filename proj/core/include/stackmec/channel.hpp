#ifndef STACKMEC_CHANNEL_HPP
#define STACKMEC_CHANNEL_HPP

#include "stackmec/scenario.hpp"
#include "stackmec/vec3.hpp"

namespace stackmec {

/// One evaluated UE-UAV link.
struct LinkRate {
  int ue_id = 0;
  int uav_id = 0;
  double distance_m = 0.0;
  double gain = 0.0;      ///< d^(-rho)
  double rate_bps = 0.0;
};

double distance_m(const UeProfile& ue, const UavProfile& uav);

/// Line-of-sight path gain d^(-rho), meters in, dimensionless out.
double channel_gain(double dist_m, double path_loss_exponent);

/// Shannon uplink rate B * log2(1 + q * d^(-rho) / sigma^2) in bit/s.
double uplink_rate_bps(const UeProfile& ue, const UavProfile& uav,
                       const ChannelConstants& c);

/// Rate against an arbitrary serving position (UAVs move during placement).
double uplink_rate_bps(const UeProfile& ue, const Vec3& uav_position,
                       const ChannelConstants& c);

LinkRate link_rate(const UeProfile& ue, const UavProfile& uav,
                   const ChannelConstants& c);

}  // namespace stackmec

#endif  // STACKMEC_CHANNEL_HPP
