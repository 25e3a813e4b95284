#include "stackmec/channel.hpp"

#include <cmath>

namespace stackmec {

double distance_m(const UeProfile& ue, const UavProfile& uav) {
  return distance_m(ue.position, uav.position);
}

double channel_gain(double dist_m, double path_loss_exponent) {
  return std::pow(dist_m, -path_loss_exponent);
}

double uplink_rate_bps(const UeProfile& ue, const Vec3& uav_position,
                       const ChannelConstants& c) {
  const double d = distance_m(ue.position, uav_position);
  const double h = channel_gain(d, c.path_loss_exponent);
  const double snr = ue.transmit_power_w * h / c.noise_power_w;
  return c.bandwidth_hz * std::log2(1.0 + snr);
}

double uplink_rate_bps(const UeProfile& ue, const UavProfile& uav,
                       const ChannelConstants& c) {
  return uplink_rate_bps(ue, uav.position, c);
}

LinkRate link_rate(const UeProfile& ue, const UavProfile& uav,
                   const ChannelConstants& c) {
  LinkRate lr;
  lr.ue_id = ue.id;
  lr.uav_id = uav.id;
  lr.distance_m = distance_m(ue, uav);
  lr.gain = channel_gain(lr.distance_m, c.path_loss_exponent);
  lr.rate_bps = c.bandwidth_hz *
                std::log2(1.0 + ue.transmit_power_w * lr.gain / c.noise_power_w);
  return lr;
}

}  // namespace stackmec
