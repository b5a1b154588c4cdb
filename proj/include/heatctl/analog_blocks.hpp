// Behavioral transfer functions for the analog front end: bridge rectifier
// and reservoir capacitor, linear regulator, LM335 sensor, single-supply
// subtractor, preset reference and threshold comparator.

#ifndef HEATCTL_ANALOG_BLOCKS_HPP
#define HEATCTL_ANALOG_BLOCKS_HPP

#include <cstdint>
#include <random>

#include "heatctl/units.hpp"

namespace heatctl {

struct RailParams {
  Voltage vs_rms{12.0};
  Frequency mains_freq{50.0};
  Voltage diode_drop{0.7};      // per conducting diode, two conduct at a time
  Capacitance c_filter{2200e-6};
  Current i_load{0.2};          // zero means an unloaded reservoir
  Voltage reg_setpoint{5.0};
  Voltage reg_dropout{2.0};

  void validate() const;
  friend bool operator==(const RailParams&, const RailParams&) = default;
};

struct SensorParams {
  double gain = 0.010;            // V/K
  Voltage v_ref_subtract{2.7315};

  void validate() const;
  friend bool operator==(const SensorParams&, const SensorParams&) = default;
};

struct ComparatorParams {
  Voltage v_threshold{0.300};
  Voltage hysteresis{0.0};

  void validate() const;
  friend bool operator==(const ComparatorParams&, const ComparatorParams&) = default;
};

/// |Vs*sqrt(2)*sin(2 pi f t)| less two diode drops, floored at zero.
Voltage rectified_voltage(Duration t, const RailParams& p);

/// Reservoir capacitor voltage in periodic steady state. The capacitor
/// recharges instantly whenever the rectified voltage exceeds it and
/// otherwise discharges at the constant slope i_load / c_filter, so
///   v(t) = max over s in [t - 1/(2f), t] of rectified(s) - (t - s) * i_load / c_filter.
/// The mains is taken to have been running before t = 0.
Voltage filtered_rail(Duration t, const RailParams& p);

/// Ideal regulator with dropout: min(setpoint, max(0, v_in - dropout)).
Voltage regulator_out(Voltage v_in, const RailParams& p);

Voltage lm335_voltage(TemperatureK t, const SensorParams& p);

/// v_sensor - v_ref, clamped to the op-amp's single-supply output range [0, v_rail].
Voltage subtractor_out(Voltage v_sensor, const SensorParams& p, Voltage v_rail);

/// Comparator reference voltage that corresponds to a preset temperature.
Voltage temp_to_threshold(TemperatureC preset, const SensorParams& p);

/// Rises at v_threshold, falls below v_threshold - hysteresis. Equality
/// with the active threshold counts as High.
LogicLevel comparator_out(Voltage v_plus, LogicLevel state_prev, const ComparatorParams& p);

/// Zero-mean uniform disturbance on a sensor voltage. Deterministic for a
/// given seed; amplitude 0 draws nothing and always returns 0.
class SensorNoise {
 public:
  SensorNoise(Voltage amplitude, std::uint64_t seed);
  Voltage sample();

 private:
  Voltage amplitude_;
  std::mt19937_64 rng_;
};

}  // namespace heatctl

#endif  // HEATCTL_ANALOG_BLOCKS_HPP
