#include "heatctl/analog_blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace heatctl {

void RailParams::validate() const {
  require_positive(vs_rms, "supply vs_rms");
  require_positive(mains_freq, "supply mains_freq");
  require_non_negative(diode_drop, "supply diode_drop");
  require_positive(c_filter, "supply c_filter");
  require_non_negative(i_load, "supply i_load");
  require_positive(reg_setpoint, "supply reg_setpoint");
  require_non_negative(reg_dropout, "supply reg_dropout");
}

void SensorParams::validate() const {
  require_positive(gain, "sensor gain");
  require_finite(v_ref_subtract.value, "sensor v_ref");
}

void ComparatorParams::validate() const {
  require_finite(v_threshold.value, "comparator threshold");
  require_non_negative(hysteresis, "comparator hysteresis");
}

Voltage rectified_voltage(Duration t, const RailParams& p) {
  const double amplitude = p.vs_rms.value * std::numbers::sqrt2;
  const double omega = 2.0 * std::numbers::pi * p.mains_freq.value;
  const double v = std::abs(amplitude * std::sin(omega * t.value)) - 2.0 * p.diode_drop.value;
  return Voltage(std::max(0.0, v));
}

Voltage filtered_rail(Duration t, const RailParams& p) {
  const double half_period = 0.5 / p.mains_freq.value;
  const double slope = p.i_load.value / p.c_filter.value;
  const double amplitude = p.vs_rms.value * std::numbers::sqrt2;
  const double omega = 2.0 * std::numbers::pi * p.mains_freq.value;
  const double lo = t.value - half_period;

  auto held = [&](double s) { return rectified_voltage(Duration(s), p).value - slope * (t.value - s); };

  double best = std::max(held(t.value), held(lo));
  // Interior maxima of rectified(s) + slope*s sit where the falling sine
  // slope equals -slope, once per half-cycle.
  if (slope < amplitude * omega) {
    const double phase = std::acos(-slope / (amplitude * omega));
    const double first = std::floor(omega * lo / std::numbers::pi);
    for (double n = first; n <= first + 2.0; n += 1.0) {
      const double s = (n * std::numbers::pi + phase) / omega;
      if (s >= lo && s <= t.value) best = std::max(best, held(s));
    }
  }
  return Voltage(std::max(0.0, best));
}

Voltage regulator_out(Voltage v_in, const RailParams& p) {
  return Voltage(std::min(p.reg_setpoint.value, std::max(0.0, v_in.value - p.reg_dropout.value)));
}

Voltage lm335_voltage(TemperatureK t, const SensorParams& p) {
  require_non_negative(t.value, "kelvin temperature");
  return Voltage(p.gain * t.value);
}

Voltage subtractor_out(Voltage v_sensor, const SensorParams& p, Voltage v_rail) {
  const double v = v_sensor.value - p.v_ref_subtract.value;
  return Voltage(std::clamp(v, 0.0, std::max(0.0, v_rail.value)));
}

Voltage temp_to_threshold(TemperatureC preset, const SensorParams& p) {
  require_finite(preset.value, "preset");
  const double v = preset.value * p.gain;
  if (v < 0.0) throw std::invalid_argument("preset maps below 0 V");
  return Voltage(v);
}

LogicLevel comparator_out(Voltage v_plus, LogicLevel state_prev, const ComparatorParams& p) {
  const Voltage active = is_high(state_prev) ? p.v_threshold - p.hysteresis : p.v_threshold;
  return logic_from(v_plus >= active);
}

SensorNoise::SensorNoise(Voltage amplitude, std::uint64_t seed) : amplitude_(amplitude), rng_(seed) {
  require_non_negative(amplitude, "noise amplitude");
}

Voltage SensorNoise::sample() {
  if (amplitude_.value == 0.0) return Voltage(0.0);
  std::uniform_real_distribution<double> dist(-amplitude_.value, amplitude_.value);
  return Voltage(dist(rng_));
}

}  // namespace heatctl
