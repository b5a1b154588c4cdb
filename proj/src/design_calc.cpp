#include "heatctl/design_calc.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace heatctl {

namespace {

// Coefficient of the rounded timing equations (ln 2 taken as 0.7).
constexpr double kRoundedTimingCoefficient = 0.7;

// E6 mantissas scaled by 10 so every candidate is an exact integer.
constexpr std::array<int, 6> kE6 = {10, 15, 22, 33, 47, 68};

double pow10(int e) {
  double p = 1.0;
  for (int i = 0; i < std::abs(e); ++i) p *= 10.0;
  return p;
}

// m * 10^e with a single correctly rounded operation.
double scaled(int m, int e) {
  return e >= 0 ? m * pow10(e) : m / pow10(-e);
}

}  // namespace

Voltage peak_voltage(Voltage vs_rms) {
  require_non_negative(vs_rms, "vs_rms");
  return vs_rms * std::numbers::sqrt2;
}

Voltage ripple_voltage(Voltage v_pk, double fraction) {
  require_finite(v_pk.value, "v_pk");
  require_finite(fraction, "ripple fraction");
  if (fraction < 0.0 || fraction > 1.0) throw std::invalid_argument("ripple fraction must lie in [0, 1]");
  return v_pk * fraction;
}

Capacitance smoothing_capacitor(Current i_load, Frequency mains_freq, Voltage v_ripple) {
  require_positive(i_load, "i_load");
  require_positive(mains_freq, "mains frequency");
  require_positive(v_ripple, "ripple voltage");
  return Capacitance(i_load.value / (2.0 * mains_freq.value * v_ripple.value));
}

Capacitance nearest_standard_capacitor(Capacitance c) {
  require_positive(c, "capacitance");
  // Candidate decades bracket c; the relative slack keeps exact E6 inputs
  // (2.2e-3 etc.) from being bumped to the next value by log10 rounding.
  const int decade = static_cast<int>(std::floor(std::log10(c.value)));
  for (int e = decade - 2; e <= decade + 1; ++e) {
    for (int m : kE6) {
      const double candidate = scaled(m, e);
      if (candidate >= c.value * (1.0 - 1e-12)) return Capacitance(candidate);
    }
  }
  return Capacitance(scaled(10, decade + 2));
}

Resistance led_series_resistor(Voltage v_supply, Voltage v_led, Current i_led) {
  require_finite(v_supply.value, "v_supply");
  require_finite(v_led.value, "v_led");
  require_positive(i_led, "i_led");
  if (v_supply < v_led) throw std::invalid_argument("supply voltage below LED forward voltage");
  return Resistance((v_supply.value - v_led.value) / i_led.value);
}

Duration astable_t_on(Resistance r1, Resistance r2, Capacitance c2) {
  require_non_negative(r1, "r1");
  require_non_negative(r2, "r2");
  require_non_negative(c2, "c2");
  return Duration(kRoundedTimingCoefficient * (r1.value + r2.value) * c2.value);
}

Duration astable_t_off(Resistance r3, Capacitance c3) {
  require_non_negative(r3, "r3");
  require_non_negative(c3, "c3");
  return Duration(kRoundedTimingCoefficient * r3.value * c3.value);
}

PeriodAndFrequency astable_period_and_frequency(Duration t_on, Duration t_off) {
  require_non_negative(t_on, "t_on");
  require_non_negative(t_off, "t_off");
  const Duration period = t_on + t_off;
  if (!(period.value > 0.0)) throw std::invalid_argument("period must be positive");
  return {period, Frequency(1.0 / period.value)};
}

AstableTiming standard_astable_period(Resistance r1, Resistance r2, Capacitance c) {
  require_positive(r1, "r1");
  require_positive(r2, "r2");
  require_positive(c, "c");
  const Duration t_high(std::numbers::ln2 * (r1.value + r2.value) * c.value);
  const Duration t_low(std::numbers::ln2 * r2.value * c.value);
  return {t_high, t_low, Frequency(1.0 / (t_high.value + t_low.value))};
}

DesignReport design_report(const PsuDesignInput& psu, Voltage v_supply, Voltage v_led, Current i_led,
                           const AstableDesignInput& timer) {
  DesignReport r;
  r.v_pk = peak_voltage(psu.vs_rms);
  r.v_ripple = ripple_voltage(r.v_pk, psu.ripple_fraction);
  r.c_exact = smoothing_capacitor(psu.i_load, psu.mains_freq, r.v_ripple);
  r.c_standard = nearest_standard_capacitor(r.c_exact);
  r.r_led = led_series_resistor(v_supply, v_led, i_led);
  r.t_on = astable_t_on(timer.r1, timer.r2, timer.c2);
  r.t_off = astable_t_off(timer.r3, timer.c3);
  const auto exact = astable_period_and_frequency(r.t_on, r.t_off);
  r.period = exact.period;
  r.frequency = exact.frequency;
  const auto rounded = astable_period_and_frequency(r.t_on, Duration(std::round(r.t_off.value * 100.0) / 100.0));
  r.period_rounded = rounded.period;
  r.frequency_rounded = rounded.frequency;
  r.standard = standard_astable_period(timer.r1, timer.r2, timer.c2);
  return r;
}

}  // namespace heatctl
