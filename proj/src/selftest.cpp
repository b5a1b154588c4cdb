#include "heatctl/selftest.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "heatctl/analog_blocks.hpp"
#include "heatctl/design_calc.hpp"
#include "heatctl/timer555.hpp"

namespace heatctl {

std::vector<SelftestResult> run_selftest() {
  std::vector<SelftestResult> out;
  auto check = [&](std::string name, double expected, double actual, double tol) {
    out.push_back({std::move(name), expected, actual, tol, std::abs(actual - expected) <= tol});
  };

  const Voltage v_pk = peak_voltage(Voltage(12.0));
  check("peak voltage, 12 V rms (V)", 16.97, v_pk.value, 0.01);
  check("ripple voltage, 7% of 16.97 V (V)", 1.1879, ripple_voltage(Voltage(16.97), 0.07).value, 0.0005);
  const Capacitance c = smoothing_capacitor(Current(0.2), Frequency(50.0), Voltage(1.1879));
  check("smoothing capacitor (uF)", 1684.0, c.value * 1e6, 1.0);
  check("standard capacitor (uF)", 2200.0, nearest_standard_capacitor(c).value * 1e6, 0.0);
  check("LED series resistor (ohm)", 718.75,
        led_series_resistor(Voltage(5.0), kDefaultLedForwardVoltage, Current(3.2e-3)).value, 1e-9);

  const Duration t_on = astable_t_on(Resistance(68e3), Resistance(68e3), Capacitance(1e-6));
  const Duration t_off = astable_t_off(Resistance(8.2e3), Capacitance(47e-6));
  check("T_ON (s)", 0.0952, t_on.value, 0.0001);
  check("T_OFF (s)", 0.26978, t_off.value, 0.00005);
  const auto rounded = astable_period_and_frequency(Duration(0.0952), Duration(0.27));
  check("T with T_OFF rounded to 0.27 s (s)", 0.3652, rounded.period.value, 1e-9);
  check("F (Hz)", 2.74, rounded.frequency.value, 0.01);

  const SensorParams datasheet;
  check("LM335 at 298.2 K (V)", 2.982, lm335_voltage(TemperatureK{298.2}, datasheet).value, 1e-12);
  check("30 degC preset reference (V)", 0.300, temp_to_threshold(TemperatureC{30.0}, datasheet).value, 1e-12);

  const ComparatorParams cmp{Voltage(0.300), Voltage(0.0)};
  check("comparator, 200 mV against 300 mV (logic)", 0.0,
        logic_sample(comparator_out(Voltage(0.200), LogicLevel::Low, cmp)), 0.0);

  const Timer555Config astable;
  const Timer555State running{Voltage(3.0), LogicLevel::High, false};
  const Timer555State after_reset =
      timer_step(running, {astable.vs, Voltage(0.0), true}, astable, Duration(1e-3));
  check("555 output with reset at 0 V (logic)", 0.0, logic_sample(after_reset.output), 0.0);

  Timer555Config bistable;
  bistable.mode = TimerMode::Bistable;
  const Timer555State set =
      timer_step(timer_init(bistable), {Voltage(1.0), bistable.vs, true}, bistable, Duration(1e-3));
  check("bistable, trigger at 1.0 V (logic)", 1.0, logic_sample(set.output), 0.0);
  return out;
}

bool print_selftest(std::ostream& out) {
  bool all = true;
  for (const auto& r : run_selftest()) {
    all = all && r.passed;
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(44) << r.name << std::right
        << " expected " << std::setprecision(8) << r.expected << " got " << r.actual << '\n';
  }
  out << (all ? "selftest: all checks passed\n" : "selftest: FAILED\n");
  return all;
}

}  // namespace heatctl
