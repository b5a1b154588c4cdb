// Component-sizing equations for the supply, indicator LED and tone timer.
//
// Two timer models live here side by side: the rounded 0.7 coefficient with
// a separate R3/C3 off-time network (astable_t_on / astable_t_off), and the
// exact ln 2 astable with both phases on one capacitor
// (standard_astable_period). They disagree for the reference component
// values and both are reported.

#ifndef HEATCTL_DESIGN_CALC_HPP
#define HEATCTL_DESIGN_CALC_HPP

#include "heatctl/units.hpp"

namespace heatctl {

struct PsuDesignInput {
  Voltage vs_rms{12.0};
  double ripple_fraction = 0.07;
  Current i_load{0.2};
  Frequency mains_freq{50.0};
};

struct AstableDesignInput {
  Resistance r1{68e3};
  Resistance r2{68e3};
  Resistance r3{8.2e3};
  Capacitance c2{1e-6};
  Capacitance c3{47e-6};
};

inline constexpr Voltage kDefaultLedForwardVoltage{2.7};

Voltage peak_voltage(Voltage vs_rms);
Voltage ripple_voltage(Voltage v_pk, double fraction);
/// I / (2 f Vr) for full-wave rectification.
Capacitance smoothing_capacitor(Current i_load, Frequency mains_freq, Voltage v_ripple);
/// Smallest E6 value not below c.
Capacitance nearest_standard_capacitor(Capacitance c);
Resistance led_series_resistor(Voltage v_supply, Voltage v_led, Current i_led);

Duration astable_t_on(Resistance r1, Resistance r2, Capacitance c2);
Duration astable_t_off(Resistance r3, Capacitance c3);

struct PeriodAndFrequency {
  Duration period;
  Frequency frequency;
};
PeriodAndFrequency astable_period_and_frequency(Duration t_on, Duration t_off);

struct AstableTiming {
  Duration t_high;
  Duration t_low;
  Frequency frequency;
};
/// Closed-form RC astable swinging between Vs/3 and 2Vs/3: charge through
/// r1 + r2, discharge through r2.
AstableTiming standard_astable_period(Resistance r1, Resistance r2, Capacitance c);

/// Everything the `design` calculator prints, in one pass.
struct DesignReport {
  Voltage v_pk;
  Voltage v_ripple;
  Capacitance c_exact;
  Capacitance c_standard;
  Resistance r_led;
  Duration t_on;
  Duration t_off;
  Duration period;
  Frequency frequency;
  Duration period_rounded;      // with T_OFF rounded to 10 ms, as in the reference design
  Frequency frequency_rounded;
  AstableTiming standard;       // ln 2 model on R1, R2, C2
};

DesignReport design_report(const PsuDesignInput& psu, Voltage v_supply, Voltage v_led, Current i_led,
                           const AstableDesignInput& timer);

}  // namespace heatctl

#endif  // HEATCTL_DESIGN_CALC_HPP
