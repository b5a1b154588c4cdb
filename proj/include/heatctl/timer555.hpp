// Behavioral 555 timer.
//
// The chip is reduced to its two internal comparators (Vs/3 trigger,
// 2Vs/3 threshold), the set/reset flip-flop, the discharge switch and an
// ideal RC timing network. Threshold crossings inside a time step are found
// by solving the RC exponential for the crossing instant, so the capacitor
// never overshoots a threshold and a step may span several state changes.

#ifndef HEATCTL_TIMER555_HPP
#define HEATCTL_TIMER555_HPP

#include <string_view>

#include "heatctl/trace.hpp"
#include "heatctl/units.hpp"

namespace heatctl {

enum class TimerMode { Astable, Monostable, Bistable };

std::string_view to_string(TimerMode m);

struct Timer555Config {
  TimerMode mode = TimerMode::Astable;
  Voltage vs{5.0};
  Resistance r1{68e3};
  Resistance r2{68e3};
  Capacitance c{1e-6};
  Resistance r_mono{100e3};

  /// Throws std::invalid_argument when a value the mode uses is not positive.
  void validate() const;
  friend bool operator==(const Timer555Config&, const Timer555Config&) = default;
};

struct Timer555State {
  Voltage v_cap{0.0};
  LogicLevel output = LogicLevel::Low;
  bool discharging = false;

  friend bool operator==(const Timer555State&, const Timer555State&) = default;
};

struct TimerInputs {
  Voltage trigger;  // pin 2, active below Vs/3
  Voltage reset;    // pin 4, active below kResetThreshold
  bool enable = true;

  /// Pins idle: trigger and reset tied to Vs, enable on.
  static TimerInputs idle(const Timer555Config& cfg) { return {cfg.vs, cfg.vs, true}; }
};

/// Pin 4 level below which every mode is forced low and discharged.
inline constexpr Voltage kResetThreshold{0.4};
/// Reset level used by the bistable (flip-flop) configuration.
inline constexpr Voltage kBistableResetThreshold{0.7};

Timer555State timer_init(const Timer555Config& cfg);

/// True when the inputs hold the chip in reset: pin 4 below kResetThreshold
/// or the enable switch off.
bool reset_active(const TimerInputs& in);

/// Advances the timer by dt with inputs held constant over the step.
/// Throws std::invalid_argument for dt <= 0.
Timer555State timer_step(const Timer555State& state, const TimerInputs& in, const Timer555Config& cfg,
                         Duration dt);

/// Applies the instantaneous input logic without advancing time. Used for
/// the first sample of a run.
Timer555State timer_settle(const Timer555State& state, const TimerInputs& in, const Timer555Config& cfg);

/// Free-running astable with idle pins (or held in reset when enable is
/// false). Channels "timer_vcap" (V) and "timer_out" (0/1); samples at
/// k*dt for k = 0 .. floor(t_end/dt).
Trace simulate_timer_free_run(const Timer555Config& cfg, Duration t_end, Duration dt, bool enable = true);

}  // namespace heatctl

#endif  // HEATCTL_TIMER555_HPP
