#include "heatctl/timer555.hpp"

#include <cmath>
#include <vector>

namespace heatctl {

namespace {

Timer555State reset_state() { return {Voltage(0.0), LogicLevel::Low, true}; }

// Capacitor voltage after relaxing for `t` toward `target` with time constant tau.
double relax(double v, double target, double tau, double t) {
  return target - (target - v) * std::exp(-t / tau);
}

// Time to relax from v to `level` toward `target`; 0 when already there.
double time_to_reach(double v, double level, double target, double tau) {
  const double num = target - v;
  const double den = target - level;
  if (num / den <= 1.0) return 0.0;
  return tau * std::log(num / den);
}

Timer555State advance_astable(Timer555State s, const Timer555Config& cfg, double dt) {
  const double vs = cfg.vs.value;
  const double upper = 2.0 * vs / 3.0;
  const double lower = vs / 3.0;
  const double tau_charge = (cfg.r1.value + cfg.r2.value) * cfg.c.value;
  const double tau_discharge = cfg.r2.value * cfg.c.value;

  double v = s.v_cap.value;
  double remaining = dt;
  while (remaining > 0.0) {
    if (is_high(s.output)) {
      const double t_cross = time_to_reach(v, upper, vs, tau_charge);
      if (t_cross > remaining) {
        v = relax(v, vs, tau_charge, remaining);
        break;
      }
      remaining -= t_cross;
      v = upper;
      s.output = LogicLevel::Low;
      s.discharging = true;
    } else {
      // Discharge toward ground; target 0 makes the ratio v / lower.
      const double t_cross = v > lower ? tau_discharge * std::log(v / lower) : 0.0;
      if (t_cross > remaining) {
        v = relax(v, 0.0, tau_discharge, remaining);
        break;
      }
      remaining -= t_cross;
      v = lower;
      s.output = LogicLevel::High;
      s.discharging = false;
    }
  }
  s.v_cap = Voltage(v);
  return s;
}

Timer555State advance_monostable(Timer555State s, const TimerInputs& in, const Timer555Config& cfg, double dt) {
  if (!is_high(s.output)) {
    s.v_cap = Voltage(0.0);
    return s;
  }
  const double vs = cfg.vs.value;
  const double tau = cfg.r_mono.value * cfg.c.value;
  const bool triggered = in.trigger.value < vs / 3.0;
  // A trigger held past the timing interval keeps the output high.
  if (!triggered) {
    const double t_cross = time_to_reach(s.v_cap.value, 2.0 * vs / 3.0, vs, tau);
    if (t_cross <= dt) return {Voltage(0.0), LogicLevel::Low, true};
  }
  s.v_cap = Voltage(relax(s.v_cap.value, vs, tau, dt));
  return s;
}

}  // namespace

std::string_view to_string(TimerMode m) {
  switch (m) {
    case TimerMode::Astable: return "astable";
    case TimerMode::Monostable: return "monostable";
    case TimerMode::Bistable: return "bistable";
  }
  return "unknown";
}

void Timer555Config::validate() const {
  require_positive(vs, "timer vs");
  switch (mode) {
    case TimerMode::Astable:
      require_positive(r1, "timer r1");
      require_positive(r2, "timer r2");
      require_positive(c, "timer c");
      break;
    case TimerMode::Monostable:
      require_positive(r_mono, "timer r_mono");
      require_positive(c, "timer c");
      break;
    case TimerMode::Bistable:
      break;
  }
}

Timer555State timer_init(const Timer555Config& cfg) {
  cfg.validate();
  if (cfg.mode == TimerMode::Astable) return {Voltage(0.0), LogicLevel::High, false};
  return {Voltage(0.0), LogicLevel::Low, false};
}

bool reset_active(const TimerInputs& in) { return !in.enable || in.reset < kResetThreshold; }

Timer555State timer_settle(const Timer555State& state, const TimerInputs& in, const Timer555Config& cfg) {
  if (reset_active(in)) return reset_state();
  const double vs = cfg.vs.value;
  Timer555State s = state;
  switch (cfg.mode) {
    case TimerMode::Astable:
      // Trigger and threshold pins both watch the capacitor.
      if (s.v_cap.value >= 2.0 * vs / 3.0) {
        s.output = LogicLevel::Low;
        s.discharging = true;
      } else if (s.v_cap.value < vs / 3.0) {
        s.output = LogicLevel::High;
        s.discharging = false;
      }
      break;
    case TimerMode::Monostable:
      if (in.trigger.value < vs / 3.0) {
        s.output = LogicLevel::High;
        s.discharging = false;
      } else if (is_high(s.output) && s.v_cap.value >= 2.0 * vs / 3.0) {
        s = reset_state();
      }
      break;
    case TimerMode::Bistable:
      if (in.reset < kBistableResetThreshold) {
        s.output = LogicLevel::Low;
      } else if (in.trigger.value < vs / 3.0) {
        s.output = LogicLevel::High;
      }
      break;
  }
  return s;
}

Timer555State timer_step(const Timer555State& state, const TimerInputs& in, const Timer555Config& cfg,
                         Duration dt) {
  require_positive(dt, "timer dt");
  const Timer555State s = timer_settle(state, in, cfg);
  if (reset_active(in)) return s;
  switch (cfg.mode) {
    case TimerMode::Astable: return advance_astable(s, cfg, dt.value);
    case TimerMode::Monostable: return advance_monostable(s, in, cfg, dt.value);
    case TimerMode::Bistable: return s;
  }
  return s;
}

Trace simulate_timer_free_run(const Timer555Config& cfg, Duration t_end, Duration dt, bool enable) {
  if (cfg.mode != TimerMode::Astable) throw std::invalid_argument("free run requires an astable timer");
  require_positive(dt, "dt");
  require_positive(t_end, "t_end");
  const std::size_t n = samples_for(t_end, dt);

  TimerInputs in = TimerInputs::idle(cfg);
  in.enable = enable;

  std::vector<double> v_cap(n), out(n);
  Timer555State s = timer_settle(timer_init(cfg), in, cfg);
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) s = timer_step(s, in, cfg, dt);
    v_cap[k] = s.v_cap.value;
    out[k] = logic_sample(s.output);
  }
  Trace trace(dt);
  trace.add_channel("timer_vcap", std::move(v_cap));
  trace.add_channel("timer_out", std::move(out));
  return trace;
}

}  // namespace heatctl
