#include "heatctl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace heatctl {

TemperatureProfile::TemperatureProfile(std::vector<Breakpoint> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) throw std::invalid_argument("temperature profile needs at least one breakpoint");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    require_finite(breakpoints_[i].time.value, "profile time");
    if (breakpoints_[i].temp.value < -kKelvinOffset || !std::isfinite(breakpoints_[i].temp.value))
      throw std::invalid_argument("profile temperature below absolute zero");
    if (i > 0 && !(breakpoints_[i].time > breakpoints_[i - 1].time))
      throw std::invalid_argument("profile times must be strictly increasing");
  }
}

TemperatureProfile TemperatureProfile::constant(TemperatureC temp) {
  return TemperatureProfile({{Duration(0.0), temp}});
}

TemperatureC TemperatureProfile::at(Duration t) const {
  if (t <= breakpoints_.front().time) return breakpoints_.front().temp;
  if (t >= breakpoints_.back().time) return breakpoints_.back().temp;
  const auto hi = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                                   [](Duration x, const Breakpoint& b) { return x < b.time; });
  const auto lo = hi - 1;
  const double u = (t.value - lo->time.value) / (hi->time.value - lo->time.value);
  return TemperatureC{lo->temp.value + u * (hi->temp.value - lo->temp.value)};
}

std::vector<std::pair<Duration, Duration>> TemperatureProfile::exceedance(TemperatureC level, Duration t_end) const {
  // Vertices of the profile restricted to [0, t_end].
  std::vector<std::pair<double, double>> pts;
  pts.emplace_back(0.0, at(Duration(0.0)).value);
  for (const auto& b : breakpoints_)
    if (b.time.value > 0.0 && b.time < t_end) pts.emplace_back(b.time.value, b.temp.value);
  if (t_end.value > 0.0) pts.emplace_back(t_end.value, at(t_end).value);

  const double L = level.value;
  std::vector<std::pair<Duration, Duration>> out;
  auto add = [&](double a, double b) {
    if (!(b > a)) return;
    if (!out.empty() && out.back().second.value >= a) {
      out.back().second = Duration(std::max(out.back().second.value, b));
    } else {
      out.emplace_back(Duration(a), Duration(b));
    }
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto [ta, va] = pts[i];
    const auto [tb, vb] = pts[i + 1];
    const bool above_a = va >= L;
    const bool above_b = vb >= L;
    if (above_a && above_b) {
      add(ta, tb);
    } else if (above_a) {
      add(ta, ta + (tb - ta) * (va - L) / (va - vb));
    } else if (above_b) {
      add(ta + (tb - ta) * (L - va) / (vb - va), tb);
    }
  }
  return out;
}

void CircuitSystem::validate() const {
  rail.validate();
  for (const auto& s : sensors) s.validate();
  for (const auto& c : comparators) {
    c.validate();
    if (c.v_threshold.value < 0.0 || c.v_threshold > rail.reg_setpoint)
      throw std::invalid_argument("comparator threshold outside [0, regulated rail]");
  }
  if (timer.mode != TimerMode::Astable) throw std::invalid_argument("tone timer must be astable");
  timer.validate();
  if (gate == TimerGate::Monostable) {
    if (gate_timer.mode != TimerMode::Monostable) throw std::invalid_argument("gate timer must be monostable");
    gate_timer.validate();
  }
}

Trace run_transient(const CircuitSystem& sys, const std::array<TemperatureProfile, 2>& profiles, Duration dt,
                    Duration t_end, const NoiseConfig& noise) {
  sys.validate();
  require_positive(dt, "dt");
  require_finite(t_end.value, "t_end");
  if (!(t_end > dt)) throw std::invalid_argument("t_end must exceed dt");

  const std::size_t n = samples_for(t_end, dt);
  std::vector<double> rail(n), reg(n), timer_vcap(n), timer_out(n), alarm(n), load(n), gate_out;
  std::array<std::vector<double>, 2> sensor_v{std::vector<double>(n), std::vector<double>(n)};
  std::array<std::vector<double>, 2> sub_v = sensor_v;
  std::array<std::vector<double>, 2> cmp = sensor_v;
  const bool gated = sys.gate == TimerGate::Monostable;
  if (gated) gate_out.resize(n);

  SensorNoise disturbance(noise.amplitude, noise.seed);
  std::array<LogicLevel, 2> cmp_state{LogicLevel::Low, LogicLevel::Low};
  Timer555State tone = timer_init(sys.timer);
  Timer555State mono = gated ? timer_init(sys.gate_timer) : Timer555State{};

  auto advance = [&](const Timer555State& s, const TimerInputs& in, const Timer555Config& cfg, std::size_t k) {
    return k == 0 ? timer_settle(s, in, cfg) : timer_step(s, in, cfg, dt);
  };

  for (std::size_t k = 0; k < n; ++k) {
    const Duration t(static_cast<double>(k) * dt.value);
    const Voltage v_rail = filtered_rail(t, sys.rail);
    rail[k] = v_rail.value;
    reg[k] = regulator_out(v_rail, sys.rail).value;

    bool any = false;
    for (std::size_t ch = 0; ch < 2; ++ch) {
      const TemperatureK temp = kelvin_from_celsius(profiles[ch].at(t));
      const Voltage v_sensor = lm335_voltage(temp, sys.sensors[ch]) + disturbance.sample();
      const Voltage v_sub = subtractor_out(v_sensor, sys.sensors[ch], v_rail);
      cmp_state[ch] = comparator_out(v_sub, cmp_state[ch], sys.comparators[ch]);
      sensor_v[ch][k] = v_sensor.value;
      sub_v[ch][k] = v_sub.value;
      cmp[ch][k] = logic_sample(cmp_state[ch]);
      any = any || is_high(cmp_state[ch]);
    }
    alarm[k] = any ? 1.0 : 0.0;
    load[k] = any ? 0.0 : 1.0;

    bool enable = any;
    if (gated) {
      TimerInputs in = TimerInputs::idle(sys.gate_timer);
      if (any) in.trigger = Voltage(0.0);
      mono = advance(mono, in, sys.gate_timer, k);
      gate_out[k] = logic_sample(mono.output);
      enable = is_high(mono.output);
    }
    TimerInputs in = TimerInputs::idle(sys.timer);
    in.enable = enable;
    tone = advance(tone, in, sys.timer, k);
    timer_vcap[k] = tone.v_cap.value;
    timer_out[k] = logic_sample(tone.output);
  }

  Trace trace(dt);
  trace.add_channel("rail_v", std::move(rail));
  trace.add_channel("reg_v", std::move(reg));
  trace.add_channel("sensor1_v", std::move(sensor_v[0]));
  trace.add_channel("sensor2_v", std::move(sensor_v[1]));
  trace.add_channel("sub1_v", std::move(sub_v[0]));
  trace.add_channel("sub2_v", std::move(sub_v[1]));
  trace.add_channel("cmp1", std::move(cmp[0]));
  trace.add_channel("cmp2", std::move(cmp[1]));
  if (gated) trace.add_channel("gate_out", std::move(gate_out));
  trace.add_channel("timer_vcap", std::move(timer_vcap));
  trace.add_channel("timer_out", std::move(timer_out));
  trace.add_channel("alarm", std::move(alarm));
  trace.add_channel("load_enable", std::move(load));
  return trace;
}

AlarmReport alarm_intervals(const Trace& trace) {
  const auto alarm = trace.channel("alarm");
  AlarmReport report;
  const std::size_t n = alarm.size();
  std::size_t k = 0;
  while (k < n) {
    if (alarm[k] < 0.5) {
      ++k;
      continue;
    }
    const std::size_t start = k;
    while (k < n && alarm[k] >= 0.5) ++k;
    // A run that reaches the last sample closes at that sample.
    const Duration end = k < n ? trace.time_at(k) : trace.time_at(n - 1);
    report.intervals.emplace_back(trace.time_at(start), end);
  }
  const std::array<const char*, 2> names{"cmp1", "cmp2"};
  for (std::size_t ch = 0; ch < 2; ++ch) {
    if (!trace.has_channel(names[ch])) continue;
    const auto c = trace.channel(names[ch]);
    report.sensor_triggered[ch] = std::any_of(c.begin(), c.end(), [](double v) { return v >= 0.5; });
  }
  return report;
}

namespace {

struct EdgeScan {
  std::vector<std::size_t> rising;
  double mid = 0.0;
};

EdgeScan scan_rising_edges(const Trace& trace, const std::string& channel, TimeWindow window) {
  if (!(window.end > window.start)) throw std::invalid_argument("empty measurement window");
  const auto v = trace.channel(channel);
  std::size_t first = v.size(), last = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Duration t = trace.time_at(k);
    if (t >= window.start && t <= window.end) {
      first = std::min(first, k);
      last = k;
    }
  }
  if (first >= v.size()) throw SignalError("no samples of '" + channel + "' inside the window");
  const auto [lo, hi] = std::minmax_element(v.begin() + first, v.begin() + last + 1);
  if (*lo == *hi) throw SignalError("channel '" + channel + "' is constant, no edges to measure");
  EdgeScan scan;
  scan.mid = 0.5 * (*lo + *hi);
  for (std::size_t k = first + 1; k <= last; ++k)
    if (v[k - 1] < scan.mid && v[k] >= scan.mid) scan.rising.push_back(k);
  if (scan.rising.size() < 2)
    throw SignalError("channel '" + channel + "' has fewer than 2 rising edges in the window");
  return scan;
}

}  // namespace

Frequency measure_frequency(const Trace& trace, const std::string& channel, TimeWindow window) {
  const EdgeScan scan = scan_rising_edges(trace, channel, window);
  const auto v = trace.channel(channel);
  auto crossing = [&](std::size_t k) {
    const double u = (scan.mid - v[k - 1]) / (v[k] - v[k - 1]);
    return trace.time_at(k - 1).value + u * trace.dt().value;
  };
  const double span = crossing(scan.rising.back()) - crossing(scan.rising.front());
  return Frequency(static_cast<double>(scan.rising.size() - 1) / span);
}

double measure_duty_cycle(const Trace& trace, const std::string& channel, TimeWindow window) {
  const EdgeScan scan = scan_rising_edges(trace, channel, window);
  const auto v = trace.channel(channel);
  std::size_t high = 0;
  for (std::size_t k = scan.rising.front(); k < scan.rising.back(); ++k)
    if (v[k] >= scan.mid) ++high;
  return static_cast<double>(high) / static_cast<double>(scan.rising.back() - scan.rising.front());
}

std::size_t count_edges(const Trace& trace, const std::string& channel) {
  const auto v = trace.channel(channel);
  std::size_t edges = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if ((v[k] >= 0.5) != (v[k - 1] >= 0.5)) ++edges;
  return edges;
}

std::vector<SweepRow> sweep_preset(const CircuitSystem& sys, const TemperatureProfile& profile,
                                   const std::vector<TemperatureC>& presets, Duration dt, Duration t_end) {
  if (presets.empty()) throw std::invalid_argument("preset list is empty");
  std::vector<std::future<SweepRow>> jobs;
  jobs.reserve(presets.size());
  for (const TemperatureC preset : presets) {
    CircuitSystem row_sys = sys;
    for (std::size_t ch = 0; ch < 2; ++ch)
      row_sys.comparators[ch].v_threshold = temp_to_threshold(preset, row_sys.sensors[ch]);
    jobs.push_back(std::async(std::launch::async, [row_sys, preset, &profile, dt, t_end] {
      const Trace trace = run_transient(row_sys, {profile, profile}, dt, t_end);
      const auto alarm = trace.channel("alarm");
      SweepRow row{preset, std::nullopt};
      const auto it = std::find_if(alarm.begin(), alarm.end(), [](double v) { return v >= 0.5; });
      if (it != alarm.end()) row.first_alarm = trace.time_at(static_cast<std::size_t>(it - alarm.begin()));
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(jobs.size());
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

}  // namespace heatctl
