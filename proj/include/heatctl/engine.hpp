// Dual-sensor heat monitor: two temperature channels, each a sensor,
// subtractor and comparator, OR-ed into an alarm that gates the 555 tone
// timer and cuts the load.
//
// Trace channels produced by run_transient, in order:
//   rail_v        reservoir capacitor (unregulated) rail, V
//   reg_v         regulated rail, V
//   sensor1_v     LM335 terminal voltage incl. noise, V   (also sensor2_v)
//   sub1_v        subtractor output, V                    (also sub2_v)
//   cmp1          comparator output, 0/1                  (also cmp2)
//   timer_vcap    tone timer capacitor voltage, V
//   timer_out     tone timer output, 0/1
//   alarm         cmp1 OR cmp2, 0/1
//   load_enable   NOT alarm, 0/1
// With the monostable gate, "gate_out" (0/1) is inserted after cmp2.

#ifndef HEATCTL_ENGINE_HPP
#define HEATCTL_ENGINE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heatctl/analog_blocks.hpp"
#include "heatctl/timer555.hpp"
#include "heatctl/trace.hpp"
#include "heatctl/units.hpp"

namespace heatctl {

/// Piecewise-linear temperature stimulus; constant beyond the end points.
class TemperatureProfile {
 public:
  struct Breakpoint {
    Duration time;
    TemperatureC temp;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
  };

  /// Throws std::invalid_argument when empty or times are not strictly increasing.
  explicit TemperatureProfile(std::vector<Breakpoint> breakpoints);
  static TemperatureProfile constant(TemperatureC temp);

  TemperatureC at(Duration t) const;
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }

  /// Maximal spans within [0, t_end] where the profile is >= level,
  /// solved on each linear segment.
  std::vector<std::pair<Duration, Duration>> exceedance(TemperatureC level, Duration t_end) const;

  friend bool operator==(const TemperatureProfile&, const TemperatureProfile&) = default;

 private:
  std::vector<Breakpoint> breakpoints_;
};

enum class AlarmPolicy { FollowEither };

/// How the alarm reaches the tone timer's enable.
enum class TimerGate {
  Direct,      // alarm drives enable
  Monostable,  // alarm triggers a monostable whose output drives enable
};

struct CircuitSystem {
  RailParams rail;
  std::array<SensorParams, 2> sensors;
  std::array<ComparatorParams, 2> comparators;
  Timer555Config timer;  // tone generator, astable
  AlarmPolicy alarm_policy = AlarmPolicy::FollowEither;
  TimerGate gate = TimerGate::Direct;
  Timer555Config gate_timer{TimerMode::Monostable};

  /// Throws std::invalid_argument on any invalid block or a comparator
  /// threshold outside [0, regulator setpoint].
  void validate() const;
  friend bool operator==(const CircuitSystem&, const CircuitSystem&) = default;
};

struct NoiseConfig {
  Voltage amplitude{0.0};
  std::uint64_t seed = 0;
};

Trace run_transient(const CircuitSystem& sys, const std::array<TemperatureProfile, 2>& profiles, Duration dt,
                    Duration t_end, const NoiseConfig& noise = {});

struct AlarmReport {
  std::vector<std::pair<Duration, Duration>> intervals;  // [start, end)
  std::array<bool, 2> sensor_triggered{false, false};
};

/// Runs of the "alarm" channel at 1, as [t_start, t_end) at sample
/// resolution. Per-sensor flags are filled when cmp1/cmp2 are present.
AlarmReport alarm_intervals(const Trace& trace);

struct TimeWindow {
  Duration start;
  Duration end;
};

/// Raised when a channel has too few edges to measure.
class SignalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (rising edges - 1) / (time from first to last rising edge), over the
/// samples inside the window. Edges are crossings of the midpoint between
/// the channel's minimum and maximum in the window, timed by linear
/// interpolation between the two samples that straddle it.
Frequency measure_frequency(const Trace& trace, const std::string& channel, TimeWindow window);

/// Fraction of samples at the high level between the first and last rising
/// edge in the window.
double measure_duty_cycle(const Trace& trace, const std::string& channel, TimeWindow window);

/// Number of level changes on a 0/1 channel.
std::size_t count_edges(const Trace& trace, const std::string& channel);

struct SweepRow {
  TemperatureC preset;
  std::optional<Duration> first_alarm;
};

/// Drives both channels with `profile`, sets both comparators to each
/// preset in turn and records the first alarm sample. Rows run concurrently
/// and come back in preset order.
std::vector<SweepRow> sweep_preset(const CircuitSystem& sys, const TemperatureProfile& profile,
                                   const std::vector<TemperatureC>& presets, Duration dt, Duration t_end);

}  // namespace heatctl

#endif  // HEATCTL_ENGINE_HPP
