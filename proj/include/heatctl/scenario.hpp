// Scenario files and trace tables.
//
// Scenario grammar (format 1): line oriented, '#' starts a comment.
// Section headers are [run], [supply], [sensor.N], [comparator.N], [timer]
// and [profile.N] with N in {1, 2}. Key sections hold `key = value` lines;
// values are decimal numbers with an optional SI suffix (n u m k M).
// Profile sections hold one `time_s temp_c` pair per line. [run],
// [profile.1] and [profile.2] are required, everything else defaults.
//
// Trace table: comma separated, header `time_s,<channel>,...`, one row per
// sample, numbers in shortest round-trip decimal form.

#ifndef HEATCTL_SCENARIO_HPP
#define HEATCTL_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heatctl/engine.hpp"

namespace heatctl {

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct RunSettings {
  int format = 1;
  Duration dt{1e-3};
  Duration t_end{10.0};
  std::uint64_t seed = 0;
  Voltage noise{0.0};
  friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

/// A comparator reference given either directly in volts or as a preset
/// temperature converted through the channel's sensor gain.
struct ComparatorSetting {
  enum class Kind { Threshold, Preset };
  Kind kind = Kind::Preset;
  double value = 30.0;  // V for Threshold, degC for Preset
  Voltage hysteresis{0.0};
  friend bool operator==(const ComparatorSetting&, const ComparatorSetting&) = default;
};

struct TimerSettings {
  Voltage vs{5.0};
  Resistance r1{68e3};
  Resistance r2{68e3};
  Capacitance c{1e-6};
  TimerGate gate = TimerGate::Direct;
  Resistance r_mono{100e3};
  Capacitance c_mono{10e-6};
  friend bool operator==(const TimerSettings&, const TimerSettings&) = default;
};

struct ScenarioDoc {
  RunSettings run;
  RailParams supply;
  std::array<SensorParams, 2> sensors;
  std::array<ComparatorSetting, 2> comparators;
  TimerSettings timer;
  std::array<std::vector<TemperatureProfile::Breakpoint>, 2> profiles;

  CircuitSystem system() const;
  std::array<TemperatureProfile, 2> stimulus() const;
  NoiseConfig noise() const { return {run.noise, run.seed}; }

  friend bool operator==(const ScenarioDoc&, const ScenarioDoc&) = default;
};

/// Number with optional SI suffix: "68k", "1u", "2.2m", "1e-6", "-3".
/// Throws std::invalid_argument on malformed text.
double parse_si_number(std::string_view text);

/// Shortest decimal text that reads back to exactly `v`.
std::string format_number(double v);

/// Throws ScenarioError carrying the offending line number.
ScenarioDoc parse_scenario(std::string_view text);
ScenarioDoc load_scenario(const std::filesystem::path& path);

/// Canonical text: fixed section and key order, every value explicit,
/// plain SI numbers without suffixes.
std::string render_scenario(const ScenarioDoc& doc);

void write_trace(const Trace& trace, std::ostream& out);
/// Throws std::runtime_error naming the path when the file cannot be written.
void write_trace(const Trace& trace, const std::filesystem::path& path);
/// Inverse of write_trace. dt and t0 are recovered from the time column.
Trace read_trace(const std::filesystem::path& path);

}  // namespace heatctl

#endif  // HEATCTL_SCENARIO_HPP
