// Physical quantity vocabulary shared by the heat-control simulator.
//
// Every quantity is a plain double in SI base units wrapped in a tag type so
// that a resistance cannot be passed where a capacitance is expected. No
// dimensional algebra is attempted: products of different quantities are
// formed explicitly through .value.

#ifndef HEATCTL_UNITS_HPP
#define HEATCTL_UNITS_HPP

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace heatctl {

template <class Tag>
struct Quantity {
  double value = 0.0;

  constexpr Quantity() = default;
  constexpr explicit Quantity(double v) : value(v) {}

  constexpr Quantity operator+(Quantity o) const { return Quantity(value + o.value); }
  constexpr Quantity operator-(Quantity o) const { return Quantity(value - o.value); }
  constexpr Quantity operator-() const { return Quantity(-value); }
  constexpr Quantity operator*(double s) const { return Quantity(value * s); }
  constexpr Quantity operator/(double s) const { return Quantity(value / s); }
  constexpr double operator/(Quantity o) const { return value / o.value; }
  constexpr Quantity& operator+=(Quantity o) { value += o.value; return *this; }
  constexpr Quantity& operator-=(Quantity o) { value -= o.value; return *this; }

  constexpr auto operator<=>(const Quantity&) const = default;
};

template <class Tag>
constexpr Quantity<Tag> operator*(double s, Quantity<Tag> q) { return q * s; }

struct VoltageTag {};
struct ResistanceTag {};
struct CapacitanceTag {};
struct CurrentTag {};
struct DurationTag {};
struct FrequencyTag {};

using Voltage = Quantity<VoltageTag>;          // V
using Resistance = Quantity<ResistanceTag>;    // ohm
using Capacitance = Quantity<CapacitanceTag>;  // F
using Current = Quantity<CurrentTag>;          // A
using Duration = Quantity<DurationTag>;        // s
using Frequency = Quantity<FrequencyTag>;      // Hz

constexpr Voltage volts(double v) { return Voltage(v); }
constexpr Resistance ohms(double v) { return Resistance(v); }
constexpr Capacitance farads(double v) { return Capacitance(v); }
constexpr Current amperes(double v) { return Current(v); }
constexpr Duration seconds(double v) { return Duration(v); }
constexpr Frequency hertz(double v) { return Frequency(v); }

inline constexpr double kKelvinOffset = 273.15;

struct TemperatureK {
  double value = 0.0;
  constexpr auto operator<=>(const TemperatureK&) const = default;
};

struct TemperatureC {
  double value = 0.0;
  constexpr auto operator<=>(const TemperatureC&) const = default;
};

/// Throws std::invalid_argument below absolute zero.
TemperatureK kelvin_from_celsius(TemperatureC t);
TemperatureC celsius_from_kelvin(TemperatureK t);

enum class LogicLevel { Low, High };

constexpr bool is_high(LogicLevel l) { return l == LogicLevel::High; }
constexpr LogicLevel logic_from(bool b) { return b ? LogicLevel::High : LogicLevel::Low; }

/// Trace sample encoding of a logic level (0 or 1).
constexpr double logic_sample(LogicLevel l) { return is_high(l) ? 1.0 : 0.0; }

/// Signal rendering of a logic level against a rail.
constexpr Voltage logic_voltage(LogicLevel l, Voltage rail) {
  return is_high(l) ? rail : Voltage(0.0);
}

// Argument checks used at API boundaries. `what` names the offending input.
void require_finite(double v, std::string_view what);
void require_positive(double v, std::string_view what);
void require_non_negative(double v, std::string_view what);

template <class Tag>
void require_positive(Quantity<Tag> q, std::string_view what) { require_positive(q.value, what); }
template <class Tag>
void require_non_negative(Quantity<Tag> q, std::string_view what) { require_non_negative(q.value, what); }

}  // namespace heatctl

#endif  // HEATCTL_UNITS_HPP
