#include "heatctl/units.hpp"

#include <algorithm>

#include "heatctl/trace.hpp"

namespace heatctl {

void require_finite(double v, std::string_view what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_positive(double v, std::string_view what) {
  require_finite(v, what);
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

void require_non_negative(double v, std::string_view what) {
  require_finite(v, what);
  if (v < 0.0) throw std::invalid_argument(std::string(what) + " must be non-negative");
}

TemperatureK kelvin_from_celsius(TemperatureC t) {
  require_finite(t.value, "temperature");
  if (t.value < -kKelvinOffset) throw std::invalid_argument("temperature below absolute zero");
  return TemperatureK{t.value + kKelvinOffset};
}

TemperatureC celsius_from_kelvin(TemperatureK t) {
  require_non_negative(t.value, "kelvin temperature");
  return TemperatureC{t.value - kKelvinOffset};
}

Trace::Trace(Duration dt, Duration t0) : dt_(dt), t0_(t0) {
  require_positive(dt, "trace dt");
  require_finite(t0.value, "trace t0");
}

void Trace::add_channel(std::string name, std::vector<double> samples) {
  if (has_channel(name)) throw std::invalid_argument("duplicate trace channel '" + name + "'");
  if (!channels_.empty() && samples.size() != sample_count())
    throw std::invalid_argument("channel '" + name + "' length differs from existing channels");
  channels_.emplace_back(std::move(name), std::move(samples));
}

bool Trace::has_channel(const std::string& name) const {
  return std::any_of(channels_.begin(), channels_.end(), [&](const auto& c) { return c.first == name; });
}

std::span<const double> Trace::channel(const std::string& name) const {
  for (const auto& [n, s] : channels_)
    if (n == name) return s;
  throw std::out_of_range("trace has no channel '" + name + "'");
}

std::size_t samples_for(Duration t_end, Duration dt) {
  require_positive(dt, "dt");
  require_non_negative(t_end, "t_end");
  return static_cast<std::size_t>(std::floor(t_end.value / dt.value + 1e-9)) + 1;
}

}  // namespace heatctl
