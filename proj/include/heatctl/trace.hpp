#ifndef HEATCTL_TRACE_HPP
#define HEATCTL_TRACE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heatctl/units.hpp"

namespace heatctl {

/// Uniformly sampled multi-channel waveform. Sample k of every channel is
/// taken at t0 + k*dt; all channels hold the same number of samples.
class Trace {
 public:
  Trace(Duration dt, Duration t0 = Duration(0.0));

  Duration dt() const { return dt_; }
  Duration t0() const { return t0_; }
  Duration time_at(std::size_t k) const { return Duration(t0_.value + static_cast<double>(k) * dt_.value); }

  /// Appends a channel. Throws std::invalid_argument on a duplicate name or
  /// when the length differs from the channels already present.
  void add_channel(std::string name, std::vector<double> samples);

  bool has_channel(const std::string& name) const;
  /// Throws std::out_of_range for unknown names.
  std::span<const double> channel(const std::string& name) const;

  std::size_t channel_count() const { return channels_.size(); }
  std::size_t sample_count() const { return channels_.empty() ? 0 : channels_.front().second.size(); }
  const std::vector<std::pair<std::string, std::vector<double>>>& channels() const { return channels_; }

 private:
  Duration dt_;
  Duration t0_;
  std::vector<std::pair<std::string, std::vector<double>>> channels_;
};

/// Number of samples k*dt, k = 0, 1, ..., covering [0, t_end]. A t_end
/// that is a multiple of dt up to rounding is included.
std::size_t samples_for(Duration t_end, Duration dt);

}  // namespace heatctl

#endif  // HEATCTL_TRACE_HPP
