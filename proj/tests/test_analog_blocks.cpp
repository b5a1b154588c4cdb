#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "heatctl/analog_blocks.hpp"
#include "oracles.hpp"

using namespace heatctl;
using doctest::Approx;

namespace {
// First sine peak of 50 Hz mains.
constexpr Duration kPeak{0.005};
}  // namespace

TEST_CASE("rectified_voltage") {
  const RailParams p;
  CHECK(rectified_voltage(kPeak, p).value == Approx(12.0 * std::numbers::sqrt2 - 1.4).epsilon(1e-12));
  CHECK(rectified_voltage(kPeak, p).value == Approx(15.57).epsilon(0.01 / 15.57));
  CHECK(rectified_voltage(Duration(0.0), p).value == 0.0);
  RailParams ideal = p;
  ideal.diode_drop = Voltage(0.0);
  CHECK(rectified_voltage(kPeak, ideal).value == Approx(16.97).epsilon(0.01 / 16.97));
  // Second half-cycle is folded up by the bridge.
  CHECK(rectified_voltage(Duration(0.015), p).value == Approx(rectified_voltage(kPeak, p).value).epsilon(1e-12));
}

TEST_CASE("filtered_rail matches the brute-force ideal-diode integration") {
  for (double c : {2200e-6, 1683.6e-6, 470e-6}) {
    RailParams p;
    p.c_filter = Capacitance(c);
    // Steady-state trajectory: compare at points across the 9th cycle.
    for (double t = 0.18; t < 0.2; t += 0.00137) {
      const double expected = oracle::rail_at(t, 12.0, 50.0, 0.7, 0.2, c);
      CHECK(filtered_rail(Duration(t), p).value == Approx(expected).epsilon(1e-4));
    }
  }
}

TEST_CASE("filtered_rail ripple against the full-wave approximation") {
  struct Case {
    double c;
    double pp_brute_force;  // oracle::rail_extremes, frozen
  };
  for (const Case k : {Case{2200e-6, 0.8164887861126076}, Case{1683.6e-6, 1.0500043224207918}}) {
    RailParams p;
    p.c_filter = Capacitance(k.c);
    double hi = -1e9, lo = 1e9;
    for (int i = 0; i < 20000; ++i) {
      const double v = filtered_rail(Duration(0.2 + i * 1e-6), p).value;
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
    const double approx_pp = 0.2 / (2.0 * 50.0 * k.c);
    CHECK(hi == Approx(15.5705627484771).epsilon(1e-9));
    CHECK(hi - lo == Approx(k.pp_brute_force).epsilon(2e-3));
    CHECK(hi - lo <= approx_pp);
    CHECK(hi - lo >= 0.85 * approx_pp);
  }
}

TEST_CASE("filtered_rail brute-force oracle values") {
  const auto [hi, lo] = oracle::rail_extremes(12.0, 50.0, 0.7, 0.2, 2200e-6);
  CHECK(hi - lo == Approx(0.8164887861126076).epsilon(1e-3));
}

TEST_CASE("filtered_rail without load holds the peak") {
  RailParams p;
  p.i_load = Current(0.0);
  for (double t = 0.0; t < 0.05; t += 0.0007)
    CHECK(filtered_rail(Duration(t), p).value == Approx(15.5705627484771).epsilon(1e-12));
}

TEST_CASE("filtered_rail is never below the rectified voltage and never negative") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ut(0.0, 2.0), uc(10e-6, 10000e-6), ui(0.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    RailParams p;
    p.c_filter = Capacitance(uc(rng));
    p.i_load = Current(ui(rng));
    const Duration t(ut(rng));
    const double v = filtered_rail(t, p).value;
    CHECK(v >= rectified_voltage(t, p).value - 1e-12);
    CHECK(v >= 0.0);
  }
}

TEST_CASE("regulator_out") {
  const RailParams p;
  CHECK(regulator_out(Voltage(15.57), p).value == 5.0);
  CHECK(regulator_out(Voltage(6.0), p).value == 4.0);
  CHECK(regulator_out(Voltage(1.0), p).value == 0.0);
}

TEST_CASE("lm335_voltage") {
  const SensorParams p;
  CHECK(lm335_voltage(TemperatureK{298.2}, p).value == Approx(2.982).epsilon(1e-15));
  CHECK(lm335_voltage(TemperatureK{0.0}, p).value == 0.0);
  CHECK(lm335_voltage(TemperatureK{373.15}, p).value == Approx(3.7315).epsilon(1e-15));
  CHECK_THROWS_AS(lm335_voltage(TemperatureK{-1.0}, p), std::invalid_argument);
}

TEST_CASE("subtractor_out") {
  const SensorParams p;
  CHECK(subtractor_out(Voltage(2.982), p, Voltage(12.0)).value == Approx(0.2505).epsilon(1e-12));
  CHECK(subtractor_out(Voltage(2.7315), p, Voltage(12.0)).value == 0.0);
  const SensorParams literal{0.001, Voltage(0.273)};
  CHECK(subtractor_out(Voltage(0.2982), literal, Voltage(12.0)).value == Approx(0.0252).epsilon(1e-12));
  // Rail limits.
  CHECK(subtractor_out(Voltage(1.0), p, Voltage(12.0)).value == 0.0);
  CHECK(subtractor_out(Voltage(20.0), p, Voltage(12.0)).value == 12.0);
}

TEST_CASE("subtractor_out stays within the rails") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-50.0, 50.0), ur(0.0, 20.0);
  const SensorParams p;
  for (int i = 0; i < 1000; ++i) {
    const double rail = ur(rng);
    const double v = subtractor_out(Voltage(u(rng)), p, Voltage(rail)).value;
    CHECK(v >= 0.0);
    CHECK(v <= rail);
  }
}

TEST_CASE("temp_to_threshold") {
  const SensorParams p;
  CHECK(temp_to_threshold(TemperatureC{30.0}, p).value == Approx(0.300).epsilon(1e-15));
  CHECK(temp_to_threshold(TemperatureC{0.0}, p).value == 0.0);
  CHECK(temp_to_threshold(TemperatureC{45.5}, p).value == Approx(0.455).epsilon(1e-15));
  CHECK_THROWS_AS(temp_to_threshold(TemperatureC{-5.0}, p), std::invalid_argument);
}

TEST_CASE("comparator_out") {
  const ComparatorParams p{Voltage(0.300), Voltage(0.0)};
  CHECK(comparator_out(Voltage(0.200), LogicLevel::Low, p) == LogicLevel::Low);
  CHECK(comparator_out(Voltage(0.300), LogicLevel::Low, p) == LogicLevel::High);
  const ComparatorParams h{Voltage(0.300), Voltage(0.010)};
  CHECK(comparator_out(Voltage(0.295), LogicLevel::High, h) == LogicLevel::High);
  CHECK(comparator_out(Voltage(0.290), LogicLevel::High, h) == LogicLevel::High);
  CHECK(comparator_out(Voltage(0.2899), LogicLevel::High, h) == LogicLevel::Low);
  CHECK(comparator_out(Voltage(0.295), LogicLevel::Low, h) == LogicLevel::Low);
}

TEST_CASE("comparator without hysteresis ignores its previous state") {
  const ComparatorParams p{Voltage(0.300), Voltage(0.0)};
  for (double dv : {-1e-3, -1e-12, 0.0, 1e-12, 1e-3}) {
    const Voltage v(0.300 + dv);
    const LogicLevel expected = logic_from(dv >= 0.0);
    CHECK(comparator_out(v, LogicLevel::Low, p) == expected);
    CHECK(comparator_out(v, LogicLevel::High, p) == expected);
  }
}

TEST_CASE("comparator is monotone in v_plus") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0), uh(0.0, 0.1);
  for (int i = 0; i < 1000; ++i) {
    const ComparatorParams p{Voltage(u(rng)), Voltage(uh(rng))};
    const double a = u(rng), b = u(rng);
    const double lo = std::min(a, b), hi = std::max(a, b);
    for (LogicLevel prev : {LogicLevel::Low, LogicLevel::High}) {
      if (is_high(comparator_out(Voltage(lo), prev, p))) CHECK(is_high(comparator_out(Voltage(hi), prev, p)));
    }
  }
}

TEST_CASE("trigger decision is invariant under sensor gain") {
  // Celsius reading >= preset must decide the comparator for both the
  // datasheet gain and the 1 mV/K variant, away from exact ties.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ut(-20.0, 120.0), up(0.0, 100.0);
  for (const double gain : {0.001, 0.010}) {
    const SensorParams s{gain, Voltage(gain * kKelvinOffset)};
    for (int i = 0; i < 2000; ++i) {
      const TemperatureC temp{ut(rng)};
      const TemperatureC preset{up(rng)};
      if (std::abs(temp.value - preset.value) < 1e-9) continue;
      const Voltage sub = subtractor_out(lm335_voltage(kelvin_from_celsius(temp), s), s, Voltage(12.0));
      const ComparatorParams cmp{temp_to_threshold(preset, s), Voltage(0.0)};
      CHECK(is_high(comparator_out(sub, LogicLevel::Low, cmp)) == (temp.value >= preset.value));
    }
  }
}

TEST_CASE("SensorNoise is deterministic, bounded and silent at zero amplitude") {
  SensorNoise a(Voltage(5e-3), 99), b(Voltage(5e-3), 99);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = a.sample().value;
    CHECK(x == b.sample().value);
    CHECK(std::abs(x) <= 5e-3);
    sum += x;
  }
  CHECK(std::abs(sum / 10000) < 2e-4);
  SensorNoise off(Voltage(0.0), 1);
  CHECK(off.sample().value == 0.0);
  CHECK_THROWS_AS(SensorNoise(Voltage(-1.0), 1), std::invalid_argument);
}
