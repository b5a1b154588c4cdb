#include "doctest.h"

#include <random>

#include "heatctl/trace.hpp"
#include "heatctl/units.hpp"

using namespace heatctl;

TEST_CASE("kelvin_from_celsius") {
  CHECK(kelvin_from_celsius(TemperatureC{25.0}).value == doctest::Approx(298.15).epsilon(1e-15));
  CHECK(kelvin_from_celsius(TemperatureC{-273.15}).value == 0.0);
  CHECK(kelvin_from_celsius(TemperatureC{100.0}).value == doctest::Approx(373.15).epsilon(1e-15));
  CHECK_THROWS_AS(kelvin_from_celsius(TemperatureC{-273.16}), std::invalid_argument);
  CHECK_THROWS_AS(kelvin_from_celsius(TemperatureC{std::nan("")}), std::invalid_argument);
}

TEST_CASE("celsius round trip is identity to machine precision") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-273.15, 2000.0);
  for (int i = 0; i < 1000; ++i) {
    const TemperatureC c{dist(rng)};
    const TemperatureC back = celsius_from_kelvin(kelvin_from_celsius(c));
    CHECK(std::abs(back.value - c.value) <= 4.0 * std::numeric_limits<double>::epsilon() * 273.15);
  }
}

TEST_CASE("quantities compare and combine within one dimension") {
  const Voltage a(1.5), b(0.5);
  CHECK((a + b).value == 2.0);
  CHECK((a - b) == Voltage(1.0));
  CHECK(a > b);
  CHECK((2.0 * a).value == 3.0);
  CHECK(a / b == 3.0);
}

TEST_CASE("logic levels render as 0/1 samples and as rail voltages") {
  CHECK(logic_sample(LogicLevel::High) == 1.0);
  CHECK(logic_sample(LogicLevel::Low) == 0.0);
  CHECK(logic_voltage(LogicLevel::High, Voltage(5.0)) == Voltage(5.0));
  CHECK(logic_voltage(LogicLevel::Low, Voltage(5.0)) == Voltage(0.0));
}

TEST_CASE("Trace keeps channels the same length") {
  Trace t(Duration(0.5), Duration(1.0));
  t.add_channel("a", {1, 2, 3});
  t.add_channel("b", {4, 5, 6});
  CHECK(t.sample_count() == 3);
  CHECK(t.time_at(2).value == 2.0);
  CHECK(t.channel("b")[1] == 5.0);
  CHECK_THROWS_AS(t.add_channel("c", {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(t.add_channel("a", {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(t.channel("missing"), std::out_of_range);
  CHECK_THROWS_AS(Trace(Duration(0.0)), std::invalid_argument);
}

TEST_CASE("samples_for includes t_end when it is a multiple of dt") {
  CHECK(samples_for(Duration(10.0), Duration(1e-3)) == 10001);
  CHECK(samples_for(Duration(1.0), Duration(0.3)) == 4);
  CHECK(samples_for(Duration(0.0), Duration(0.1)) == 1);
}
