#ifndef HEATCTL_SELFTEST_HPP
#define HEATCTL_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace heatctl {

struct SelftestResult {
  std::string name;
  double expected;
  double actual;
  double tolerance;
  bool passed;
};

/// Checks the reference design values (supply sizing, LED resistor, tone
/// timing, sensor voltage, comparator example, reset behavior).
std::vector<SelftestResult> run_selftest();

/// Prints one line per check; returns true when all pass.
bool print_selftest(std::ostream& out);

}  // namespace heatctl

#endif  // HEATCTL_SELFTEST_HPP
