// heatsim: design calculator and transient simulator for the dual-sensor
// heat monitor.
//
//   heatsim design [--vs 12 --ripple 0.07 --iload 0.2 --f 50 --vled 2.7 --iled 3.2m
//                   --r1 68k --r2 68k --c2 1u --r3 8.2k --c3 47u]
//   heatsim simulate <scenario> --out <trace.csv>
//   heatsim sweep <scenario> --presets 25,30,35
//   heatsim selftest

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heatctl/design_calc.hpp"
#include "heatctl/engine.hpp"
#include "heatctl/scenario.hpp"
#include "heatctl/selftest.hpp"

namespace {

using namespace heatctl;

struct DesignArgs {
  std::string vs = "12", ripple = "0.07", iload = "0.2", f = "50", vsupply = "5", vled = "2.7", iled = "3.2m";
  std::string r1 = "68k", r2 = "68k", c2 = "1u", r3 = "8.2k", c3 = "47u";
};

std::string sig(double v, int digits = 7) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

void row(const std::string& label, const std::string& value, const std::string& unit, const std::string& note = {}) {
  std::cout << "  " << std::left << std::setw(26) << label << std::right << std::setw(14) << value << ' '
            << std::left << std::setw(4) << unit << note << '\n';
}

int run_design(const DesignArgs& a) {
  PsuDesignInput psu{Voltage(parse_si_number(a.vs)), parse_si_number(a.ripple), Current(parse_si_number(a.iload)),
                     Frequency(parse_si_number(a.f))};
  AstableDesignInput timer{Resistance(parse_si_number(a.r1)), Resistance(parse_si_number(a.r2)),
                           Resistance(parse_si_number(a.r3)), Capacitance(parse_si_number(a.c2)),
                           Capacitance(parse_si_number(a.c3))};
  const DesignReport r = design_report(psu, Voltage(parse_si_number(a.vsupply)), Voltage(parse_si_number(a.vled)),
                                       Current(parse_si_number(a.iled)), timer);

  std::cout << "Power supply\n";
  row("Vpk", sig(r.v_pk.value), "V", "(reference 16.97)");
  row("Vripple", sig(r.v_ripple.value), "V", "(reference 1.1879)");
  row("C exact", sig(r.c_exact.value * 1e6), "uF", "(reference 1684)");
  row("C standard (E6)", sig(r.c_standard.value * 1e6), "uF", "(reference 2200)");
  std::cout << "Indicator LED\n";
  row("R_led", sig(r.r_led.value), "ohm", "(reference 718.75)");
  std::cout << "Tone timer, 0.7 coefficient, T_OFF on R3/C3\n";
  row("T_ON", sig(r.t_on.value), "s", "(reference 0.0952)");
  row("T_OFF", sig(r.t_off.value), "s", "(reference 0.26978)");
  row("T", sig(r.period.value), "s");
  row("T, T_OFF rounded", sig(r.period_rounded.value), "s", "(reference 0.3652)");
  row("F", sig(r.frequency.value), "Hz");
  row("F, T_OFF rounded", sig(r.frequency_rounded.value), "Hz", "(reference 2.74)");
  std::cout << "Tone timer, ln 2 model on R1, R2, C2\n";
  row("t_high", sig(r.standard.t_high.value), "s");
  row("t_low", sig(r.standard.t_low.value), "s");
  row("f", sig(r.standard.frequency.value), "Hz");
  return 0;
}

int run_simulate(const std::string& scenario, const std::string& out_path) {
  const ScenarioDoc doc = load_scenario(scenario);
  const Trace trace = run_transient(doc.system(), doc.stimulus(), doc.run.dt, doc.run.t_end, doc.noise());
  write_trace(trace, std::filesystem::path(out_path));
  const AlarmReport report = alarm_intervals(trace);
  std::cout << "samples: " << trace.sample_count() << "  channels: " << trace.channel_count() << '\n';
  std::cout << "sensor 1 triggered: " << (report.sensor_triggered[0] ? "yes" : "no")
            << "  sensor 2 triggered: " << (report.sensor_triggered[1] ? "yes" : "no") << '\n';
  std::cout << "alarm intervals: " << report.intervals.size() << '\n';
  for (const auto& [start, end] : report.intervals)
    std::cout << "  [" << sig(start.value, 9) << " s, " << sig(end.value, 9) << " s)\n";
  std::cout << "trace written to " << out_path << '\n';
  return 0;
}

int run_sweep(const std::string& scenario, const std::string& presets_text) {
  const ScenarioDoc doc = load_scenario(scenario);
  std::vector<TemperatureC> presets;
  std::stringstream ss(presets_text);
  std::string item;
  while (std::getline(ss, item, ',')) presets.push_back(TemperatureC{parse_si_number(item)});
  const auto rows = sweep_preset(doc.system(), doc.stimulus()[0], presets, doc.run.dt, doc.run.t_end);
  std::cout << std::left << std::setw(14) << "preset_c" << "first_alarm_s\n";
  for (const auto& r : rows)
    std::cout << std::left << std::setw(14) << sig(r.preset.value)
              << (r.first_alarm ? sig(r.first_alarm->value, 9) : std::string("none")) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-sensor heat monitor: design calculator and transient simulator", "heatsim"};
  app.require_subcommand(1);

  DesignArgs d;
  auto* design = app.add_subcommand("design", "Evaluate the component-sizing equations");
  design->add_option("--vs", d.vs, "Transformer secondary, V rms")->capture_default_str();
  design->add_option("--ripple", d.ripple, "Ripple fraction of Vpk")->capture_default_str();
  design->add_option("--iload", d.iload, "Load current, A")->capture_default_str();
  design->add_option("--f", d.f, "Mains frequency, Hz")->capture_default_str();
  design->add_option("--vsupply", d.vsupply, "LED supply rail, V")->capture_default_str();
  design->add_option("--vled", d.vled, "LED forward voltage, V")->capture_default_str();
  design->add_option("--iled", d.iled, "LED current, A")->capture_default_str();
  design->add_option("--r1", d.r1, "Timer R1, ohm")->capture_default_str();
  design->add_option("--r2", d.r2, "Timer R2, ohm")->capture_default_str();
  design->add_option("--c2", d.c2, "Timer C2, F")->capture_default_str();
  design->add_option("--r3", d.r3, "Timer R3, ohm")->capture_default_str();
  design->add_option("--c3", d.c3, "Timer C3, F")->capture_default_str();

  std::string sim_scenario, sim_out;
  auto* simulate = app.add_subcommand("simulate", "Run a transient simulation and write the trace");
  simulate->add_option("scenario", sim_scenario, "Scenario file")->required();
  simulate->add_option("--out", sim_out, "Trace output path (CSV)")->required();

  std::string sweep_scenario, sweep_presets;
  auto* sweep = app.add_subcommand("sweep", "First-alarm time for each preset temperature");
  sweep->add_option("scenario", sweep_scenario, "Scenario file")->required();
  sweep->add_option("--presets", sweep_presets, "Comma-separated presets, degC")->required();

  auto* selftest = app.add_subcommand("selftest", "Check the reference design values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code != 0) std::cerr << app.help();
    return code == 0 ? 0 : 2;
  }

  try {
    if (*design) return run_design(d);
    if (*simulate) return run_simulate(sim_scenario, sim_out);
    if (*sweep) return run_sweep(sweep_scenario, sweep_presets);
    if (*selftest) return print_selftest(std::cout) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "heatsim: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
