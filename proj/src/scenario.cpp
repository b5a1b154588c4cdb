#include "heatctl/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace heatctl {

ScenarioError::ScenarioError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

double parse_si_number(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr == first) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  const std::string_view suffix(ptr, static_cast<std::size_t>(last - ptr));
  double scale = 1.0;
  if (suffix.empty()) {
  } else if (suffix == "k") {
    scale = 1e3;
  } else if (suffix == "M") {
    scale = 1e6;
  } else if (suffix == "m") {
    scale = 1e-3;
  } else if (suffix == "u") {
    scale = 1e-6;
  } else if (suffix == "n") {
    scale = 1e-9;
  } else {
    throw std::invalid_argument("unknown suffix in '" + std::string(text) + "'");
  }
  const double out = v * scale;
  if (!std::isfinite(out)) throw std::invalid_argument("number out of range: '" + std::string(text) + "'");
  return out;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

CircuitSystem ScenarioDoc::system() const {
  CircuitSystem sys;
  sys.rail = supply;
  sys.sensors = sensors;
  for (std::size_t ch = 0; ch < 2; ++ch) {
    const ComparatorSetting& c = comparators[ch];
    sys.comparators[ch].hysteresis = c.hysteresis;
    sys.comparators[ch].v_threshold = c.kind == ComparatorSetting::Kind::Threshold
                                          ? Voltage(c.value)
                                          : temp_to_threshold(TemperatureC{c.value}, sensors[ch]);
  }
  sys.timer = Timer555Config{TimerMode::Astable, timer.vs, timer.r1, timer.r2, timer.c, Resistance(100e3)};
  sys.gate = timer.gate;
  sys.gate_timer = Timer555Config{TimerMode::Monostable, timer.vs, timer.r1, timer.r2, timer.c_mono, timer.r_mono};
  sys.validate();
  return sys;
}

std::array<TemperatureProfile, 2> ScenarioDoc::stimulus() const {
  return {TemperatureProfile(profiles[0]), TemperatureProfile(profiles[1])};
}

namespace {

enum class Constraint { Finite, NonNegative, Positive };

struct KeySpec {
  Constraint constraint;
  std::function<void(ScenarioDoc&, double)> set;
};

using KeyTable = std::map<std::string, KeySpec, std::less<>>;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double number_at(std::string_view text, std::size_t line) {
  try {
    return parse_si_number(text);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(line, e.what());
  }
}

KeyTable supply_keys() {
  return {
      {"vs_rms", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.supply.vs_rms = Voltage(v); }}},
      {"mains_freq", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.supply.mains_freq = Frequency(v); }}},
      {"diode_drop", {Constraint::NonNegative, [](ScenarioDoc& d, double v) { d.supply.diode_drop = Voltage(v); }}},
      {"c_filter", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.supply.c_filter = Capacitance(v); }}},
      {"i_load", {Constraint::NonNegative, [](ScenarioDoc& d, double v) { d.supply.i_load = Current(v); }}},
      {"reg_setpoint", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.supply.reg_setpoint = Voltage(v); }}},
      {"reg_dropout", {Constraint::NonNegative, [](ScenarioDoc& d, double v) { d.supply.reg_dropout = Voltage(v); }}},
  };
}

KeyTable sensor_keys(std::size_t ch) {
  return {
      {"gain", {Constraint::Positive, [ch](ScenarioDoc& d, double v) { d.sensors[ch].gain = v; }}},
      {"v_ref", {Constraint::Finite, [ch](ScenarioDoc& d, double v) { d.sensors[ch].v_ref_subtract = Voltage(v); }}},
  };
}

KeyTable comparator_keys(std::size_t ch) {
  return {
      {"threshold", {Constraint::NonNegative, [ch](ScenarioDoc& d, double v) {
                       d.comparators[ch].kind = ComparatorSetting::Kind::Threshold;
                       d.comparators[ch].value = v;
                     }}},
      {"preset", {Constraint::NonNegative, [ch](ScenarioDoc& d, double v) {
                    d.comparators[ch].kind = ComparatorSetting::Kind::Preset;
                    d.comparators[ch].value = v;
                  }}},
      {"hysteresis",
       {Constraint::NonNegative, [ch](ScenarioDoc& d, double v) { d.comparators[ch].hysteresis = Voltage(v); }}},
  };
}

KeyTable timer_keys() {
  return {
      {"vs", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.timer.vs = Voltage(v); }}},
      {"r1", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.timer.r1 = Resistance(v); }}},
      {"r2", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.timer.r2 = Resistance(v); }}},
      {"c", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.timer.c = Capacitance(v); }}},
      {"r_mono", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.timer.r_mono = Resistance(v); }}},
      {"c_mono", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.timer.c_mono = Capacitance(v); }}},
  };
}

KeyTable run_keys() {
  return {
      {"dt", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.run.dt = Duration(v); }}},
      {"t_end", {Constraint::Positive, [](ScenarioDoc& d, double v) { d.run.t_end = Duration(v); }}},
      {"noise", {Constraint::NonNegative, [](ScenarioDoc& d, double v) { d.run.noise = Voltage(v); }}},
  };
}

void check_constraint(Constraint c, double v, std::string_view key, std::size_t line) {
  if (c == Constraint::Positive && !(v > 0.0)) throw ScenarioError(line, "'" + std::string(key) + "' must be positive");
  if (c == Constraint::NonNegative && v < 0.0)
    throw ScenarioError(line, "'" + std::string(key) + "' must be non-negative");
}

struct Section {
  enum class Kind { Run, Supply, Sensor, Comparator, Timer, Profile } kind;
  std::size_t channel = 0;
};

std::optional<Section> classify(std::string_view name) {
  using K = Section::Kind;
  if (name == "run") return Section{K::Run};
  if (name == "supply") return Section{K::Supply};
  if (name == "timer") return Section{K::Timer};
  for (std::size_t ch = 0; ch < 2; ++ch) {
    const std::string n = std::to_string(ch + 1);
    if (name == "sensor." + n) return Section{K::Sensor, ch};
    if (name == "comparator." + n) return Section{K::Comparator, ch};
    if (name == "profile." + n) return Section{K::Profile, ch};
  }
  return std::nullopt;
}

}  // namespace

ScenarioDoc parse_scenario(std::string_view text) {
  ScenarioDoc doc;
  doc.profiles = {};

  std::map<std::string, std::size_t, std::less<>> seen_sections;
  std::set<std::string> seen_keys;
  std::optional<Section> current;
  std::string current_name;
  std::array<std::size_t, 2> comparator_line{0, 0};
  bool have_format = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ScenarioError(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      current = classify(name);
      if (!current) throw ScenarioError(line_no, "unknown section [" + name + "]");
      if (seen_sections.contains(name)) throw ScenarioError(line_no, "duplicate section [" + name + "]");
      seen_sections.emplace(name, line_no);
      current_name = name;
      seen_keys.clear();
      if (current->kind == Section::Kind::Comparator) comparator_line[current->channel] = line_no;
      continue;
    }
    if (!current) throw ScenarioError(line_no, "content outside of any section");

    if (current->kind == Section::Kind::Profile) {
      std::istringstream fields{std::string(line)};
      std::string t_text, temp_text, extra;
      fields >> t_text >> temp_text;
      if (temp_text.empty() || (fields >> extra))
        throw ScenarioError(line_no, "profile line needs exactly two values: time_s temp_c");
      const double t = number_at(t_text, line_no);
      const double temp = number_at(temp_text, line_no);
      if (temp < -kKelvinOffset) throw ScenarioError(line_no, "profile temperature below absolute zero");
      auto& bps = doc.profiles[current->channel];
      if (!bps.empty() && !(t > bps.back().time.value))
        throw ScenarioError(line_no, "profile times must be strictly increasing");
      bps.push_back({Duration(t), TemperatureC{temp}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ScenarioError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ScenarioError(line_no, "expected 'key = value'");
    if (!seen_keys.insert(key).second) throw ScenarioError(line_no, "duplicate key '" + key + "'");

    using K = Section::Kind;
    const std::size_t ch = current->channel;
    if (current->kind == K::Run && key == "format") {
      if (value != "1") throw ScenarioError(line_no, "unsupported format '" + std::string(value) + "'");
      have_format = true;
      continue;
    }
    if (current->kind == K::Run && key == "seed") {
      std::uint64_t seed = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
      if (ec != std::errc() || ptr != value.data() + value.size())
        throw ScenarioError(line_no, "seed must be a non-negative integer");
      doc.run.seed = seed;
      continue;
    }
    if (current->kind == K::Timer && key == "gate") {
      if (value == "direct") {
        doc.timer.gate = TimerGate::Direct;
      } else if (value == "monostable") {
        doc.timer.gate = TimerGate::Monostable;
      } else {
        throw ScenarioError(line_no, "gate must be 'direct' or 'monostable'");
      }
      continue;
    }
    if (current->kind == K::Comparator && (key == "threshold" || key == "preset") &&
        (seen_keys.contains("threshold") && seen_keys.contains("preset")))
      throw ScenarioError(line_no, "give either 'threshold' or 'preset', not both");

    KeyTable table;
    switch (current->kind) {
      case K::Run: table = run_keys(); break;
      case K::Supply: table = supply_keys(); break;
      case K::Sensor: table = sensor_keys(ch); break;
      case K::Comparator: table = comparator_keys(ch); break;
      case K::Timer: table = timer_keys(); break;
      case K::Profile: break;
    }
    const auto it = table.find(key);
    if (it == table.end()) throw ScenarioError(line_no, "unknown key '" + key + "' in [" + current_name + "]");
    const double v = number_at(value, line_no);
    check_constraint(it->second.constraint, v, key, line_no);
    it->second.set(doc, v);
  }

  const std::size_t last_line = std::max<std::size_t>(line_no, 1);
  for (const char* required : {"run", "profile.1", "profile.2"})
    if (!seen_sections.contains(required))
      throw ScenarioError(last_line, std::string("missing required section [") + required + "]");
  if (!have_format) throw ScenarioError(seen_sections["run"], "[run] needs 'format = 1'");
  if (!(doc.run.t_end > doc.run.dt)) throw ScenarioError(seen_sections["run"], "t_end must exceed dt");
  for (std::size_t ch = 0; ch < 2; ++ch) {
    const std::string name = "profile." + std::to_string(ch + 1);
    if (doc.profiles[ch].empty()) throw ScenarioError(seen_sections[name], "profile has no breakpoints");
  }
  for (std::size_t ch = 0; ch < 2; ++ch) {
    const std::size_t at = comparator_line[ch] ? comparator_line[ch] : last_line;
    try {
      const ComparatorSetting& c = doc.comparators[ch];
      const double v = c.kind == ComparatorSetting::Kind::Threshold
                           ? c.value
                           : temp_to_threshold(TemperatureC{c.value}, doc.sensors[ch]).value;
      if (v > doc.supply.reg_setpoint.value) throw std::invalid_argument("comparator threshold above regulated rail");
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(at, e.what());
    }
  }
  try {
    (void)doc.system();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(last_line, e.what());
  }
  return doc;
}

ScenarioDoc load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string render_scenario(const ScenarioDoc& doc) {
  std::ostringstream out;
  auto kv = [&](const char* key, double v) { out << key << " = " << format_number(v) << '\n'; };

  out << "[run]\n";
  out << "format = " << doc.run.format << '\n';
  kv("dt", doc.run.dt.value);
  kv("t_end", doc.run.t_end.value);
  out << "seed = " << doc.run.seed << '\n';
  kv("noise", doc.run.noise.value);

  out << "\n[supply]\n";
  kv("vs_rms", doc.supply.vs_rms.value);
  kv("mains_freq", doc.supply.mains_freq.value);
  kv("diode_drop", doc.supply.diode_drop.value);
  kv("c_filter", doc.supply.c_filter.value);
  kv("i_load", doc.supply.i_load.value);
  kv("reg_setpoint", doc.supply.reg_setpoint.value);
  kv("reg_dropout", doc.supply.reg_dropout.value);

  for (std::size_t ch = 0; ch < 2; ++ch) {
    out << "\n[sensor." << ch + 1 << "]\n";
    kv("gain", doc.sensors[ch].gain);
    kv("v_ref", doc.sensors[ch].v_ref_subtract.value);
  }
  for (std::size_t ch = 0; ch < 2; ++ch) {
    const ComparatorSetting& c = doc.comparators[ch];
    out << "\n[comparator." << ch + 1 << "]\n";
    kv(c.kind == ComparatorSetting::Kind::Threshold ? "threshold" : "preset", c.value);
    kv("hysteresis", c.hysteresis.value);
  }

  out << "\n[timer]\n";
  kv("vs", doc.timer.vs.value);
  kv("r1", doc.timer.r1.value);
  kv("r2", doc.timer.r2.value);
  kv("c", doc.timer.c.value);
  out << "gate = " << (doc.timer.gate == TimerGate::Direct ? "direct" : "monostable") << '\n';
  kv("r_mono", doc.timer.r_mono.value);
  kv("c_mono", doc.timer.c_mono.value);

  for (std::size_t ch = 0; ch < 2; ++ch) {
    out << "\n[profile." << ch + 1 << "]\n";
    for (const auto& b : doc.profiles[ch])
      out << format_number(b.time.value) << ' ' << format_number(b.temp.value) << '\n';
  }
  return out.str();
}

void write_trace(const Trace& trace, std::ostream& out) {
  out << "time_s";
  for (const auto& [name, samples] : trace.channels()) out << ',' << name;
  out << '\n';
  const std::size_t n = trace.sample_count();
  std::string row;
  for (std::size_t k = 0; k < n; ++k) {
    row = format_number(trace.time_at(k).value);
    for (const auto& [name, samples] : trace.channels()) {
      row += ',';
      row += format_number(samples[k]);
    }
    row += '\n';
    out << row;
  }
}

void write_trace(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_trace(trace, out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

Trace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace '" + path.string() + "'");

  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  auto number = [&](const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw std::runtime_error("bad number '" + s + "' in '" + path.string() + "'");
    return v;
  };

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trace '" + path.string() + "' is empty");
  const auto header = split(line);
  if (header.empty() || header.front() != "time_s")
    throw std::runtime_error("trace '" + path.string() + "' lacks a time_s column");

  std::vector<double> times;
  std::vector<std::vector<double>> columns(header.size() - 1);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw std::runtime_error("ragged row in '" + path.string() + "'");
    times.push_back(number(cells[0]));
    for (std::size_t c = 1; c < cells.size(); ++c) columns[c - 1].push_back(number(cells[c]));
  }

  const double t0 = times.empty() ? 0.0 : times.front();
  const double dt = times.size() >= 2 ? (times.back() - times.front()) / static_cast<double>(times.size() - 1) : 1.0;
  Trace trace{Duration(dt), Duration(t0)};
  for (std::size_t c = 0; c < columns.size(); ++c) trace.add_channel(header[c + 1], std::move(columns[c]));
  return trace;
}

}  // namespace heatctl
