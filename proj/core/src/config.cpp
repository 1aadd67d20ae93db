#include "pllid/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pllid/csv.hpp"
#include "pllid/error.hpp"

namespace pllid {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

double parse_number(const Entry& e, const std::string& key, const std::string& origin) {
  double v = 0.0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(origin + ":" + std::to_string(e.line) + ": field '" + key + "' is not a number: '" + e.value + "'");
  }
  return v;
}

int parse_integer(const Entry& e, const std::string& key, const std::string& origin) {
  int v = 0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(origin + ":" + std::to_string(e.line) + ": field '" + key + "' is not an integer: '" + e.value +
                     "'");
  }
  return v;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"name",   "omega_rg_hz", "m",    "omega_0_hz", "n",     "omega_h_rad_s",
                                          "r1_ohm", "c1_f",        "r2_ohm", "c2_f",     "obs_a", "obs_b",
                                          "notes"};
  return keys;
}

}  // namespace

RegimeConfig parse_regime_config(std::string_view text, const std::string& origin, const std::string& default_name) {
  std::map<std::string, Entry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key != "notes" && key != "name") {
      const auto hash = value.find('#');
      if (hash != std::string_view::npos) value = trim(value.substr(0, hash));
    }
    if (!known_keys().contains(key)) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": unknown field '" + key + "'");
    }
    if (entries.contains(key)) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": duplicate field '" + key + "'");
    }
    entries[key] = Entry{std::string(value), line_no};
  }

  auto require = [&](const std::string& key) -> const Entry& {
    const auto it = entries.find(key);
    if (it == entries.end()) throw ParseError(origin + ": missing field '" + key + "'");
    return it->second;
  };

  RegimeConfig cfg;
  cfg.name = entries.contains("name") ? entries["name"].value : default_name;
  if (cfg.name.empty()) throw ParseError(origin + ": missing field 'name'");
  PhysicalSetup& p = cfg.physical;
  p.omega_rg = parse_number(require("omega_rg_hz"), "omega_rg_hz", origin);
  p.m = parse_integer(require("m"), "m", origin);
  p.omega_0 = parse_number(require("omega_0_hz"), "omega_0_hz", origin);
  p.n = parse_integer(require("n"), "n", origin);
  p.omega_h = parse_number(require("omega_h_rad_s"), "omega_h_rad_s", origin);
  p.r1 = parse_number(require("r1_ohm"), "r1_ohm", origin);
  p.c1 = parse_number(require("c1_f"), "c1_f", origin);
  p.r2 = parse_number(require("r2_ohm"), "r2_ohm", origin);
  p.c2 = parse_number(require("c2_f"), "c2_f", origin);
  if (entries.contains("obs_a")) cfg.observation.a = parse_number(entries["obs_a"], "obs_a", origin);
  if (entries.contains("obs_b")) cfg.observation.b = parse_number(entries["obs_b"], "obs_b", origin);
  if (entries.contains("notes")) cfg.notes = entries["notes"].value;

  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (cfg.observation.a == 0.0) throw ParseError(origin + ": field 'obs_a' must be non-zero");
  return cfg;
}

RegimeConfig load_regime_config(const std::filesystem::path& path) {
  return parse_regime_config(read_file(path), path.string(), path.stem().string());
}

std::vector<RegimeConfig> load_regime_bundle(const std::filesystem::path& path) {
  std::vector<RegimeConfig> out;
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".cfg") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ParseError(path.string() + ": no *.cfg files");
    for (const auto& f : files) out.push_back(load_regime_config(f));
  } else {
    out.push_back(load_regime_config(path));
  }
  std::set<std::string> names;
  for (const auto& cfg : out) {
    if (!names.insert(cfg.name).second) throw ParseError(path.string() + ": duplicate regime name '" + cfg.name + "'");
  }
  return out;
}

std::string format_regime_config(const RegimeConfig& cfg) {
  const PhysicalSetup& p = cfg.physical;
  std::ostringstream out;
  out << "name = " << cfg.name << '\n'
      << "omega_rg_hz = " << format_double(p.omega_rg) << '\n'
      << "m = " << p.m << '\n'
      << "omega_0_hz = " << format_double(p.omega_0) << '\n'
      << "n = " << p.n << '\n'
      << "omega_h_rad_s = " << format_double(p.omega_h) << '\n'
      << "r1_ohm = " << format_double(p.r1) << '\n'
      << "c1_f = " << format_double(p.c1) << '\n'
      << "r2_ohm = " << format_double(p.r2) << '\n'
      << "c2_f = " << format_double(p.c2) << '\n'
      << "obs_a = " << format_double(cfg.observation.a) << '\n'
      << "obs_b = " << format_double(cfg.observation.b) << '\n';
  if (!cfg.notes.empty()) out << "notes = " << cfg.notes << '\n';
  return out.str();
}

std::string file_hash(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace pllid
