#include "cgi/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cgi/errors.hpp"

namespace cgi::cli {

namespace pt = boost::property_tree;

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

double to_double(std::string_view text, const std::string& where) {
  if (auto v = parse_number<double>(text)) return *v;
  throw InputError(where + ": expected a number, got '" + std::string(text) + "'");
}

int to_int(std::string_view text, const std::string& where) {
  if (auto v = parse_number<int>(text)) return *v;
  throw InputError(where + ": expected an integer, got '" + std::string(text) + "'");
}

bool to_bool(std::string_view text, const std::string& where) {
  std::string t(trim(text));
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw InputError(where + ": expected true or false, got '" + t + "'");
}

std::vector<double> to_list(std::string_view text, const std::string& where) {
  std::vector<double> out;
  for (auto item : split(text, ',')) out.push_back(to_double(item, where));
  return out;
}

Region to_region(std::string_view text, const std::string& where) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw InputError(where + ": expected ZMIN:ZMAX");
  const Region r{to_double(parts[0], where), to_double(parts[1], where)};
  if (!(r.z_max > r.z_min)) throw InputError(where + ": region must have ZMIN < ZMAX");
  return r;
}

std::vector<GaussianBump> to_bumps(std::string_view text, const std::string& where) {
  std::vector<GaussianBump> out;
  if (trim(text) == "none") return out;
  for (auto item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3) throw InputError(where + ": expected CENTER:WIDTH:AMPLITUDE per bump");
    out.push_back({to_double(parts[0], where), to_double(parts[1], where), to_double(parts[2], where)});
  }
  return out;
}

// Line of each "key = value" entry, for messages about values the INI reader accepted.
std::map<std::pair<std::string, std::string>, int> key_lines(const std::string& text) {
  std::map<std::pair<std::string, std::string>, int> lines;
  std::istringstream in(text);
  std::string line;
  std::string section;
  for (int n = 1; std::getline(in, line); ++n) {
    const auto t = trim(line);
    if (t.empty() || t.front() == ';' || t.front() == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = std::string(trim(t.substr(1, t.size() - 2)));
      continue;
    }
    const auto eq = t.find('=');
    if (eq != std::string_view::npos) lines[{section, std::string(trim(t.substr(0, eq)))}] = n;
  }
  return lines;
}

const std::set<std::string> ideal_keys{"g", "gamma0"};
const std::set<std::string> poly_keys{"coeffs", "origin"};
const std::set<std::string> csv_keys{"csv"};
const std::set<std::string> synth_keys{"synth", "g_ref", "gamma_base", "bumps", "samples"};
const std::set<std::string> shared_keys{"roi", "degree"};

class Reader {
 public:
  Reader(const std::string& text, const std::filesystem::path& base_dir)
      : lines_(key_lines(text)), base_dir_(base_dir) {
    std::istringstream in(text);
    try {
      pt::read_ini(in, tree_);
    } catch (const pt::ini_parser_error& e) {
      throw InputError("config line " + std::to_string(e.line()) + ": " + e.message());
    }
  }

  void read(RunConfig& cfg, bool potential_forced) {
    static const std::set<std::string> sections{"constants", "atom", "laser", "run", "potential"};
    for (const auto& [name, node] : tree_) {
      if (node.empty()) throw InputError(where("", name) + ": key outside any section");
      if (!sections.count(name)) throw InputError("unknown section [" + name + "]");
    }
    if (auto s = tree_.get_child_optional("constants")) read_constants(*s, cfg);
    if (auto s = tree_.get_child_optional("atom")) read_atom(*s, cfg);
    if (auto s = tree_.get_child_optional("laser")) read_laser(*s, cfg);
    if (auto s = tree_.get_child_optional("run")) read_run(*s, cfg);
    if (auto s = tree_.get_child_optional("potential")) {
      read_potential(*s, cfg.potential, potential_forced);
    } else if (!potential_forced) {
      throw InputError("no potential selected");
    }
  }

 private:
  std::string where(const std::string& section, const std::string& key) const {
    const auto it = lines_.find({section, key});
    const std::string loc = it == lines_.end() ? "" : "config line " + std::to_string(it->second) + ": ";
    return loc + "[" + section + "] " + key;
  }

  [[noreturn]] void unknown(const std::string& section, const std::string& key) const {
    throw InputError(where(section, key) + ": unknown key");
  }

  void read_constants(const pt::ptree& s, RunConfig& cfg) {
    for (const auto& [key, node] : s) {
      const auto& v = node.data();
      if (key == "hbar") cfg.consts.hbar = to_double(v, where("constants", key));
      else if (key == "c") cfg.consts.c = to_double(v, where("constants", key));
      else if (key == "amu") cfg.consts.amu = to_double(v, where("constants", key));
      else unknown("constants", key);
    }
  }

  void read_atom(const pt::ptree& s, RunConfig& cfg) {
    for (const auto& [key, node] : s) {
      if (key == "mass_amu") mass_amu_ = to_double(node.data(), where("atom", key));
      else if (key == "mass_kg") cfg.atom.mass = to_double(node.data(), where("atom", key));
      else unknown("atom", key);
    }
    if (mass_amu_) cfg.atom = AtomSpecies::from_amu(*mass_amu_, cfg.consts);
  }

  void read_laser(const pt::ptree& s, RunConfig& cfg) {
    auto& l = cfg.laser;
    for (const auto& [key, node] : s) {
      const auto& v = node.data();
      const auto w = where("laser", key);
      if (key == "k") l.k = to_double(v, w);
      else if (key == "N") l.N = to_int(v, w);
      else if (key == "omega_R") l.omega_R = to_double(v, w);
      else if (key == "z_upper") l.z_upper = to_double(v, w);
      else if (key == "z_lower") l.z_lower = to_double(v, w);
      else if (key == "mirror_detuning") l.mirror_detuning = to_double(v, w);
      else if (key == "final_detuning") l.final_detuning = to_double(v, w);
      else unknown("laser", key);
    }
  }

  void read_run(const pt::ptree& s, RunConfig& cfg) {
    for (const auto& [key, node] : s) {
      const auto& v = node.data();
      const auto w = where("run", key);
      if (key == "z0") cfg.params.z0 = to_double(v, w);
      else if (key == "v0") cfg.params.v0 = to_double(v, w);
      else if (key == "T_R") cfg.params.T_R = to_double(v, w);
      else if (key == "n_steps") cfg.params.n_steps = to_int(v, w);
      else if (key == "delta_h") cfg.delta_h = to_double(v, w);
      else if (key == "tr") cfg.tr = range(v, w);
      else if (key == "z0_range") cfg.z0_range = range(v, w);
      else if (key == "spacing") cfg.spacing = to_double(v, w);
      else if (key == "launch") cfg.launch = to_bool(v, w);
      else if (key == "decimate") cfg.decimate = to_int(v, w);
      else if (key == "threads") cfg.threads = static_cast<unsigned>(std::max(0, to_int(v, w)));
      else unknown("run", key);
    }
  }

  static SweepRange range(std::string_view v, const std::string& w) {
    try {
      return parse_range(v);
    } catch (const InputError& e) {
      throw InputError(w + ": " + e.what());
    }
  }

  void read_potential(const pt::ptree& s, PotentialSelection& sel, bool forced) {
    std::set<PotentialKind> families;
    for (const auto& [key, node] : s) {
      if (ideal_keys.count(key)) families.insert(PotentialKind::Ideal);
      else if (poly_keys.count(key)) families.insert(PotentialKind::Poly);
      else if (csv_keys.count(key)) families.insert(PotentialKind::Csv);
      else if (synth_keys.count(key)) families.insert(PotentialKind::Synth);
      else if (!shared_keys.count(key)) unknown("potential", key);
    }
    if (!forced) {
      if (families.empty()) throw InputError("no potential selected");
      if (families.size() > 1) {
        std::string names;
        for (auto f : families) names += (names.empty() ? "" : ", ") + std::string(to_string(f));
        throw InputError("conflicting potential selections in [potential]: " + names);
      }
      sel.kind = *families.begin();
    }

    for (const auto& [key, node] : s) {
      const auto& v = node.data();
      const auto w = where("potential", key);
      if (key == "g") sel.g = to_double(v, w);
      else if (key == "gamma0") sel.gamma0 = to_double(v, w);
      else if (key == "coeffs") sel.coeffs = to_list(v, w);
      else if (key == "origin") sel.origin = to_double(v, w);
      else if (key == "csv") sel.csv_path = base_dir_ / std::string(trim(v));
      else if (key == "g_ref") sel.synth.g_ref = to_double(v, w);
      else if (key == "gamma_base") sel.synth.gamma_base = to_double(v, w);
      else if (key == "bumps") sel.synth.bumps = to_bumps(v, w);
      else if (key == "samples") sel.synth.samples = to_int(v, w);
      else if (key == "synth") {
        if (trim(v) != "default") throw InputError(w + ": the only synthetic preset is 'default'");
      } else if (key == "roi") {
        const Region r = to_region(v, w);
        sel.roi = r;
        sel.synth.roi = r;
      } else if (key == "degree") {
        sel.degree = to_int(v, w);
        sel.synth.fit_degree = sel.degree;
      }
    }

    if (!forced) {
      const bool roi_used = sel.kind == PotentialKind::Poly || sel.kind == PotentialKind::Synth;
      const bool degree_used = sel.kind == PotentialKind::Csv || sel.kind == PotentialKind::Synth;
      if (s.count("roi") && !roi_used) {
        throw InputError(where("potential", "roi") + ": not used by a " +
                         std::string(to_string(sel.kind)) + " potential");
      }
      if (s.count("degree") && !degree_used) {
        throw InputError(where("potential", "degree") + ": not used by a " +
                         std::string(to_string(sel.kind)) + " potential");
      }
    }
  }

  pt::ptree tree_;
  std::map<std::pair<std::string, std::string>, int> lines_;
  std::filesystem::path base_dir_;
  std::optional<double> mass_amu_;
};

void apply(const Overrides& o, RunConfig& cfg) {
  if (o.c) cfg.consts.c = *o.c;
  if (o.N) cfg.laser.N = *o.N;
  if (o.k) cfg.laser.k = *o.k;
  if (o.T_R) cfg.params.T_R = *o.T_R;
  if (o.v0) cfg.params.v0 = *o.v0;
  if (o.steps) cfg.params.n_steps = *o.steps;
  if (o.delta_h) cfg.delta_h = *o.delta_h;
  if (o.threads) cfg.threads = *o.threads;
  if (o.out) cfg.out = *o.out;
  if (o.g) cfg.potential.g = *o.g;
  if (o.gamma0) cfg.potential.gamma0 = *o.gamma0;
  if (o.tr) {
    cfg.tr = parse_range(*o.tr);
    cfg.params.T_R = cfg.tr.start;
  }
  if (o.z0) {
    cfg.z0_range = parse_range(*o.z0);
    cfg.params.z0 = cfg.z0_range->start;
  }
}

void validate(const RunConfig& cfg) {
  cfg.consts.validate();
  cfg.atom.validate();
  cfg.laser.validate();
  cfg.params.validate();
  if (!(cfg.delta_h > 0.0)) throw InputError("delta_h must be positive");
  if (!(cfg.spacing > 0.0)) throw InputError("spacing must be positive");
  if (cfg.decimate < 1) throw InputError("decimate must be at least 1");
  const auto& sel = cfg.potential;
  switch (sel.kind) {
    case PotentialKind::Poly:
      if (sel.coeffs.empty()) throw InputError("poly potential needs [potential] coeffs");
      break;
    case PotentialKind::Csv:
      if (sel.csv_path.empty()) throw InputError("csv potential needs [potential] csv=PATH");
      if (!std::filesystem::exists(sel.csv_path)) {
        throw InputError("profile CSV not found: " + sel.csv_path.string());
      }
      break;
    case PotentialKind::Synth:
      sel.synth.validate();
      break;
    case PotentialKind::Ideal:
      break;
  }
}

}  // namespace

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Ideal: return "ideal";
    case PotentialKind::Poly: return "poly";
    case PotentialKind::Csv: return "csv";
    case PotentialKind::Synth: return "synth";
  }
  return "?";
}

PotentialKind parse_potential_kind(std::string_view name) {
  for (auto k : {PotentialKind::Ideal, PotentialKind::Poly, PotentialKind::Csv, PotentialKind::Synth}) {
    if (name == to_string(k)) return k;
  }
  throw InputError("unknown potential '" + std::string(name) + "' (ideal, poly, csv, synth)");
}

PotentialModel build_potential(const PotentialSelection& sel) {
  switch (sel.kind) {
    case PotentialKind::Ideal:
      return PotentialModel::ideal(sel.g, sel.gamma0);
    case PotentialKind::Poly:
      return PotentialModel::polynomial(
          Eigen::Map<const Eigen::VectorXd>(sel.coeffs.data(), static_cast<Eigen::Index>(sel.coeffs.size())),
          sel.origin, sel.roi);
    case PotentialKind::Csv: {
      const ProfileSamples samples = read_profile_csv(sel.csv_path.string());
      return PotentialModel::sampled(samples.z, samples.g, sel.degree);
    }
    case PotentialKind::Synth:
      return synthesize_profile(sel.synth);
  }
  throw InputError("unhandled potential kind");
}

SweepRange parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string w = "range '" + std::string(text) + "'";
  if (parts.size() == 1) {
    const double v = to_double(parts[0], w);
    return {v, v, 1.0};
  }
  if (parts.size() != 3) throw InputError(w + ": expected START:STOP:STEP");
  const SweepRange r{to_double(parts[0], w), to_double(parts[1], w), to_double(parts[2], w)};
  if (!(r.step > 0.0)) throw InputError(w + ": STEP must be positive");
  if (r.stop < r.start) throw InputError(w + ": STOP is below START");
  return r;
}

RunConfig parse_config_text(const std::string& text, const Overrides& overrides,
                            const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  const bool forced = overrides.potential.has_value();
  if (forced) cfg.potential.kind = parse_potential_kind(*overrides.potential);
  Reader(text, base_dir).read(cfg, forced);
  apply(overrides, cfg);
  validate(cfg);
  return cfg;
}

RunConfig parse_config(const std::optional<std::filesystem::path>& path, const Overrides& overrides) {
  if (!path) return parse_config_text("", overrides);
  std::ifstream in(*path);
  if (!in) throw InputError("cannot read config file " + path->string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), overrides, path->parent_path().empty() ? "." : path->parent_path());
}

unsigned effective_threads(unsigned requested) {
  unsigned n = std::max(1u, requested);
  if (const char* env = std::getenv("CGI_SIM_THREADS")) {
    if (auto cap = parse_number<int>(env); cap && *cap >= 1) n = std::min(n, static_cast<unsigned>(*cap));
  }
  return n;
}

}  // namespace cgi::cli
