#include "dvflow/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "dvflow/cli/output.hpp"
#include "dvflow/fourier.hpp"
#include "dvflow/serialize.hpp"

namespace dvflow::cli {

const char* to_string(ConfigErrorKind kind) {
  switch (kind) {
    case ConfigErrorKind::syntax: return "SyntaxError";
    case ConfigErrorKind::unknown_section: return "UnknownSection";
    case ConfigErrorKind::unknown_key: return "UnknownKey";
    case ConfigErrorKind::invalid_value: return "InvalidValue";
    case ConfigErrorKind::non_positive_initial_density:
      return "NonPositiveInitialDensity";
  }
  return "ConfigError";
}

namespace {

std::string decorate(ConfigErrorKind kind, const std::string& path, int line,
                     const std::string& message) {
  std::ostringstream os;
  os << to_string(kind);
  if (line > 0) os << " at line " << line;
  if (!path.empty()) os << " (" << path << ")";
  os << ": " << message;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(ConfigErrorKind kind, std::string path, int line,
                         const std::string& message)
    : std::runtime_error(decorate(kind, path, line, message)),
      kind_(kind),
      path_(std::move(path)),
      line_(line) {}

const char* to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::timeseries_csv: return "timeseries_csv";
    case OutputKind::snapshots_csv: return "snapshots_csv";
    case OutputKind::summary_json: return "summary_json";
    case OutputKind::plots_svg: return "plots_svg";
  }
  return "timeseries_csv";
}

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> tokens(const std::string& value) {
  std::string spaced = value;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream is(spaced);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

bool is_jet(const RunConfig& c) {
  return c.model.preset == PresetName::slender_jet;
}

class Parser {
 public:
  RunConfig parse(std::string_view text);

 private:
  using Handler = std::function<void(const std::string& value)>;

  [[noreturn]] void fail(ConfigErrorKind kind, const std::string& msg) const {
    throw ConfigError(kind, path_, line_, msg);
  }
  [[noreturn]] void fail_at(const std::string& path, const std::string& msg,
                            ConfigErrorKind kind = ConfigErrorKind::invalid_value) const {
    auto it = lines_.find(path);
    throw ConfigError(kind, path, it == lines_.end() ? 0 : it->second, msg);
  }

  double number(const std::string& value) const {
    try {
      return parse_double(trim(value));
    } catch (const Error&) {
      fail(ConfigErrorKind::invalid_value, "expected a number, got '" + value + "'");
    }
  }
  long long integer(const std::string& value) const {
    const std::string v = trim(value);
    try {
      std::size_t used = 0;
      const long long out = std::stoll(v, &used);
      if (used == v.size()) return out;
    } catch (const std::exception&) {
    }
    fail(ConfigErrorKind::invalid_value, "expected an integer, got '" + value + "'");
  }
  std::vector<double> numbers(const std::string& value) const {
    std::vector<double> out;
    for (const auto& t : tokens(value)) out.push_back(number(t));
    return out;
  }
  double phase(const std::string& token) const {
    if (token == "cos") return 0.0;
    if (token == "sin") return -0.5 * kPi;
    return number(token);
  }
  FourierTerm term(const std::string& value, bool with_envelope) const;

  void install();

  RunConfig cfg_;
  std::map<std::string, Handler> handlers_;
  std::map<std::string, int> lines_;
  std::vector<std::string> sections_;
  std::string path_;
  int line_ = 0;

  bool cadence_set_ = false;
  bool snapshots_set_ = false;
  bool outputs_set_ = false;
  bool plot_columns_set_ = false;
  bool used_h_keys_ = false;
  bool used_rho_keys_ = false;
  std::vector<std::string> law_keys_;
  std::vector<std::string> preset_keys_;
};

FourierTerm Parser::term(const std::string& value, bool with_envelope) const {
  const auto t = tokens(value);
  const std::size_t max_tokens = with_envelope ? 5 : 3;
  if (t.size() < 2 || t.size() > max_tokens) {
    fail(ConfigErrorKind::invalid_value,
         with_envelope ? "expected 'k amplitude [phase|cos|sin] [envelope] [rate]'"
                       : "expected 'k amplitude [phase|cos|sin]'");
  }
  FourierTerm out;
  const long long k = integer(t[0]);
  if (k < 0 || k > 1'000'000) {
    fail(ConfigErrorKind::invalid_value, "wavenumber must be a non-negative integer");
  }
  out.k = static_cast<int>(k);
  out.amplitude = number(t[1]);
  if (t.size() > 2) out.phase = phase(t[2]);
  if (t.size() > 3) {
    try {
      out.envelope = envelope_from_string(t[3]);
    } catch (const Error& e) {
      fail(ConfigErrorKind::invalid_value, e.what());
    }
  }
  if (t.size() > 4) out.rate = number(t[4]);
  return out;
}

void Parser::install() {
  auto& h = handlers_;
  auto law_key = [this](double ConstitutiveLaw::*field) {
    return [this, field](const std::string& v) {
      cfg_.model.law.*field = number(v);
      law_keys_.push_back(path_);
    };
  };
  h["model.preset"] = [this](const std::string& v) {
    try {
      cfg_.model.preset = preset_from_string(trim(v));
    } catch (const Error& e) {
      fail(ConfigErrorKind::invalid_value, e.what());
    }
  };
  h["model.c_p"] = law_key(&ConstitutiveLaw::c_p);
  h["model.gamma"] = law_key(&ConstitutiveLaw::gamma);
  h["model.c_mu"] = law_key(&ConstitutiveLaw::c_mu);
  h["model.alpha"] = law_key(&ConstitutiveLaw::alpha);
  h["model.gravity"] = [this](const std::string& v) {
    cfg_.model.gravity = number(v);
    preset_keys_.push_back(path_);
  };
  h["model.viscosity"] = [this](const std::string& v) {
    cfg_.model.viscosity = number(v);
    preset_keys_.push_back(path_);
  };
  h["model.surface_tension"] = [this](const std::string& v) {
    cfg_.model.surface_tension = number(v);
    preset_keys_.push_back(path_);
  };

  h["grid.n"] = [this](const std::string& v) {
    const long long n = integer(v);
    if (n < 0 || n > (1 << 24)) fail(ConfigErrorKind::invalid_value, "n out of range");
    cfg_.n = static_cast<int>(n);
  };
  h["grid.scheme"] = [this](const std::string& v) {
    try {
      cfg_.scheme = scheme_from_string(trim(v));
    } catch (const Error& e) {
      fail(ConfigErrorKind::invalid_value, e.what());
    }
  };

  auto mean = [this](double InitialSection::*field, bool h_key) {
    return [this, field, h_key](const std::string& v) {
      cfg_.initial.*field = number(v);
      (h_key ? used_h_keys_ : used_rho_keys_) = true;
    };
  };
  auto terms = [this](std::vector<FourierTerm> InitialSection::*field, bool h_key) {
    return [this, field, h_key](const std::string& v) {
      (cfg_.initial.*field).push_back(term(v, false));
      (h_key ? used_h_keys_ : used_rho_keys_) = true;
    };
  };
  h["initial.rho_mean"] = mean(&InitialSection::rho_mean, false);
  h["initial.rho_term"] = terms(&InitialSection::rho_terms, false);
  h["initial.h_mean"] = mean(&InitialSection::rho_mean, true);
  h["initial.h_term"] = terms(&InitialSection::rho_terms, true);
  h["initial.u_mean"] = [this](const std::string& v) { cfg_.initial.u_mean = number(v); };
  h["initial.u_term"] = [this](const std::string& v) {
    cfg_.initial.u_terms.push_back(term(v, false));
  };

  h["forcing.kind"] = [this](const std::string& v) {
    try {
      cfg_.forcing.kind = forcing_kind_from_string(trim(v));
    } catch (const Error& e) {
      fail(ConfigErrorKind::invalid_value, e.what());
    }
  };
  h["forcing.term"] = [this](const std::string& v) {
    cfg_.forcing.terms.push_back(term(v, true));
  };

  auto control = [this](double StepControl::*field) {
    return [this, field](const std::string& v) { cfg_.control.*field = number(v); };
  };
  h["control.end_time"] = control(&StepControl::end_time);
  h["control.cfl_adv"] = control(&StepControl::cfl_adv);
  h["control.cfl_diff"] = control(&StepControl::cfl_diff);
  h["control.dt_min"] = control(&StepControl::dt_min);
  h["control.dt_max"] = control(&StepControl::dt_max);
  h["control.vacuum_floor_fraction"] = control(&StepControl::vacuum_floor_fraction);
  h["control.cadence"] = [this](const std::string& v) {
    cfg_.cadence = number(v);
    if (!(cfg_.cadence >= 0.0)) fail(ConfigErrorKind::invalid_value, "cadence must be >= 0");
    cadence_set_ = true;
  };
  h["control.snapshot_times"] = [this](const std::string& v) {
    cfg_.snapshot_times = numbers(v);
    snapshots_set_ = true;
  };

  h["output.outputs"] = [this](const std::string& v) {
    cfg_.outputs.clear();
    for (const auto& t : tokens(v)) {
      bool known = false;
      for (auto kind : {OutputKind::timeseries_csv, OutputKind::snapshots_csv,
                        OutputKind::summary_json, OutputKind::plots_svg}) {
        if (t == to_string(kind)) {
          if (std::find(cfg_.outputs.begin(), cfg_.outputs.end(), kind) ==
              cfg_.outputs.end()) {
            cfg_.outputs.push_back(kind);
          }
          known = true;
        }
      }
      if (!known) {
        fail(ConfigErrorKind::invalid_value,
             "unknown output '" + t +
                 "' (expected timeseries_csv|snapshots_csv|summary_json|plots_svg)");
      }
    }
    outputs_set_ = true;
  };
  h["output.plot_columns"] = [this](const std::string& v) {
    cfg_.plot_columns.clear();
    const auto& known = timeseries_columns();
    for (const auto& t : tokens(v)) {
      if (t == "t" || std::find(known.begin(), known.end(), t) == known.end()) {
        fail(ConfigErrorKind::invalid_value, "unknown plot column '" + t + "'");
      }
      cfg_.plot_columns.push_back(t);
    }
    plot_columns_set_ = true;
  };

  h["run.seed"] = [this](const std::string& v) {
    const long long s = integer(v);
    if (s < 0) fail(ConfigErrorKind::invalid_value, "seed must be non-negative");
    cfg_.seed = static_cast<std::uint64_t>(s);
  };

  auto sweep = [this](std::optional<std::vector<double>> SweepSection::*field) {
    return [this, field](const std::string& v) { cfg_.sweep.*field = numbers(v); };
  };
  h["sweep.gamma"] = sweep(&SweepSection::gamma);
  h["sweep.alpha"] = sweep(&SweepSection::alpha);
  h["sweep.c_p"] = sweep(&SweepSection::c_p);
  h["sweep.amplitude"] = sweep(&SweepSection::amplitude);

  h["verify.checks"] = [this](const std::string& v) {
    cfg_.verify_checks.clear();
    for (const auto& t : tokens(v)) {
      const long long id = integer(t);
      if (id < 1 || id > 12) fail(ConfigErrorKind::invalid_value, "check ids are 1..12");
      cfg_.verify_checks.push_back(static_cast<int>(id));
    }
  };

  sections_ = {"model", "grid", "initial", "forcing", "control",
               "output", "run", "sweep", "verify"};
}

RunConfig Parser::parse(std::string_view text) {
  install();
  const std::vector<std::string> repeatable = {"initial.rho_term", "initial.h_term",
                                               "initial.u_term", "forcing.term"};
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  line_ = 0;
  while (std::getline(in, raw)) {
    ++line_;
    path_.clear();
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(ConfigErrorKind::syntax, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (std::find(sections_.begin(), sections_.end(), section) == sections_.end()) {
        path_ = section;
        fail(ConfigErrorKind::unknown_section, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ConfigErrorKind::syntax, "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ConfigErrorKind::syntax, "empty key");
    if (section.empty()) {
      path_ = key;
      fail(ConfigErrorKind::syntax, "key '" + key + "' appears before any [section]");
    }
    path_ = section + "." + key;
    const auto handler = handlers_.find(path_);
    if (handler == handlers_.end()) {
      fail(ConfigErrorKind::unknown_key,
           "unknown key '" + key + "' in section [" + section + "]");
    }
    const bool repeats =
        std::find(repeatable.begin(), repeatable.end(), path_) != repeatable.end();
    if (!repeats && lines_.count(path_)) {
      fail(ConfigErrorKind::invalid_value,
           "duplicate key (first set at line " + std::to_string(lines_[path_]) + ")");
    }
    lines_.emplace(path_, line_);
    handler->second(value);
  }
  path_.clear();
  line_ = 0;

  // Cross-field validation.
  const PresetName preset = cfg_.model.preset;
  const bool law_preset =
      preset == PresetName::generic || preset == PresetName::navier_stokes;
  if (!law_preset && !law_keys_.empty()) {
    fail_at(law_keys_.front(), std::string("law parameters are fixed by preset '") +
                                   dvflow::to_string(preset) + "'");
  }
  for (const auto& key : preset_keys_) {
    const bool allowed =
        (preset == PresetName::shallow_water &&
         (key == "model.gravity" || key == "model.viscosity")) ||
        preset == PresetName::slender_jet;
    if (!allowed) {
      fail_at(key, std::string("parameter not used by preset '") +
                       dvflow::to_string(preset) + "'");
    }
  }
  cfg_.model.law.pi_reference = pi_reference_for(cfg_.model.law.gamma);
  try {
    ModelPreset mp;
    mp.name = preset;
    mp.law = cfg_.model.law;
    mp.gravity = cfg_.model.gravity;
    mp.viscosity = cfg_.model.viscosity;
    mp.surface_tension = cfg_.model.surface_tension;
    (void)preset_to_law(mp);
  } catch (const Error& e) {
    fail_at(law_preset ? (law_keys_.empty() ? "model" : law_keys_.front()) : "model",
            e.what());
  }
  if (is_jet(cfg_) && used_rho_keys_) {
    fail_at("initial", "slender_jet initial data is given as h_mean / h_term");
  }
  if (!is_jet(cfg_) && used_h_keys_) {
    fail_at("initial", "h_mean / h_term are only valid with preset slender_jet");
  }

  try {
    (void)Grid(cfg_.n, cfg_.scheme);
  } catch (const Error& e) {
    fail_at("grid.n", e.what());
  }
  try {
    cfg_.forcing = validate_forcing(cfg_.forcing);
  } catch (const Error& e) {
    fail_at("forcing.kind", e.what());
  }
  if (is_jet(cfg_) && cfg_.forcing.kind == ForcingKind::gradient) {
    fail_at("forcing.kind",
            "gradient forcing cannot absorb the slender_jet gravity term; use "
            "kind general");
  }
  try {
    cfg_.control = validate_control(cfg_.control);
  } catch (const Error& e) {
    fail_at("control", e.what());
  }

  if (!cadence_set_) cfg_.cadence = cfg_.control.end_time / 100.0;
  if (!snapshots_set_) cfg_.snapshot_times = {0.0, cfg_.control.end_time};
  std::sort(cfg_.snapshot_times.begin(), cfg_.snapshot_times.end());
  for (double s : cfg_.snapshot_times) {
    if (s < 0.0 || s > cfg_.control.end_time) {
      fail_at("control.snapshot_times", "snapshot times must lie in [0, end_time]");
    }
  }
  if (!outputs_set_) {
    cfg_.outputs = {OutputKind::timeseries_csv, OutputKind::snapshots_csv,
                    OutputKind::summary_json};
  }
  if (!plot_columns_set_) {
    cfg_.plot_columns = {"mass", "energy", "entropy", "min_rho", "max_w"};
  }
  return cfg_;
}

void emit_term(std::ostream& os, const std::string& key, const FourierTerm& t,
               bool with_envelope) {
  os << key << " = " << t.k << ' ' << format_double(t.amplitude) << ' '
     << format_double(t.phase);
  if (with_envelope) {
    os << ' ' << dvflow::to_string(t.envelope) << ' ' << format_double(t.rate);
  }
  os << '\n';
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig config = Parser{}.parse(text);
  (void)resolve(config);  // rejects a non-positive synthesized rho0
  return config;
}

ResolvedRun resolve(const RunConfig& c) {
  ModelPreset preset;
  preset.name = c.model.preset;
  preset.law = c.model.law;
  preset.gravity = c.model.gravity;
  preset.viscosity = c.model.viscosity;
  preset.surface_tension = c.model.surface_tension;
  PresetMapping mapping = preset_to_law(preset);
  Grid grid(c.n, c.scheme);

  const Field first = TrigSeries{c.initial.rho_mean, c.initial.rho_terms}.sample(grid, 0.0);
  const Field u = TrigSeries{c.initial.u_mean, c.initial.u_terms}.sample(grid, 0.0);
  const auto low = std::min_element(first.begin(), first.end());
  if (!(*low > 0.0)) {
    std::ostringstream os;
    os << (is_jet(c) ? "initial h" : "initial density") << " = " << *low
       << " <= 0 at x = " << grid.x(static_cast<std::size_t>(low - first.begin()));
    throw ConfigError(ConfigErrorKind::non_positive_initial_density, "initial", 0,
                      os.str());
  }
  Field rho = mapping.transform == StateTransform::jet_square
                  ? jet_transform(first, JetDirection::forward)
                  : first;

  ForcingSpec forcing = c.forcing;
  if (mapping.forcing_addend != 0.0) {
    if (forcing.kind == ForcingKind::none) forcing.kind = ForcingKind::time_only;
    forcing.terms.push_back(
        FourierTerm{0, mapping.forcing_addend, 0.0, Envelope::constant, 0.0});
  }

  RunOptions options;
  options.cadence = c.cadence;
  options.snapshot_times = c.snapshot_times;
  return ResolvedRun{mapping, grid, FluidState{0.0, std::move(rho), u},
                     validate_forcing(forcing), c.control, std::move(options)};
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[model]\npreset = " << dvflow::to_string(c.model.preset) << '\n';
  switch (c.model.preset) {
    case PresetName::generic:
    case PresetName::navier_stokes:
      os << "c_p = " << format_double(c.model.law.c_p) << '\n'
         << "gamma = " << format_double(c.model.law.gamma) << '\n'
         << "c_mu = " << format_double(c.model.law.c_mu) << '\n'
         << "alpha = " << format_double(c.model.law.alpha) << '\n';
      break;
    case PresetName::shallow_water:
      os << "gravity = " << format_double(c.model.gravity) << '\n'
         << "viscosity = " << format_double(c.model.viscosity) << '\n';
      break;
    case PresetName::slender_jet:
      os << "surface_tension = " << format_double(c.model.surface_tension) << '\n'
         << "viscosity = " << format_double(c.model.viscosity) << '\n'
         << "gravity = " << format_double(c.model.gravity) << '\n';
      break;
  }
  os << "\n[grid]\nn = " << c.n << "\nscheme = " << dvflow::to_string(c.scheme) << '\n';

  const std::string q = is_jet(c) ? "h" : "rho";
  os << "\n[initial]\n" << q << "_mean = " << format_double(c.initial.rho_mean) << '\n';
  for (const auto& t : c.initial.rho_terms) emit_term(os, q + "_term", t, false);
  os << "u_mean = " << format_double(c.initial.u_mean) << '\n';
  for (const auto& t : c.initial.u_terms) emit_term(os, "u_term", t, false);

  os << "\n[forcing]\nkind = " << dvflow::to_string(c.forcing.kind) << '\n';
  for (const auto& t : c.forcing.terms) emit_term(os, "term", t, true);

  const auto& k = c.control;
  os << "\n[control]\nend_time = " << format_double(k.end_time)
     << "\ncfl_adv = " << format_double(k.cfl_adv)
     << "\ncfl_diff = " << format_double(k.cfl_diff)
     << "\ndt_min = " << format_double(k.dt_min)
     << "\ndt_max = " << format_double(k.dt_max)
     << "\nvacuum_floor_fraction = " << format_double(k.vacuum_floor_fraction)
     << "\ncadence = " << format_double(c.cadence)
     << "\nsnapshot_times = " << join(c.snapshot_times) << '\n';

  os << "\n[output]\noutputs =";
  for (auto o : c.outputs) os << ' ' << to_string(o);
  os << "\nplot_columns =";
  for (const auto& p : c.plot_columns) os << ' ' << p;
  os << "\n\n[run]\nseed = " << c.seed << '\n';

  const auto& s = c.sweep;
  if (s.gamma || s.alpha || s.c_p || s.amplitude) {
    os << "\n[sweep]\n";
    if (s.gamma) os << "gamma = " << join(*s.gamma) << '\n';
    if (s.alpha) os << "alpha = " << join(*s.alpha) << '\n';
    if (s.c_p) os << "c_p = " << join(*s.c_p) << '\n';
    if (s.amplitude) os << "amplitude = " << join(*s.amplitude) << '\n';
  }
  if (!c.verify_checks.empty()) {
    os << "\n[verify]\nchecks =";
    for (int id : c.verify_checks) os << ' ' << id;
    os << '\n';
  }
  return os.str();
}

}  // namespace dvflow::cli
