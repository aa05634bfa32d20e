#include "hyatt/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hyatt/errors.h"
#include "text_util.h"

namespace hyatt {

namespace {

constexpr double kPi = std::numbers::pi;

struct Entry {
  std::string value;
  int line = 0;
};

class Reader {
 public:
  Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(int line, const std::string& what) const {
    throw ParseError(source_, line, what);
  }

  // Accepts plain decimals plus "pi", "-pi", "pi/N" and "-pi/N".
  double number(std::string_view token, int line) const {
    std::string_view t = token;
    double sign = 1.0;
    if (!t.empty() && t.front() == '-' && t.substr(1, 2) == "pi") {
      sign = -1.0;
      t.remove_prefix(1);
    }
    if (t.substr(0, 2) == "pi") {
      if (t.size() == 2) return sign * kPi;
      if (t[2] == '/') {
        const auto d = text::parse_double(t.substr(3));
        if (d && *d != 0.0) return sign * kPi / *d;
      }
      fail(line, "malformed number '" + std::string(token) + "'");
    }
    const auto v = text::parse_double(token);
    if (!v) fail(line, "malformed number '" + std::string(token) + "'");
    return *v;
  }

  std::vector<double> numbers(const Entry& e, std::size_t expected = 0) const {
    std::vector<double> out;
    for (auto tok : text::split_ws(e.value)) out.push_back(number(tok, e.line));
    if (expected != 0 && out.size() != expected) {
      fail(e.line, "expected " + std::to_string(expected) + " numbers, got " +
                       std::to_string(out.size()));
    }
    if (out.empty()) fail(e.line, "missing value");
    return out;
  }

  double scalar(const Entry& e) const { return numbers(e, 1)[0]; }

  Vector3 vec3(const Entry& e) const {
    const auto v = numbers(e, 3);
    return {v[0], v[1], v[2]};
  }

  std::string word(const Entry& e) const {
    const auto toks = text::split_ws(e.value);
    if (toks.size() != 1) fail(e.line, "expected a single word");
    return std::string(toks[0]);
  }

 private:
  std::string source_;
};

void write_vec(std::ostream& out, const Vector3& v) {
  out << text::format_double(v.x()) << ' ' << text::format_double(v.y()) << ' '
      << text::format_double(v.z());
}

void write_list(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ' ';
    out << text::format_double(values[i]);
  }
}

ScenarioConfig base_test() {
  ScenarioConfig c;
  const double h = std::sqrt(2.0) / 2.0;
  c.vectors.vectors = {Vector3(h, std::sqrt(2.0), 0.0), Vector3(h, -h, 0.0),
                       Vector3(0.0, 0.0, -1.0)};
  c.vectors.weights = {0.2, 0.3, 0.5};
  c.schedule = {{0.09, 0.11}, {0.04, 0.06}, {0.01, 0.03}};
  c.gains = {15.0, 0.45};
  c.cf_gains.k_p = 12.0;
  c.cf_gains.k_i = c.vectors.weights;
  c.design.k_theta = c.gains.k_o;
  c.estimate_init.mode = EstimateInit::Mode::kAngleAxis;
  c.estimate_init.angle = kPi / 2.0;
  c.estimate_init.axis = Vector3(0.8, 0.6, 0.0);
  c.vector_init = VectorInit::kReference;
  c.duration = 20.0;
  c.dt = 1e-3;
  return c;
}

}  // namespace

ObserverKind parse_observer_kind(const std::string& name) {
  if (name == "agas") return ObserverKind::kAgas;
  if (name == "gas") return ObserverKind::kGas;
  if (name == "cf" || name == "cf_zoh") return ObserverKind::kCf;
  throw ConfigError("unknown observer '" + name + "' (expected agas, gas or cf)");
}

std::string to_string(ObserverKind kind) {
  switch (kind) {
    case ObserverKind::kAgas: return "agas";
    case ObserverKind::kGas: return "gas";
    case ObserverKind::kCf: return "cf";
  }
  return "agas";
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (!(duration > 0.0) || !std::isfinite(duration)) fail("duration must be positive");
  if (!(dt > 0.0)) fail("dt must be positive");
  try {
    vectors.validate();
  } catch (const AssumptionViolation& e) {
    fail(e.what());
  }
  if (schedule.size() != vectors.size()) {
    fail("need one sampling window per vector (" + std::to_string(vectors.size()) +
         " vectors, " + std::to_string(schedule.size()) + " windows)");
  }
  validate_schedule(schedule);
  double min_period = schedule.front().min_period;
  for (const auto& w : schedule) min_period = std::min(min_period, w.min_period);
  if (augmentation) {
    if (augmentation->first >= vectors.size() || augmentation->second >= vectors.size() ||
        augmentation->first == augmentation->second) {
      fail("augment_cross indices must name two distinct vectors");
    }
    if (!(augmentation->weight > 0.0)) fail("augment_cross weight must be positive");
    validate_schedule({augmentation->window});
    min_period = std::min(min_period, augmentation->window.min_period);
  }
  if (dt > min_period) fail("dt must not exceed the smallest sampling period T_m");
  try {
    gains.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (observer == ObserverKind::kCf) {
    if (!(cf_gains.k_p >= 0.0)) fail("k_p must be nonnegative");
    const std::size_t n = vectors.size() + (augmentation ? 1 : 0);
    if (cf_gains.k_i.size() != n) fail("need one cf_gain per vector");
    for (double k : cf_gains.k_i) {
      if (!(k > 0.0)) fail("cf gains must be positive");
    }
  }
  if (!(noise.sigma >= 0.0)) fail("noise_sigma must be nonnegative");
  if (!std::isfinite(omega_amplitude)) fail("omega_amplitude must be finite");
  if (std::abs(truth_axis.norm() - 1.0) > 1e-9) fail("truth_init axis must be a unit vector");
  if (estimate_init.mode == EstimateInit::Mode::kAngleAxis &&
      std::abs(estimate_init.axis.norm() - 1.0) > 1e-9) {
    fail("estimate_init axis must be a unit vector");
  }
  if (estimate_init.eigen_index < 0 || estimate_init.eigen_index > 2) {
    fail("antipode eigenvector index must be 1, 2 or 3");
  }
  if (!std::isfinite(theta_init)) fail("theta_init must be finite");
}

std::vector<std::string> preset_names() {
  return {"test1", "test2", "test3", "test4", "test5", "test6", "escape"};
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c = base_test();
  c.name = name;
  if (name == "test1") {
  } else if (name == "test2") {
    c.omega_amplitude = 5.0;
  } else if (name == "test3") {
    c.noise.sigma = 0.08;
  } else if (name == "test4") {
    c.noise.sigma = 0.08;
    c.omega_amplitude = 5.0;
  } else if (name == "test5") {
    c.schedule[1] = {0.09, 0.11};
  } else if (name == "test6") {
    c.noise.sigma = 0.08;
    c.schedule[1] = {0.09, 0.11};
  } else if (name == "escape") {
    c.estimate_init.mode = EstimateInit::Mode::kAntipode;
    c.estimate_init.eigen_index = 0;
    c.vector_init = VectorInit::kMeasured;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return c;
}

ScenarioConfig parse_config(std::istream& in, const std::string& source_name,
                            std::optional<ScenarioConfig> base) {
  ScenarioConfig c = base ? *base : preset("test1");
  if (!base) c.name = "custom";
  Reader rd(source_name);

  std::map<std::string, Entry> scalars;
  std::map<std::string, std::map<std::size_t, Entry>> indexed;
  std::map<std::string, Entry> gas;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = text::trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) rd.fail(line_no, "expected 'key = value'");
    const std::string key(text::trim(body.substr(0, eq)));
    const Entry entry{std::string(text::trim(body.substr(eq + 1))), line_no};
    if (key.empty()) rd.fail(line_no, "empty key");
    if (entry.value.empty()) rd.fail(line_no, "empty value for '" + key + "'");

    if (key.rfind("gas.", 0) == 0) {
      gas[key.substr(4)] = entry;
      continue;
    }
    if (const auto dot = key.find('.'); dot != std::string::npos) {
      const std::string family = key.substr(0, dot);
      const auto index = text::parse_int(std::string_view(key).substr(dot + 1));
      if (family != "vector" && family != "weight" && family != "sampling" &&
          family != "cf_gain") {
        rd.fail(line_no, "unknown key '" + key + "'");
      }
      if (!index || *index < 1) rd.fail(line_no, "bad vector index in '" + key + "'");
      indexed[family][static_cast<std::size_t>(*index)] = entry;
      continue;
    }
    static const std::vector<std::string> known = {
        "name", "duration", "dt", "omega_amplitude", "noise_sigma", "noise_convention",
        "observer", "seed", "output", "k_o", "k_r", "k_p", "gamma_fraction",
        "delta_fraction", "theta_set", "k_theta", "repeated_split", "truth_init",
        "estimate_init", "vector_init", "theta_init", "monitor_mu", "augment_cross"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      rd.fail(line_no, "unknown key '" + key + "'");
    }
    scalars[key] = entry;
  }

  for (const auto& [key, e] : scalars) {
    if (key == "name") c.name = e.value;
    else if (key == "duration") c.duration = rd.scalar(e);
    else if (key == "dt") c.dt = rd.scalar(e);
    else if (key == "omega_amplitude") c.omega_amplitude = rd.scalar(e);
    else if (key == "noise_sigma") c.noise.sigma = rd.scalar(e);
    else if (key == "noise_convention") {
      const auto w = rd.word(e);
      if (w == "std") c.noise.convention = NoiseConvention::kStd;
      else if (w == "cov") c.noise.convention = NoiseConvention::kCov;
      else rd.fail(e.line, "noise_convention must be 'std' or 'cov'");
    } else if (key == "observer") {
      try {
        c.observer = parse_observer_kind(rd.word(e));
      } catch (const ConfigError& err) {
        rd.fail(e.line, err.what());
      }
    } else if (key == "seed") {
      const auto v = text::parse_int(rd.word(e));
      if (!v || *v < 0) rd.fail(e.line, "seed must be a nonnegative integer");
      c.seed = static_cast<std::uint64_t>(*v);
    } else if (key == "output") c.output = e.value;
    else if (key == "k_o") c.gains.k_o = rd.scalar(e);
    else if (key == "k_r") c.gains.k_r = rd.scalar(e);
    else if (key == "k_p") c.cf_gains.k_p = rd.scalar(e);
    else if (key == "gamma_fraction") c.design.gamma_fraction = rd.scalar(e);
    else if (key == "delta_fraction") c.design.delta_fraction = rd.scalar(e);
    else if (key == "theta_set") c.design.theta_set = rd.numbers(e);
    else if (key == "k_theta") c.design.k_theta = rd.scalar(e);
    else if (key == "repeated_split") c.design.repeated_split = rd.scalar(e);
    else if (key == "truth_init") {
      const auto v = rd.numbers(e, 4);
      c.truth_angle = v[0];
      c.truth_axis = Vector3(v[1], v[2], v[3]);
    } else if (key == "estimate_init") {
      const auto toks = text::split_ws(e.value);
      if (!toks.empty() && toks[0] == "antipode") {
        if (toks.size() != 2) rd.fail(e.line, "usage: estimate_init = antipode <1|2|3>");
        const auto k = text::parse_int(toks[1]);
        if (!k || *k < 1 || *k > 3) rd.fail(e.line, "antipode eigenvector index must be 1..3");
        c.estimate_init.mode = EstimateInit::Mode::kAntipode;
        c.estimate_init.eigen_index = static_cast<int>(*k - 1);
      } else {
        const auto v = rd.numbers(e, 4);
        c.estimate_init.mode = EstimateInit::Mode::kAngleAxis;
        c.estimate_init.angle = v[0];
        c.estimate_init.axis = Vector3(v[1], v[2], v[3]);
      }
    } else if (key == "vector_init") {
      const auto w = rd.word(e);
      if (w == "reference") c.vector_init = VectorInit::kReference;
      else if (w == "measured") c.vector_init = VectorInit::kMeasured;
      else rd.fail(e.line, "vector_init must be 'reference' or 'measured'");
    } else if (key == "theta_init") c.theta_init = rd.scalar(e);
    else if (key == "monitor_mu") c.monitor_mu = rd.scalar(e);
    else if (key == "augment_cross") {
      const auto v = rd.numbers(e, 5);
      if (v[0] < 1 || v[1] < 1 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
        rd.fail(e.line, "augment_cross indices must be positive integers");
      }
      c.augmentation = CrossAugmentation{static_cast<std::size_t>(v[0]) - 1,
                                         static_cast<std::size_t>(v[1]) - 1, v[2],
                                         SamplingWindow{v[3], v[4]}};
    }
  }

  // Indexed vector keys extend or override the base set.
  std::size_t n = c.vectors.size();
  for (const auto& [family, entries] : indexed) {
    if (family != "cf_gain" && !entries.empty()) n = std::max(n, entries.rbegin()->first);
  }
  const bool cf_from_weights = c.cf_gains.k_i == c.vectors.weights;
  VectorObservationSet set;
  SamplingSchedule schedule;
  std::vector<double> cf;
  auto find = [&](const std::string& family, std::size_t i) -> const Entry* {
    const auto f = indexed.find(family);
    if (f == indexed.end()) return nullptr;
    const auto it = f->second.find(i);
    return it == f->second.end() ? nullptr : &it->second;
  };
  for (std::size_t i = 1; i <= n; ++i) {
    const bool in_base = i <= c.vectors.size();
    auto missing = [&](const std::string& family) {
      throw ConfigError(source_name + ": vector " + std::to_string(i) + " has no " + family);
    };
    const Entry* v = find("vector", i);
    const Entry* w = find("weight", i);
    const Entry* s = find("sampling", i);
    const Entry* g = find("cf_gain", i);
    if (!v && !in_base) missing("vector." + std::to_string(i));
    if (!w && !in_base) missing("weight." + std::to_string(i));
    if (!s && !in_base) missing("sampling." + std::to_string(i));
    set.vectors.push_back(v ? rd.vec3(*v) : c.vectors.vectors[i - 1]);
    set.weights.push_back(w ? rd.scalar(*w) : c.vectors.weights[i - 1]);
    if (s) {
      const auto p = rd.numbers(*s, 2);
      schedule.push_back({p[0], p[1]});
    } else {
      schedule.push_back(c.schedule[i - 1]);
    }
    if (g) {
      cf.push_back(rd.scalar(*g));
    } else if (!cf_from_weights && in_base && i - 1 < c.cf_gains.k_i.size()) {
      cf.push_back(c.cf_gains.k_i[i - 1]);
    } else {
      cf.push_back(set.weights.back());
    }
  }
  const std::size_t gain_count = n + (c.augmentation ? 1 : 0);
  if (const auto f = indexed.find("cf_gain"); f != indexed.end() && !f->second.empty() &&
                                              f->second.rbegin()->first > gain_count) {
    rd.fail(f->second.rbegin()->second.line,
            "cf_gain." + std::to_string(f->second.rbegin()->first) + " has no vector");
  }
  if (c.augmentation) {
    const Entry* g = find("cf_gain", n + 1);
    cf.push_back(g ? rd.scalar(*g) : c.augmentation->weight);
  }
  c.vectors = std::move(set);
  c.schedule = std::move(schedule);
  c.cf_gains.k_i = std::move(cf);

  if (!gas.empty()) {
    static const std::vector<std::string> required = {"theta_set", "k_theta", "gamma",
                                                      "u", "delta", "delta_star"};
    for (const auto& [key, e] : gas) {
      static const std::vector<std::string> known = {"theta_set", "k_theta", "gamma", "u",
                                                     "delta", "delta_star", "theta_max",
                                                     "alpha", "case"};
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        rd.fail(e.line, "unknown key 'gas." + key + "'");
      }
    }
    for (const auto& key : required) {
      if (!gas.count(key)) {
        throw ConfigError(source_name + ": explicit parameter set is missing gas." + key);
      }
    }
    ParameterSetA p;
    p.theta_set = rd.numbers(gas["theta_set"]);
    p.k_theta = rd.scalar(gas["k_theta"]);
    p.gamma = rd.scalar(gas["gamma"]);
    p.u = rd.vec3(gas["u"]);
    p.delta = rd.scalar(gas["delta"]);
    p.delta_star = rd.scalar(gas["delta_star"]);
    p.theta_max = 0.0;
    for (double t : p.theta_set) p.theta_max = std::max(p.theta_max, std::abs(t));
    if (gas.count("theta_max") && rd.scalar(gas["theta_max"]) != p.theta_max) {
      rd.fail(gas["theta_max"].line, "gas.theta_max disagrees with gas.theta_set");
    }
    p.alpha = gas.count("alpha") ? rd.vec3(gas["alpha"]) : Vector3(0.0, 0.0, 1.0);
    if (gas.count("case")) {
      const double k = rd.scalar(gas["case"]);
      if (k != 1.0 && k != 2.0 && k != 3.0) rd.fail(gas["case"].line, "gas.case must be 1, 2 or 3");
      p.spectrum_case = static_cast<SpectrumCase>(static_cast<int>(k));
    }
    c.parameters = p;
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open config file");
  return parse_config(in, path);
}

void write_parameters(const ParameterSetA& p, std::ostream& out) {
  using text::format_double;
  out << "gas.case = " << static_cast<int>(p.spectrum_case) << '\n';
  out << "gas.theta_set = ";
  write_list(out, p.theta_set);
  out << "\ngas.theta_max = " << format_double(p.theta_max) << '\n';
  out << "gas.k_theta = " << format_double(p.k_theta) << '\n';
  out << "gas.gamma = " << format_double(p.gamma) << '\n';
  out << "gas.u = ";
  write_vec(out, p.u);
  out << "\ngas.alpha = ";
  write_vec(out, p.alpha);
  out << "\ngas.delta = " << format_double(p.delta) << '\n';
  out << "gas.delta_star = " << format_double(p.delta_star) << '\n';
}

void write_config(const ScenarioConfig& c, std::ostream& out) {
  using text::format_double;
  out << "name = " << c.name << '\n';
  out << "duration = " << format_double(c.duration) << '\n';
  out << "dt = " << format_double(c.dt) << '\n';
  out << "omega_amplitude = " << format_double(c.omega_amplitude) << '\n';
  out << "noise_sigma = " << format_double(c.noise.sigma) << '\n';
  out << "noise_convention = "
      << (c.noise.convention == NoiseConvention::kStd ? "std" : "cov") << '\n';
  out << "observer = " << to_string(c.observer) << '\n';
  out << "seed = " << c.seed << '\n';
  for (std::size_t i = 0; i < c.vectors.size(); ++i) {
    const auto k = std::to_string(i + 1);
    out << "vector." << k << " = ";
    write_vec(out, c.vectors.vectors[i]);
    out << "\nweight." << k << " = " << format_double(c.vectors.weights[i]) << '\n';
    out << "sampling." << k << " = " << format_double(c.schedule[i].min_period) << ' '
        << format_double(c.schedule[i].max_period) << '\n';
    if (i < c.cf_gains.k_i.size()) {
      out << "cf_gain." << k << " = " << format_double(c.cf_gains.k_i[i]) << '\n';
    }
  }
  if (c.augmentation) {
    const auto& a = *c.augmentation;
    out << "augment_cross = " << a.first + 1 << ' ' << a.second + 1 << ' '
        << format_double(a.weight) << ' ' << format_double(a.window.min_period) << ' '
        << format_double(a.window.max_period) << '\n';
    if (c.cf_gains.k_i.size() > c.vectors.size()) {
      out << "cf_gain." << c.vectors.size() + 1 << " = "
          << format_double(c.cf_gains.k_i.back()) << '\n';
    }
  }
  out << "k_o = " << format_double(c.gains.k_o) << '\n';
  out << "k_r = " << format_double(c.gains.k_r) << '\n';
  out << "k_p = " << format_double(c.cf_gains.k_p) << '\n';
  out << "gamma_fraction = " << format_double(c.design.gamma_fraction) << '\n';
  out << "delta_fraction = " << format_double(c.design.delta_fraction) << '\n';
  out << "theta_set = ";
  write_list(out, c.design.theta_set);
  out << "\nk_theta = " << format_double(c.design.k_theta) << '\n';
  out << "repeated_split = " << format_double(c.design.repeated_split) << '\n';
  out << "truth_init = " << format_double(c.truth_angle) << ' ';
  write_vec(out, c.truth_axis);
  out << '\n';
  if (c.estimate_init.mode == EstimateInit::Mode::kAntipode) {
    out << "estimate_init = antipode " << c.estimate_init.eigen_index + 1 << '\n';
  } else {
    out << "estimate_init = " << format_double(c.estimate_init.angle) << ' ';
    write_vec(out, c.estimate_init.axis);
    out << '\n';
  }
  out << "vector_init = "
      << (c.vector_init == VectorInit::kReference ? "reference" : "measured") << '\n';
  out << "theta_init = " << format_double(c.theta_init) << '\n';
  if (c.monitor_mu) out << "monitor_mu = " << format_double(*c.monitor_mu) << '\n';
  if (!c.output.empty()) out << "output = " << c.output << '\n';
  if (c.parameters) write_parameters(*c.parameters, out);
}

}  // namespace hyatt
