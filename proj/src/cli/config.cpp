#include "fockgate/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fockgate::cli {
namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

cplx complex_from(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(path, "expected a number or [re, im]");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

// Typed access to one JSON object with a closed key set.
class Reader {
 public:
  Reader(const json& obj, std::string path, std::initializer_list<std::string_view> keys)
      : obj_(obj), path_(std::move(path)) {
    if (!obj.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
    for (const auto& [key, _] : obj.items()) {
      bool known = false;
      for (auto k : keys) known = known || k == key;
      if (!known) fail(join(path_, key), "unknown field");
    }
  }

  const json* find(std::string_view key) const {
    const auto it = obj_.find(std::string(key));
    return it == obj_.end() ? nullptr : &*it;
  }
  std::string at(std::string_view key) const { return join(path_, key); }

  void get(std::string_view key, double& out) const {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(at(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(at(key), "must be finite");
    }
  }
  void get(std::string_view key, int& out) const {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) fail(at(key), "expected an integer");
      out = v->get<int>();
    }
  }
  void get(std::string_view key, bool& out) const {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) fail(at(key), "expected true or false");
      out = v->get<bool>();
    }
  }
  void get(std::string_view key, std::string& out) const {
    if (const json* v = find(key)) {
      if (!v->is_string()) fail(at(key), "expected a string");
      out = v->get<std::string>();
    }
  }
  void get(std::string_view key, cplx& out) const {
    if (const json* v = find(key)) out = complex_from(*v, at(key));
  }
  void get(std::string_view key, std::optional<double>& out) const {
    if (const json* v = find(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      double d = 0.0;
      get(key, d);
      out = d;
    }
  }

 private:
  const json& obj_;
  std::string path_;
};

}  // namespace

StateVector TargetSpec::state(int cutoff) const {
  CVector amps(cutoff);
  auto put = [&](int n, cplx v) {
    if (n < 0 || n >= cutoff) {
      fail("target", "level " + std::to_string(n) + " outside the space (fock_cutoff " +
                         std::to_string(cutoff) + ")");
    }
    amps[n] += v;
  };
  if (preset == "superposition") {
    put(0, alpha);
    if (beta != cplx{}) put(n, beta);
  } else if (preset == "fock") {
    put(n, 1.0);
  } else if (preset == "uniform") {
    for (int l = 0; l <= n; ++l) put(l, 1.0);
  } else if (preset == "amplitudes") {
    for (std::size_t l = 0; l < amplitudes.size(); ++l)
      if (amplitudes[l] != cplx{}) put(static_cast<int>(l), amplitudes[l]);
  } else {
    fail("target.preset", "unknown preset '" + preset + "'");
  }
  StateVector s(HilbertSpace::oscillator(cutoff), std::move(amps));
  if (!(s.norm() > 0.0)) fail("target", "state has zero norm");
  return s.normalize();
}

int TargetSpec::top_level() const {
  if (preset == "amplitudes") {
    for (int l = static_cast<int>(amplitudes.size()) - 1; l >= 0; --l)
      if (amplitudes[l] != cplx{}) return l;
    return 0;
  }
  if (preset == "superposition" && beta == cplx{}) return 0;
  return n;
}

void RunConfig::check() const {
  if (task != "gate" && task != "sweep" && task != "synthesize" && task != "validate") {
    fail("task", "unknown task '" + task + "' (expected gate, sweep, synthesize or validate)");
  }
  try {
    physics.validate();
  } catch (const Error& e) {
    fail("physics", e.what());
  }
  if (fock_cutoff < 2) fail("space.fock_cutoff", "must be >= 2");
  if (models.empty()) fail("models", "at least one model is required");
  if (atom_dim != 0) {
    for (Model m : models)
      if (atom_dim_for(m) != atom_dim) {
        fail("space.atom_dim", std::to_string(atom_dim) + " conflicts with model '" +
                                   std::string(model_name(m)) + "'");
      }
  }
  for (const auto& [name, v] : {std::pair{"algebraic", tolerances.algebraic},
                                {"unitarity", tolerances.unitarity},
                                {"fidelity", tolerances.fidelity}}) {
    if (!(v > 0.0)) fail(std::string("tolerances.") + name, "must be positive");
  }

  auto need_cutoff = [&](int level, const std::string& who) {
    if (fock_cutoff < level + 2) {
      fail("space.fock_cutoff", std::to_string(fock_cutoff) + " leaves no guard level above " +
                                    who + " = " + std::to_string(level) + " (needs >= " +
                                    std::to_string(level + 2) + ")");
    }
  };
  if (task == "gate") {
    if (gate.k < 1) fail("gate.k", "must be >= 1");
    if (gate.m < gate.k) fail("gate.m", "pair {m-k, m} lies below the vacuum");
    if (gate.k > 1) {
      for (Model m : models)
        if (m != Model::ideal) fail("gate.k", "k > 1 is only available with the ideal model");
    }
    if (gate.tau && *gate.tau < 0.0) fail("gate.tau", "must be >= 0");
    if (gate.phi && *gate.phi < 0.0) fail("gate.phi", "must be >= 0");
    if (gate.h_samples < 1) fail("gate.h_samples", "must be >= 1");
    need_cutoff(gate.m, "gate.m");
  } else if (task == "sweep") {
    if (sweep.ratios.empty()) fail("sweep.ratios", "empty grid");
    for (double r : sweep.ratios)
      if (!(r > 0.0)) fail("sweep.ratios", "ratios must be positive");
    if (sweep.m < 1) fail("sweep.m", "must be >= 1");
    if (sweep.phi < 0.0) fail("sweep.phi", "must be >= 0");
    if (sweep.workers < 0) fail("sweep.workers", "must be >= 0");
    need_cutoff(sweep.m, "sweep.m");
  } else if (task == "synthesize") {
    if (synthesize.phase_model != "auto") {
      try {
        (void)parse_phase_model(synthesize.phase_model);
      } catch (const Error& e) {
        fail("synthesize.phase_model", e.what());
      }
    }
    if (target.n < 0) fail("target.n", "must be >= 0");
    const int top = target.top_level();
    if (top + 2 > fock_cutoff) {
      fail("target", "support reaches level " + std::to_string(top) +
                         ", beyond fock_cutoff - 2 = " + std::to_string(fock_cutoff - 2) +
                         " (the top level is reserved as guard)");
    }
  } else if (task == "validate") {
    if (validate.samples < 1) fail("validate.samples", "must be >= 1");
  }
}

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  const Reader root(doc, "",
                    {"task", "physics", "space", "models", "gate", "target", "synthesize",
                     "sweep", "validate", "tolerances", "output", "seed"});
  root.get("task", cfg.task);

  if (const json* v = root.find("physics")) {
    const Reader r(*v, "physics", {"g", "omega_L", "theta", "delta", "include_shift"});
    r.get("g", cfg.physics.g);
    r.get("omega_L", cfg.physics.omega_L);
    r.get("theta", cfg.physics.theta);
    r.get("delta", cfg.physics.delta);
    r.get("include_shift", cfg.physics.include_shift);
  }
  if (const json* v = root.find("space")) {
    const Reader r(*v, "space", {"fock_cutoff", "atom_dim"});
    r.get("fock_cutoff", cfg.fock_cutoff);
    r.get("atom_dim", cfg.atom_dim);
  }
  if (const json* v = root.find("models")) {
    cfg.models.clear();
    const json list = v->is_array() ? *v : json::array({*v});
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "models[" + std::to_string(i) + "]";
      if (!list[i].is_string()) fail(path, "expected a model name");
      try {
        cfg.models.push_back(parse_model(list[i].get<std::string>()));
      } catch (const Error& e) {
        fail(path, e.what());
      }
    }
  }
  if (const json* v = root.find("gate")) {
    const Reader r(*v, "gate",
                   {"m", "k", "phi", "tau", "lambda_k", "atom", "alpha", "beta", "phase_offset",
                    "h_samples"});
    r.get("m", cfg.gate.m);
    r.get("k", cfg.gate.k);
    r.get("phi", cfg.gate.phi);
    r.get("tau", cfg.gate.tau);
    r.get("lambda_k", cfg.gate.lambda_k);
    std::string atom(atom_input_name(cfg.gate.atom));
    r.get("atom", atom);
    try {
      cfg.gate.atom = parse_atom_input(atom);
    } catch (const Error& e) {
      fail("gate.atom", e.what());
    }
    r.get("alpha", cfg.gate.alpha);
    r.get("beta", cfg.gate.beta);
    r.get("phase_offset", cfg.gate.phase_offset);
    r.get("h_samples", cfg.gate.h_samples);
  }
  if (const json* v = root.find("target")) {
    const Reader r(*v, "target", {"preset", "alpha", "beta", "n", "amplitudes"});
    r.get("preset", cfg.target.preset);
    r.get("alpha", cfg.target.alpha);
    r.get("beta", cfg.target.beta);
    r.get("n", cfg.target.n);
    if (const json* a = r.find("amplitudes")) {
      if (!a->is_array()) fail("target.amplitudes", "expected a list");
      for (std::size_t i = 0; i < a->size(); ++i)
        cfg.target.amplitudes.push_back(
            complex_from((*a)[i], "target.amplitudes[" + std::to_string(i) + "]"));
      if (!r.find("preset")) cfg.target.preset = "amplitudes";
    }
  }
  if (const json* v = root.find("synthesize")) {
    const Reader r(*v, "synthesize", {"phase_model", "h_samples"});
    r.get("phase_model", cfg.synthesize.phase_model);
    r.get("h_samples", cfg.synthesize.h_samples);
    if (cfg.synthesize.h_samples < 0) fail("synthesize.h_samples", "must be >= 0");
  }
  if (const json* v = root.find("sweep")) {
    const Reader r(*v, "sweep", {"ratios", "m", "phi", "workers"});
    if (const json* a = r.find("ratios")) {
      if (!a->is_array()) fail("sweep.ratios", "expected a list of numbers");
      cfg.sweep.ratios.clear();
      for (const auto& x : *a) {
        if (!x.is_number()) fail("sweep.ratios", "expected a list of numbers");
        cfg.sweep.ratios.push_back(x.get<double>());
      }
    }
    r.get("m", cfg.sweep.m);
    r.get("phi", cfg.sweep.phi);
    r.get("workers", cfg.sweep.workers);
  }
  if (const json* v = root.find("validate")) {
    const Reader r(*v, "validate", {"samples", "corrupt_theta0", "corruption"});
    r.get("samples", cfg.validate.samples);
    r.get("corrupt_theta0", cfg.validate.corrupt_theta0);
    r.get("corruption", cfg.validate.corruption);
  }
  if (const json* v = root.find("tolerances")) {
    const Reader r(*v, "tolerances", {"algebraic", "unitarity", "fidelity"});
    r.get("algebraic", cfg.tolerances.algebraic);
    r.get("unitarity", cfg.tolerances.unitarity);
    r.get("fidelity", cfg.tolerances.fidelity);
  }
  if (const json* v = root.find("output")) {
    const Reader r(*v, "output", {"dir"});
    r.get("dir", cfg.out_dir);
  }
  if (const json* v = root.find("seed")) {
    if (!v->is_number_unsigned()) fail("seed", "expected a non-negative integer");
    cfg.seed = v->get<std::uint64_t>();
  }
  return cfg;
}

json to_json(const RunConfig& cfg) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json models = json::array();
  for (Model m : cfg.models) models.push_back(model_name(m));
  json amps = json::array();
  for (cplx a : cfg.target.amplitudes) amps.push_back(complex_json(a));

  json doc;
  doc["task"] = cfg.task;
  doc["physics"] = {{"g", cfg.physics.g},
                    {"omega_L", cfg.physics.omega_L},
                    {"theta", cfg.physics.theta},
                    {"delta", cfg.physics.delta},
                    {"include_shift", cfg.physics.include_shift}};
  doc["space"] = {{"fock_cutoff", cfg.fock_cutoff}, {"atom_dim", cfg.atom_dim}};
  doc["models"] = models;
  doc["gate"] = {{"m", cfg.gate.m},
                 {"k", cfg.gate.k},
                 {"phi", opt(cfg.gate.phi)},
                 {"tau", opt(cfg.gate.tau)},
                 {"lambda_k", opt(cfg.gate.lambda_k)},
                 {"atom", atom_input_name(cfg.gate.atom)},
                 {"alpha", complex_json(cfg.gate.alpha)},
                 {"beta", complex_json(cfg.gate.beta)},
                 {"phase_offset", cfg.gate.phase_offset},
                 {"h_samples", cfg.gate.h_samples}};
  doc["target"] = {{"preset", cfg.target.preset},
                   {"alpha", complex_json(cfg.target.alpha)},
                   {"beta", complex_json(cfg.target.beta)},
                   {"n", cfg.target.n},
                   {"amplitudes", amps}};
  doc["synthesize"] = {{"phase_model", cfg.synthesize.phase_model},
                       {"h_samples", cfg.synthesize.h_samples}};
  doc["sweep"] = {{"ratios", cfg.sweep.ratios},
                  {"m", cfg.sweep.m},
                  {"phi", cfg.sweep.phi},
                  {"workers", cfg.sweep.workers}};
  doc["validate"] = {{"samples", cfg.validate.samples},
                     {"corrupt_theta0", cfg.validate.corrupt_theta0},
                     {"corruption", cfg.validate.corruption}};
  doc["tolerances"] = {{"algebraic", cfg.tolerances.algebraic},
                       {"unitarity", cfg.tolerances.unitarity},
                       {"fidelity", cfg.tolerances.fidelity}};
  doc["output"] = {{"dir", cfg.out_dir}};
  doc["seed"] = cfg.seed;
  return doc;
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("--set: expected key.subkey=value, got '" + std::string(assignment) + "'");
  }
  const std::string path(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));

  json* node = &doc;
  if (!node->is_object()) *node = json::object();
  std::string walked;
  std::istringstream parts(path);
  std::string key;
  std::vector<std::string> keys;
  while (std::getline(parts, key, '.')) {
    if (key.empty()) throw ConfigError("--set: empty component in '" + path + "'");
    keys.push_back(key);
  }
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    walked = join(walked, keys[i]);
    json& next = (*node)[keys[i]];
    if (next.is_null()) next = json::object();
    if (!next.is_object()) throw ConfigError(walked + ": --set cannot descend into a non-object");
    node = &next;
  }
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  (*node)[keys.back()] = std::move(value);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config: '" + path + "' is not valid JSON");
  return doc;
}

}  // namespace fockgate::cli
