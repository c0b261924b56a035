#pragma once

// Run configuration: one JSON document, optionally patched by --set.
//
// Every object has a fixed key set; unknown keys and badly typed values are
// rejected with a ConfigError that names the dotted path of the field.
// Complex numbers are written as a number or as [re, im].

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockgate/errors.hpp"
#include "fockgate/fock_core.hpp"
#include "fockgate/gates.hpp"
#include "fockgate/hamiltonians.hpp"
#include "fockgate/synthesis.hpp"
#include "json.hpp"

namespace fockgate::cli {

using json = nlohmann::ordered_json;

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct GateTask {
  int m = 1;
  int k = 1;
  std::optional<double> phi;  // defaults to pi/4 when neither phi nor tau is set
  std::optional<double> tau;  // takes precedence over phi
  std::optional<double> lambda_k;
  AtomInput atom = AtomInput::plus;
  cplx alpha{M_SQRT1_2, 0.0};  // input qubit alpha|m-k> + beta|m>
  cplx beta{M_SQRT1_2, 0.0};
  double phase_offset = 0.0;
  int h_samples = 200;  // full model: instants per pulse for the |h> peak
};

/// preset: "superposition" (alpha|0> + beta|n>), "fock" (|n>),
/// "uniform" (equal weights on 0..n) or "amplitudes" (explicit list).
struct TargetSpec {
  std::string preset = "superposition";
  cplx alpha{M_SQRT1_2, 0.0};
  cplx beta{M_SQRT1_2, 0.0};
  int n = 3;
  std::vector<cplx> amplitudes;

  /// Normalized oscillator state; throws ConfigError when it selects nothing.
  StateVector state(int cutoff) const;
  /// Highest Fock level the target refers to.
  int top_level() const;
};

struct SynthesizeTask {
  /// "auto" compiles phases against the effective-model gate maps for the
  /// effective and full models and against the ideal map otherwise.
  std::string phase_model = "auto";
  int h_samples = 0;
};

struct SweepTask {
  std::vector<double> ratios{0.02, 0.05, 0.1, 0.2, 0.5};  // r = |Omega_L| / g
  int m = 1;
  double phi = 0.7853981633974483;
  int workers = 0;  // 0: hardware concurrency
};

struct ValidateTask {
  int samples = 200;
  bool corrupt_theta0 = false;  // negative control
  double corruption = 0.05;     // added to theta0 when corrupting
};

struct RunConfig {
  std::string task = "gate";
  RamanParams physics{1.0, 0.1, 0.0, 20.0, 1, true};
  int fock_cutoff = 12;
  int atom_dim = 0;  // 0: follow the model
  std::vector<Model> models{Model::ideal};
  GateTask gate;
  TargetSpec target;
  SynthesizeTask synthesize;
  SweepTask sweep;
  ValidateTask validate;
  Tolerances tolerances;
  std::string out_dir = "out";
  std::uint64_t seed = 20240917;

  /// Cross-field checks (cutoff vs referenced levels, model vs atom_dim).
  void check() const;
};

RunConfig parse_config(const json& doc);
json to_json(const RunConfig& cfg);

/// Applies "a.b.c=value" to `doc`. The value is parsed as JSON when possible
/// and kept as a string otherwise; missing intermediate objects are created.
void apply_override(json& doc, std::string_view assignment);

/// Reads a JSON file; throws ConfigError on I/O or syntax errors.
json load_json_file(const std::string& path);

}  // namespace fockgate::cli
