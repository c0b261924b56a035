#include <catch_amalgamated.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fockgate/cli/commands.hpp"
#include "fockgate/cli/config.hpp"
#include "fockgate/cli/csv.hpp"

using namespace fockgate;
using namespace fockgate::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fockgate_test_cli" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const RunConfig& cfg, std::string* log_out = nullptr) {
  std::ostringstream log, err;
  const int code = run_task(cfg, log, err);
  if (log_out) *log_out = log.str() + err.str();
  return code;
}

RunConfig with(std::initializer_list<const char*> sets) {
  json doc = json::object();
  for (const char* s : sets) apply_override(doc, s);
  return parse_config(doc);
}

}  // namespace

TEST_CASE("default config round trips", "[cli][config]") {
  const RunConfig cfg = parse_config(json::object());
  CHECK(cfg.task == "gate");
  CHECK(cfg.fock_cutoff == 12);
  CHECK(cfg.physics.delta == 20.0);
  const json once = to_json(cfg);
  const json twice = to_json(parse_config(once));
  CHECK(once == twice);
}

TEST_CASE("overrides use dotted paths", "[cli][config]") {
  json doc = json::object();
  apply_override(doc, "physics.omega_L=0.05");
  apply_override(doc, "gate.atom=minus");
  apply_override(doc, "models=[\"ideal\",\"full\"]");
  apply_override(doc, "gate.alpha=[0,1]");
  apply_override(doc, "gate.beta=0");
  const RunConfig cfg = parse_config(doc);
  CHECK(cfg.physics.omega_L == 0.05);
  CHECK(cfg.gate.atom == AtomInput::minus);
  REQUIRE(cfg.models.size() == 2);
  CHECK(cfg.models[1] == Model::full);
  CHECK(cfg.gate.alpha == cplx(0.0, 1.0));
  // Later assignments win.
  apply_override(doc, "physics.omega_L=0.07");
  CHECK(parse_config(doc).physics.omega_L == 0.07);

  CHECK_THROWS_AS(apply_override(doc, "novalue"), ConfigError);
  CHECK_THROWS_AS(apply_override(doc, "a..b=1"), ConfigError);
  json full = to_json(parse_config(doc));
  CHECK_THROWS_AS(apply_override(full, "physics.g.x=1"), ConfigError);
}

TEST_CASE("config errors name the field", "[cli][config]") {
  auto message = [](std::initializer_list<const char*> sets) -> std::string {
    try {
      with(sets);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return {};
  };
  CHECK_THAT(message({"physics.gg=1"}), Catch::Matchers::ContainsSubstring("physics.gg"));
  CHECK_THAT(message({"gate.m=\"two\""}), Catch::Matchers::ContainsSubstring("gate.m"));
  CHECK_THAT(message({"bogus=1"}), Catch::Matchers::ContainsSubstring("bogus"));
  CHECK_THAT(message({"models=[\"exact\"]"}), Catch::Matchers::ContainsSubstring("models"));
  CHECK_THAT(message({"gate.atom=sideways"}), Catch::Matchers::ContainsSubstring("gate.atom"));
}

TEST_CASE("cross-field checks", "[cli][config]") {
  auto fails = [](std::initializer_list<const char*> sets, const std::string& field) {
    const RunConfig cfg = with(sets);
    try {
      cfg.check();
    } catch (const ConfigError& e) {
      return std::string(e.what()).find(field) != std::string::npos;
    }
    return false;
  };
  CHECK(fails({"space.fock_cutoff=2"}, "space.fock_cutoff"));
  CHECK(fails({"gate.m=11"}, "space.fock_cutoff"));
  CHECK(fails({"task=synthesize", "target.n=11"}, "target"));
  CHECK(fails({"task=sweep", "sweep.ratios=[]"}, "sweep.ratios"));
  CHECK(fails({"tolerances.fidelity=0"}, "tolerances.fidelity"));
  CHECK(fails({"gate.k=2", "gate.m=2", "models=[\"effective\"]"}, "gate.k"));
  CHECK(fails({"space.atom_dim=2", "models=[\"full\"]"}, "atom_dim"));
  CHECK_NOTHROW(with({"gate.m=10"}).check());
}

TEST_CASE("config file loading", "[cli][config]") {
  const fs::path dir = scratch("load");
  fs::create_directories(dir);
  {
    std::ofstream(dir / "ok.json") << R"({"task":"sweep","sweep":{"ratios":[0.1]}})";
    std::ofstream(dir / "bad.json") << "{ nope";
  }
  const RunConfig cfg = parse_config(load_json_file((dir / "ok.json").string()));
  CHECK(cfg.task == "sweep");
  CHECK(cfg.sweep.ratios == std::vector<double>{0.1});
  CHECK_THROWS_AS(load_json_file((dir / "bad.json").string()), ConfigError);
  CHECK_THROWS_AS(load_json_file((dir / "missing.json").string()), ConfigError);
}

TEST_CASE("target presets", "[cli][config]") {
  const auto s = with({"target.preset=uniform", "target.n=2"}).target.state(6);
  CHECK(std::abs(s.amplitudes()[2] - cplx(1.0 / std::sqrt(3.0))) < 1e-15);
  const auto f = with({"target.preset=fock", "target.n=4"}).target.state(6);
  CHECK(f.amplitudes()[4] == cplx(1.0));
  const auto a = with({"target.preset=amplitudes", "target.amplitudes=[1,[0,1]]"}).target;
  CHECK(a.top_level() == 1);
  CHECK(std::abs(a.state(6).amplitudes()[1] - cplx(0.0, std::sqrt(0.5))) < 1e-15);
  CHECK_THROWS_AS(with({"target.preset=amplitudes"}).target.state(6), ConfigError);
}

TEST_CASE("csv formatting", "[cli][csv]") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");

  std::ostringstream os;
  CsvWriter w(os, {"a", "b", "c", "d"});
  w.row({std::string("x"), 0.5, std::int64_t{3}, Cell{}});
  CHECK(os.str() == "a,b,c,d\nx,0.5,3,\n");
  CHECK_THROWS_AS(w.row({1.0}), std::invalid_argument);
}

TEST_CASE("gate task writes csv", "[cli][run]") {
  RunConfig cfg = with({"models=[\"ideal\",\"effective\"]", "gate.h_samples=10"});
  cfg.out_dir = scratch("gate").string();
  REQUIRE(run(cfg) == kOk);
  const std::string csv = slurp(fs::path(cfg.out_dir) / "gate.csv");
  CHECK(csv.rfind("model,m,k,atom,phi,tau", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(fs::exists(fs::path(cfg.out_dir) / "config.json"));
  // The stored config reproduces the run.
  const RunConfig again = parse_config(load_json_file((fs::path(cfg.out_dir) / "config.json").string()));
  CHECK(to_json(again) == to_json(cfg));
}

TEST_CASE("sweep and synthesize tasks", "[cli][run]") {
  RunConfig sweep = with({"task=sweep", "sweep.ratios=[0.02,0.1]", "models=[\"effective\"]",
                          "space.fock_cutoff=6"});
  sweep.out_dir = scratch("sweep").string();
  REQUIRE(run(sweep) == kOk);
  const std::string csv = slurp(fs::path(sweep.out_dir) / "sweep.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  RunConfig synth = with({"task=synthesize", "target.n=2", "space.fock_cutoff=6"});
  synth.out_dir = scratch("synth").string();
  REQUIRE(run(synth) == kOk);
  CHECK(fs::exists(fs::path(synth.out_dir) / "plan_ideal.json"));
  CHECK(fs::exists(fs::path(synth.out_dir) / "synthesize.csv"));
}

TEST_CASE("exit codes", "[cli][run]") {
  auto code = [](std::initializer_list<const char*> sets) {
    RunConfig cfg = with(sets);
    cfg.out_dir = scratch("codes").string();
    return run(cfg);
  };
  CHECK(code({"space.fock_cutoff=2"}) == kConfigError);
  CHECK(code({"gate.m=11"}) == kConfigError);
  CHECK(code({"task=sweep", "sweep.ratios=[]"}) == kConfigError);
  CHECK(code({"task=synthesize", "target.n=11"}) == kConfigError);
  CHECK(code({"task=unknown"}) == kConfigError);
  CHECK(code({"task=validate", "validate.samples=10"}) == kOk);
  CHECK(code({"task=validate", "validate.samples=10", "validate.corrupt_theta0=true"}) ==
        kValidationFailed);
  CHECK(code({"task=validate", "validate.samples=10", "tolerances.fidelity=1e-30"}) ==
        kValidationFailed);
}
