#include "fockgate/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include "fockgate/cli/csv.hpp"
#include "fockgate/propagator.hpp"
#include "fockgate/synthesis.hpp"

namespace fockgate::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::filesystem::path prepare_out(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw ConfigError("output.dir: cannot create '" + cfg.out_dir + "': " + ec.message());
  std::ofstream(std::filesystem::path(cfg.out_dir) / "config.json") << to_json(cfg).dump(2) << '\n';
  return cfg.out_dir;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("output.dir: cannot write '" + path.string() + "'");
  return out;
}

RamanParams params_for(const RunConfig& cfg, int m) {
  RamanParams p = cfg.physics;
  p.m = m;
  return p;
}

GateParams configured_gate(const RunConfig& cfg, const RamanParams& p) {
  const auto& g = cfg.gate;
  GateParams gp = g.tau ? gate_for_tau(g.m, *g.tau, p, g.k, g.lambda_k)
                        : gate_for_phi(g.m, g.phi.value_or(std::numbers::pi / 4), p, g.k, g.lambda_k);
  gp.phase_offset = g.phase_offset;
  return gp;
}

std::pair<cplx, cplx> normalized_qubit(cplx a, cplx b) {
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  if (!(n > 0.0)) throw ConfigError("gate.alpha, gate.beta: input qubit has zero norm");
  return {a / n, b / n};
}

StateVector joint_input(const HilbertSpace& s, AtomInput atom, const StateVector& osc) {
  return StateVector::product(s, atom_amplitudes(atom, s.atom_dim()), osc.amplitudes());
}

// Joint overlap of a full-model state with an effective-model state, |h>
// components counted as lost.
double overlap_ge(const StateVector& full, const StateVector& eff) {
  const HilbertSpace& s = eff.space();
  CVector ge(s.dim());
  for (int a = 0; a < 2; ++a)
    for (int n = 0; n < s.fock_cutoff(); ++n) ge[s.index(a, n)] = full.amplitude(a, n);
  return fidelity(StateVector(s, std::move(ge)), eff);
}

struct SweepRow {
  double r = 0.0;
  Model model = Model::ideal;
  double fidelity = 0.0, leakage = 0.0, gate_time = 0.0, tau = 0.0, purity = 0.0, guard = 0.0;
  std::optional<double> vs_effective;
};

SweepRow sweep_point(const RunConfig& cfg, double r, Model model) {
  RamanParams p = params_for(cfg, cfg.sweep.m);
  p.omega_L = r * p.g;
  const GateParams gp = gate_for_phi(cfg.sweep.m, cfg.sweep.phi, p);
  const int nc = cfg.fock_cutoff;
  const StateVector osc = StateVector::basis(HilbertSpace::oscillator(nc), 0, cfg.sweep.m);
  const StateVector expected = closed_form_rotation(0.0, 1.0, gp).embed(nc);

  const HilbertSpace s(atom_dim_for(model), nc);
  const StateVector out = apply_gate(gp, p, joint_input(s, AtomInput::plus, osc), model);
  const Matrix rho = reduced_oscillator_state(out);

  SweepRow row;
  row.r = r;
  row.model = model;
  row.fidelity = fidelity(rho, expected);
  row.leakage = leakage(out, gp.m);
  row.tau = gp.tau;
  row.gate_time = 2.0 * gp.tau;
  row.purity = purity(rho);
  row.guard = guard_population(out);
  if (model == Model::full) {
    const HilbertSpace s2(2, nc);
    row.vs_effective =
        overlap_ge(out, apply_gate(gp, p, joint_input(s2, AtomInput::plus, osc), Model::effective));
  }
  return row;
}

}  // namespace

int cmd_gate(const RunConfig& cfg, std::ostream& log) {
  const auto dir = prepare_out(cfg);
  auto csv_file = open_out(dir / "gate.csv");
  CsvWriter csv(csv_file, {"model", "m", "k", "atom", "phi", "tau", "theta0", "eta",
                           "fidelity_closed_form", "fidelity_input", "purity", "leakage",
                           "guard_population", "max_h_population", "unitarity_defect",
                           "duration_s"});
  const RamanParams p = params_for(cfg, cfg.gate.m);
  const GateParams gp = configured_gate(cfg, p);
  const auto [alpha, beta] = normalized_qubit(cfg.gate.alpha, cfg.gate.beta);
  const int nc = cfg.fock_cutoff;
  const QubitState qin{gp.lower(), gp.m, alpha, beta};
  const StateVector osc_in = qin.embed(nc);
  const StateVector expected = closed_form_rotation(alpha, beta, gp, cfg.gate.atom).embed(nc);

  if (auto diag = p.selectivity_diagnostic()) log << "warning: " << *diag << '\n';
  for (Model model : cfg.models) {
    const auto t0 = Clock::now();
    const HilbertSpace s(atom_dim_for(model), nc);
    const Matrix u = ug_gate(gp, p, s, model);
    const StateVector in = joint_input(s, cfg.gate.atom, osc_in);
    const StateVector out = apply(u, in);
    const Matrix rho = reduced_oscillator_state(out);
    std::optional<double> hmax;
    if (model == Model::full) hmax = max_transient_h_population(gp, p, in, cfg.gate.h_samples);

    const double f = fidelity(rho, expected);
    csv.row({std::string(model_name(model)), std::int64_t{gp.m}, std::int64_t{gp.k},
             std::string(atom_input_name(cfg.gate.atom)), gp.phi, gp.tau, gp.theta0, gp.eta, f,
             fidelity(rho, osc_in), purity(rho), leakage(out, gp.m, gp.k), guard_population(out),
             opt_cell(hmax), unitarity_defect(u), seconds_since(t0)});
    log << "gate " << model_name(model) << ": m=" << gp.m << " phi=" << format_double(gp.phi)
        << " fidelity_closed_form=" << format_double(f) << " purity=" << format_double(purity(rho))
        << " leakage=" << format_double(leakage(out, gp.m, gp.k)) << '\n';
  }
  log << "wrote " << (dir / "gate.csv").string() << '\n';
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  const auto dir = prepare_out(cfg);
  std::vector<std::pair<double, Model>> tasks;
  for (double r : cfg.sweep.ratios)
    for (Model m : cfg.models) tasks.emplace_back(r, m);

  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        rows[i] = sweep_point(cfg, tasks[i].first, tasks[i].second);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_workers =
      std::min<std::size_t>(tasks.size(), cfg.sweep.workers > 0 ? cfg.sweep.workers : hw);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  auto csv_file = open_out(dir / "sweep.csv");
  CsvWriter csv(csv_file, {"r", "model", "fidelity", "leakage", "gate_time", "tau", "purity",
                           "guard_population", "fidelity_vs_effective"});
  for (const auto& row : rows) {
    csv.row({row.r, std::string(model_name(row.model)), row.fidelity, row.leakage, row.gate_time,
             row.tau, row.purity, row.guard, opt_cell(row.vs_effective)});
  }

  // Trend summary per model, in increasing r.
  for (Model m : cfg.models) {
    std::vector<const SweepRow*> sel;
    for (const auto& row : rows)
      if (row.model == m) sel.push_back(&row);
    std::sort(sel.begin(), sel.end(), [](auto* a, auto* b) { return a->r < b->r; });
    bool monotone = true;
    for (std::size_t i = 1; i < sel.size(); ++i)
      monotone = monotone && sel[i]->fidelity <= sel[i - 1]->fidelity + 1e-12;
    log << "sweep " << model_name(m) << ": fidelity "
        << (monotone ? "non-increasing" : "NOT monotone") << " in r over " << sel.size()
        << " points\n";
  }
  log << "wrote " << (dir / "sweep.csv").string() << '\n';
  return kOk;
}

int cmd_synthesize(const RunConfig& cfg, std::ostream& log) {
  const auto dir = prepare_out(cfg);
  const int nc = cfg.fock_cutoff;
  const StateVector target = cfg.target.state(nc);
  const StateVector vacuum = StateVector::basis(HilbertSpace::oscillator(nc), 0, 0);

  std::map<PhaseModel, CircuitPlan> plans;
  auto plan_for = [&](Model model) -> const CircuitPlan& {
    PhaseModel pm = model == Model::ideal ? PhaseModel::ideal : PhaseModel::effective;
    if (cfg.synthesize.phase_model != "auto") pm = parse_phase_model(cfg.synthesize.phase_model);
    auto it = plans.find(pm);
    if (it == plans.end()) {
      it = plans.emplace(pm, plan_general_state(target, cfg.physics, pm)).first;
      const auto path = dir / ("plan_" + std::string(phase_model_name(pm)) + ".json");
      open_out(path) << serialize_plan(it->second);
      log << "wrote " << path.string() << " (" << it->second.steps.size() << " steps)\n";
    }
    return it->second;
  };

  auto csv_file = open_out(dir / "synthesize.csv");
  CsvWriter csv(csv_file, {"model", "phase_model", "steps", "groups", "fidelity", "leakage",
                           "guard_population", "min_step_purity", "max_h_population",
                           "duration_s"});
  json report = json::array();
  for (Model model : cfg.models) {
    const auto t0 = Clock::now();
    const CircuitPlan& plan = plan_for(model);
    ExecutionOptions opts;
    if (model == Model::full) opts.h_samples = cfg.synthesize.h_samples;
    const ExecutionReport rep = execute_plan(plan, vacuum, model, cfg.physics, opts);
    const double min_purity = rep.step_purities.empty()
                                  ? 1.0
                                  : *std::min_element(rep.step_purities.begin(), rep.step_purities.end());
    const double dt = seconds_since(t0);
    csv.row({std::string(model_name(model)), std::string(phase_model_name(plan.phase_model)),
             static_cast<std::int64_t>(plan.steps.size()),
             static_cast<std::int64_t>(plan.groups.size()), rep.fidelity, rep.leakage,
             rep.guard_population, min_purity, opt_cell(rep.max_h_population), dt});
    report.push_back({{"model", model_name(model)},
                      {"phase_model", phase_model_name(plan.phase_model)},
                      {"steps", plan.steps.size()},
                      {"fidelity", rep.fidelity},
                      {"leakage", rep.leakage},
                      {"guard_population", rep.guard_population},
                      {"step_purities", rep.step_purities},
                      {"max_h_population",
                       rep.max_h_population ? json(*rep.max_h_population) : json(nullptr)},
                      {"duration_s", dt}});
    log << "synthesize " << model_name(model) << ": " << plan.steps.size()
        << " steps, fidelity=" << format_double(rep.fidelity)
        << " leakage=" << format_double(rep.leakage) << '\n';
  }
  open_out(dir / "report.json") << report.dump(2) << '\n';
  log << "wrote " << (dir / "synthesize.csv").string() << '\n';
  return kOk;
}

int run_task(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    cfg.check();
    if (cfg.task == "gate") return cmd_gate(cfg, log);
    if (cfg.task == "sweep") return cmd_sweep(cfg, log);
    if (cfg.task == "synthesize") return cmd_synthesize(cfg, log);
    return cmd_validate(cfg, log);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kConfigError;
}

}  // namespace fockgate::cli
