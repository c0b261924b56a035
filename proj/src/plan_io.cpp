#include <algorithm>
#include <string>

#include "fockgate/errors.hpp"
#include "fockgate/synthesis.hpp"
#include "json.hpp"

namespace fockgate {
namespace {

using json = nlohmann::ordered_json;

json params_json(const RamanParams& p) {
  return {{"g", p.g},         {"omega_L", p.omega_L}, {"theta", p.theta},
          {"delta", p.delta}, {"m", p.m},             {"include_shift", p.include_shift}};
}

RamanParams params_from(const json& j) {
  RamanParams p;
  p.g = j.at("g").get<double>();
  p.omega_L = j.at("omega_L").get<double>();
  p.theta = j.value("theta", 0.0);
  p.delta = j.at("delta").get<double>();
  p.m = j.value("m", 1);
  p.include_shift = j.value("include_shift", true);
  p.validate();
  return p;
}

}  // namespace

std::string serialize_plan(const CircuitPlan& plan) {
  json steps = json::array();
  for (const auto& s : plan.steps) {
    steps.push_back({{"m", s.m},
                     {"k", s.k},
                     {"phi", s.phi},
                     {"theta0", s.theta0},
                     {"tau", s.tau},
                     {"phase_correction", s.phase_offset},
                     {"lambda", s.lambda},
                     {"dispersive_shift", s.dispersive_shift},
                     {"eta", s.eta}});
  }
  json amps = json::array();
  for (const cplx& a : plan.target.amplitudes()) amps.push_back({a.real(), a.imag()});

  json doc;
  doc["format"] = "fockgate-plan";
  doc["version"] = 1;
  doc["phase_model"] = phase_model_name(plan.phase_model);
  doc["schedule"] = schedule_name(plan.schedule);
  doc["params"] = params_json(plan.params);
  doc["target"] = {{"fock_cutoff", plan.target.space().fock_cutoff()}, {"amplitudes", amps}};
  doc["steps"] = steps;
  doc["groups"] = plan.groups;
  return doc.dump(2) + "\n";
}

CircuitPlan parse_plan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("plan: malformed JSON: ") + e.what());
  }
  try {
    if (doc.value("format", "") != "fockgate-plan") throw Error("plan: missing format tag 'fockgate-plan'");
    CircuitPlan plan;
    plan.phase_model = parse_phase_model(doc.at("phase_model").get<std::string>());
    plan.schedule = parse_schedule(doc.value("schedule", "sequential"));
    plan.params = params_from(doc.at("params"));

    const auto& tgt = doc.at("target");
    const int cutoff = tgt.at("fock_cutoff").get<int>();
    CVector amps;
    for (const auto& a : tgt.at("amplitudes")) amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    plan.target = StateVector(HilbertSpace::oscillator(cutoff), std::move(amps));

    for (const auto& s : doc.at("steps")) {
      GateParams gp;
      gp.m = s.at("m").get<int>();
      gp.k = s.value("k", 1);
      gp.phi = s.at("phi").get<double>();
      gp.theta0 = s.at("theta0").get<double>();
      gp.tau = s.at("tau").get<double>();
      gp.phase_offset = s.value("phase_correction", 0.0);
      gp.lambda = s.value("lambda", plan.params.lambda());
      gp.dispersive_shift = s.value("dispersive_shift", plan.params.dispersive_shift());
      gp.eta = s.value("eta", gp.dispersive_shift * gp.m * gp.tau);
      gp.validate();
      plan.steps.push_back(gp);
    }
    if (doc.contains("groups")) {
      plan.groups = doc.at("groups").get<std::vector<std::vector<std::size_t>>>();
      std::vector<bool> seen(plan.steps.size(), false);
      for (const auto& g : plan.groups)
        for (std::size_t i : g) {
          if (i >= plan.steps.size() || seen[i]) throw Error("plan: groups must partition the steps");
          seen[i] = true;
        }
      if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw Error("plan: groups must partition the steps");
      }
    } else {
      plan.groups = group_parallel(plan.steps);
    }
    return plan;
  } catch (const json::exception& e) {
    throw Error(std::string("plan: ") + e.what());
  }
}

}  // namespace fockgate
