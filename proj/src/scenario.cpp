#include "specker/scenario.hpp"

#include "specker/error.hpp"
#include "specker/joint_measurability.hpp"
#include "specker/optimizer.hpp"

#include <set>
#include <sstream>

namespace specker {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::Parse, "key '" + key + "': " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

double read_number(const json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "expected a number");
  return j.get<double>();
}

Vec3 read_vec3(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) fail(key, "expected an array of three numbers");
  return {read_number(j[0], key + "[0]"), read_number(j[1], key + "[1]"),
          read_number(j[2], key + "[2]")};
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

constexpr std::array<const char*, 3> kPairKeys = {"12", "13", "23"};

}  // namespace

MeasurementTriple preset_triple(std::string_view name, double eta) {
  if (name == "trine") return MeasurementTriple::trine(eta);
  if (name == "orthogonal") return MeasurementTriple::orthogonal(eta);
  throw Error(ErrorKind::Parse, "unknown axes preset '" + std::string(name) + "'");
}

ScenarioFile parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "scenario must be a JSON object");
  reject_unknown_keys(doc, {"axes", "eta", "joint_params", "state"}, "");

  ScenarioFile f;

  if (!doc.contains("axes")) fail("axes", "missing");
  const json& axes = doc["axes"];
  if (axes.is_string()) {
    const auto name = axes.get<std::string>();
    if (name != "trine" && name != "orthogonal") fail("axes", "unknown preset '" + name + "'");
    f.axes = name;
  } else if (axes.is_array() && axes.size() == 3) {
    std::array<Vec3, 3> vs;
    for (int k = 0; k < 3; ++k) vs[k] = read_vec3(axes[k], "axes[" + std::to_string(k) + "]");
    f.axes = vs;
  } else {
    fail("axes", "expected a preset name or three 3-vectors");
  }

  if (!doc.contains("eta")) fail("eta", "missing");
  const json& eta = doc["eta"];
  if (eta.is_string()) {
    const auto mode = eta.get<std::string>();
    if (mode != "optimal-constrained" && mode != "optimal-relaxed") {
      fail("eta", "expected a number, \"optimal-constrained\" or \"optimal-relaxed\"");
    }
    f.eta = mode;
  } else {
    f.eta = read_number(eta, "eta");
  }

  f.joint_params = OptimalTag{};
  if (doc.contains("joint_params")) {
    const json& jp = doc["joint_params"];
    if (jp.is_string()) {
      if (jp.get<std::string>() != "optimal") fail("joint_params", "expected \"optimal\"");
    } else if (jp.is_object()) {
      reject_unknown_keys(jp, {"12", "13", "23"}, "joint_params");
      std::array<JointParams, 3> params;
      for (int k = 0; k < 3; ++k) {
        const std::string key = std::string("joint_params.") + kPairKeys[k];
        if (!jp.contains(kPairKeys[k])) fail(key, "missing");
        const json& entry = jp[kPairKeys[k]];
        if (!entry.is_object()) fail(key, "expected an object with alpha and a");
        reject_unknown_keys(entry, {"alpha", "a"}, key);
        if (!entry.contains("alpha")) fail(key + ".alpha", "missing");
        if (!entry.contains("a")) fail(key + ".a", "missing");
        params[k] = {read_number(entry["alpha"], key + ".alpha"), read_vec3(entry["a"], key + ".a")};
      }
      f.joint_params = params;
    } else {
      fail("joint_params", "expected \"optimal\" or an object keyed by pair");
    }
  }

  f.state = OptimalTag{};
  if (doc.contains("state")) {
    const json& st = doc["state"];
    if (st.is_string()) {
      if (st.get<std::string>() != "optimal") fail("state", "expected \"optimal\"");
    } else if (st.is_array()) {
      f.state = read_vec3(st, "state");
    } else if (st.is_object()) {
      reject_unknown_keys(st, {"q", "theta", "phi"}, "state");
      for (const char* k : {"q", "theta", "phi"}) {
        if (!st.contains(k)) fail(std::string("state.") + k, "missing");
      }
      f.state = StateAngles{read_number(st["q"], "state.q"), read_number(st["theta"], "state.theta"),
                            read_number(st["phi"], "state.phi")};
    } else {
      fail("state", "expected \"optimal\", a Bloch vector or {q, theta, phi}");
    }
  }
  return f;
}

nlohmann::json to_json(const ScenarioFile& f) {
  json doc = json::object();
  if (const auto* name = std::get_if<std::string>(&f.axes)) {
    doc["axes"] = *name;
  } else {
    const auto& vs = std::get<std::array<Vec3, 3>>(f.axes);
    doc["axes"] = json::array({vec_json(vs[0]), vec_json(vs[1]), vec_json(vs[2])});
  }
  std::visit([&](const auto& v) { doc["eta"] = v; }, f.eta);
  if (const auto* params = std::get_if<std::array<JointParams, 3>>(&f.joint_params)) {
    json jp = json::object();
    for (int k = 0; k < 3; ++k) {
      jp[kPairKeys[k]] = {{"alpha", (*params)[k].alpha}, {"a", vec_json((*params)[k].a)}};
    }
    doc["joint_params"] = jp;
  } else {
    doc["joint_params"] = "optimal";
  }
  if (const auto* r = std::get_if<Vec3>(&f.state)) {
    doc["state"] = vec_json(*r);
  } else if (const auto* a = std::get_if<StateAngles>(&f.state)) {
    doc["state"] = {{"q", a->q}, {"theta", a->theta}, {"phi", a->phi}};
  } else {
    doc["state"] = "optimal";
  }
  return doc;
}

ResolvedScenario resolve_scenario(const ScenarioFile& f) {
  ResolvedScenario r;
  if (const auto* name = std::get_if<std::string>(&f.axes)) {
    r.triple = preset_triple(*name);
  } else {
    const auto& vs = std::get<std::array<Vec3, 3>>(f.axes);
    r.triple = {{UnitAxis::make(vs[0]), UnitAxis::make(vs[1]), UnitAxis::make(vs[2])}, 1.0};
  }

  if (const auto* eta = std::get_if<double>(&f.eta)) {
    if (!(*eta >= 0.0 && *eta <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "eta must lie in [0, 1]");
    }
    r.triple.eta = *eta;
  } else {
    const EtaMode mode = std::get<std::string>(f.eta) == "optimal-constrained"
                             ? EtaMode::Constrained
                             : EtaMode::Relaxed;
    const EtaOptimum opt = optimize_eta(r.triple.cosines(), mode);
    r.triple.eta = opt.eta_star;
    r.eta_is_supremum = opt.open_boundary_supremum;
  }

  if (const auto* params = std::get_if<std::array<JointParams, 3>>(&f.joint_params)) {
    r.params = *params;
  } else {
    r.params = optimal_params(r.triple);
  }

  if (const auto* bloch = std::get_if<Vec3>(&f.state)) {
    r.state = QubitState::from_bloch(*bloch);
  } else if (const auto* a = std::get_if<StateAngles>(&f.state)) {
    r.state = QubitState::from_parameters(a->q, a->theta, a->phi);
  } else {
    Vec3 a_total = Vec3::Zero();
    for (const auto& p : r.params) a_total += p.a;
    r.state = a_total.norm() > kTolAlg ? optimal_state(a_total) : QubitState::maximally_mixed();
  }
  return r;
}

ScenarioReport evaluate(const ResolvedScenario& r) {
  ScenarioReport report = evaluate_scenario(r.triple, r.params, r.state);
  report.eta_is_supremum = r.eta_is_supremum;
  return report;
}

}  // namespace specker
