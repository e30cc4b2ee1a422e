#include "qsdc/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qsdc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

json parse_tree(const std::string& text) {
    json tree = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (tree.is_discarded()) fail("document is not valid JSON");
    return tree;
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(where + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail("unknown key '" + it.key() + "' in " + where);
    }
}

double get_num(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + " is missing required key '" + key + "'");
    if (!it->is_number()) fail(where + "." + key + " must be a number");
    return it->get<double>();
}

double get_num_or(const json& obj, const char* key, const std::string& where, double dflt) {
    return obj.contains(key) ? get_num(obj, key, where) : dflt;
}

int get_int_or(const json& obj, const char* key, const std::string& where, int dflt) {
    auto it = obj.find(key);
    if (it == obj.end()) return dflt;
    if (!it->is_number_integer()) fail(where + "." + key + " must be an integer");
    return it->get<int>();
}

std::string get_str(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + " is missing required key '" + key + "'");
    if (!it->is_string()) fail(where + "." + key + " must be a string");
    return it->get<std::string>();
}

std::vector<double> get_num_array(const json& node, const std::string& where) {
    if (!node.is_array()) fail(where + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(node.size());
    for (const auto& v : node) {
        if (!v.is_number()) fail(where + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

DecoherenceKind kind_from_string(const std::string& s) {
    if (s == "closed") return DecoherenceKind::Closed;
    if (s == "amplitude_damping") return DecoherenceKind::AmplitudeDamping;
    if (s == "phase_damping") return DecoherenceKind::PhaseDamping;
    if (s == "depolarizing") return DecoherenceKind::Depolarizing;
    fail("unknown dynamics kind '" + s +
         "' (expected closed | amplitude_damping | phase_damping | depolarizing)");
}

Axis axis_from_string(const std::string& s) {
    if (s == "X") return Axis::X;
    if (s == "Y") return Axis::Y;
    if (s == "Z") return Axis::Z;
    fail("unknown axis '" + s + "' (expected X | Y | Z)");
}

SlidingModeTarget::Kind target_kind_from_string(const std::string& s) {
    if (s == "failure_prob") return SlidingModeTarget::Kind::FailureProb;
    if (s == "coherence") return SlidingModeTarget::Kind::Coherence;
    if (s == "purity") return SlidingModeTarget::Kind::Purity;
    fail("unknown target kind '" + s + "' (expected failure_prob | coherence | purity)");
}

SearchObjective objective_from_string(const std::string& s) {
    if (s == "failure_prob") return SearchObjective::FailureProb;
    if (s == "coherence_loss") return SearchObjective::CoherenceLoss;
    if (s == "purity_loss") return SearchObjective::PurityLoss;
    fail("unknown objective '" + s + "' (expected failure_prob | coherence_loss | purity_loss)");
}

UncertaintyBounds parse_bounds(const json& node, const std::string& where) {
    check_keys(node, where, {"omega", "epsilon", "gamma0", "gamma"});
    UncertaintyBounds b;
    b.omega = get_num_or(node, "omega", where, 0.0);
    b.epsilon = get_num_or(node, "epsilon", where, 0.0);
    b.gamma0 = get_num_or(node, "gamma0", where, 0.0);
    b.gamma = get_num_or(node, "gamma", where, 0.0);
    return b;
}

SamplingPlan parse_plan(const json& node) {
    check_keys(node, "plan", {"period", "formula", "target", "beta", "alpha", "eta"});
    auto target_it = node.find("target");
    if (target_it == node.end()) fail("plan is missing required key 'target'");
    check_keys(*target_it, "plan.target", {"kind", "value"});
    SlidingModeTarget target;
    target.kind = target_kind_from_string(get_str(*target_it, "kind", "plan.target"));
    target.value = get_num(*target_it, "value", "plan.target");
    return make_plan(get_num(node, "period", "plan"), get_num_or(node, "beta", "plan", 0.0),
                     get_num_or(node, "alpha", "plan", 0.0), get_num_or(node, "eta", "plan", 0.5),
                     target, formula_from_string(get_str(node, "formula", "plan")));
}

MeasurementModel parse_measurement(const json& node) {
    check_keys(node, "measurement", {"axis", "p01", "p10"});
    MeasurementModel m;
    if (node.contains("axis")) m.axis = axis_from_string(get_str(node, "axis", "measurement"));
    m.p01 = get_num_or(node, "p01", "measurement", 0.0);
    m.p10 = get_num_or(node, "p10", "measurement", 0.0);
    return m;
}

RecoveryLaw parse_recovery(const json& node) {
    const std::string kind = get_str(node, "kind", "recovery");
    RecoveryLaw law;
    if (kind == "none") {
        check_keys(node, "recovery", {"kind"});
        law.kind = RecoveryLaw::Kind::None;
    } else if (kind == "lyapunov") {
        check_keys(node, "recovery", {"kind", "k_x", "k_y", "k_z"});
        law.kind = RecoveryLaw::Kind::Lyapunov;
        law.gains.k_x = get_num_or(node, "k_x", "recovery", 0.0);
        law.gains.k_y = get_num_or(node, "k_y", "recovery", 0.0);
        law.gains.k_z = get_num_or(node, "k_z", "recovery", 0.0);
    } else if (kind == "constant") {
        check_keys(node, "recovery", {"kind", "u", "axis"});
        law.kind = RecoveryLaw::Kind::Constant;
        law.u = get_num(node, "u", "recovery");
        law.axis = node.contains("axis") ? axis_from_string(get_str(node, "axis", "recovery"))
                                         : Axis::Y;
    } else {
        fail("unknown recovery kind '" + kind + "' (expected none | lyapunov | constant)");
    }
    return law;
}

RealizationSource parse_source(const json& node) {
    check_keys(node, "source", {"kind", "segment_len"});
    RealizationSource src;
    const std::string kind = get_str(node, "kind", "source");
    if (kind == "nominal")
        src.kind = RealizationSource::Kind::Nominal;
    else if (kind == "structured_worst")
        src.kind = RealizationSource::Kind::StructuredWorst;
    else if (kind == "random")
        src.kind = RealizationSource::Kind::Random;
    else
        fail("unknown source kind '" + kind + "' (expected nominal | structured_worst | random)");
    src.segment_len = get_num_or(node, "segment_len", "source", 0.0);
    return src;
}

BlochState parse_state(const json& node, const std::string& where) {
    std::vector<double> v = get_num_array(node, where);
    if (v.size() != 3) fail(where + " must be a 3-component array [x, y, z]");
    return {v[0], v[1], v[2]};
}

json signal_to_json(const PiecewiseConstant& s) {
    return json{{"knots", s.knots()}, {"values", s.values()}};
}

PiecewiseConstant signal_from_json(const json& node, const std::string& where) {
    check_keys(node, where, {"knots", "values"});
    auto knots_it = node.find("knots");
    auto values_it = node.find("values");
    if (knots_it == node.end() || values_it == node.end())
        fail(where + " needs both 'knots' and 'values'");
    return PiecewiseConstant(get_num_array(*knots_it, where + ".knots"),
                             get_num_array(*values_it, where + ".values"));
}

}  // namespace

ScenarioFile parse_scenario_text(const std::string& json_text) {
    json tree = parse_tree(json_text);
    if (tree.is_object() && tree.contains("physical_unit_rad_per_s"))
        fail("'physical_unit_rad_per_s' is honored by the design command only; "
             "simulate/montecarlo/certify scenarios are dimensionless");
    check_keys(tree, "scenario",
               {"kind", "bounds", "plan", "measurement", "recovery", "source", "n_periods", "dt",
                "initial", "out"});

    ScenarioFile file;
    Scenario& sc = file.scenario;
    sc.kind = kind_from_string(get_str(tree, "kind", "scenario"));
    auto bounds_it = tree.find("bounds");
    if (bounds_it == tree.end()) fail("scenario is missing required key 'bounds'");
    sc.bounds = parse_bounds(*bounds_it, "bounds");
    auto plan_it = tree.find("plan");
    if (plan_it == tree.end()) fail("scenario is missing required key 'plan'");
    sc.plan = parse_plan(*plan_it);
    if (tree.contains("measurement")) sc.measurement = parse_measurement(tree.at("measurement"));
    if (tree.contains("recovery")) sc.recovery = parse_recovery(tree.at("recovery"));
    if (tree.contains("source")) sc.source = parse_source(tree.at("source"));
    sc.n_periods = get_int_or(tree, "n_periods", "scenario", 1);
    sc.dt = get_num_or(tree, "dt", "scenario", 1e-4);
    if (tree.contains("initial")) sc.initial = parse_state(tree.at("initial"), "initial");
    if (tree.contains("out")) file.out = get_str(tree, "out", "scenario");

    validate(sc);
    return file;
}

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

}  // namespace

ScenarioFile load_scenario(const std::string& path) { return parse_scenario_text(slurp(path)); }

DesignInputs parse_design_text(const std::string& json_text) {
    json tree = parse_tree(json_text);
    check_keys(tree, "design",
               {"p0", "cbar", "pbar", "eps", "gamma0", "gamma", "beta", "physical_unit_rad_per_s"});
    DesignInputs in;
    in.params.p0 = get_num_or(tree, "p0", "design", 0.0);
    in.params.cbar = get_num_or(tree, "cbar", "design", 0.0);
    in.params.pbar = get_num_or(tree, "pbar", "design", 0.0);
    in.params.eps = get_num_or(tree, "eps", "design", 0.0);
    in.params.gamma0 = get_num_or(tree, "gamma0", "design", 0.0);
    in.params.gamma = get_num_or(tree, "gamma", "design", 0.0);
    in.beta = get_num_or(tree, "beta", "design", 0.0);
    if (tree.contains("physical_unit_rad_per_s")) {
        const json& ph = tree.at("physical_unit_rad_per_s");
        check_keys(ph, "physical_unit_rad_per_s", {"eps", "gamma0", "gamma"});
        DesignParams p = in.params;  // dimensionless targets carry over
        p.eps = get_num(ph, "eps", "physical_unit_rad_per_s");
        p.gamma0 = get_num_or(ph, "gamma0", "physical_unit_rad_per_s", 0.0);
        p.gamma = get_num_or(ph, "gamma", "physical_unit_rad_per_s", 0.0);
        in.physical = p;
    }
    return in;
}

DesignInputs load_design(const std::string& path) { return parse_design_text(slurp(path)); }

std::string witness_to_text(const Witness& w) {
    json tree;
    tree["kind"] = to_string(w.kind);
    tree["objective"] = to_string(w.objective);
    tree["bounds"] = {{"omega", w.bounds.omega},
                      {"epsilon", w.bounds.epsilon},
                      {"gamma0", w.bounds.gamma0},
                      {"gamma", w.bounds.gamma}};
    tree["initial"] = {w.initial.x, w.initial.y, w.initial.z};
    tree["horizon"] = w.horizon;
    tree["dt"] = w.dt;
    tree["objective_value"] = w.objective_value;
    tree["realization"] = {{"omega_t", signal_to_json(w.realization.omega_t)},
                           {"eps_mag_t", signal_to_json(w.realization.eps_mag_t)},
                           {"eps_phase_t", signal_to_json(w.realization.eps_phase_t)},
                           {"dgamma_t", signal_to_json(w.realization.dgamma_t)}};
    return tree.dump(2) + "\n";
}

Witness parse_witness_text(const std::string& json_text) {
    json tree = parse_tree(json_text);
    check_keys(tree, "witness",
               {"kind", "objective", "bounds", "initial", "horizon", "dt", "objective_value",
                "realization"});
    Witness w;
    w.kind = kind_from_string(get_str(tree, "kind", "witness"));
    w.objective = objective_from_string(get_str(tree, "objective", "witness"));
    auto bounds_it = tree.find("bounds");
    if (bounds_it == tree.end()) fail("witness is missing required key 'bounds'");
    w.bounds = parse_bounds(*bounds_it, "witness.bounds");
    auto init_it = tree.find("initial");
    if (init_it == tree.end()) fail("witness is missing required key 'initial'");
    w.initial = parse_state(*init_it, "witness.initial");
    w.horizon = get_num(tree, "horizon", "witness");
    w.dt = get_num(tree, "dt", "witness");
    w.objective_value = get_num(tree, "objective_value", "witness");
    auto real_it = tree.find("realization");
    if (real_it == tree.end()) fail("witness is missing required key 'realization'");
    check_keys(*real_it, "witness.realization",
               {"omega_t", "eps_mag_t", "eps_phase_t", "dgamma_t"});
    auto signal = [&](const char* key) {
        auto it = real_it->find(key);
        if (it == real_it->end())
            fail(std::string("witness.realization is missing required key '") + key + "'");
        return signal_from_json(*it, std::string("witness.realization.") + key);
    };
    w.realization = make_realization(w.bounds, signal("omega_t"), signal("eps_mag_t"),
                                     signal("eps_phase_t"), signal("dgamma_t"));
    require_physical(w.initial, "witness initial state");
    if (!(w.horizon >= 0.0)) fail("witness.horizon must be >= 0");
    if (!(w.dt > 0.0)) fail("witness.dt must be > 0");
    return w;
}

void write_witness(const std::string& path, const Witness& w) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("config: cannot open '" + path + "' for writing");
    out << witness_to_text(w);
    if (!out) throw std::runtime_error("config: failed writing '" + path + "'");
}

Witness load_witness(const std::string& path) { return parse_witness_text(slurp(path)); }

Witness make_witness(const Scenario& sc, const CertifyResult& res) {
    Witness w;
    w.kind = sc.kind;
    w.objective = res.objective;
    w.bounds = sc.bounds;
    w.initial = res.initial;
    w.horizon = sc.plan.period;
    w.dt = sc.dt;
    w.objective_value = res.worst_value;
    w.realization = res.worst;
    return w;
}

}  // namespace qsdc
