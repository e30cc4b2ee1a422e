#include "qsdc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

namespace qsdc {

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
}

// Minimal ordered key-tree for the machine-readable reports. Insertion order
// is the documented field order; numbers print with 9 significant digits.
struct Node {
    enum class Type { Object, Array, Number, UInt, Int, String, Bool, Null };
    Type type = Type::Object;
    double num = 0.0;
    std::uint64_t uval = 0;
    long long ival = 0;
    bool bval = false;
    std::string sval;
    std::vector<std::pair<std::string, Node>> fields;
    std::vector<Node> items;

    static Node object() { return {}; }
    static Node number(double v) {
        Node n;
        n.type = Type::Number;
        n.num = v;
        return n;
    }
    static Node uinteger(std::uint64_t v) {
        Node n;
        n.type = Type::UInt;
        n.uval = v;
        return n;
    }
    static Node integer(long long v) {
        Node n;
        n.type = Type::Int;
        n.ival = v;
        return n;
    }
    static Node string(std::string s) {
        Node n;
        n.type = Type::String;
        n.sval = std::move(s);
        return n;
    }
    static Node boolean(bool b) {
        Node n;
        n.type = Type::Bool;
        n.bval = b;
        return n;
    }
    static Node null() {
        Node n;
        n.type = Type::Null;
        return n;
    }
    static Node array3(double a, double b, double c) {
        Node n;
        n.type = Type::Array;
        n.items = {number(a), number(b), number(c)};
        return n;
    }
    Node& set(const std::string& key, Node v) {
        fields.emplace_back(key, std::move(v));
        return fields.back().second;
    }
};

void escape_string(std::ostream& os, const std::string& s) {
    os << '"';
    for (char c : s) {
        if (c == '"' || c == '\\') os << '\\';
        if (c == '\n') {
            os << "\\n";
            continue;
        }
        os << c;
    }
    os << '"';
}

void write_json_node(std::ostream& os, const Node& n, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    switch (n.type) {
        case Node::Type::Object: {
            if (n.fields.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            for (std::size_t i = 0; i < n.fields.size(); ++i) {
                os << pad << "  ";
                escape_string(os, n.fields[i].first);
                os << ": ";
                write_json_node(os, n.fields[i].second, depth + 1);
                os << (i + 1 < n.fields.size() ? ",\n" : "\n");
            }
            os << pad << "}";
            return;
        }
        case Node::Type::Array: {
            os << "[";
            for (std::size_t i = 0; i < n.items.size(); ++i) {
                if (i) os << ", ";
                write_json_node(os, n.items[i], depth);
            }
            os << "]";
            return;
        }
        case Node::Type::Number: os << fmt9(n.num); return;
        case Node::Type::UInt: os << n.uval; return;
        case Node::Type::Int: os << n.ival; return;
        case Node::Type::String: escape_string(os, n.sval); return;
        case Node::Type::Bool: os << (n.bval ? "true" : "false"); return;
        case Node::Type::Null: os << "null"; return;
    }
}

void write_json_report(std::ostream& os, const Node& n) {
    write_json_node(os, n, 0);
    os << "\n";
}

void csv_cell(std::ostream& os, const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        os << s;
        return;
    }
    os << '"';
    for (char c : s) {
        if (c == '"') os << '"';
        os << c;
    }
    os << '"';
}

void flatten_csv(std::ostream& os, const Node& n, const std::string& prefix) {
    switch (n.type) {
        case Node::Type::Object:
            for (const auto& [key, child] : n.fields)
                flatten_csv(os, child, prefix.empty() ? key : prefix + "." + key);
            return;
        case Node::Type::Array:
            for (std::size_t i = 0; i < n.items.size(); ++i)
                flatten_csv(os, n.items[i], prefix + "." + std::to_string(i));
            return;
        case Node::Type::Number:
            os << prefix << ',' << fmt9(n.num) << '\n';
            return;
        case Node::Type::UInt:
            os << prefix << ',' << n.uval << '\n';
            return;
        case Node::Type::Int:
            os << prefix << ',' << n.ival << '\n';
            return;
        case Node::Type::String:
            os << prefix << ',';
            csv_cell(os, n.sval);
            os << '\n';
            return;
        case Node::Type::Bool:
            os << prefix << ',' << (n.bval ? "true" : "false") << '\n';
            return;
        case Node::Type::Null:
            os << prefix << ",\n";
            return;
    }
}

void write_csv_report(std::ostream& os, const Node& n) {
    os << "key,value\n";
    flatten_csv(os, n, "");
}

void write_report(std::ostream& os, const Node& n, OutputFormat fmt) {
    if (fmt == OutputFormat::JsonLike)
        write_json_report(os, n);
    else
        write_csv_report(os, n);
}

template <typename Emit>
int with_sink(const std::optional<std::string>& path, std::ostream& fallback, std::ostream& err,
              Emit&& emit) {
    if (!path) {
        emit(fallback);
        return 0;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) {
        err << "error: cannot open '" << *path << "' for writing\n";
        return 1;
    }
    emit(file);
    if (!file) {
        err << "error: write to '" << *path << "' failed\n";
        return 1;
    }
    return 0;
}

void write_trace_header(std::ostream& os) { os << "t,x,y,z,p_fail,coherence,purity,phase_flag\n"; }

void write_trace_row(std::ostream& os, double t, const BlochState& s, const char* flag) {
    os << fmt9(t) << ',' << fmt9(s.x) << ',' << fmt9(s.y) << ',' << fmt9(s.z) << ','
       << fmt9(failure_probability(s)) << ',' << fmt9(coherence(s)) << ',' << fmt9(purity(s))
       << ',' << flag << '\n';
}

// ---------------------------------------------------------------------------
// design

struct DesignRow {
    std::string name;
    std::optional<double> value;
    std::string note;
};

std::vector<DesignRow> design_rows(const DesignParams& p) {
    if (!(p.eps > 0.0)) throw std::invalid_argument("design: eps > 0 required");
    const bool want_fail = p.p0 > 0.0;
    const bool want_coh = p.cbar > 0.0;
    const bool want_pur = p.pbar > 0.0;
    if (!want_fail && !want_coh && !want_pur)
        throw std::invalid_argument("design: no targets given (set p0, cbar, or pbar)");

    const double g = p.gamma0 + p.gamma;
    std::vector<DesignRow> rows;
    if (want_fail) {
        rows.push_back({"Tc", design_Tc(p.p0, p.eps), "closed-system period"});
        rows.push_back(
            {"Ta", design_Ta(p.p0, p.eps, p.gamma0, p.gamma), "amplitude-damping period"});
        const double f = ta_prime_limit(p.eps, p.gamma0, p.gamma);
        if (p.p0 <= f)
            rows.push_back({"Ta_prime", design_Ta_prime(p.p0, p.eps, p.gamma0, p.gamma),
                            "refined amplitude-damping period (valid: p0 <= " + fmt9(f) + ")"});
        else
            rows.push_back({"Ta_prime", std::nullopt, "inapplicable: requires p0 <= " + fmt9(f)});
        if (g > 0.0)
            rows.push_back({"Ta_doubleprime", design_Ta_doubleprime(p.p0, p.gamma0, p.gamma),
                            "disturbance-free amplitude-damping period"});
        else
            rows.push_back(
                {"Ta_doubleprime", std::nullopt, "inapplicable: requires gamma0 + gamma > 0"});
    }
    if (want_coh) {
        rows.push_back({"Tp", design_Tp(p.cbar, p.eps, p.gamma0, p.gamma),
                        tp_low_rate_branch(p.eps, p.gamma0, p.gamma)
                            ? "phase-damping period; low-rate branch 4(gamma0+gamma)^2 >= eps^2"
                            : "phase-damping period; high-rate branch 4(gamma0+gamma)^2 < eps^2"});
        const bool on_slice =
            g > 0.0 && std::abs(p.eps * p.eps - 2.0 * g * g) <= 1e-9 * std::max(1.0, p.eps * p.eps);
        if (on_slice)
            rows.push_back({"Tp_prime", design_Tp_prime(p.cbar, p.gamma0, p.gamma),
                            "refined phase-damping period on the slice eps^2 = 2(gamma0+gamma)^2"});
        else
            rows.push_back({"Tp_prime", std::nullopt,
                            "inapplicable: requires eps^2 = 2 (gamma0+gamma)^2"});
        if (g > 0.0)
            rows.push_back({"Tp_doubleprime", design_Tp_doubleprime(p.cbar, p.gamma0, p.gamma),
                            "disturbance-free phase-damping period"});
        else
            rows.push_back(
                {"Tp_doubleprime", std::nullopt, "inapplicable: requires gamma0 + gamma > 0"});
    }
    if (want_pur) {
        if (g > 0.0)
            rows.push_back({"Td", design_Td(p.pbar, p.gamma0, p.gamma), "depolarizing period"});
        else
            rows.push_back({"Td", std::nullopt, "inapplicable: requires gamma0 + gamma > 0"});
    }
    return rows;
}

void render_design_human(std::ostream& os, const DesignInputs& in,
                         const std::vector<DesignRow>& rows,
                         const std::vector<DesignRow>& phys_rows, std::optional<double> ab_closed,
                         std::optional<double> ab_amp) {
    const DesignParams& p = in.params;
    os << "sampling-period design\n";
    os << "  rates (dimensionless): p0=" << fmt9(p.p0) << " cbar=" << fmt9(p.cbar)
       << " pbar=" << fmt9(p.pbar) << " eps=" << fmt9(p.eps) << " gamma0=" << fmt9(p.gamma0)
       << " gamma=" << fmt9(p.gamma) << " beta=" << fmt9(in.beta) << "\n\n";
    os << std::left << std::setw(16) << "formula" << std::setw(16) << "period"
       << "note\n";
    for (const DesignRow& r : rows)
        os << std::left << std::setw(16) << r.name << std::setw(16)
           << (r.value ? fmt9(*r.value) : "-") << r.note << "\n";
    if (ab_closed)
        os << "\nalpha_bound_closed    " << fmt9(*ab_closed) << "  (recovery subset, beta="
           << fmt9(in.beta) << ")\nalpha_bound_amplitude " << fmt9(*ab_amp) << "\n";
    if (!phys_rows.empty()) {
        const DesignParams& ph = *in.physical;
        os << "\nphysical rates (rad/s): eps=" << fmt9(ph.eps) << " gamma0=" << fmt9(ph.gamma0)
           << " gamma=" << fmt9(ph.gamma) << "\n";
        os << std::left << std::setw(16) << "formula" << "period_ns\n";
        for (const DesignRow& r : phys_rows)
            if (r.value)
                os << std::left << std::setw(16) << r.name << fmt9(*r.value * 1e9) << "\n";
    }
}

Node design_report(const DesignInputs& in, const std::vector<DesignRow>& rows,
                   const std::vector<DesignRow>& phys_rows, std::optional<double> ab_closed,
                   std::optional<double> ab_amp) {
    Node root = Node::object();
    root.set("command", Node::string("design"));
    Node& params = root.set("params", Node::object());
    params.set("p0", Node::number(in.params.p0));
    params.set("cbar", Node::number(in.params.cbar));
    params.set("pbar", Node::number(in.params.pbar));
    params.set("eps", Node::number(in.params.eps));
    params.set("gamma0", Node::number(in.params.gamma0));
    params.set("gamma", Node::number(in.params.gamma));
    params.set("beta", Node::number(in.beta));
    Node& periods = root.set("periods", Node::object());
    for (const DesignRow& r : rows)
        periods.set(r.name, r.value ? Node::number(*r.value) : Node::null());
    Node& notes = root.set("notes", Node::object());
    for (const DesignRow& r : rows) notes.set(r.name, Node::string(r.note));
    if (ab_closed) {
        root.set("alpha_bound_closed", Node::number(*ab_closed));
        root.set("alpha_bound_amplitude", Node::number(*ab_amp));
    }
    if (!phys_rows.empty()) {
        Node& phys = root.set("physical_period_ns", Node::object());
        for (const DesignRow& r : phys_rows)
            phys.set(r.name, r.value ? Node::number(*r.value * 1e9) : Node::null());
    }
    return root;
}

}  // namespace

int cmd_design(const DesignArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const DesignInputs& in = args.inputs;
        const std::vector<DesignRow> rows = design_rows(in.params);
        std::optional<double> ab_closed, ab_amp;
        if (in.beta > 0.0 && in.params.p0 > 0.0) {
            ab_closed = alpha_bound_closed(in.params.p0, in.beta);
            ab_amp = alpha_bound_amplitude(in.beta);
        }
        std::vector<DesignRow> phys_rows;
        if (in.physical) phys_rows = design_rows(*in.physical);

        return with_sink(args.out, out, err, [&](std::ostream& os) {
            if (!args.format)
                render_design_human(os, in, rows, phys_rows, ab_closed, ab_amp);
            else
                write_report(os, design_report(in, rows, phys_rows, ab_closed, ab_amp),
                             *args.format);
        });
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.config_path.has_value() == args.witness_path.has_value()) {
            err << "error: simulate takes exactly one of --config or --witness\n";
            return 1;
        }
        if (args.witness_path) {
            const Witness w = load_witness(*args.witness_path);
            Trajectory traj =
                integrate(w.initial, zero_control(), w.realization, w.kind, w.horizon, w.dt);
            const double replayed = objective_value(traj.back_state(), w.objective);
            const double diff = std::abs(replayed - w.objective_value);
            const bool match = diff <= 1e-9;

            Node root = Node::object();
            root.set("command", Node::string("simulate_replay"));
            root.set("objective", Node::string(to_string(w.objective)));
            root.set("stored_value", Node::number(w.objective_value));
            root.set("replayed_value", Node::number(replayed));
            root.set("abs_diff", Node::number(diff));
            root.set("match_within_1e-9", Node::boolean(match));
            write_report(out, root, args.format);
            if (args.out) {
                const int rc = with_sink(args.out, out, err, [&](std::ostream& os) {
                    write_trace_header(os);
                    for (std::size_t i = 0; i < traj.size(); ++i)
                        write_trace_row(os, traj.times[i], traj.states[i], "free");
                });
                if (rc != 0) return rc;
            }
            return match ? 0 : 1;
        }

        if (args.format != OutputFormat::Csv) {
            err << "error: simulate writes csv trajectories only\n";
            return 1;
        }
        const ScenarioFile file = load_scenario(*args.config_path);
        const RunReport rep = run_protocol(file.scenario, args.seed, /*record_trace=*/true);
        const std::optional<std::string> sink = args.out ? args.out : file.out;
        return with_sink(sink, out, err, [&](std::ostream& os) {
            write_trace_header(os);
            for (const SampleRow& row : rep.trace)
                write_trace_row(os, row.t, row.s, to_string(row.phase));
        });
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace {

Node stat_node(const Stat& st) {
    Node n = Node::object();
    n.set("min", Node::number(st.min));
    n.set("mean", Node::number(st.mean));
    n.set("max", Node::number(st.max));
    return n;
}

}  // namespace

int cmd_montecarlo(const MonteCarloArgs& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.trials < 1) {
            err << "error: montecarlo needs --trials >= 1\n";
            return 1;
        }
        const ScenarioFile file = load_scenario(args.config_path);
        const McReport rep =
            monte_carlo(file.scenario, args.trials, args.seed, resolve_workers(args.workers));

        Node root = Node::object();
        root.set("command", Node::string("montecarlo"));
        root.set("trials", Node::integer(rep.trials));
        root.set("seed", Node::uinteger(rep.seed));
        root.set("n_periods", Node::integer(rep.n_periods));
        root.set("max_failure_at_samples", stat_node(rep.max_failure_at_samples));
        root.set("min_coherence_at_samples", stat_node(rep.min_coherence_at_samples));
        root.set("min_purity_at_samples", stat_node(rep.min_purity_at_samples));
        root.set("recovery_activations", Node::integer(rep.recovery_activations));
        root.set("recovery_failures", Node::integer(rep.recovery_failures));
        root.set("recovery_activation_rate", Node::number(rep.recovery_activation_rate));
        root.set("bad_reports", Node::integer(rep.bad_reports));
        root.set("bad_report_fraction", Node::number(rep.bad_report_fraction));
        root.set("violation_samples", Node::integer(rep.violation_samples));
        root.set("violations_at_sampling_instants",
                 Node::integer(rep.violations_at_sampling_instants));

        const std::optional<std::string> sink = args.out ? args.out : file.out;
        return with_sink(sink, out, err,
                         [&](std::ostream& os) { write_report(os, root, args.format); });
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_certify(const CertifyArgs& args, std::ostream& out, std::ostream& err) {
    try {
        const ScenarioFile file = load_scenario(args.config_path);
        const CertifyResult res =
            certify_bound(file.scenario, args.grid, args.levels, resolve_workers(args.workers));

        Node root = Node::object();
        root.set("command", Node::string("certify"));
        root.set("pass", Node::boolean(res.pass));
        root.set("objective", Node::string(to_string(res.objective)));
        root.set("worst_value", Node::number(res.worst_value));
        root.set("worst_monitor", Node::number(res.worst_monitor));
        root.set("threshold", Node::number(res.threshold));
        root.set("slack", Node::number(res.slack));
        root.set("n_candidates", Node::uinteger(res.n_candidates));
        root.set("grid", Node::integer(args.grid));
        root.set("levels", Node::integer(args.levels));
        root.set("initial", Node::array3(res.initial.x, res.initial.y, res.initial.z));

        const std::optional<std::string> witness_sink = args.out ? args.out : file.out;
        if (!res.pass && witness_sink) {
            write_witness(*witness_sink, make_witness(file.scenario, res));
            root.set("witness_written", Node::string(*witness_sink));
        }
        write_report(out, root, args.format);
        return res.pass ? 0 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int resolve_workers(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("QSDC_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return 0;  // library picks the hardware default
}

namespace {

std::optional<OutputFormat> parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json-like") return OutputFormat::JsonLike;
    return std::nullopt;  // "" or "table"
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"robust sampled-data control toolkit for a single qubit"};
    app.name("qsdc");
    app.require_subcommand(1);

    // design ----------------------------------------------------------------
    auto* design = app.add_subcommand("design", "evaluate the sampling-period design formulas");
    std::string d_config, d_format, d_out;
    DesignParams d_par;
    double d_beta = 0.0;
    double d_phys_eps = 0.0, d_phys_gamma0 = 0.0, d_phys_gamma = 0.0;
    design->add_option("--config", d_config, "design parameter file (JSON)");
    std::vector<CLI::Option*> d_param_opts = {
        design->add_option("--p0", d_par.p0, "failure-probability budget in (0,1)"),
        design->add_option("--cbar", d_par.cbar, "coherence floor in (0,1)"),
        design->add_option("--pbar", d_par.pbar, "purity floor in (1/2,1)"),
        design->add_option("--eps", d_par.eps, "Hamiltonian disturbance bound (> 0)"),
        design->add_option("--gamma0", d_par.gamma0, "nominal coupling rate"),
        design->add_option("--gamma", d_par.gamma, "coupling fluctuation bound"),
        design->add_option("--beta", d_beta, "recovery budget fraction (for alpha bounds)"),
        design->add_option("--phys-eps", d_phys_eps, "physical disturbance bound (rad/s)"),
        design->add_option("--phys-gamma0", d_phys_gamma0, "physical nominal coupling (rad/s)"),
        design->add_option("--phys-gamma", d_phys_gamma, "physical coupling fluctuation (rad/s)"),
    };
    design->add_option("--format", d_format, "table (default) | csv | json-like")
        ->check(CLI::IsMember({"table", "csv", "json-like"}));
    design->add_option("--out", d_out, "write output here instead of stdout");

    // simulate ---------------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "run one protocol trace or replay a witness");
    std::string s_config, s_witness, s_format = "csv", s_out;
    std::uint64_t s_seed = 0;
    simulate->add_option("--config", s_config, "scenario file (JSON)");
    simulate->add_option("--witness", s_witness, "replay a certification witness");
    simulate->add_option("--seed", s_seed, "measurement/realization seed");
    simulate->add_option("--format", s_format, "csv | json-like (replay report only)")
        ->check(CLI::IsMember({"csv", "json-like"}));
    simulate->add_option("--out", s_out, "trajectory sink (stdout if absent)");

    // montecarlo --------------------------------------------------------------
    auto* mc = app.add_subcommand("montecarlo", "aggregate many protocol runs");
    std::string m_config, m_format = "json-like", m_out;
    std::uint64_t m_seed = 0;
    int m_trials = 0, m_workers = 0;
    mc->add_option("--config", m_config, "scenario file (JSON)")->required();
    mc->add_option("--trials", m_trials, "number of independent runs (>= 1)")->required();
    mc->add_option("--seed", m_seed, "master seed");
    mc->add_option("--workers", m_workers, "worker threads (default: QSDC_WORKERS or hardware)");
    mc->add_option("--format", m_format, "json-like | csv")
        ->check(CLI::IsMember({"csv", "json-like"}));
    mc->add_option("--out", m_out, "report sink (stdout if absent)");

    // certify ------------------------------------------------------------------
    auto* certify = app.add_subcommand("certify", "adversarially check a design bound");
    std::string c_config, c_format = "json-like", c_out;
    int c_grid = 8, c_levels = 8, c_workers = 0;
    certify->add_option("--config", c_config, "scenario file (JSON)")->required();
    certify->add_option("--grid", c_grid, "bang-bang segments per signal (default 8)");
    certify->add_option("--levels", c_levels, "constant phase levels (default 8)");
    certify->add_option("--workers", c_workers, "worker threads");
    certify->add_option("--format", c_format, "json-like | csv")
        ->check(CLI::IsMember({"csv", "json-like"}));
    certify->add_option("--out", c_out, "witness sink used when certification fails");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (design->parsed()) {
            DesignArgs a;
            if (!d_config.empty()) {
                for (const CLI::Option* opt : d_param_opts)
                    if (opt->count() > 0) {
                        err << "error: --config excludes the design parameter flags\n";
                        return 1;
                    }
                a.inputs = load_design(d_config);
            } else {
                a.inputs.params = d_par;
                a.inputs.beta = d_beta;
                if (d_param_opts[7]->count() > 0) {  // --phys-eps
                    DesignParams ph = d_par;
                    ph.eps = d_phys_eps;
                    ph.gamma0 = d_phys_gamma0;
                    ph.gamma = d_phys_gamma;
                    a.inputs.physical = ph;
                }
            }
            a.format = parse_format(d_format);
            if (!d_out.empty()) a.out = d_out;
            return cmd_design(a, out, err);
        }
        if (simulate->parsed()) {
            SimulateArgs a;
            if (!s_config.empty()) a.config_path = s_config;
            if (!s_witness.empty()) a.witness_path = s_witness;
            a.seed = s_seed;
            a.format = parse_format(s_format).value_or(OutputFormat::Csv);
            if (!s_out.empty()) a.out = s_out;
            return cmd_simulate(a, out, err);
        }
        if (mc->parsed()) {
            MonteCarloArgs a;
            a.config_path = m_config;
            a.trials = m_trials;
            a.seed = m_seed;
            a.workers = m_workers;
            a.format = parse_format(m_format).value_or(OutputFormat::JsonLike);
            if (!m_out.empty()) a.out = m_out;
            return cmd_montecarlo(a, out, err);
        }
        if (certify->parsed()) {
            CertifyArgs a;
            a.config_path = c_config;
            a.grid = c_grid;
            a.levels = c_levels;
            a.workers = c_workers;
            a.format = parse_format(c_format).value_or(OutputFormat::JsonLike);
            if (!c_out.empty()) a.out = c_out;
            return cmd_certify(a, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace qsdc
