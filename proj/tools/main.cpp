// Command-line front end: single-shot analyses (pe-order, realize, simulate,
// informativity, sylvester) and the Monte Carlo experiment drivers.
//
// Exit codes: 0 success, 2 precondition/config error (including malformed
// CSV/JSON), 3 numerical-assumption violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "siginform/errors.hpp"
#include "siginform/experiments.hpp"
#include "siginform/serialization.hpp"

namespace {

using namespace siginform;

std::optional<double> env_tolerance() {
    const char* raw = std::getenv("SIGINFORM_RANK_TOL");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    try {
        return std::stod(raw);
    } catch (const std::exception&) {
        throw std::invalid_argument("SIGINFORM_RANK_TOL is not a number");
    }
}

void emit(const Json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << report.dump(2) << "\n";
}

Vector parse_x0(const std::string& text, Index n) {
    if (text.empty()) return Vector::Zero(n);
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            vals.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw std::invalid_argument("--x0: bad numeric field '" + field + "'");
        }
    }
    if (static_cast<Index>(vals.size()) != n)
        throw std::invalid_argument("--x0: expected " + std::to_string(n) + " entries");
    Vector x0(n);
    for (Index i = 0; i < n; ++i) x0(i) = vals[static_cast<std::size_t>(i)];
    return x0;
}

struct CommonOpts {
    std::string out_path;
    double tol = -1.0;  // negative = unset

    std::optional<double> tolerance(const std::optional<double>& env) const {
        if (tol >= 0.0) return tol;
        return env;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-o,--out", opts.out_path, "Write the JSON report to this path");
    cmd->add_option("--tol", opts.tol, "Absolute singular-value tolerance for rank decisions");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signal-generator informativity toolkit"};
    app.require_subcommand(1);

    std::optional<double> env_tol;

    // pe-order
    std::string pe_in;
    CommonOpts pe_opts;
    auto* pe_cmd = app.add_subcommand("pe-order", "Maximum persistency-of-excitation order of a signal");
    pe_cmd->add_option("--in", pe_in, "Signal CSV (header: u)")->required();
    add_common(pe_cmd, pe_opts);

    // realize
    std::string realize_in;
    Index realize_order = -1;
    CommonOpts realize_opts;
    auto* realize_cmd =
        app.add_subcommand("realize", "Recover a minimal signal generator from a signal");
    realize_cmd->add_option("--in", realize_in, "Signal CSV (header: u)")->required();
    realize_cmd->add_option("--order", realize_order, "Generator order (default: max PE order)");
    add_common(realize_cmd, realize_opts);

    // simulate
    std::string sim_plant, sim_gen, sim_u, sim_x0, sim_csv;
    Index sim_steps = -1;
    CommonOpts sim_opts;
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate a discrete-time plant");
    sim_cmd->add_option("--plant", sim_plant, "Plant JSON")->required();
    sim_cmd->add_option("--gen", sim_gen, "Generator JSON supplying the input");
    sim_cmd->add_option("--u", sim_u, "Input signal CSV (alternative to --gen)");
    sim_cmd->add_option("--steps", sim_steps, "Number of steps (required with --gen)");
    sim_cmd->add_option("--x0", sim_x0, "Initial state, comma-separated (default: zeros)");
    sim_cmd->add_option("--traj-out", sim_csv, "Also write the trajectory CSV (header: u,y) here");
    add_common(sim_cmd, sim_opts);

    // informativity
    std::string info_plant, info_traj;
    Index info_l = 0, info_assumed_n = -1;
    CommonOpts info_opts;
    auto* info_cmd =
        app.add_subcommand("informativity", "Rank test of collected input-output windows");
    info_cmd->add_option("--plant", info_plant, "Plant JSON");
    info_cmd->add_option("--assumed-n", info_assumed_n,
                         "Assume a generic observable plant of this order instead of --plant");
    info_cmd->add_option("--traj", info_traj, "Trajectory CSV (header: u,y)")->required();
    info_cmd->add_option("--L", info_l, "Window length")->required();
    add_common(info_cmd, info_opts);

    // sylvester
    std::string syl_plant, syl_gen, syl_x0;
    CommonOpts syl_opts;
    auto* syl_cmd = app.add_subcommand(
        "sylvester", "Interconnection analysis: Pi, moment, Gamma, offset state");
    syl_cmd->add_option("--plant", syl_plant, "Plant JSON")->required();
    syl_cmd->add_option("--gen", syl_gen, "Generator JSON")->required();
    syl_cmd->add_option("--x0", syl_x0, "Initial plant state (default: zeros)");
    add_common(syl_cmd, syl_opts);

    // theorem1-mc
    Theorem1McConfig t1;
    CommonOpts t1_opts;
    auto* t1_cmd = app.add_subcommand("theorem1-mc",
                                      "Monte Carlo: case-B informativity for random draws");
    t1_cmd->add_option("--n", t1.n, "Plant order")->required();
    t1_cmd->add_option("--Ng", t1.n_g, "Generator dimension")->required();
    t1_cmd->add_option("--L", t1.l, "Window length")->required();
    t1_cmd->add_option("--T", t1.t_len, "Data length")->required();
    t1_cmd->add_option("--trials", t1.trials, "Trial count");
    t1_cmd->add_option("--seed", t1.seed, "Master seed");
    t1_cmd->add_flag("--adversarial", t1.adversarial,
                     "Use constructed exceptional-set members as initial states");
    add_common(t1_cmd, t1_opts);

    // corollary2
    Corollary2Config c2;
    CommonOpts c2_opts;
    auto* c2_cmd = app.add_subcommand(
        "corollary2", "Monte Carlo: rank 2n+1 from an (n+1)-dimensional generator with T=3n+1");
    c2_cmd->add_option("--n", c2.n, "Plant order")->required();
    c2_cmd->add_option("--trials", c2.trials, "Trial count");
    c2_cmd->add_option("--seed", c2.seed, "Master seed");
    add_common(c2_cmd, c2_opts);

    // willems-compare
    WillemsCompareConfig wc;
    CommonOpts wc_opts;
    auto* wc_cmd = app.add_subcommand(
        "willems-compare", "Side-by-side data-length comparison (T=4n+1 vs T=3n+1)");
    wc_cmd->add_option("--n", wc.n, "Plant order")->required();
    wc_cmd->add_option("--trials", wc.trials, "Trial count");
    wc_cmd->add_option("--seed", wc.seed, "Master seed");
    add_common(wc_cmd, wc_opts);

    // ct-informativity
    CtInformativityConfig ct;
    CommonOpts ct_opts;
    auto* ct_cmd = app.add_subcommand("ct-informativity",
                                      "Monte Carlo: continuous-time jet-sample rank test");
    ct_cmd->add_option("--n", ct.n, "Plant order")->required();
    ct_cmd->add_option("--Ng", ct.n_g, "Generator dimension")->required();
    ct_cmd->add_option("--L", ct.l, "Jet length")->required();
    ct_cmd->add_option("--k", ct.k, "Sample count");
    ct_cmd->add_option("--t-final", ct.t_final, "Observation horizon");
    ct_cmd->add_option("--trials", ct.trials, "Trial count");
    ct_cmd->add_option("--seed", ct.seed, "Master seed");
    add_common(ct_cmd, ct_opts);

    // lemma2-mc
    Lemma2Config l2;
    std::vector<Index> l2_t_values;
    CommonOpts l2_opts;
    auto* l2_cmd = app.add_subcommand("lemma2-mc",
                                      "Monte Carlo: PE order and realizability of random signals");
    l2_cmd->add_option("--T", l2_t_values, "Signal lengths (repeatable or comma-separated)")
        ->delimiter(',');
    l2_cmd->add_option("--trials", l2.trials, "Trial count");
    l2_cmd->add_option("--seed", l2.seed, "Master seed");
    add_common(l2_cmd, l2_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        env_tol = env_tolerance();

        if (*pe_cmd) {
            const std::vector<double> u = load_signal_file(pe_in);
            const std::optional<double> tol = pe_opts.tolerance(env_tol);
            Json report;
            report["experiment"] = "pe-order";
            report["input"] = pe_in;
            report["length"] = static_cast<Index>(u.size());
            report["pe_order"] = max_pe_order(u, tol);
            emit(report, pe_opts.out_path);
        } else if (*realize_cmd) {
            const std::vector<double> u = load_signal_file(realize_in);
            const std::optional<double> tol = realize_opts.tolerance(env_tol);
            const std::optional<Index> order =
                realize_order >= 0 ? std::optional<Index>(realize_order) : std::nullopt;
            const SignalGenerator gen = realize_from_signal(u, order, tol);
            const std::vector<double> regenerated = response(gen, static_cast<Index>(u.size()));
            double max_err = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i)
                max_err = std::max(max_err, std::abs(regenerated[i] - u[i]));
            Json report;
            report["experiment"] = "realize";
            report["input"] = realize_in;
            report["order"] = gen.dimension();
            report["generator"] = generator_to_json(gen);
            report["max_regeneration_error"] = max_err;
            emit(report, realize_opts.out_path);
        } else if (*sim_cmd) {
            const LtiSystem plant = system_from_json(load_json_file(sim_plant));
            std::vector<double> u;
            if (!sim_gen.empty()) {
                if (sim_steps < 1)
                    throw std::invalid_argument("simulate: --steps is required with --gen");
                const SignalGenerator gen = generator_from_json(load_json_file(sim_gen));
                u = response(gen, sim_steps);
            } else if (!sim_u.empty()) {
                u = load_signal_file(sim_u);
            } else {
                throw std::invalid_argument("simulate: provide --gen or --u");
            }
            const Vector x0 = parse_x0(sim_x0, plant.order());
            const DtSimulation sim = simulate_dt(plant, u, x0);
            if (!sim_csv.empty()) {
                std::ofstream out(sim_csv);
                if (!out) throw std::invalid_argument("cannot open output file: " + sim_csv);
                write_trajectory_csv(out, sim.traj);
            }
            Json report;
            report["experiment"] = "simulate";
            report["T"] = sim.traj.length();
            report["u"] = sim.traj.u;
            report["y"] = sim.traj.y;
            emit(report, sim_opts.out_path);
        } else if (*info_cmd) {
            const Trajectory traj = load_trajectory_file(info_traj);
            const std::optional<double> tol = info_opts.tolerance(env_tol);
            InformativityVerdict verdict;
            if (!info_plant.empty()) {
                const LtiSystem plant = system_from_json(load_json_file(info_plant));
                verdict = is_informative(traj, info_l, plant, tol);
            } else if (info_assumed_n >= 1) {
                verdict = is_informative_blind(traj, info_l, info_assumed_n, tol);
            } else {
                throw std::invalid_argument("informativity: provide --plant or --assumed-n");
            }
            Json report;
            report["experiment"] = "informativity";
            report["L"] = info_l;
            report.update(verdict_to_json(verdict));
            emit(report, info_opts.out_path);
        } else if (*syl_cmd) {
            const LtiSystem plant = system_from_json(load_json_file(syl_plant));
            const SignalGenerator gen = generator_from_json(load_json_file(syl_gen));
            const Vector x0 = parse_x0(syl_x0, plant.order());
            const InterconnectionAnalysis analysis = analyze_interconnection(plant, gen, x0);
            Json report;
            report["experiment"] = "sylvester";
            report.update(analysis_to_json(analysis));
            report["rank_pi"] = numerical_rank(analysis.pi).rank;
            emit(report, syl_opts.out_path);
        } else if (*t1_cmd) {
            t1.tol = t1_opts.tolerance(env_tol);
            emit(run_theorem1_mc(t1), t1_opts.out_path);
        } else if (*c2_cmd) {
            c2.tol = c2_opts.tolerance(env_tol);
            emit(run_corollary2(c2), c2_opts.out_path);
        } else if (*wc_cmd) {
            wc.tol = wc_opts.tolerance(env_tol);
            emit(run_willems_compare(wc), wc_opts.out_path);
        } else if (*ct_cmd) {
            ct.tol = ct_opts.tolerance(env_tol);
            emit(run_ct_informativity(ct), ct_opts.out_path);
        } else if (*l2_cmd) {
            if (!l2_t_values.empty()) l2.t_values = l2_t_values;
            l2.tol = l2_opts.tolerance(env_tol);
            emit(run_lemma2_mc(l2), l2_opts.out_path);
        }
    } catch (const AssumptionViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
