#include "inls/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "inls/config.hpp"
#include "inls/ensembles.hpp"
#include "inls/evolution.hpp"
#include "inls/functionals.hpp"
#include "inls/ground_state.hpp"
#include "inls/io.hpp"
#include "inls/transforms.hpp"
#include "inls/verify.hpp"

namespace inls {

namespace {

struct GridSpec {
    int M = 1024;
    double L = 20.0;
};

void add_grid_option(CLI::App* cmd, GridSpec& g) {
    cmd->add_option_function<std::string>(
           "--grid",
           [&g](const std::string& s) {
               auto comma = s.find(',');
               if (comma == std::string::npos)
                   throw CLI::ValidationError("--grid", "expected M,L");
               g.M = std::stoi(s.substr(0, comma));
               g.L = std::stod(s.substr(comma + 1));
           },
           "grid as M,L (samples per axis, box half-width)")
        ->default_str("1024,20");
}

void write_to(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path);
    os << text;
}

int run_ground_state(int dim, double b, const GridSpec& gspec,
                     const std::string& json_out, const std::string& snapshot_out) {
    Params params = make_params(dim, b, /*allow_b_zero=*/b == 0.0);
    GroundState gs = shoot(params);

    nlohmann::json j = {
        {"N", params.dim},
        {"b", params.b},
        {"p", params.p},
        {"psi0", gs.psi0},
        {"mass_sq", gs.mass_sq},
        {"grad_sq", gs.grad_sq},
        {"potential_term", gs.potential_term},
        {"weinstein_min", gs.j_min},
        {"residual", gs.residual},
    };
    std::ostringstream os;
    os << j.dump(2) << '\n';
    if (!json_out.empty())
        write_to(json_out, os.str());
    else
        std::cout << os.str();

    if (!snapshot_out.empty()) {
        CartesianGrid grid = make_grid(dim, gspec.M, gspec.L);
        write_snapshot_file(to_cartesian(gs, grid), params.b, snapshot_out);
    }
    return 0;
}

int run_evolve(const std::string& config_path) {
    std::ifstream is(config_path);
    if (!is)
        throw std::runtime_error("cannot open config: " + config_path);
    RunConfig cfg = parse_config(is);
    std::cerr << echo_config(cfg) << '\n';

    Field u0 = build_initial_condition(cfg);
    Trajectory traj = evolve(u0, cfg.evolution, cfg.params);

    if (!cfg.outputs.diagnostics_csv.empty()) {
        std::ofstream os(cfg.outputs.diagnostics_csv);
        if (!os)
            throw std::runtime_error("cannot open for writing: " +
                                     cfg.outputs.diagnostics_csv);
        write_csv(traj.diagnostics, os);
    } else {
        write_csv(traj.diagnostics, std::cout);
    }
    if (!cfg.outputs.snapshot_dir.empty()) {
        std::filesystem::create_directories(cfg.outputs.snapshot_dir);
        int i = 0;
        for (const Field& s : traj.snapshots) {
            std::ostringstream name;
            name.precision(17);
            name << "snap_" << i++ << "_t" << s.time << ".bin";
            write_snapshot_file(
                s, cfg.params.b,
                (std::filesystem::path(cfg.outputs.snapshot_dir) / name.str()).string());
        }
    }
    std::cerr << "termination: " << to_string(traj.termination)
              << "  mass_drift: " << traj.mass_drift
              << "  energy_drift: " << traj.energy_drift << '\n';
    return traj.termination == Termination::numerical_failure ? 3 : 0;
}

int run_s_family(int dim, double b, const GridSpec& gspec, const SFamilyParams& sp,
                 double t, const std::string& out) {
    Params params = make_params(dim, b);
    GroundState gs = shoot(params);
    CartesianGrid grid = make_grid(dim, gspec.M, gspec.L);
    Field u = s_family(sp, gs, t, grid);
    write_snapshot_file(u, params.b, out);
    return 0;
}

int run_verify(const std::string& suite, const std::string& json_out) {
    auto reports = run_suite(suite);
    std::ostringstream os;
    write_json(reports, os);
    if (!json_out.empty())
        write_to(json_out, os.str());

    bool all_passed = true;
    std::cout.precision(17);
    for (const auto& r : reports) {
        std::cout << (r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL")) << "  "
                  << r.name << "  observed=" << r.observed
                  << " expected=" << r.expected << " tol=" << r.tolerance << '\n';
        all_passed = all_passed && r.passed;
    }
    return all_passed ? 0 : 1;
}

int run_transform(const std::string& input, const std::string& output, double lambda,
                  double gamma, double pc_s, double pc_T) {
    Snapshot snap = read_snapshot_file(input);
    Field u = snap.field;
    if (lambda != 1.0)
        u = scale(u, lambda);
    if (gamma != 0.0)
        u = phase(u, gamma);
    if (pc_s > 0.0)
        u = pseudo_conformal(u, pc_s, pc_T, u.grid);
    write_snapshot_file(u, snap.b, output);
    return 0;
}

} // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"numerical laboratory for the mass-critical inhomogeneous NLS"};
    app.require_subcommand(1);
    std::cout.precision(17);
    std::cerr.precision(17);

    // ground-state
    auto* gs_cmd = app.add_subcommand("ground-state", "compute the ground state profile");
    int gs_dim = 1;
    double gs_b = 0.5;
    GridSpec gs_grid;
    std::string gs_json, gs_snap;
    gs_cmd->add_option("--N", gs_dim, "spatial dimension")->check(CLI::Range(1, 3));
    gs_cmd->add_option("--b", gs_b, "inhomogeneity exponent");
    add_grid_option(gs_cmd, gs_grid);
    gs_cmd->add_option("--json", gs_json, "write the summary as JSON ('-' for stdout)");
    gs_cmd->add_option("--snapshot", gs_snap, "write the sampled field as a snapshot");

    // evolve
    auto* ev_cmd = app.add_subcommand("evolve", "integrate a configured run");
    std::string ev_config;
    ev_cmd->add_option("config", ev_config, "JSON run configuration")->required();

    // s-family
    auto* sf_cmd = app.add_subcommand("s-family", "sample the explicit blow-up solution");
    int sf_dim = 1;
    double sf_b = 0.5;
    GridSpec sf_grid;
    SFamilyParams sf_params;
    double sf_t = 0.0;
    std::string sf_out = "s_family.bin";
    sf_cmd->add_option("--N", sf_dim, "spatial dimension")->check(CLI::Range(1, 3));
    sf_cmd->add_option("--b", sf_b, "inhomogeneity exponent");
    sf_cmd->add_option("--T", sf_params.T, "blow-up time");
    sf_cmd->add_option("--lambda0", sf_params.lambda0, "scale parameter");
    sf_cmd->add_option("--gamma0", sf_params.gamma0, "phase parameter");
    sf_cmd->add_option("--t", sf_t, "sampling time (< T)");
    add_grid_option(sf_cmd, sf_grid);
    sf_cmd->add_option("-o,--output", sf_out, "output snapshot path");

    // verify
    auto* vf_cmd = app.add_subcommand("verify", "run the identity-check suites");
    std::string vf_suite = "default";
    std::string vf_json;
    vf_cmd->add_option("--suite", vf_suite, "quick | default | full")
        ->check(CLI::IsMember({"quick", "default", "full"}));
    vf_cmd->add_option("--json", vf_json, "write the report as JSON ('-' for stdout)");

    // transform
    auto* tr_cmd = app.add_subcommand("transform", "apply symmetries to a snapshot");
    std::string tr_in, tr_out;
    double tr_lambda = 1.0, tr_gamma = 0.0, tr_pc_s = 0.0, tr_pc_T = 1.0;
    tr_cmd->add_option("-i,--input", tr_in, "input snapshot")->required();
    tr_cmd->add_option("-o,--output", tr_out, "output snapshot")->required();
    tr_cmd->add_option("--scale", tr_lambda, "critical rescaling factor");
    tr_cmd->add_option("--phase", tr_gamma, "global phase");
    tr_cmd->add_option("--pseudo-conformal-s", tr_pc_s,
                       "internal time s = 1/(T-t); 0 disables the transform");
    tr_cmd->add_option("--pseudo-conformal-T", tr_pc_T, "blow-up time for the transform");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gs_cmd->parsed())
            return run_ground_state(gs_dim, gs_b, gs_grid, gs_json, gs_snap);
        if (ev_cmd->parsed())
            return run_evolve(ev_config);
        if (sf_cmd->parsed())
            return run_s_family(sf_dim, sf_b, sf_grid, sf_params, sf_t, sf_out);
        if (vf_cmd->parsed())
            return run_verify(vf_suite, vf_json);
        if (tr_cmd->parsed())
            return run_transform(tr_in, tr_out, tr_lambda, tr_gamma, tr_pc_s, tr_pc_T);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}

} // namespace inls
