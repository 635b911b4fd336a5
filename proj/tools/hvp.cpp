// hvp: hadronic vacuum-polarization potentials and energy shifts.
//
// Exit codes: 0 success, 2 configuration error, 3 computation failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

#include <CLI11.hpp>

#include "hvp/cli.hpp"

namespace {

const char* footer = R"(Output: CSV (default) or aligned columns with --format pretty; numbers are
printed as %.5e. The bracket column uses the notation mantissa(unc)[exponent]:
-1.396(17)[-11] means (-1.396 +- 0.017) x 10^-11. Uncertainties combine in
quadrature: parameter-set spread, rms radius +- sigma, and numerical error.

Exit codes: 0 success, 2 configuration error, 3 computation failure.)";

void add_model_options(CLI::App* cmd, hvp::cli::ModelOptions& m) {
    cmd->add_option("--model", m.shape, "Nuclear model: point, sphere or fermi")->capture_default_str();
    cmd->add_option("--rms", m.rms_fm, "rms charge radius [fm] (default: radius table)");
    cmd->add_option("--skin", m.skin_fm, "Fermi 10%-90% skin thickness [fm]")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace hvp::cli;
    CLI::App app{"Hadronic vacuum-polarization Uehling potentials and bound-state energy shifts"};
    app.footer(footer);
    app.require_subcommand(1);
    app.fallthrough();

    std::string params_path;
    std::string alternate_path;
    std::string radii_path;
    std::string format = "csv";
    std::string output_path;
    unsigned threads = 0;
    app.add_option("--params", params_path, "Polarization parameter file (default: built-in set)");
    app.add_option("--alternate-params", alternate_path,
                   "Second parameter set for the parameterization uncertainty, or 'none'");
    app.add_option("--radii", radii_path, "CSV Z,R_rms_fm,uncertainty_fm merged over the built-in radii");
    app.add_option("--format", format, "csv or pretty")->capture_default_str();
    app.add_option("-o,--output", output_path, "Write to this file instead of stdout");
    app.add_option("-j,--threads", threads, "Worker threads for tables and sweeps (0: all cores)");

    PotentialOptions pot;
    auto* c_pot = app.add_subcommand("potential", "Sample dV(r) on a logarithmic grid");
    c_pot->add_option("--z", pot.z, "Nuclear charge")->capture_default_str();
    add_model_options(c_pot, pot.model);
    c_pot->add_option("--method", pot.methods,
                      "closed-form-approx, full-quadrature, convolution-numeric (repeatable)");
    c_pot->add_option("--species", pot.species, "hadronic, electron or muon loop (repeatable)");
    c_pot->add_option("--rmin", pot.r_min, "Smallest radius")->capture_default_str();
    c_pot->add_option("--rmax", pot.r_max, "Largest radius")->capture_default_str();
    c_pot->add_option("--points", pot.points, "Number of radii")->capture_default_str();
    c_pot->add_option("--unit", pot.length_unit, "Length unit: compton (1/m_e), fm or gev-1")->capture_default_str();
    c_pot->add_option("--energy-unit", pot.energy_unit, "ev, mev or gev")->capture_default_str();

    ShiftOptions sh;
    auto* c_shift = app.add_subcommand("shift", "Energy shift of one bound state");
    c_shift->add_option("--z", sh.z, "Nuclear charge")->capture_default_str();
    c_shift->add_option("--state", sh.state, "State label, e.g. 1s, 2s, 2p1/2, 2p3/2")->capture_default_str();
    c_shift->add_option("--lepton", sh.lepton, "electron or muon")->capture_default_str();
    c_shift->add_option("--method", sh.method,
                        "nonrel-point, rel-point-analytic, rel-point-numeric, rel-fns-approx, rel-fns-full")
        ->capture_default_str();
    add_model_options(c_shift, sh.model);
    c_shift->add_flag("--reduced-mass", sh.reduced_mass, "Use the lepton-proton reduced mass (nonrel-point only)");
    c_shift->add_option("--energy-unit", sh.energy_unit, "ev, mev or gev")->capture_default_str();

    std::string which;
    auto* c_table = app.add_subcommand("table", "Recompute a reference table with a diff against published values");
    c_table->add_option("which", which, "II (1s), III (n = 2) or IV (muonic hydrogen)")->required();

    SweepOptions sw;
    auto* c_sweep = app.add_subcommand("sweep", "One shift per nuclear charge over a range");
    c_sweep->add_option("--zmin", sw.z_min, "First Z")->capture_default_str();
    c_sweep->add_option("--zmax", sw.z_max, "Last Z (an empty range prints nothing)")->capture_default_str();
    c_sweep->add_option("--state", sw.state, "State label")->capture_default_str();
    c_sweep->add_option("--lepton", sw.lepton, "electron or muon")->capture_default_str();
    c_sweep->add_option("--method", sw.method, "Shift method")->capture_default_str();
    c_sweep->add_option("--model", sw.model.shape, "sphere, fermi or point")->capture_default_str();
    c_sweep->add_option("--skin", sw.model.skin_fm, "Fermi skin thickness [fm]")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    Context ctx;
    std::unique_ptr<std::ofstream> file;
    try {
        if (!params_path.empty()) ctx.params = hvp::load_params(params_path);
        if (alternate_path == "none")
            ctx.alternate.reset();
        else if (!alternate_path.empty())
            ctx.alternate = hvp::load_params(alternate_path);
        if (!radii_path.empty()) ctx.radii.merge(hvp::load_radii_csv(radii_path));
        if (format != "csv" && format != "pretty") throw ConfigError("--format: expected csv or pretty");
        ctx.pretty = format == "pretty";
        ctx.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
        if (!output_path.empty()) {
            file = std::make_unique<std::ofstream>(output_path);
            if (!*file) throw ConfigError("--output: cannot open '" + output_path + "'");
        }
    } catch (const ConfigError& e) {
        std::cerr << "hvp: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "hvp: configuration: " << e.what() << '\n';
        return exit_config;
    }
    std::ostream& out = file ? *file : std::cout;

    try {
        if (*c_pot) return cmd_potential(pot, ctx, out, std::cerr);
        if (*c_shift) return cmd_shift(sh, ctx, out, std::cerr);
        if (*c_table) return cmd_table(which, ctx, out, std::cerr);
        if (*c_sweep) return cmd_sweep(sw, ctx, out, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "hvp: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "hvp: " << e.what() << '\n';
        return exit_computation;
    }
    return exit_ok;
}
