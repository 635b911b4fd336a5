#pragma once

// Command implementations behind the `hvp` executable. Argument parsing lives
// in tools/hvp.cpp; everything here takes resolved options and streams, so it
// can be driven from tests.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hvp/constants.hpp"
#include "hvp/error.hpp"
#include "hvp/nuclear.hpp"
#include "hvp/polarization.hpp"
#include "hvp/potentials.hpp"
#include "hvp/reference.hpp"
#include "hvp/shifts.hpp"
#include "hvp/units.hpp"
#include "hvp/wavefunctions.hpp"

namespace hvp::cli {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_computation = 3 };

/// Invalid or inconsistent user input; reported with the offending flag.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Context {
    PolarizationParamSet params = builtin_params();
    std::optional<PolarizationParamSet> alternate = alternate_params();
    RadiusTable radii = builtin_radii();
    unsigned threads = 1;
    bool pretty = false;
};

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", x);
    return buf;
}

/// Rows of strings printed either as CSV or as space-aligned columns.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) {
        row.resize(header_.size());
        rows_.push_back(std::move(row));
    }
    bool empty() const { return rows_.empty(); }

    void write(std::ostream& out, bool pretty) const {
        if (!pretty) {
            write_csv_row(out, header_);
            for (const auto& r : rows_) write_csv_row(out, r);
            return;
        }
        std::vector<std::size_t> width(header_.size());
        for (std::size_t j = 0; j < header_.size(); ++j) width[j] = header_[j].size();
        for (const auto& r : rows_)
            for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t j = 0; j < r.size(); ++j) {
                out << std::left << std::setw(static_cast<int>(width[j])) << r[j];
                if (j + 1 < r.size()) out << "  ";
            }
            out << '\n';
        };
        line(header_);
        for (const auto& r : rows_) line(r);
    }

private:
    static void write_csv_row(std::ostream& out, const std::vector<std::string>& r) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            const bool quote = r[j].find_first_of(",\"\n") != std::string::npos;
            if (quote) {
                out << '"';
                for (char c : r[j]) out << (c == '"' ? "\"\"" : std::string(1, c));
                out << '"';
            } else {
                out << r[j];
            }
            out << (j + 1 < r.size() ? "," : "\n");
        }
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline double lepton_mass(const std::string& name) {
    if (name == "electron" || name == "e") return constants::m_e;
    if (name == "muon" || name == "mu") return constants::m_mu;
    throw ConfigError("--lepton: expected 'electron' or 'muon', got '" + name + "'");
}

inline std::string lepton_name(double mass) { return mass == constants::m_mu ? "muon" : "electron"; }

/// rms radius [fm] from the stable-isotope mass number and
/// R = 0.836 A^{1/3} + 0.570 fm, for charges missing from the radius table.
inline double empirical_rms_fm(int z) {
    // Valley of stability: Z = A / (1.98 + 0.0155 A^{2/3}).
    double a = 2.0 * z;
    for (int i = 0; i < 50; ++i) a = z * (1.98 + 0.0155 * std::cbrt(a * a));
    if (z == 1) a = 1.0;
    return 0.836 * std::cbrt(a) + 0.570;
}

struct ModelOptions {
    std::string shape = "sphere";          ///< point | sphere | fermi
    std::optional<double> rms_fm;          ///< default: radius table
    double skin_fm = 2.3;                  ///< Fermi 10%-90% thickness
    bool allow_empirical_radius = false;   ///< fall back to empirical_rms_fm
};

inline ModelOptions point_model() {
    ModelOptions m;
    m.shape = "point";
    return m;
}

struct ResolvedModel {
    NuclearModel model;
    double rms_fm = 0.0;
    double rms_unc_fm = 0.0;
    std::string radius_source;  ///< "table", "user", "empirical" or "" for point
};

inline ResolvedModel resolve_model(int z, const ModelOptions& opt, const RadiusTable& radii) {
    if (z < 1) throw ConfigError("--z: nuclear charge must be >= 1");
    if (!(z * constants::alpha < 1.0)) throw ConfigError("--z: Z = " + std::to_string(z) + " has Z alpha >= 1");
    if (opt.shape == "point") return {NuclearModel::point(z), 0.0, 0.0, ""};
    if (opt.shape != "sphere" && opt.shape != "fermi")
        throw ConfigError("--model: expected point, sphere or fermi, got '" + opt.shape + "'");
    double rms = 0.0;
    double unc = 0.0;
    std::string source;
    if (opt.rms_fm) {
        if (!(*opt.rms_fm > 0.0)) throw ConfigError("--rms: radius must be positive");
        rms = *opt.rms_fm;
        source = "user";
    } else if (radii.contains(z)) {
        rms = radii.at(z).rms_fm;
        unc = radii.at(z).uncertainty_fm;
        source = "table";
    } else if (opt.allow_empirical_radius) {
        rms = empirical_rms_fm(z);
        source = "empirical";
    } else {
        throw ConfigError("--rms: no tabulated radius for Z = " + std::to_string(z) +
                          "; pass --rms or a --radii file");
    }
    try {
        if (opt.shape == "sphere") return {NuclearModel::sphere_from_rms_fm(z, rms), rms, unc, source};
        if (!(opt.skin_fm > 0.0)) throw ConfigError("--skin: thickness must be positive");
        return {NuclearModel::fermi_from_rms_fm(z, rms, opt.skin_fm), rms, unc, source};
    } catch (const DomainError& e) {
        throw ConfigError(std::string("--rms/--skin: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// potential

struct PotentialOptions {
    int z = 1;
    ModelOptions model = point_model();
    std::vector<std::string> methods{"closed-form-approx"};
    std::vector<std::string> species{"hadronic"};
    double r_min = 1e-3;
    double r_max = 1e2;
    int points = 100;
    std::string length_unit = "compton";  ///< unit of r_min/r_max and the r column
    std::string energy_unit = "ev";
};

inline PotentialMethod parse_potential_method(const std::string& s) {
    for (auto m : {PotentialMethod::closed_form_approx, PotentialMethod::full_quadrature,
                   PotentialMethod::convolution_numeric})
        if (s == to_string(m)) return m;
    throw ConfigError("--method: expected closed-form-approx, full-quadrature or convolution-numeric, got '" + s + "'");
}

inline LoopSpecies parse_species(const std::string& s) {
    if (s == "hadronic") return LoopSpecies::hadronic;
    if (s == "electron" || s == "electron-loop") return LoopSpecies::electron_loop;
    if (s == "muon" || s == "muon-loop") return LoopSpecies::muon_loop;
    throw ConfigError("--species: expected hadronic, electron or muon, got '" + s + "'");
}

/// Long CSV r,dV,method,species on a logarithmic grid.
inline int cmd_potential(const PotentialOptions& opt, const Context& ctx, std::ostream& out, std::ostream& err) {
    LengthUnit lu;
    EnergyUnit eu;
    try {
        lu = parse_length_unit(opt.length_unit);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("--unit: ") + e.what());
    }
    try {
        eu = parse_energy_unit(opt.energy_unit);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("--energy-unit: ") + e.what());
    }
    if (!(opt.r_min > 0.0)) throw ConfigError("--rmin: must be positive");
    if (opt.points < 1) throw ConfigError("--points: must be >= 1");
    if (opt.points > 1 && !(opt.r_max > opt.r_min)) throw ConfigError("--rmax: must exceed --rmin");
    const auto rm = resolve_model(opt.z, opt.model, ctx.radii);

    struct Curve {
        RadialPotential pot;
        std::string method;
        std::string species;
    };
    std::vector<Curve> curves;
    for (const auto& sp_name : opt.species) {
        const LoopSpecies sp = parse_species(sp_name);
        if (sp != LoopSpecies::hadronic) {
            if (!rm.model.is_point()) throw ConfigError("--species: leptonic loops need --model point");
            PotentialSpec spec;
            spec.species = sp;
            spec.model = rm.model;
            curves.push_back({make_potential(spec), "uehling-one-loop", to_string(sp)});
            continue;
        }
        for (const auto& m_name : opt.methods) {
            PotentialSpec spec;
            spec.params = ctx.params;
            spec.model = rm.model;
            spec.method = parse_potential_method(m_name);
            if (spec.method == PotentialMethod::convolution_numeric && rm.model.is_point())
                throw ConfigError("--method: convolution-numeric needs an extended --model");
            if (spec.method == PotentialMethod::closed_form_approx && rm.model.is_fermi())
                throw ConfigError("--method: closed-form-approx exists for point and sphere models only");
            curves.push_back({make_potential(spec), m_name, to_string(sp)});
        }
    }

    TextTable table({"r", "dV", "method", "species"});
    int status = exit_ok;
    for (int i = 0; i < opt.points; ++i) {
        const double t = opt.points == 1 ? 0.0 : double(i) / (opt.points - 1);
        const double r_user = opt.r_min * std::pow(opt.r_max / opt.r_min, t);
        const double r = convert_length(r_user, lu, LengthUnit::inverse_gev);
        for (const auto& c : curves) {
            try {
                const double v = convert_energy(c.pot(r), EnergyUnit::gev, eu);
                table.add({fmt(r_user), fmt(v), c.method, c.species});
            } catch (const std::exception& e) {
                err << "potential: r = " << fmt(r_user) << ", " << c.method << ": " << e.what() << '\n';
                table.add({fmt(r_user), "nan", c.method, c.species});
                status = exit_computation;
            }
        }
    }
    table.write(out, ctx.pretty);
    return status;
}

// ---------------------------------------------------------------------------
// shift

struct ShiftOptions {
    int z = 1;
    std::string state = "1s";
    std::string lepton = "electron";
    ModelOptions model{};
    std::string method = "rel-fns-approx";
    bool reduced_mass = false;  ///< nonrel-point only; nucleus mass = proton mass
    std::string energy_unit = "ev";
};

inline BoundStateLabel resolve_state(const std::string& s, int z, double mass) {
    try {
        auto label = parse_state(s, z, mass);
        label.validate();
        return label;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("--state: ") + e.what());
    }
}

inline std::vector<std::string> shift_header(const std::string& unit) {
    return {"Z", "state", "lepton", "model", "rms_fm", "method", "value_" + unit, "unc_param_" + unit,
            "unc_radius_" + unit, "unc_numeric_" + unit, "unc_total_" + unit, "bracket"};
}

inline std::vector<std::string> shift_row(const ShiftResult& r, const ResolvedModel& rm, EnergyUnit eu) {
    auto cv = [&](double x) { return convert_energy(x, EnergyUnit::ev, eu); };
    return {std::to_string(r.label.z), r.label.name(), lepton_name(r.label.mass), rm.model.name(),
            rm.model.is_point() ? "" : fmt(rm.rms_fm), to_string(r.method), fmt(cv(r.value)), fmt(cv(r.unc_param)),
            fmt(cv(r.unc_radius)), fmt(cv(r.unc_numeric)), fmt(cv(r.uncertainty())),
            format_bracket(cv(r.value), cv(r.uncertainty()))};
}

inline ShiftRequest make_request(const BoundStateLabel& label, const ResolvedModel& rm, ShiftMethod method,
                                 const Context& ctx) {
    ShiftRequest req;
    req.label = label;
    req.model = rm.model;
    req.method = method;
    req.params = ctx.params;
    req.alternate = ctx.alternate;
    req.radius_uncertainty_fm = rm.rms_unc_fm;
    return req;
}

inline ShiftMethod resolve_method(const std::string& s) {
    try {
        return parse_shift_method(s);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("--method: ") + e.what());
    }
}

inline int cmd_shift(const ShiftOptions& opt, const Context& ctx, std::ostream& out, std::ostream& err) {
    EnergyUnit eu;
    try {
        eu = parse_energy_unit(opt.energy_unit);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("--energy-unit: ") + e.what());
    }
    const double mass = lepton_mass(opt.lepton);
    const ShiftMethod method = resolve_method(opt.method);
    ModelOptions mo = opt.model;
    if (is_point_method(method)) mo.shape = "point";
    const auto rm = resolve_model(opt.z, mo, ctx.radii);
    const auto label = resolve_state(opt.state, opt.z, mass);
    if (opt.reduced_mass && method != ShiftMethod::nonrel_point)
        throw ConfigError("--reduced-mass: only meaningful with --method nonrel-point");
    auto req = make_request(label, rm, method, ctx);
    try {
        req.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("--method/--state/--model: ") + e.what());
    }

    TextTable table(shift_header(opt.energy_unit));
    try {
        ShiftResult r;
        if (opt.reduced_mass) {
            r.label = label;
            r.method = method;
            r.value = shift_nonrel(label, ctx.params, constants::m_p);
            if (ctx.alternate) r.unc_param = std::abs(shift_nonrel(label, *ctx.alternate, constants::m_p) - r.value);
        } else {
            r = shift_perturbative(req);
        }
        table.add(shift_row(r, rm, eu));
    } catch (const std::exception& e) {
        err << "shift: " << label.name() << ", Z = " << opt.z << ": " << e.what() << '\n';
        return exit_computation;
    }
    table.write(out, ctx.pretty);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// table

struct TableCell {
    std::string row;
    std::string column;
    std::string unit;
    reference::Cell published;
    double scale = 1.0;  ///< eV -> table unit
    std::string lamb_shift;
};

inline int cmd_table(const std::string& which, const Context& ctx, std::ostream& out, std::ostream& err) {
    std::vector<ShiftRequest> requests;
    std::vector<TableCell> cells;
    const auto radii = builtin_radii();
    auto sphere = [&](int z) {
        const auto e = radii.at(z);
        return ResolvedModel{NuclearModel::sphere_from_rms_fm(z, e.rms_fm), e.rms_fm, e.uncertainty_fm, "table"};
    };
    auto point = [](int z) { return ResolvedModel{NuclearModel::point(z), 0.0, 0.0, ""}; };

    if (which == "II") {
        for (const auto& row : reference::ground_state_table()) {
            const BoundStateLabel label{1, -1, constants::m_e, row.z};
            const std::string r = "Z=" + std::to_string(row.z);
            requests.push_back(make_request(label, point(row.z), ShiftMethod::nonrel_point, ctx));
            cells.push_back({r, "nonrel-point", "eV", row.nonrel_point, 1.0, row.lamb_shift});
            requests.push_back(make_request(label, point(row.z), ShiftMethod::rel_point_analytic, ctx));
            cells.push_back({r, "rel-point-analytic", "eV", row.rel_point, 1.0, row.lamb_shift});
            requests.push_back(make_request(label, sphere(row.z), ShiftMethod::rel_fns_approx, ctx));
            cells.push_back({r, "rel-fns-approx", "eV", row.rel_fns, 1.0, row.lamb_shift});
        }
    } else if (which == "III") {
        for (const auto& row : reference::excited_state_table()) {
            const std::string r = "Z=" + std::to_string(row.z);
            const std::pair<int, const reference::Cell*> states[] = {
                {-1, &row.s_half}, {1, &row.p_half}, {-2, &row.p_three_half}};
            const char* lamb[] = {row.lamb_s_half, row.lamb_p_half, row.lamb_p_three_half};
            for (int k = 0; k < 3; ++k) {
                const BoundStateLabel label{2, states[k].first, constants::m_e, row.z};
                requests.push_back(make_request(label, sphere(row.z), ShiftMethod::rel_fns_approx, ctx));
                cells.push_back({r, label.name() + " rel-fns-approx", "eV", *states[k].second, 1.0, lamb[k]});
            }
        }
    } else if (which == "IV") {
        for (const auto& row : reference::muonic_hydrogen_table()) {
            const BoundStateLabel label{row.n, row.kappa, constants::m_mu, 1};
            requests.push_back(make_request(label, point(1), ShiftMethod::nonrel_point, ctx));
            cells.push_back({label.name(), "nonrel-point", "meV", row.nonrel_point, 1e3, ""});
            requests.push_back(make_request(label, sphere(1), ShiftMethod::rel_fns_full, ctx));
            cells.push_back({label.name(), "rel-fns-full", "meV", row.rel_fns_full, 1e3, ""});
        }
    } else {
        throw ConfigError("table: expected II, III or IV, got '" + which + "'");
    }

    const auto results = run_batch(requests, ctx.threads);
    TextTable table({"table", "row", "column", "unit", "value", "uncertainty", "bracket", "published",
                     "published_bracket", "rel_diff", "within_unc", "lamb_shift_eV", "note"});
    int status = exit_ok;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const std::string pub_bracket = format_bracket(c.published.value, c.published.uncertainty);
        if (!results[i].result) {
            err << "table " << which << ", " << c.row << ", " << c.column << ": " << results[i].error << '\n';
            table.add({which, c.row, c.column, c.unit, "nan", "nan", "", fmt(c.published.value), pub_bracket, "nan",
                       "", c.lamb_shift, "error: " + results[i].error});
            status = exit_computation;
            continue;
        }
        const auto& r = *results[i].result;
        const double v = r.value * c.scale;
        const double u = r.uncertainty() * c.scale;
        const bool within = std::abs(v - c.published.value) <= c.published.uncertainty;
        table.add({which, c.row, c.column, c.unit, fmt(v), fmt(u), format_bracket(v, u), fmt(c.published.value),
                   pub_bracket, fmt(v / c.published.value - 1.0), within ? "yes" : "no", c.lamb_shift, ""});
    }
    table.write(out, ctx.pretty);
    return status;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
    int z_min = 1;
    int z_max = 96;
    std::string state = "1s";
    std::string lepton = "electron";
    std::string method = "rel-fns-approx";
    ModelOptions model{"sphere", std::nullopt, 2.3, true};
};

inline int cmd_sweep(const SweepOptions& opt, const Context& ctx, std::ostream& out, std::ostream& err) {
    if (opt.z_min > opt.z_max) return exit_ok;  // empty range
    const double mass = lepton_mass(opt.lepton);
    const ShiftMethod method = resolve_method(opt.method);
    ModelOptions mo = opt.model;
    if (is_point_method(method)) mo.shape = "point";
    if (mo.rms_fm) throw ConfigError("--rms: a sweep takes radii from the table or the empirical formula");

    std::vector<ShiftRequest> requests;
    std::vector<ResolvedModel> models;
    for (int z = opt.z_min; z <= opt.z_max; ++z) {
        const auto rm = resolve_model(z, mo, ctx.radii);
        const auto label = resolve_state(opt.state, z, mass);
        auto req = make_request(label, rm, method, ctx);
        try {
            req.validate();
        } catch (const DomainError& e) {
            throw ConfigError(std::string("--method/--state: ") + e.what());
        }
        requests.push_back(std::move(req));
        models.push_back(rm);
    }
    const auto results = run_batch(requests, ctx.threads);
    auto header = shift_header("ev");
    header.push_back("radius_source");
    header.push_back("note");
    TextTable table(header);
    int status = exit_ok;
    for (std::size_t i = 0; i < requests.size(); ++i) {
        if (!results[i].result) {
            err << "sweep: Z = " << requests[i].label.z << ": " << results[i].error << '\n';
            std::vector<std::string> row{std::to_string(requests[i].label.z), requests[i].label.name(),
                                         lepton_name(mass), models[i].model.name(), "", to_string(method)};
            row.resize(header.size());
            row.back() = "error: " + results[i].error;
            table.add(row);
            status = exit_computation;
            continue;
        }
        auto row = shift_row(*results[i].result, models[i], EnergyUnit::ev);
        row.push_back(models[i].radius_source);
        row.push_back("");
        table.add(row);
    }
    table.write(out, ctx.pretty);
    return status;
}

}  // namespace hvp::cli
