// Command-line front end: band/dispersion/Mathieu/ring computations and the
// FD cross-verification, emitting CSV or JSON tables.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nwell/lattice.hpp"
#include "nwell/oracle.hpp"
#include "nwell/potentials.hpp"
#include "nwell/semiclassics.hpp"

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kVersion = "nwell 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_meta(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
    void add_meta(const std::string& k, double v) { meta.emplace_back(k, fmt17(v)); }

    std::string to_csv() const {
        std::ostringstream os;
        for (const auto& [k, v] : meta) os << "# " << k << " = " << v << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
        for (const auto& row : rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                os << fmt17(row[i]) << (i + 1 < row.size() ? "," : "\n");
        return os.str();
    }

    std::string to_json() const {
        json j;
        j["meta"] = json::object();
        for (const auto& [k, v] : meta) j["meta"][k] = v;
        j["columns"] = columns;
        j["rows"] = json::array();
        for (const auto& row : rows) {
            json r = json::array();
            for (double v : row) r.push_back(fmt17(v));
            j["rows"].push_back(r);
        }
        return j.dump(2) + "\n";
    }
};

void emit(const Table& t, const std::string& out, const std::string& format) {
    std::string text = format == "json" ? t.to_json() : t.to_csv();
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::ios_base::failure("cannot open output file: " + out);
    f << text;
    if (!f.good()) throw std::ios_base::failure("write failed: " + out);
}

struct Options {
    std::string potential = "cosine";
    double q = 25.0;
    double lc = 1.0;
    double v0 = 0.0;
    double omega = 1.0;
    double a = 10.0;
    double x1 = 0.0;
    std::string table_file;
    int wells = 4;
    int n = 0;
    int grid = 8192;
    double tol = 1e-4;        // relative FD convergence tolerance for verify
    double delta_tol = 0.25;  // fitted/predicted window for verify
    double hbar = 1.0;
    double mass = 1.0;
    std::string scale_convention = "hm"; // hm: hbar = m = 1 inputs as given
    std::string out;
    std::string format = "csv";
    // mathieu
    int n_max = 1;
    // dispersion
    int k_samples = 64;
    // ring
    double h0 = 0.0;
    double h1 = -0.5;
    std::string h_list;
    bool h_from_chain = false;

    bool n_from_config = false;
};

nwell::PotentialModel make_model(const Options& o) {
    if (o.potential == "cosine") {
        return nwell::PotentialModel::cosine(o.q, o.lc, o.wells);
    }
    if (o.potential == "parabolic-chain") {
        double curvature = o.mass * o.omega * o.omega;
        return nwell::PotentialModel::parabolic_chain(o.v0, curvature, o.a, o.x1, o.wells);
    }
    if (o.potential == "tabulated") {
        if (o.table_file.empty())
            throw nwell::domain_error("tabulated potential needs --table <csv>");
        std::ifstream f(o.table_file);
        if (!f) throw std::ios_base::failure("cannot open table: " + o.table_file);
        std::vector<double> xs, vs;
        std::string line;
        while (std::getline(f, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            double x, v;
            if (!(ls >> x >> v))
                throw nwell::domain_error("table: expected two numeric columns: " + line);
            xs.push_back(x);
            vs.push_back(v);
        }
        return nwell::PotentialModel::tabulated(std::move(xs), std::move(vs));
    }
    throw nwell::domain_error("unknown potential family: " + o.potential);
}

// Unit conventions: "hm" takes hbar/mass as given; "mathieu" fixes
// hbar^2/(2 m lc^2) = 1 for the cosine family.
std::pair<double, double> units(const Options& o) {
    if (o.scale_convention == "hm") return {o.hbar, o.mass};
    if (o.scale_convention == "mathieu") {
        if (o.potential != "cosine")
            throw nwell::domain_error("--scale-convention mathieu applies to the cosine family");
        return {o.hbar, o.hbar * o.hbar / (2.0 * o.lc * o.lc)};
    }
    throw nwell::domain_error("unknown scale convention: " + o.scale_convention);
}

void add_common_meta(Table& t, const Options& o, const std::string& command) {
    t.add_meta("command", command);
    t.add_meta("version", kVersion);
    t.add_meta("scale_convention", o.scale_convention);
}

int cmd_bands(const Options& o) {
    auto model = make_model(o);
    auto [hbar, mass] = units(o);
    auto ctx = nwell::SemiclassicalContext::from_model(model, hbar, mass);
    auto br = nwell::band_energies(model, ctx, o.n, o.wells);
    auto diag = nwell::validate_context(model, ctx, {o.n});

    Table t;
    add_common_meta(t, o, "bands");
    t.add_meta("potential", o.potential);
    t.add_meta("n", static_cast<double>(o.n));
    t.add_meta("wells", static_cast<double>(o.wells));
    t.add_meta("hbar", hbar);
    t.add_meta("mass", mass);
    t.add_meta("E_n0", br.e0);
    t.add_meta("Delta_n", br.delta);
    t.add_meta("a_over_l", diag.a_over_l);
    t.add_meta("max_periodicity_violation", diag.max_periodicity_violation);
    t.add_meta("regime_flags", diag.ratio_flag || diag.delta_flag ? "raised" : "clear");
    t.columns = {"s", "bloch_phase", "energy", "delta_shift"};
    for (int s = 1; s <= o.wells; ++s)
        t.rows.push_back({static_cast<double>(s), br.bloch_phases[s - 1],
                          br.energies[s - 1], br.delta_shifts[s - 1]});
    emit(t, o.out, o.format);
    return kExitOk;
}

int cmd_dispersion(const Options& o) {
    if (o.k_samples < 2) throw nwell::domain_error("--k-samples must be at least 2");
    auto model = make_model(o);
    auto [hbar, mass] = units(o);
    auto ctx = nwell::SemiclassicalContext::from_model(model, hbar, mass);
    double delta = nwell::hopping_delta(model, ctx, o.n);

    Table t;
    add_common_meta(t, o, "dispersion");
    t.add_meta("n", static_cast<double>(o.n));
    t.add_meta("E_n0", ctx.level_energy(o.n));
    t.add_meta("Delta_n", delta);
    t.columns = {"k", "energy"};
    for (int i = 0; i < o.k_samples; ++i) {
        double k = -kPi / ctx.a + 2.0 * kPi / ctx.a * i / o.k_samples;
        t.rows.push_back({k, nwell::periodic_dispersion(model, ctx, o.n, k)});
    }
    emit(t, o.out, o.format);
    return kExitOk;
}

int cmd_mathieu(const Options& o) {
    if (o.q <= 0) throw nwell::domain_error("mathieu: q must be positive");
    if (o.n_max < 0) throw nwell::domain_error("mathieu: band list must be non-negative");
    int basis = static_cast<int>(3.0 * std::sqrt(o.q) + 30.0) + 2;
    auto mc = nwell::mathieu_characteristics(o.q, o.n_max, basis);

    Table t;
    add_common_meta(t, o, "mathieu");
    t.add_meta("q", o.q);
    t.add_meta("basis_size", static_cast<double>(mc.basis_size));
    t.columns = {"n", "width_closed_form", "width_numeric", "ratio"};
    for (int n = 0; n <= o.n_max; ++n) {
        double closed = nwell::mathieu_band_width_closed(n, o.q, 1.0);
        double numeric = mc.band_widths[n];
        t.rows.push_back({static_cast<double>(n), closed, numeric, closed / numeric});
    }
    emit(t, o.out, o.format);
    return kExitOk;
}

int cmd_ring(const Options& o) {
    if (o.wells < 2) throw nwell::domain_error("ring: need at least 2 wells");
    std::vector<double> h(o.wells, 0.0);
    if (!o.h_list.empty()) {
        std::istringstream ls(o.h_list);
        std::string tok;
        std::size_t i = 0;
        while (std::getline(ls, tok, ',')) {
            if (i >= h.size()) throw nwell::domain_error("ring: too many couplings in --h");
            h[i++] = std::stod(tok);
        }
        if (i != h.size()) throw nwell::domain_error("ring: --h needs exactly N couplings");
    } else if (o.h_from_chain) {
        // heuristic import from the 1d chain: h1 = -Delta_n/2
        auto model = make_model(o);
        auto [hbar, mass] = units(o);
        auto ctx = nwell::SemiclassicalContext::from_model(model, hbar, mass);
        h[0] = ctx.level_energy(o.n);
        h[1] = h[o.wells - 1] = -nwell::hopping_delta(model, ctx, o.n) / 2.0;
    } else {
        h[0] = o.h0;
        h[1] = h[o.wells - 1] = o.h1;
    }
    nwell::RingHamiltonian ring(o.wells, h);
    auto levels = nwell::circulant_spectrum(ring);

    Table t;
    add_common_meta(t, o, "ring");
    t.add_meta("wells", static_cast<double>(o.wells));
    if (o.h_from_chain) t.add_meta("h1_source", "chain heuristic -Delta_n/2");
    t.columns = {"s_tilde", "energy", "degeneracy_partner"};
    for (const auto& lv : levels) {
        // partner under s -> -s; 0 and N/2 pair with themselves
        double partner = static_cast<double>(-lv.s_tilde);
        if (2 * lv.s_tilde == -o.wells) partner = lv.s_tilde;
        t.rows.push_back({static_cast<double>(lv.s_tilde), lv.energy, partner});
    }
    emit(t, o.out, o.format);
    return kExitOk;
}

int cmd_verify(const Options& o) {
    auto model = make_model(o);
    auto [hbar, mass] = units(o);
    auto ctx = nwell::SemiclassicalContext::from_model(model, hbar, mass);
    auto br = nwell::band_energies(model, ctx, o.n, o.wells);

    double pad = 3.0 * ctx.l;
    double lo = (std::isfinite(model.domain_min()) ? model.domain_min() : ctx.x1 - 0.5 * ctx.a) - pad;
    double hi = (std::isfinite(model.domain_max())
                     ? model.domain_max()
                     : ctx.x1 + (o.wells - 1) * ctx.a + 0.5 * ctx.a) + pad;
    auto sp = nwell::fd_schrodinger_eigs(model, ctx, lo, hi, o.grid, o.wells);

    Table t;
    add_common_meta(t, o, "verify");
    t.add_meta("potential", o.potential);
    t.add_meta("n", static_cast<double>(o.n));
    t.add_meta("wells", static_cast<double>(o.wells));
    t.add_meta("grid", static_cast<double>(o.grid));
    t.add_meta("fd_tolerance", o.tol);
    t.add_meta("boundary_amplitude", sp.boundary_amplitude);

    double conv = 0.0, escale = 0.0;
    for (int i = 0; i < o.wells; ++i) {
        conv = std::max(conv, sp.convergence_estimate[i]);
        escale = std::max(escale, std::abs(sp.eigenvalues[i]));
    }
    t.add_meta("max_convergence_estimate", conv);

    // fit the FD levels against the (-1)^(n+1) cos(s pi/(N+1)) pattern
    double mean = 0.0;
    for (double e : sp.eigenvalues) mean += e;
    mean /= o.wells;
    double parity = (o.n % 2 == 0) ? -1.0 : 1.0;
    double num = 0.0, den = 0.0, sig2 = 0.0;
    std::vector<double> pattern(o.wells);
    for (int s = 1; s <= o.wells; ++s) {
        pattern[s - 1] = parity * std::cos(s * kPi / (o.wells + 1));
        num += (sp.eigenvalues[s - 1] - mean) * pattern[s - 1];
        den += pattern[s - 1] * pattern[s - 1];
        sig2 += (sp.eigenvalues[s - 1] - mean) * (sp.eigenvalues[s - 1] - mean);
    }
    double fitted = den > 0 ? num / den : 0.0;
    double correlation =
        (den > 0 && sig2 > 0) ? num / std::sqrt(den * sig2) : 1.0;
    double ratio = br.delta != 0.0 ? fitted / br.delta : 0.0;
    t.add_meta("predicted_delta", br.delta);
    t.add_meta("fitted_delta", fitted);
    t.add_meta("delta_ratio", ratio);
    t.add_meta("pattern_correlation", correlation);

    t.columns = {"s", "energy_fd", "energy_predicted", "residual", "convergence_estimate"};
    for (int s = 1; s <= o.wells; ++s)
        t.rows.push_back({static_cast<double>(s), sp.eigenvalues[s - 1],
                          br.energies[s - 1], sp.eigenvalues[s - 1] - br.energies[s - 1],
                          sp.convergence_estimate[s - 1]});
    emit(t, o.out, o.format);

    if (sp.boundary_warning) {
        std::cerr << "verify: boundary contamination, ground-state wall amplitude "
                  << sp.boundary_amplitude << "\n";
        return kExitNumerical;
    }
    if (conv > o.tol * std::max(1.0, escale)) {
        std::cerr << "verify: FD convergence estimate " << conv
                  << " exceeds tolerance\n";
        return kExitNumerical;
    }
    if (o.wells > 1) {
        // band assignment needs the interband gap to dwarf the band width
        double gap = ctx.hbar * ctx.omega;
        if (gap < 10.0 * 2.0 * br.delta) {
            std::cerr << "verify: interband gap/width below 10, bands overlap\n";
            return kExitNumerical;
        }
        if (correlation < 0.99 || std::abs(ratio - 1.0) > o.delta_tol) {
            std::cerr << "verify: fitted/predicted Delta ratio " << ratio
                      << " or correlation " << correlation << " out of tolerance\n";
            return kExitNumerical;
        }
    } else {
        if (std::abs(sp.eigenvalues[0] - br.e0) > 0.05 * std::max(1.0, std::abs(br.e0))) {
            std::cerr << "verify: single-well level mismatch\n";
            return kExitNumerical;
        }
    }
    return kExitOk;
}

// config file keys mirror the long flag names; flags override the file
void apply_config(const std::string& path, Options& o, CLI::App& app) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open config: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw nwell::domain_error(std::string("config parse error: ") + e.what());
    }
    CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    auto flag_given = [&](const char* flag) {
        const CLI::Option* opt = sub ? sub->get_option_no_throw(flag) : nullptr;
        return opt != nullptr && opt->count() > 0;
    };
    auto set_if_absent = [&](const char* flag, auto& target, const json& v) {
        using T = std::decay_t<decltype(target)>;
        if (!flag_given(flag)) target = v.get<T>();
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        if (k == "potential") set_if_absent("--potential", o.potential, v);
        else if (k == "q") set_if_absent("--q", o.q, v);
        else if (k == "lc") set_if_absent("--lc", o.lc, v);
        else if (k == "v0") set_if_absent("--v0", o.v0, v);
        else if (k == "omega") set_if_absent("--omega", o.omega, v);
        else if (k == "a") set_if_absent("--a", o.a, v);
        else if (k == "x1") set_if_absent("--x1", o.x1, v);
        else if (k == "table") set_if_absent("--table", o.table_file, v);
        else if (k == "wells") set_if_absent("--wells", o.wells, v);
        else if (k == "n") { set_if_absent("--n", o.n, v); o.n_from_config = true; }
        else if (k == "grid") set_if_absent("--grid", o.grid, v);
        else if (k == "tol") set_if_absent("--tol", o.tol, v);
        else if (k == "delta-tol") set_if_absent("--delta-tol", o.delta_tol, v);
        else if (k == "hbar") set_if_absent("--hbar", o.hbar, v);
        else if (k == "mass") set_if_absent("--mass", o.mass, v);
        else if (k == "scale-convention")
            set_if_absent("--scale-convention", o.scale_convention, v);
        else if (k == "out") set_if_absent("--out", o.out, v);
        else if (k == "format") set_if_absent("--format", o.format, v);
        else if (k == "n-max") set_if_absent("--n-max", o.n_max, v);
        else if (k == "k-samples") set_if_absent("--k-samples", o.k_samples, v);
        else if (k == "h0") set_if_absent("--h0", o.h0, v);
        else if (k == "h1") set_if_absent("--h1", o.h1, v);
        else if (k == "couplings") set_if_absent("--couplings", o.h_list, v);
        else throw nwell::domain_error("config: unknown key '" + k + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-lying band calculator for finite periodic N-well potentials"};
    app.require_subcommand(1);

    Options o;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override it");

    auto add_potential_flags = [&](CLI::App* cmd) {
        cmd->add_option("--potential", o.potential, "cosine | parabolic-chain | tabulated");
        cmd->add_option("--q", o.q, "cosine amplitude parameter");
        cmd->add_option("--lc", o.lc, "cosine length scale");
        cmd->add_option("--v0", o.v0, "parabolic-chain well depth");
        cmd->add_option("--omega", o.omega, "parabolic-chain well frequency");
        cmd->add_option("--a", o.a, "parabolic-chain period");
        cmd->add_option("--x1", o.x1, "parabolic-chain first minimum");
        cmd->add_option("--table", o.table_file, "two-column CSV for tabulated potentials");
        cmd->add_option("--hbar", o.hbar, "hbar");
        cmd->add_option("--mass", o.mass, "particle mass");
        cmd->add_option("--scale-convention", o.scale_convention, "hm | mathieu");
    };
    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--out", o.out, "output path (default stdout)");
        cmd->add_option("--format", o.format, "csv | json");
    };

    auto* bands = app.add_subcommand("bands", "finite-chain band energies");
    add_potential_flags(bands);
    add_output_flags(bands);
    bands->add_option("--n", o.n, "band index");
    bands->add_option("--wells", o.wells, "number of wells N");

    auto* dispersion = app.add_subcommand("dispersion", "periodic-system dispersion");
    add_potential_flags(dispersion);
    add_output_flags(dispersion);
    dispersion->add_option("--n", o.n, "band index");
    dispersion->add_option("--k-samples", o.k_samples, "Brillouin-zone samples");
    dispersion->add_option("--wells", o.wells, "wells in the underlying model");

    auto* mathieu = app.add_subcommand("mathieu", "narrow-band widths, closed form vs oracle");
    add_output_flags(mathieu);
    mathieu->add_option("--q", o.q, "Mathieu q")->required();
    mathieu->add_option("--n-max", o.n_max, "highest band index");

    auto* ring = app.add_subcommand("ring", "circulant ring spectrum");
    add_potential_flags(ring);
    add_output_flags(ring);
    ring->add_option("--wells", o.wells, "ring size N")->required();
    ring->add_option("--h0", o.h0, "diagonal coupling");
    ring->add_option("--h1", o.h1, "nearest-neighbor coupling");
    ring->add_option("--couplings", o.h_list, "comma list of all N couplings");
    ring->add_flag("--from-chain", o.h_from_chain, "heuristic h1 = -Delta_n/2 from the 1d chain");
    ring->add_option("--n", o.n, "band index for --from-chain");

    auto* verify = app.add_subcommand("verify", "FD Schrodinger cross-check of the band formula");
    add_potential_flags(verify);
    add_output_flags(verify);
    verify->add_option("--n", o.n, "band index");
    verify->add_option("--wells", o.wells, "number of wells N");
    verify->add_option("--grid", o.grid, "FD grid points");
    verify->add_option("--tol", o.tol, "relative FD convergence tolerance");
    verify->add_option("--delta-tol", o.delta_tol, "allowed |fitted/predicted - 1|");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (!config_path.empty()) apply_config(config_path, o, app);
        if (o.format != "csv" && o.format != "json")
            throw nwell::domain_error("unknown format: " + o.format);
        if (bands->parsed() || dispersion->parsed()) {
            CLI::App* active = bands->parsed() ? bands : dispersion;
            if (active->get_option("--n")->count() == 0 && !o.n_from_config)
                throw nwell::domain_error("--n is required (flag or config)");
        }
        if (bands->parsed()) return cmd_bands(o);
        if (dispersion->parsed()) return cmd_dispersion(o);
        if (mathieu->parsed()) return cmd_mathieu(o);
        if (ring->parsed()) return cmd_ring(o);
        if (verify->parsed()) return cmd_verify(o);
        return kExitValidation;
    } catch (const nwell::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const nwell::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
