#include "nwell/semiclassics.hpp"

#include <cmath>

#include "nwell/oracle.hpp"

namespace nwell {

namespace {

constexpr double kPi = 3.14159265358979323846;

double log_g_factor(int n) {
    double nh = n + 0.5;
    return 0.5 * std::log(2.0 * kPi) - std::lgamma(n + 1.0) + nh * std::log(nh) - nh;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

} // namespace

double g_factor(int n) {
    if (n < 0) throw domain_error("g_factor: band index must be non-negative");
    if (n > 150) throw domain_error("g_factor: band index above overflow guard (150)");
    return std::exp(log_g_factor(n));
}

TurningPoints turning_points(const PotentialModel& model,
                             const SemiclassicalContext& ctx, int n) {
    if (n < 0) throw domain_error("turning_points: band index must be non-negative");
    const double e = ctx.level_energy(n);
    const double top = ctx.x1 + 0.5 * ctx.a;
    if (model.evaluate(top) <= e)
        throw domain_error("turning_points: level above barrier, no forbidden region");
    auto f = [&](double x) { return model.evaluate(x) - e; };
    const double xtol = 1e-13 * std::max(1.0, std::abs(ctx.x1) + ctx.a);
    TurningPoints tp;
    tp.left = find_root(f, ctx.x1, top, xtol);
    tp.right = find_root(f, top, ctx.x1 + ctx.a, xtol);
    return tp;
}

HoppingFactors barrier_action(const PotentialModel& model,
                              const SemiclassicalContext& ctx, int n) {
    const auto tp = turning_points(model, ctx, n);
    const double e = ctx.level_energy(n);
    const double mid = ctx.x1 + 0.5 * ctx.a;
    auto integrand = [&](double y) {
        double p2 = 2.0 * ctx.mass * (model.evaluate(y) - e);
        return std::sqrt(std::max(p2, 0.0)) / ctx.hbar;
    };
    HoppingFactors hf;
    hf.action_left = adaptive_quadrature(integrand, tp.left, mid, 1e-10);
    hf.action_right = adaptive_quadrature(integrand, mid, tp.right, 1e-10);
    hf.action_total = hf.action_left + hf.action_right;

    const double lg = log_g_factor(n);
    const double half_pref = 0.5 * (log_factorial(n) + lg - 0.5 * std::log(kPi));
    hf.eps_l = std::exp(half_pref - hf.action_left);
    hf.eps_r = std::exp(half_pref - hf.action_right);
    const double norm_pref = 0.5 * (lg - std::log(2.0 * kPi));
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    hf.norm_l = sign * std::exp(norm_pref - hf.action_right) / ctx.l;
    hf.norm_r = std::exp(norm_pref - hf.action_left) / ctx.l;
    return hf;
}

double hopping_delta(const PotentialModel& model,
                     const SemiclassicalContext& ctx, int n) {
    const auto hf = barrier_action(model, ctx, n);
    return ctx.hbar * ctx.omega / kPi * std::exp(log_g_factor(n) - hf.action_total);
}

double hopping_delta_via_overlap(const PotentialModel& model,
                                 const SemiclassicalContext& ctx, int n) {
    const auto hf = barrier_action(model, ctx, n);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * 2.0 * ctx.hbar * ctx.hbar * hf.norm_l * hf.norm_r / ctx.mass;
}

std::vector<double> bloch_phases(int n_wells) {
    if (n_wells < 1) throw domain_error("bloch_phases: need at least one well");
    std::vector<double> phases(n_wells);
    for (int s = 1; s <= n_wells; ++s)
        phases[s - 1] = s * kPi / (n_wells + 1);
    return phases;
}

BandResult band_energies(const PotentialModel& model,
                         const SemiclassicalContext& ctx, int n, int n_wells) {
    if (n_wells < 1) throw domain_error("band_energies: need at least one well");
    BandResult br;
    br.n = n;
    br.n_wells = n_wells;
    br.e0 = ctx.level_energy(n);
    br.delta = hopping_delta(model, ctx, n);
    br.bloch_phases = bloch_phases(n_wells);
    const double parity = (n % 2 == 0) ? -1.0 : 1.0; // (-1)^(n+1)
    br.energies.resize(n_wells);
    br.delta_shifts.resize(n_wells);
    br.coefficients.resize(n_wells);
    for (int s = 1; s <= n_wells; ++s) {
        double c = std::cos(br.bloch_phases[s - 1]);
        br.delta_shifts[s - 1] = parity * br.delta / (ctx.hbar * ctx.omega) * c;
        br.energies[s - 1] = br.e0 + parity * br.delta * c;
        br.coefficients[s - 1].resize(n_wells);
        double norm = std::sqrt(2.0 / (n_wells + 1));
        for (int j = 0; j < n_wells; ++j)
            br.coefficients[s - 1][j] =
                norm * std::sin((j + 1) * s * kPi / (n_wells + 1));
    }
    return br;
}

double periodic_dispersion(const PotentialModel& model,
                           const SemiclassicalContext& ctx, int n, double k) {
    const double kb = kPi / ctx.a;
    if (k < -kb || k >= kb)
        throw domain_error("periodic_dispersion: k outside the first Brillouin zone");
    const double parity = (n % 2 == 0) ? -1.0 : 1.0;
    return ctx.level_energy(n) +
           parity * hopping_delta(model, ctx, n) * std::cos(k * ctx.a);
}

double mathieu_band_width_closed(int n, double q, double scale) {
    if (q <= 0 || scale <= 0)
        throw domain_error("mathieu_band_width_closed: q and scale must be positive");
    if (n < 0 || n > 150) throw domain_error("mathieu_band_width_closed: bad band index");
    const double big_q = q / scale;
    double lg = (4 * n + 5) * std::log(2.0) - log_factorial(n) +
                0.5 * std::log(2.0 / kPi) + (0.5 * n + 0.75) * std::log(big_q) -
                4.0 * std::sqrt(big_q);
    return scale * std::exp(lg);
}

MathieuAction mathieu_action_elliptic(int n, double q, double scale) {
    if (q <= 0 || scale <= 0)
        throw domain_error("mathieu_action_elliptic: q and scale must be positive");
    MathieuAction ma;
    const double nh = n + 0.5;
    ma.phi_m = 0.5 * kPi - std::sqrt(nh * std::sqrt(scale / q));
    if (!(ma.phi_m > 0.0 && ma.phi_m < 0.5 * kPi))
        throw domain_error("mathieu_action_elliptic: phi_M out of (0, pi/2), level too high");
    const double pref = 4.0 * std::sqrt(q / scale);
    const double s = std::sin(ma.phi_m);
    const double c2 = std::cos(ma.phi_m) * std::cos(ma.phi_m);
    ma.elliptic = pref * (elliptic_e(s) - c2 * elliptic_k(s));
    ma.asymptotic = pref - nh - nh * std::log(4.0 * pref / nh);
    return ma;
}

} // namespace nwell
