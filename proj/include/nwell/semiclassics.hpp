#pragma once

#include <vector>

#include "nwell/potentials.hpp"

namespace nwell {

struct TurningPoints {
    double left;  // inner turning point right of the first well center
    double right; // inner turning point left of the second well center
};

// Everything the barrier integral feeds: the two half-barrier attenuation
// factors and the matching normalizations of the localized WKB tails.
struct HoppingFactors {
    double eps_l = 0;         // sqrt(n! g_n/sqrt(pi)) exp(-S_left)
    double eps_r = 0;         // sqrt(n! g_n/sqrt(pi)) exp(-S_right)
    double norm_l = 0;        // (-1)^n sqrt(g_n/2pi)/l exp(-S_right)
    double norm_r = 0;        // sqrt(g_n/2pi)/l exp(-S_left)
    double action_left = 0;   // int p/hbar over [x_left, x1 + a/2]
    double action_right = 0;  // int p/hbar over [x1 + a/2, x_right]
    double action_total = 0;
};

struct BandResult {
    int n = 0;
    int n_wells = 0;
    double e0 = 0;    // E_n^(0)
    double delta = 0; // Delta_n
    std::vector<double> energies;      // E_n(s), s = 1..N
    std::vector<double> bloch_phases;  // s pi/(N+1)
    std::vector<double> delta_shifts;  // delta_n per level
    // column s-1 holds sqrt(2/(N+1)) sin((j+1) s pi/(N+1)), j = 0..N-1
    std::vector<std::vector<double>> coefficients;
};

// sqrt(2pi)/n! (n+1/2)^(n+1/2) e^(-n-1/2), evaluated in log space.
double g_factor(int n);

TurningPoints turning_points(const PotentialModel& model,
                             const SemiclassicalContext& ctx, int n);

HoppingFactors barrier_action(const PotentialModel& model,
                              const SemiclassicalContext& ctx, int n);

// Delta_n = g_n (hbar omega/pi) exp(-S_total)
double hopping_delta(const PotentialModel& model,
                     const SemiclassicalContext& ctx, int n);

// (-1)^n 2 hbar^2 N_L N_R / m; algebraically identical to hopping_delta.
double hopping_delta_via_overlap(const PotentialModel& model,
                                 const SemiclassicalContext& ctx, int n);

BandResult band_energies(const PotentialModel& model,
                         const SemiclassicalContext& ctx, int n, int n_wells);

// E_n^p(k) = E_n^(0) + (-1)^(n+1) Delta_n cos(ka), -pi/a <= k < pi/a.
double periodic_dispersion(const PotentialModel& model,
                           const SemiclassicalContext& ctx, int n, double k);

// Narrow-band width 2 Delta_n of the cosine potential, leading order.
// scale = hbar^2/(2 m lc^2).
double mathieu_band_width_closed(int n, double q, double scale);

struct MathieuAction {
    double phi_m = 0;
    double elliptic = 0;   // 4 sqrt(q/scale) [E(sin phi_M) - cos^2 phi_M K(sin phi_M)]
    double asymptotic = 0; // 4 sqrt(q/scale) - (n+1/2) - (n+1/2) ln(16 sqrt(q/scale)/(n+1/2))
};

MathieuAction mathieu_action_elliptic(int n, double q, double scale);

// {s pi/(N+1) : s = 1..N}
std::vector<double> bloch_phases(int n_wells);

} // namespace nwell
