#pragma once

#include <string>
#include <vector>

#include "nwell/errors.hpp"

namespace nwell {

enum class PotentialFamily { Cosine, ParabolicChain, Tabulated };

struct QuadraticParams {
    double v0;    // energy at the well minimum
    double omega; // sqrt(V''(min)/m)
};

// A one-dimensional finite periodic N-well potential with quadratic minima.
// Well centers sit at x1 + j*a, j = 0..N-1; V(x+a) = V(x) across the
// periodic window. Immutable after construction.
class PotentialModel {
public:
    // V(x) = 2q cos(2x/lc); minima at odd multiples of (pi/2) lc, period pi*lc.
    static PotentialModel cosine(double q, double lc, int n_wells);

    // V(x) = v0 + curvature/2 * d(x)^2 with d(x) the distance to the nearest
    // well center (curvature = m*omega^2). Cusped barrier maxima at midpoints;
    // grows quadratically outside the chain, so it confines on its own.
    static PotentialModel parabolic_chain(double v0, double curvature, double a,
                                          double x1, int n_wells);

    // Natural cubic spline through (x, V) samples; x strictly increasing.
    static PotentialModel tabulated(std::vector<double> x, std::vector<double> v);

    double evaluate(double x) const;

    PotentialFamily family() const { return family_; }
    double period() const { return a_; }
    double first_minimum() const { return x1_; }
    int well_count() const { return n_wells_; }
    double minimum_value() const { return v0_; }
    double barrier_top_value() const;

    // Domain on which evaluate() is defined.
    double domain_min() const { return domain_min_; }
    double domain_max() const { return domain_max_; }

    // Cosine-family parameters (domain_error for other families).
    double cosine_q() const;
    double cosine_lc() const;

    // V0 and omega of the quadratic expansion around a well minimum.
    QuadraticParams quadratic_params(double mass) const;

private:
    PotentialModel() = default;

    PotentialFamily family_{};
    int n_wells_ = 0;
    double a_ = 0, x1_ = 0, v0_ = 0;
    double domain_min_ = 0, domain_max_ = 0;

    // cosine
    double q_ = 0, lc_ = 0;
    // parabolic chain
    double curvature_ = 0;
    // tabulated (natural cubic spline knots and second derivatives)
    std::vector<double> tab_x_, tab_v_, tab_m_;

    double spline_eval(double x, int deriv) const;
    void locate_tabulated_wells();
};

// hbar, m, and the lengths/frequencies derived from a potential; the symbols
// every semiclassical quantity is written in.
struct SemiclassicalContext {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 0.0;
    double l = 0.0;  // sqrt(hbar/(m omega))
    double a = 0.0;  // lattice period
    double x1 = 0.0; // first well minimum
    double v0 = 0.0; // energy at the minima
    int n_wells = 0;

    static SemiclassicalContext from_model(const PotentialModel& model,
                                           double hbar, double mass);

    // E_n^(0) = V0 + (n + 1/2) hbar omega
    double level_energy(int n) const { return v0 + (n + 0.5) * hbar * omega; }
};

struct DiagnosticsReport {
    double max_periodicity_violation = 0.0; // relative, over a probe grid
    double a_over_l = 0.0;
    std::vector<int> bands;
    std::vector<double> delta_magnitude; // predicted |delta_n| = Delta_n/(hbar omega)
    bool ratio_flag = false;             // a/l < 5
    bool delta_flag = false;             // any |delta_n| > 0.1
};

// Diagnostics only, never throws for an unfavourable regime.
DiagnosticsReport validate_context(const PotentialModel& model,
                                   const SemiclassicalContext& ctx,
                                   const std::vector<int>& bands = {0});

} // namespace nwell
