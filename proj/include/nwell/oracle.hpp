#pragma once

#include <functional>
#include <vector>

#include "nwell/errors.hpp"
#include "nwell/potentials.hpp"

namespace nwell {

// Adaptive Simpson with interval-split error accounting; the result satisfies
// |result - integral| <= tol*max(1, |result|). Recursion depth capped at 60;
// exhaustion throws numerical_error carrying the best estimate.
double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double tol);

// Bracketed secant/bisection hybrid; requires f(lo)*f(hi) < 0.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol);

// Complete elliptic integrals by AGM iteration; argument is the modulus k
// (k = sin phi), not the parameter m = k^2.
double elliptic_k(double modulus);
double elliptic_e(double modulus);

struct OracleSpectrum {
    std::vector<double> eigenvalues; // ascending
    std::vector<double> convergence_estimate; // |E(h) - E(h/2)| per eigenvalue
    int grid_points = 0;
    double grid_spacing = 0;
    double domain_min = 0, domain_max = 0;
    bool boundary_warning = false;      // ground state leaks onto the wall
    double boundary_amplitude = 0;      // |psi_0(edge)| / max |psi_0|
};

// Lowest `count` eigenvalues of -(hbar^2/2m) psi'' + V psi = E psi on
// [xmin, xmax] with hard walls, second-order central differences, Sturm
// bisection; repeated at half spacing for the convergence estimate.
OracleSpectrum fd_schrodinger_eigs(const std::function<double(double)>& v,
                                   double hbar, double mass, double xmin,
                                   double xmax, int grid_points, int count);

// Convenience wrapper: clamps the potential to its window-edge values in the
// padded region and checks padding >= 3l beyond the outer turning points.
OracleSpectrum fd_schrodinger_eigs(const PotentialModel& model,
                                   const SemiclassicalContext& ctx,
                                   double xmin, double xmax, int grid_points,
                                   int count);

struct MathieuCharacteristics {
    double q = 0;
    std::vector<double> a_values;    // a_0 .. a_max_order
    std::vector<double> b_values;    // b_1 .. b_{max_order+1}
    std::vector<double> band_widths; // b_{r+1} - a_r
    int basis_size = 0;
};

// Characteristic values of y'' + (a - 2q cos 2v) y = 0 from the symmetric
// tridiagonal Fourier-basis truncations, with basis doubling until the values
// settle below 1e-10.
MathieuCharacteristics mathieu_characteristics(double q, int max_order,
                                               int basis_size);

// Lowest `count` eigenvalues of a symmetric tridiagonal matrix by
// Gershgorin-bracketed Sturm bisection. `off` has diag.size()-1 entries.
// tol < 0 selects the default 1e-12*max(1, matrix norm); tol = 0 bisects to
// the last representable midpoint.
std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& off,
                                        int count, double tol = -1.0);

// Eigenvector for a known eigenvalue by inverse iteration (partial pivoting).
std::vector<double> tridiag_eigenvector(const std::vector<double>& diag,
                                        const std::vector<double>& off,
                                        double eigenvalue);

} // namespace nwell
