#include "nwell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nwell {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxQuadDepth = 60;

struct QuadState {
    const std::function<double(double)>& f;
    double abs_tol;
    double best = 0.0;   // running total including unconverged panels
    bool failed = false;
    double worst_panel_err = 0.0;
};

double simpson(double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * h / 6.0;
}

double adapt(QuadState& st, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = st.f(lm), frm = st.f(rm);
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol || depth >= kMaxQuadDepth) {
        if (std::abs(err) > tol) {
            st.failed = true;
            st.worst_panel_err = std::max(st.worst_panel_err, std::abs(err));
        }
        return left + right + err;
    }
    return adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double tol) {
    if (!(a <= b)) throw domain_error("adaptive_quadrature: need a <= b");
    if (!(tol > 0)) throw domain_error("adaptive_quadrature: tolerance must be positive");
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double rough = simpson(fa, fm, fb, b - a);
    double abs_tol = tol * std::max(1.0, std::abs(rough));
    QuadState st{f, abs_tol};
    double result = adapt(st, a, b, fa, fm, fb, rough, abs_tol, 0);
    if (st.failed)
        throw numerical_error("adaptive_quadrature: depth cap exhausted", result,
                              st.worst_panel_err);
    return result;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw domain_error("find_root: no sign change on the bracket");
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        // secant step, clipped into the bracket; bisect when it stalls
        double x = lo - flo * (hi - lo) / (fhi - flo);
        double mid = 0.5 * (lo + hi);
        if (!(x > lo && x < hi)) x = mid;
        // alternate toward bisection so the bracket provably shrinks
        if (it % 2 == 1) x = mid;
        double fx = f(x);
        if (fx == 0.0) return x;
        if (flo * fx < 0.0) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
    }
    return 0.5 * (lo + hi);
}

double elliptic_k(double modulus) {
    if (modulus < 0.0 || modulus >= 1.0)
        throw domain_error("elliptic_k: modulus must lie in [0, 1)");
    double a = 1.0, b = std::sqrt(1.0 - modulus * modulus);
    for (int it = 0; it < 60 && std::abs(a - b) > 1e-16 * a; ++it) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2.0 * a);
}

double elliptic_e(double modulus) {
    if (modulus < 0.0 || modulus > 1.0)
        throw domain_error("elliptic_e: modulus must lie in [0, 1]");
    if (modulus == 1.0) return 1.0;
    double a = 1.0, b = std::sqrt(1.0 - modulus * modulus);
    double c = modulus;
    double sum = 0.5 * c * c;
    double pow2 = 0.5; // 2^(n-1) with n = 0 term folded into sum above
    // c ~ quadratic convergence; a few dozen rounds reach machine noise
    for (int it = 0; it < 60 && std::abs(c) > 1e-17 * a; ++it) {
        double an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    return kPi / (2.0 * a) * (1.0 - sum);
}

namespace {

// eigenvalues of T strictly below x, by the Sturm sequence of the shifted LDL
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                double x) {
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double q = diag[0] - x;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        if (q == 0.0) q = tiny;
        q = diag[i] - x - off[i - 1] * off[i - 1] / q;
        if (q < 0) ++count;
    }
    return count;
}

} // namespace

std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& off,
                                        int count, double tol) {
    const int n = static_cast<int>(diag.size());
    if (n < 1) throw domain_error("tridiag_eigenvalues: empty matrix");
    if (off.size() + 1 != diag.size())
        throw domain_error("tridiag_eigenvalues: off-diagonal size mismatch");
    if (count < 1 || count > n)
        throw domain_error("tridiag_eigenvalues: bad eigenvalue count");

    // Gershgorin bounds
    double lo = diag[0], hi = diag[0], norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) +
                   (i + 1 < n ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
        norm = std::max(norm, std::abs(diag[i]) + r);
    }
    if (tol < 0) tol = 1e-12 * std::max(1.0, norm);

    std::vector<double> eigs(count);
    for (int k = 0; k < count; ++k) {
        double a = lo, b = hi;
        while (b - a > tol) {
            double m = 0.5 * (a + b);
            if (m <= a || m >= b) break; // bisection exhausted the mantissa
            if (sturm_count(diag, off, m) > k)
                b = m;
            else
                a = m;
        }
        eigs[k] = 0.5 * (a + b);
        lo = a; // eigenvalues come out sorted
    }
    return eigs;
}

std::vector<double> tridiag_eigenvector(const std::vector<double>& diag,
                                        const std::vector<double>& off,
                                        double eigenvalue) {
    const int n = static_cast<int>(diag.size());
    if (off.size() + 1 != diag.size())
        throw domain_error("tridiag_eigenvector: off-diagonal size mismatch");
    double norm = 0.0;
    for (int i = 0; i < n; ++i)
        norm = std::max(norm, std::abs(diag[i]) +
                                  (i > 0 ? std::abs(off[i - 1]) : 0.0) +
                                  (i + 1 < n ? std::abs(off[i]) : 0.0));
    const double shift = eigenvalue + 1e-13 * std::max(1.0, norm);

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> d(n), u1(n, 0.0), u2(n, 0.0), rhs(n);
    std::vector<int> swapped(n, 0);

    for (int iter = 0; iter < 3; ++iter) {
        // LU with partial pivoting of (T - shift I); one fill-in diagonal
        for (int i = 0; i < n; ++i) {
            d[i] = diag[i] - shift;
            u1[i] = (i + 1 < n) ? off[i] : 0.0;
            u2[i] = 0.0;
            rhs[i] = v[i];
        }
        for (int i = 0; i + 1 < n; ++i) {
            double sub = off[i];
            if (std::abs(sub) > std::abs(d[i])) {
                std::swap(d[i], sub);
                std::swap(u1[i], d[i + 1]);
                std::swap(u2[i], u1[i + 1]);
                std::swap(rhs[i], rhs[i + 1]);
            }
            if (d[i] == 0.0) d[i] = 1e-300;
            double m = sub / d[i];
            d[i + 1] -= m * u1[i];
            u1[i + 1] -= m * u2[i];
            rhs[i + 1] -= m * rhs[i];
        }
        if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
        for (int i = n - 1; i >= 0; --i) {
            double s = rhs[i];
            if (i + 1 < n) s -= u1[i] * v[i + 1];
            if (i + 2 < n) s -= u2[i] * v[i + 2];
            v[i] = s / d[i];
        }
        double nv = 0.0;
        for (double x : v) nv += x * x;
        nv = std::sqrt(nv);
        for (double& x : v) x /= nv;
    }
    return v;
}

OracleSpectrum fd_schrodinger_eigs(const std::function<double(double)>& v,
                                   double hbar, double mass, double xmin,
                                   double xmax, int grid_points, int count) {
    if (grid_points < 64)
        throw domain_error("fd_schrodinger_eigs: need at least 64 grid points");
    if (count < 1 || count > grid_points / 4)
        throw domain_error("fd_schrodinger_eigs: count must lie in [1, grid_points/4]");
    if (!(xmax > xmin)) throw domain_error("fd_schrodinger_eigs: empty domain");

    auto solve = [&](int n) {
        double h = (xmax - xmin) / (n + 1);
        std::vector<double> diag(n), off(n - 1, -hbar * hbar / (2.0 * mass * h * h));
        for (int i = 0; i < n; ++i)
            diag[i] = hbar * hbar / (mass * h * h) + v(xmin + (i + 1) * h);
        return std::pair{tridiag_eigenvalues(diag, off, count), h};
    };

    auto [eigs, h] = solve(grid_points);
    auto [eigs_fine, h2] = solve(2 * grid_points + 1);
    (void)h2;

    OracleSpectrum sp;
    sp.eigenvalues = eigs;
    sp.grid_points = grid_points;
    sp.grid_spacing = h;
    sp.domain_min = xmin;
    sp.domain_max = xmax;
    sp.convergence_estimate.resize(count);
    for (int i = 0; i < count; ++i)
        sp.convergence_estimate[i] = std::abs(eigs[i] - eigs_fine[i]);

    // ground-state amplitude on the walls
    {
        std::vector<double> diag(grid_points),
            off(grid_points - 1, -hbar * hbar / (2.0 * mass * h * h));
        for (int i = 0; i < grid_points; ++i)
            diag[i] = hbar * hbar / (mass * h * h) + v(xmin + (i + 1) * h);
        auto psi = tridiag_eigenvector(diag, off, eigs[0]);
        double peak = 0.0;
        for (double x : psi) peak = std::max(peak, std::abs(x));
        sp.boundary_amplitude =
            std::max(std::abs(psi.front()), std::abs(psi.back())) / peak;
        sp.boundary_warning = sp.boundary_amplitude > 1e-6;
    }
    return sp;
}

OracleSpectrum fd_schrodinger_eigs(const PotentialModel& model,
                                   const SemiclassicalContext& ctx, double xmin,
                                   double xmax, int grid_points, int count) {
    const double outer_lo = ctx.x1 - ctx.l;
    const double outer_hi = ctx.x1 + (ctx.n_wells - 1) * ctx.a + ctx.l;
    if (xmin > outer_lo - 3.0 * ctx.l || xmax < outer_hi + 3.0 * ctx.l)
        throw domain_error(
            "fd_schrodinger_eigs: domain lacks 3l padding beyond the outer turning points");
    const double clamp_lo = model.domain_min();
    const double clamp_hi = model.domain_max();
    auto v = [&, clamp_lo, clamp_hi](double x) {
        return model.evaluate(std::clamp(x, clamp_lo, clamp_hi));
    };
    return fd_schrodinger_eigs(v, ctx.hbar, ctx.mass, xmin, xmax, grid_points, count);
}

namespace {

std::vector<double> mathieu_lowest(double q, int corner_kind, int n_values,
                                   int basis_size) {
    // corner_kind: 0 = even order cosines (a_0, a_2, ...),
    //              1 = odd order cosines (a_1, a_3, ...),
    //              2 = odd order sines (b_1, b_3, ...),
    //              3 = even order sines (b_2, b_4, ...)
    std::vector<double> diag(basis_size), off(basis_size - 1, q);
    switch (corner_kind) {
        case 0:
            for (int j = 0; j < basis_size; ++j) diag[j] = 4.0 * j * j;
            off[0] = std::sqrt(2.0) * q;
            break;
        case 1:
            for (int j = 0; j < basis_size; ++j) diag[j] = (2.0 * j + 1) * (2.0 * j + 1);
            diag[0] += q;
            break;
        case 2:
            for (int j = 0; j < basis_size; ++j) diag[j] = (2.0 * j + 1) * (2.0 * j + 1);
            diag[0] -= q;
            break;
        default:
            for (int j = 0; j < basis_size; ++j) diag[j] = 4.0 * (j + 1.0) * (j + 1.0);
            break;
    }
    // narrow-band widths come out as differences of near-degenerate pairs, so
    // bisect down to the last representable midpoint
    return tridiag_eigenvalues(diag, off, n_values, 0.0);
}

} // namespace

MathieuCharacteristics mathieu_characteristics(double q, int max_order,
                                               int basis_size) {
    if (!(q > 0)) throw domain_error("mathieu_characteristics: q must be positive");
    if (max_order < 0) throw domain_error("mathieu_characteristics: bad max_order");
    const int floor_size = static_cast<int>(3.0 * std::sqrt(q) + 30.0);
    if (basis_size < floor_size)
        throw domain_error("mathieu_characteristics: basis_size below 3 sqrt(q) + 30");

    auto compute = [&](int size) {
        MathieuCharacteristics mc;
        mc.q = q;
        mc.basis_size = size;
        int n_even = max_order / 2 + 1;
        int n_odd = max_order / 2 + 1;
        auto a_even = mathieu_lowest(q, 0, n_even, size); // a_0, a_2, ...
        auto a_odd = mathieu_lowest(q, 1, n_odd, size);   // a_1, a_3, ...
        auto b_odd = mathieu_lowest(q, 2, n_odd + 1, size);  // b_1, b_3, ...
        auto b_even = mathieu_lowest(q, 3, n_even + 1, size); // b_2, b_4, ...
        for (int r = 0; r <= max_order; ++r)
            mc.a_values.push_back(r % 2 == 0 ? a_even[r / 2] : a_odd[r / 2]);
        for (int r = 1; r <= max_order + 1; ++r)
            mc.b_values.push_back(r % 2 == 1 ? b_odd[r / 2] : b_even[r / 2 - 1]);
        for (int r = 0; r <= max_order; ++r)
            mc.band_widths.push_back(mc.b_values[r] - mc.a_values[r]);
        return mc;
    };

    MathieuCharacteristics mc = compute(basis_size);
    double change = std::numeric_limits<double>::infinity();
    int size = basis_size;
    for (int doubling = 0; doubling < 4 && change > 1e-10; ++doubling) {
        size *= 2;
        MathieuCharacteristics next = compute(size);
        change = 0.0;
        for (std::size_t i = 0; i < mc.a_values.size(); ++i)
            change = std::max(change, std::abs(next.a_values[i] - mc.a_values[i]));
        for (std::size_t i = 0; i < mc.b_values.size(); ++i)
            change = std::max(change, std::abs(next.b_values[i] - mc.b_values[i]));
        mc = std::move(next);
    }
    if (change > 1e-10)
        throw numerical_error("mathieu_characteristics: truncation not converged",
                              mc.a_values.empty() ? 0.0 : mc.a_values[0], change);
    return mc;
}

} // namespace nwell
