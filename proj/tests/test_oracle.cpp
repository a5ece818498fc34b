#include <cmath>
#include <random>

#include "doctest.h"
#include "nwell/oracle.hpp"
#include "nwell/potentials.hpp"
#include "nwell/semiclassics.hpp"

using namespace nwell;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("adaptive quadrature") {
    CHECK(adaptive_quadrature([](double x) { return x * x; }, 0, 1, 1e-12) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    // sqrt endpoint, the turning-point profile
    CHECK(adaptive_quadrature([](double x) { return std::sqrt(x); }, 0, 1, 1e-10) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(adaptive_quadrature([](double x) { return std::sin(x); }, 0, kPi, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(adaptive_quadrature([](double) { return 1.0; }, 2, 2, 1e-12) == 0.0);
    CHECK_THROWS_AS(adaptive_quadrature([](double x) { return x; }, 1, 0, 1e-12),
                    domain_error);
    CHECK_THROWS_AS(adaptive_quadrature([](double x) { return x; }, 0, 1, 0.0),
                    domain_error);
}

TEST_CASE("find_root") {
    auto sqrt2 = find_root([](double x) { return x * x - 2.0; }, 1, 2, 1e-13);
    CHECK(sqrt2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    auto half_pi = find_root([](double x) { return std::cos(x); }, 1, 2, 1e-13);
    CHECK(half_pi == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, 0, 1, 1e-12),
                    domain_error);
}

TEST_CASE("complete elliptic integrals") {
    CHECK(std::abs(elliptic_k(0.0) - kPi / 2) < 1e-14);
    CHECK(std::abs(elliptic_e(0.0) - kPi / 2) < 1e-14);
    CHECK(elliptic_e(1.0) == 1.0);
    CHECK(elliptic_k(1.0 / std::sqrt(2.0)) ==
          doctest::Approx(1.85407467730137).epsilon(1e-12));
    // power-series cross-check at small modulus
    double k = 0.1;
    double series_k = kPi / 2 * (1 + k * k / 4 + 9.0 * std::pow(k, 4) / 64 +
                                 225.0 * std::pow(k, 6) / 2304);
    CHECK(elliptic_k(k) == doctest::Approx(series_k).epsilon(1e-9));
    double series_e = kPi / 2 * (1 - k * k / 4 - 3.0 * std::pow(k, 4) / 64 -
                                 45.0 * std::pow(k, 6) / 2304);
    CHECK(elliptic_e(k) == doctest::Approx(series_e).epsilon(1e-9));
    // E(sin 0) - cos^2(0) K(sin 0) = 0, the vanishing-action limit
    CHECK(std::abs(elliptic_e(0.0) - 1.0 * elliptic_k(0.0)) < 1e-14);
    CHECK_THROWS_AS(elliptic_k(1.0), domain_error);
    CHECK_THROWS_AS(elliptic_e(1.5), domain_error);
}

TEST_CASE("sturm bisection against the Toeplitz closed form") {
    for (int n : {1, 7, 50, 200}) {
        std::vector<double> diag(n, 0.0), off(std::max(0, n - 1), 1.0);
        auto numeric = tridiag_eigenvalues(diag, off, n);
        for (int s = 1; s <= n; ++s) {
            double closed = 2.0 * std::cos((n + 1 - s) * kPi / (n + 1));
            CHECK(std::abs(numeric[s - 1] - closed) < 1e-10);
        }
    }
}

TEST_CASE("tridiagonal eigenvector inverse iteration") {
    // T = diag 2, off -1 (discrete Laplacian), known sine eigenvectors
    const int n = 40;
    std::vector<double> diag(n, 2.0), off(n - 1, -1.0);
    auto eigs = tridiag_eigenvalues(diag, off, 1);
    auto v = tridiag_eigenvector(diag, off, eigs[0]);
    double scale = v[0] / std::sin(kPi / (n + 1));
    for (int i = 0; i < n; ++i)
        CHECK(v[i] == doctest::Approx(scale * std::sin((i + 1) * kPi / (n + 1)))
                          .epsilon(1e-8));
}

TEST_CASE("finite-difference Schrodinger eigensolver") {
    SUBCASE("harmonic oscillator") {
        auto sp = fd_schrodinger_eigs([](double x) { return 0.5 * x * x; }, 1.0, 1.0,
                                      -10.0, 10.0, 4000, 2);
        CHECK(std::abs(sp.eigenvalues[0] - 0.5) < 1e-4);
        CHECK(std::abs(sp.eigenvalues[1] - 1.5) < 1e-4);
        CHECK_FALSE(sp.boundary_warning);
        CHECK(sp.convergence_estimate[0] > 0.0);
        CHECK(std::isfinite(sp.convergence_estimate[1]));
    }
    SUBCASE("particle in a box") {
        auto sp = fd_schrodinger_eigs([](double) { return 0.0; }, 1.0, 1.0, 0.0, 1.0,
                                      1000, 1);
        CHECK(std::abs(sp.eigenvalues[0] - kPi * kPi / 2) < 1e-3);
    }
    SUBCASE("second-order convergence") {
        auto lowest = [](int grid) {
            return fd_schrodinger_eigs([](double x) { return 0.5 * x * x; }, 1.0, 1.0,
                                       -10.0, 10.0, grid, 1);
        };
        auto coarse = lowest(512);
        auto fine = lowest(1025); // half spacing of the 512 grid
        double ratio = coarse.convergence_estimate[0] / fine.convergence_estimate[0];
        CHECK(ratio > 3.2);
        CHECK(ratio < 4.8);
    }
    SUBCASE("boundary contamination is flagged") {
        auto sp = fd_schrodinger_eigs([](double x) { return 0.5 * x * x; }, 1.0, 1.0,
                                      -3.0, 3.0, 512, 1);
        CHECK(sp.boundary_warning);
        CHECK(sp.boundary_amplitude > 1e-6);
    }
    SUBCASE("input validation") {
        auto v = [](double) { return 0.0; };
        CHECK_THROWS_AS(fd_schrodinger_eigs(v, 1.0, 1.0, 0.0, 1.0, 32, 1), domain_error);
        CHECK_THROWS_AS(fd_schrodinger_eigs(v, 1.0, 1.0, 0.0, 1.0, 100, 50), domain_error);
    }
    SUBCASE("model wrapper enforces padding") {
        auto m = PotentialModel::cosine(8.0, 1.0, 4);
        auto ctx = SemiclassicalContext::from_model(m, 1.0, 1.0);
        CHECK_THROWS_AS(
            fd_schrodinger_eigs(m, ctx, ctx.x1, ctx.x1 + 3 * ctx.a, 512, 4),
            domain_error);
        auto sp = fd_schrodinger_eigs(m, ctx, m.domain_min() - 3.0 * ctx.l,
                                      m.domain_max() + 3.0 * ctx.l, 2048, 4);
        CHECK(sp.eigenvalues[0] < sp.eigenvalues[3]);
        CHECK_FALSE(sp.boundary_warning);
    }
}

TEST_CASE("mathieu characteristic values") {
    SUBCASE("free-rotor limit") {
        auto mc = mathieu_characteristics(1e-8, 3, 64);
        CHECK(std::abs(mc.a_values[1] - 1.0) < 1e-6);
        CHECK(std::abs(mc.a_values[2] - 4.0) < 1e-6);
        CHECK(std::abs(mc.b_values[0] - 1.0) < 1e-6);
        CHECK(std::abs(mc.b_values[1] - 4.0) < 1e-6);
    }
    SUBCASE("frozen reference values at q = 25") {
        // frozen from an independent Mathieu implementation
        auto mc = mathieu_characteristics(25.0, 2, 45);
        CHECK(mc.a_values[0] == doctest::Approx(-40.2567795465668).epsilon(1e-10));
        CHECK(mc.a_values[1] == doctest::Approx(-21.3148996906657).epsilon(1e-10));
        CHECK(mc.b_values[0] == doctest::Approx(-40.2567789846842).epsilon(1e-10));
        CHECK(mc.b_values[1] == doctest::Approx(-21.3148606222499).epsilon(1e-10));
    }
    SUBCASE("interlacing and narrow band in a wide gap") {
        auto mc = mathieu_characteristics(25.0, 3, 45);
        for (std::size_t r = 0; r < mc.a_values.size(); ++r) {
            CHECK(mc.band_widths[r] >= 0.0);
            CHECK(mc.b_values[r] >= mc.a_values[r]);
            if (r + 1 < mc.a_values.size()) CHECK(mc.b_values[r] < mc.a_values[r + 1]);
        }
        CHECK(mc.band_widths[0] > 0.0);
        CHECK(mc.band_widths[0] < mc.a_values[1] - mc.a_values[0]);
    }
    SUBCASE("agrees with the closed form within 10 percent") {
        auto mc = mathieu_characteristics(25.0, 1, 45);
        double closed = mathieu_band_width_closed(0, 25.0, 1.0);
        CHECK(closed / mc.band_widths[0] == doctest::Approx(1.0).epsilon(0.1));
    }
    SUBCASE("invariant under basis doubling at convergence") {
        auto mc1 = mathieu_characteristics(25.0, 2, 45);
        auto mc2 = mathieu_characteristics(25.0, 2, 90);
        for (std::size_t i = 0; i < mc1.a_values.size(); ++i) {
            CHECK(std::abs(mc1.a_values[i] - mc2.a_values[i]) < 1e-10);
            CHECK(std::abs(mc1.b_values[i] - mc2.b_values[i]) < 1e-10);
        }
    }
    SUBCASE("sign convention leaves the multiset and widths unchanged") {
        // flipped-sign matrices built by hand: a_{2k}, b_{2k} unchanged,
        // a_{2k+1} and b_{2k+1} swap
        double q = 7.0;
        auto mc = mathieu_characteristics(q, 2, 64);
        int size = 64;
        std::vector<double> dco(size), deo(size), off(size - 1, -q);
        for (int j = 0; j < size; ++j) dco[j] = deo[j] = (2.0 * j + 1) * (2.0 * j + 1);
        dco[0] += -q; // cos((2j+1)v) block with q -> -q
        deo[0] -= -q; // sin((2j+1)v) block with q -> -q
        auto a1_flipped = tridiag_eigenvalues(dco, off, 1, 0.0)[0];
        auto b1_flipped = tridiag_eigenvalues(deo, off, 1, 0.0)[0];
        CHECK(a1_flipped == doctest::Approx(mc.b_values[0]).epsilon(1e-12));
        CHECK(b1_flipped == doctest::Approx(mc.a_values[1]).epsilon(1e-12));
        // sorted widths are convention independent
        std::vector<double> direct{mc.a_values[0], mc.b_values[0], mc.a_values[1],
                                   mc.b_values[1]};
        std::vector<double> flipped{mc.a_values[0], b1_flipped, a1_flipped,
                                    mc.b_values[1]};
        std::sort(direct.begin(), direct.end());
        std::sort(flipped.begin(), flipped.end());
        for (int i = 0; i < 4; ++i)
            CHECK(direct[i] == doctest::Approx(flipped[i]).epsilon(1e-12));
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(mathieu_characteristics(-1.0, 1, 64), domain_error);
        CHECK_THROWS_AS(mathieu_characteristics(25.0, 1, 10), domain_error);
    }
}
