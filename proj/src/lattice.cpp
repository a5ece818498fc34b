#include "nwell/lattice.hpp"

#include <cmath>
#include <complex>

namespace nwell {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RingHamiltonian::RingHamiltonian(int dim, std::vector<double> couplings)
    : dim_(dim), h_(std::move(couplings)) {
    if (dim_ < 1) throw domain_error("ring: dimension must be positive");
    if (static_cast<int>(h_.size()) != dim_)
        throw domain_error("ring: need exactly N couplings h_0..h_{N-1}");
    for (int m = 1; m < dim_; ++m)
        if (h_[m] != h_[dim_ - m])
            throw domain_error("ring: couplings must satisfy h_m = h_{N-m}");
}

ToeplitzSpectrum toeplitz_spectrum(int dim) {
    if (dim < 1) throw domain_error("toeplitz_spectrum: dimension must be positive");
    ToeplitzSpectrum sp;
    sp.eigenvalues.resize(dim);
    sp.eigenvectors.resize(dim);
    for (int s = 1; s <= dim; ++s) {
        sp.eigenvalues[s - 1] = 2.0 * std::cos(s * kPi / (dim + 1));
        sp.eigenvectors[s - 1] = eigenstate_coefficients(dim, s);
    }
    return sp;
}

std::vector<double> chain_spectrum(const ChainHamiltonian& h) {
    if (h.dim < 1) throw domain_error("chain_spectrum: dimension must be positive");
    std::vector<double> e(h.dim);
    for (int s = 1; s <= h.dim; ++s)
        e[s - 1] = h.diagonal + 2.0 * h.off_diagonal * std::cos(s * kPi / (h.dim + 1));
    return e;
}

std::vector<double> eigenstate_coefficients(int dim, int s) {
    if (s < 1 || s > dim)
        throw domain_error("eigenstate_coefficients: s out of 1..N");
    std::vector<double> v(dim);
    double norm = std::sqrt(2.0 / (dim + 1));
    for (int j = 0; j < dim; ++j)
        v[j] = norm * std::sin((j + 1) * s * kPi / (dim + 1));
    return v;
}

double intraband_symmetry_check(int dim, int s) {
    if (s < 1 || s > dim)
        throw domain_error("intraband_symmetry_check: s out of 1..N");
    double worst = 0.0;
    for (int j = 0; j < dim; ++j) {
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        double mirrored = sign * std::sin((j + 1) * (dim + 1 - s) * kPi / (dim + 1));
        double direct = std::sin((j + 1) * s * kPi / (dim + 1));
        worst = std::max(worst, std::abs(mirrored - direct));
    }
    return worst;
}

std::vector<RingLevel> circulant_spectrum(const RingHamiltonian& h) {
    const int n = h.dim();
    std::vector<RingLevel> levels;
    levels.reserve(n);
    for (int s = -(n / 2); s < (n + 1) / 2; ++s) {
        // cosine sum over |s| so that E(s) and E(-s) are bitwise equal
        double e = h.couplings()[0];
        for (int m = 1; m < n; ++m)
            e += h.couplings()[m] * std::cos(2.0 * kPi * m * std::abs(s) / n);
        levels.push_back({s, e});
    }
    return levels;
}

std::vector<RingLevel> circulant_nearest_neighbor(double h0, double h1, int dim) {
    if (dim < 2) throw domain_error("circulant_nearest_neighbor: need N >= 2");
    std::vector<RingLevel> levels;
    levels.reserve(dim);
    for (int s = -(dim / 2); s < (dim + 1) / 2; ++s)
        levels.push_back({s, h0 + 2.0 * h1 * std::cos(2.0 * kPi * std::abs(s) / dim)});
    return levels;
}

double bloch_rotation_check(int dim, int s_tilde, int k) {
    if (dim < 1) throw domain_error("bloch_rotation_check: dimension must be positive");
    using cd = std::complex<double>;
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    auto component = [&](int j) {
        double phase = 2.0 * kPi * j * s_tilde / dim;
        return norm * cd(std::cos(phase), std::sin(phase));
    };
    // rotating well labels j -> (j+k) mod N multiplies the vector by
    // exp(-2 pi i k s/N); the rotated coefficient at well j is the old one
    // at well j-k
    cd bloch = std::exp(cd(0.0, -2.0 * kPi * k * s_tilde / dim));
    double worst = 0.0;
    for (int j = 0; j < dim; ++j) {
        int jk = ((j - k) % dim + dim) % dim;
        worst = std::max(worst, std::abs(component(jk) - bloch * component(j)));
    }
    return worst;
}

} // namespace nwell
