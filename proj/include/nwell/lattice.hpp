#pragma once

#include <vector>

#include "nwell/errors.hpp"

namespace nwell {

// Open chain: symmetric tridiagonal Toeplitz, diagonal E_n^(0) and
// off-diagonal (-1)^(n+1) Delta_n / 2.
struct ChainHamiltonian {
    int dim = 0;
    double diagonal = 0;
    double off_diagonal = 0;
    int band_index = 0;
};

// Ring of N wells: real circulant couplings with h_m = h_{N-m}.
class RingHamiltonian {
public:
    RingHamiltonian(int dim, std::vector<double> couplings);
    int dim() const { return dim_; }
    const std::vector<double>& couplings() const { return h_; }

private:
    int dim_;
    std::vector<double> h_;
};

struct ToeplitzSpectrum {
    std::vector<double> eigenvalues;               // 2 cos(s pi/(N+1)), s = 1..N
    std::vector<std::vector<double>> eigenvectors; // column s-1: normalized sine vector
};

ToeplitzSpectrum toeplitz_spectrum(int dim);

// diagonal + 2 off_diagonal cos(s pi/(N+1)), s = 1..N.
std::vector<double> chain_spectrum(const ChainHamiltonian& h);

// sqrt(2/(N+1)) sin((j+1) s pi/(N+1)), j = 0..N-1; unit norm.
std::vector<double> eigenstate_coefficients(int dim, int s);

// max_j |(-1)^j sin((j+1)(N+1-s)pi/(N+1)) - sin((j+1)s pi/(N+1))|
double intraband_symmetry_check(int dim, int s);

struct RingLevel {
    int s_tilde;
    double energy;
};

// E_s = h0 + sum_m h_m cos(2 pi m s/N), labeled s in [-floor(N/2), ceil(N/2)).
std::vector<RingLevel> circulant_spectrum(const RingHamiltonian& h);

std::vector<RingLevel> circulant_nearest_neighbor(double h0, double h1, int dim);

// Deviation of the rotated DFT eigenvector from its Bloch phase times itself.
double bloch_rotation_check(int dim, int s_tilde, int k);

} // namespace nwell
