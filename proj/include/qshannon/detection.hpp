#pragma once

#include <cstddef>
#include <vector>

#include "qshannon/common.hpp"
#include "qshannon/states.hpp"

namespace qshannon {

/// Coordinates of the signal states in an orthonormal basis of their span:
/// column i of the returned matrix is |psi_i>. It is the PSD square root of the
/// plain Gram matrix, so the SRM vectors are the standard basis vectors when the
/// states are linearly independent.
CMatrix signal_coordinates(const Constellation& c);

/// Rank-one POVM {|mu_l><mu_l|}, vectors in signal coordinates.
struct Povm {
    CMatrix vectors;  // column l is |mu_l>
    double completeness_defect = 0.0;

    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(vectors.cols()); }
};

/// P(j|i): rows are inputs i, columns outcomes j.
struct ChannelMatrix {
    RMatrix p;
    RVector input_priors;

    [[nodiscard]] std::size_t inputs() const { return static_cast<std::size_t>(p.rows()); }
    [[nodiscard]] std::size_t outputs() const { return static_cast<std::size_t>(p.cols()); }
};

/// Throws InvalidArgument unless rows sum to one (1e-12), entries lie in [0,1]
/// and priors are admissible.
void validate_channel(const ChannelMatrix& ch);

/// Turns arbitrary spanning vectors into a complete rank-one POVM on the signal
/// subspace: mu_l = T^{-1/2} v_l with T = sum_l v_l v_l^H.
Povm complete_povm(const CMatrix& raw_vectors, const Constellation& c);

/// Square-root measurement mu_l = Gamma^{-1/2} |psi_l>, pseudo-inverse on a singular Gram matrix.
Povm srm_povm(const Constellation& c);

/// Binary minimum-error (Helstrom) measurement for arbitrary priors.
Povm helstrom_povm(const Constellation& c);

/// P(j|i) = |<mu_j|psi_i>|^2, rows renormalized to absorb rounding.
ChannelMatrix povm_channel(const Constellation& c, const Povm& p);

ChannelMatrix srm_channel(const Constellation& c);

/// Average error 1 - sum_i xi_i P(i|i).
double error_probability(const ChannelMatrix& ch);

/// (1/2)[1 - sqrt(1 - 4 xi0 xi1 |<psi0|psi1>|^2)]
double helstrom_binary(const Constellation& c);

/// Helstrom bound from the overlap modulus squared and priors, evaluated without cancellation.
double helstrom_from_overlap(double overlap_sq, double xi0, double xi1);

/// Eigenvalues of the circulant plain Gram matrix of an M-PSK set: the DFT of its
/// first row with omega = exp(i 2 pi / M).
RVector psk_gram_spectrum(const Constellation& c);

/// 1 - (1/M^2)(sum_m sqrt(lambda_m))^2 for a uniform-prior PSK set.
double covariant_optimal_pe(const Constellation& c);

/// First row s_k = (1/N) sum_m sqrt(lambda_m) omega^{mk} of the square root of an
/// N-PSK Gram matrix, with lambda_m from the Poisson residue sums
/// N exp(-Ns) sum_{n = m mod N} Ns^n / n!. The SRM channel row is |s_k|^2.
/// Runs in O(N^2) without forming any N x N matrix.
RVector psk_srm_channel_row(std::size_t n_states, double mean_photons);

/// Upper Gaussian tail Q(x).
double gaussian_q(double x);

/// Homodyne BPSK error Q(2 sqrt(Ns)) for uniform priors.
double homodyne_bpsk_pe(double mean_photons);

/// Homodyne likelihood-ratio test between |+a> and |-a> with priors (xi0, xi1).
/// Quadrature X_c = (a + a^dag)/2 has variance 1/4.
double homodyne_binary_pe(double mean_photons, double xi0, double xi1);

struct OptimalityReport {
    double pairwise_residual = 0.0;      // max_{m,l} ||Pi_m (xi_m rho_m - xi_l rho_l) Pi_l||
    double hermiticity_defect = 0.0;     // ||gamma - gamma^H||
    double min_eigenvalue = 0.0;         // min_l lambda_min(gamma - xi_l rho_l)
    double conditional_spread = 0.0;     // max_{l,m} |Tr Pi_l rho_l - Tr Pi_m rho_m| (minimax only)
    bool optimal = false;
};

inline constexpr double kOptimalityResidualTol = 1e-8;
inline constexpr double kOptimalityEigenFloor = -1e-8;

/// Bayes-rule necessary and sufficient conditions evaluated for `p`.
OptimalityReport check_bayes_optimality(const Constellation& c, const Povm& p);

/// Bayes conditions plus equal conditional probabilities of correct decision.
OptimalityReport check_minimax(const Constellation& c, const Povm& p);

}  // namespace qshannon
