#pragma once

// Truncated number-state representations. Everything here is brute force on purpose:
// it is the independent check for the Gram-matrix closed forms elsewhere.

#include <optional>
#include <utility>
#include <vector>

#include "qshannon/common.hpp"
#include "qshannon/states.hpp"

namespace qshannon::fock {

inline constexpr double kMaxMeanPhotons = 100.0;

struct FockVector {
    CVector coefficients;  // c_0 .. c_{n_max}
    int n_max = 0;
};

/// Default truncation: ceil(|a|^2 + 10 |a| + 20).
int auto_truncation(double mean_photons);

/// c_n = exp(-|a|^2/2) a^n / sqrt(n!). Throws if |a|^2 > 100 or the requested
/// truncation leaves a tail above 1e-12.
FockVector coherent_fock(const Amplitude& a, std::optional<int> n_max = std::nullopt);

/// exp(i theta a^dag a) applied to a single mode.
FockVector phase_shift(const FockVector& v, double theta);

Complex inner(const FockVector& x, const FockVector& y);

/// Embed both vectors at the larger of the two truncations.
std::pair<FockVector, FockVector> match_truncation(const FockVector& x, const FockVector& y);

/// rho = sum_k w_k |v_k><v_k|
CMatrix density_matrix(const std::vector<std::pair<double, FockVector>>& mix);

/// Minimum error for two pure states: (1 - ||xi1 rho1 - xi0 rho0||_1) / 2.
double helstrom_binary_oracle(const FockVector& s0, const FockVector& s1, double xi0, double xi1);

/// -Tr rho ln rho of the mixture, from a dense eigendecomposition.
double von_neumann_entropy_oracle(const std::vector<std::pair<double, FockVector>>& mix);

/// A product state |x_A>|x_B>.
struct ProductPair {
    FockVector a;
    FockVector b;
};

/// <x_A|y_A><x_B|y_B>
Complex two_mode_overlap(const ProductPair& x, const ProductPair& y);

/// Superposition sum_k c_k |a_k>|b_k> of product states.
struct TwoModeState {
    std::vector<std::pair<Complex, ProductPair>> terms;
};

Complex two_mode_overlap(const TwoModeState& x, const TwoModeState& y);

/// Quasi-Bell state Psi_index (1..4) built from Fock vectors, with an optional
/// phase shift exp(i theta a^dag a) applied to mode B.
TwoModeState quasi_bell_state(const Amplitude& alpha, int index, double theta_b = 0.0,
                              std::optional<int> n_max = std::nullopt);

}  // namespace qshannon::fock
