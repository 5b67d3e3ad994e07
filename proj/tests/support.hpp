#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qshannon/fock_oracle.hpp"
#include "qshannon/states.hpp"

namespace qshannon::testing {

/// Random coherent-state set with |alpha| <= max_modulus and random admissible priors.
inline Constellation random_constellation(std::mt19937_64& gen, std::size_t m, double max_modulus = 4.0,
                                          bool uniform = false) {
    std::uniform_real_distribution<double> radius(0.0, max_modulus);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    std::vector<Amplitude> amps;
    std::vector<double> priors;
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double r = radius(gen);
        amps.push_back(Amplitude::from_polar(r * r, angle(gen)));
        priors.push_back(weight(gen));
        total += priors.back();
    }
    if (uniform) return Constellation(std::move(amps));
    for (double& p : priors) p /= total;
    return Constellation(std::move(amps), std::move(priors));
}

/// Fock vectors of every signal at one shared truncation.
inline std::vector<fock::FockVector> fock_states(const Constellation& c) {
    double biggest = 0.0;
    for (const auto& a : c.amplitudes()) biggest = std::max(biggest, a.mean_photons());
    const int n_max = fock::auto_truncation(biggest);
    std::vector<fock::FockVector> out;
    for (const auto& a : c.amplitudes()) out.push_back(fock::coherent_fock(a, n_max));
    return out;
}

inline std::vector<std::pair<double, fock::FockVector>> fock_mixture(const Constellation& c) {
    const auto states = fock_states(c);
    std::vector<std::pair<double, fock::FockVector>> mix;
    for (std::size_t i = 0; i < c.size(); ++i) mix.emplace_back(c.prior(i), states[i]);
    return mix;
}

inline double binary_entropy_nats(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

inline double binary_entropy_bits(double p) { return binary_entropy_nats(p) / std::log(2.0); }

}  // namespace qshannon::testing
