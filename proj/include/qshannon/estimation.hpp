#pragma once

// Quadrature convention: X_c = (a + a^dag)/2, vacuum variance 1/4.

#include <string>
#include <utility>

#include "qshannon/common.hpp"

namespace qshannon {

/// Bogoliubov pair with mu^2 - nu^2 = 1 (1e-12).
class SqueezeParams {
public:
    SqueezeParams(double mu, double nu);

    /// mu = cosh r, nu = sinh r
    static SqueezeParams from_squeeze(double r);

    [[nodiscard]] double mu() const { return mu_; }
    [[nodiscard]] double nu() const { return nu_; }

private:
    double mu_ = 1.0;
    double nu_ = 0.0;
};

struct EstimationReport {
    double variance = 0.0;
    double snr = 0.0;
    std::string receiver;
    double mu_s = 1.0;  // optimal squeeze pair, squeezed receiver only
    double nu_s = 0.0;
};

/// Var x_c = N/2 + 1/4
double crb_single_quadrature(double noise_photons);

/// Var alpha = N + 1 for simultaneous measurement of both quadratures.
double yuen_lax_heterodyne_var(double noise_photons);

/// (1/4 + |mu + nu|^2 / 4, 1/4 + |mu - nu|^2 / 4)
std::pair<double, double> generalized_heterodyne_vars(const SqueezeParams& p);

/// Optimal squeezed probe through transmissivity epsilon:
/// SNR = 4 eps Ns (Ns + 1) / (eps + (1 - eps)(2 Ns + 1)).
EstimationReport squeezed_snr(double mean_photons, double epsilon);

/// SNR = 4 eps Ns, variance 1/4.
EstimationReport coherent_snr(double mean_photons, double epsilon);

/// Smallest transmissivity at which the squeezed probe is no worse than the
/// coherent one, located by bisection on the SNR difference.
double snr_crossover(double mean_photons, double tol = 1e-12);

/// Heterodyne SNR |alpha|^2 / (Var alpha / 2) = 2 Ns / (N + 1).
double heterodyne_snr(double mean_photons, double noise_photons = 0.0);

/// One quadrature of a 50/50 dual homodyne: (Ns / 2) / (1/4) = 2 Ns.
double dual_homodyne_snr(double mean_photons);

/// theta = atan2(x_s, x_c)
double phase_readout(double x_c, double x_s);

}  // namespace qshannon
