#include "qshannon/estimation.hpp"

#include <cmath>

namespace qshannon {

namespace {

void require_photons(double n, const char* what) {
    if (!(n >= 0.0) || !std::isfinite(n)) {
        throw InvalidArgument(std::string(what) + " must be finite and non-negative");
    }
}

void require_transmissivity(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw InvalidArgument("transmissivity must lie in [0, 1]");
    }
}

}  // namespace

SqueezeParams::SqueezeParams(double mu, double nu) : mu_(mu), nu_(nu) {
    if (!std::isfinite(mu) || !std::isfinite(nu) || mu < 1.0) {
        throw InvalidArgument("squeeze parameters need finite mu >= 1");
    }
    const double defect = (mu - nu) * (mu + nu) - 1.0;
    if (std::abs(defect) > 1e-12 * std::max(1.0, mu * mu)) {
        throw InvalidArgument("squeeze parameters violate mu^2 - nu^2 = 1");
    }
}

SqueezeParams SqueezeParams::from_squeeze(double r) { return {std::cosh(r), std::sinh(r)}; }

double crb_single_quadrature(double noise_photons) {
    require_photons(noise_photons, "noise photon number");
    return 0.5 * noise_photons + 0.25;
}

double yuen_lax_heterodyne_var(double noise_photons) {
    require_photons(noise_photons, "noise photon number");
    return noise_photons + 1.0;
}

std::pair<double, double> generalized_heterodyne_vars(const SqueezeParams& p) {
    const double plus = p.mu() + p.nu();
    const double minus = p.mu() - p.nu();
    return {0.25 + 0.25 * plus * plus, 0.25 + 0.25 * minus * minus};
}

EstimationReport squeezed_snr(double mean_photons, double epsilon) {
    require_photons(mean_photons, "signal photon number");
    require_transmissivity(epsilon);
    const double spread = 2.0 * mean_photons + 1.0;
    EstimationReport r;
    r.receiver = "squeezed";
    r.variance = 0.25 * epsilon / spread + 0.25 * (1.0 - epsilon);
    r.snr = 4.0 * epsilon * mean_photons * (mean_photons + 1.0) / (epsilon + (1.0 - epsilon) * spread);
    r.mu_s = (mean_photons + 1.0) / std::sqrt(spread);
    r.nu_s = mean_photons / std::sqrt(spread);
    return r;
}

EstimationReport coherent_snr(double mean_photons, double epsilon) {
    require_photons(mean_photons, "signal photon number");
    require_transmissivity(epsilon);
    EstimationReport r;
    r.receiver = "coherent";
    r.variance = 0.25;
    r.snr = 4.0 * epsilon * mean_photons;
    return r;
}

double snr_crossover(double mean_photons, double tol) {
    require_photons(mean_photons, "signal photon number");
    if (mean_photons == 0.0) {
        throw InvalidArgument("crossover is undefined at zero signal");
    }
    auto gap = [&](double eps) { return squeezed_snr(mean_photons, eps).snr - coherent_snr(mean_photons, eps).snr; };
    // gap < 0 on (0, x) and > 0 on (x, 1]
    double lo = 1e-300;
    double hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double heterodyne_snr(double mean_photons, double noise_photons) {
    require_photons(mean_photons, "signal photon number");
    return mean_photons / (0.5 * yuen_lax_heterodyne_var(noise_photons));
}

double dual_homodyne_snr(double mean_photons) {
    require_photons(mean_photons, "signal photon number");
    return (0.5 * mean_photons) / crb_single_quadrature(0.0);
}

double phase_readout(double x_c, double x_s) {
    if (!std::isfinite(x_c) || !std::isfinite(x_s)) {
        throw InvalidArgument("quadrature estimates must be finite");
    }
    return std::atan2(x_s, x_c);
}

}  // namespace qshannon
