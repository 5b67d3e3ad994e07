#include "qshannon/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qshannon/linalg.hpp"

namespace qshannon {

std::string_view to_string(CapacityKind kind) {
    switch (kind) {
        case CapacityKind::mutual_info: return "mutual_info";
        case CapacityKind::holevo_info: return "holevo_info";
        case CapacityKind::gaussian_holevo: return "gaussian_holevo";
        case CapacityKind::gaussian_shannon: return "gaussian_shannon";
    }
    return "mutual_info";
}

CapacityReport CapacityReport::from_nats(double nats, CapacityKind kind) {
    return {nats, nats / kLn2, kind};
}

CapacityReport mutual_information(const ChannelMatrix& ch) {
    validate_channel(ch);
    const RVector out = ch.p.transpose() * ch.input_priors;
    double info = 0.0;
    for (Eigen::Index i = 0; i < ch.p.rows(); ++i) {
        for (Eigen::Index j = 0; j < ch.p.cols(); ++j) {
            const double pji = ch.p(i, j);
            if (pji > 0.0) info += ch.input_priors[i] * pji * std::log(pji / out[j]);
        }
    }
    return CapacityReport::from_nats(std::max(0.0, info), CapacityKind::mutual_info);
}

CapacityReport holevo_information(const Constellation& c) {
    const RVector eta = gram_eigenvalues(gram(c, GramKind::modified));
    const std::vector<double> v(eta.data(), eta.data() + eta.size());
    return CapacityReport::from_nats(linalg::shannon_entropy_nats(v), CapacityKind::holevo_info);
}

double holevo_condition_residual(const Constellation& c, const Povm& p) {
    const ChannelMatrix ch = povm_channel(c, p);
    const CMatrix s = signal_coordinates(c);
    const auto m = static_cast<Eigen::Index>(c.size());
    const auto outcomes = static_cast<Eigen::Index>(p.size());
    const RVector out = ch.p.transpose() * ch.input_priors;

    std::vector<CMatrix> f(static_cast<std::size_t>(outcomes), CMatrix::Zero(m, m));
    for (Eigen::Index j = 0; j < outcomes; ++j) {
        if (!(out[j] > 0.0)) {
            throw NumericalError("outcome " + std::to_string(j) + " has zero probability; log undefined");
        }
        for (Eigen::Index i = 0; i < m; ++i) {
            const double pji = ch.p(i, j);
            if (pji <= 0.0) continue;  // 0 ln 0 = 0
            f[static_cast<std::size_t>(j)] +=
                c.prior(static_cast<std::size_t>(i)) * std::log(pji / out[j]) * s.col(i) * s.col(i).adjoint();
        }
    }

    const RVector norms = p.vectors.colwise().norm().transpose();
    double residual = 0.0;
    for (Eigen::Index j = 0; j < outcomes; ++j) {
        for (Eigen::Index i = 0; i < outcomes; ++i) {
            if (i == j) continue;
            const CMatrix diff = f[static_cast<std::size_t>(j)] - f[static_cast<std::size_t>(i)];
            const Complex core = p.vectors.col(j).dot(diff * p.vectors.col(i));
            residual = std::max(residual, std::abs(core) * norms[j] * norms[i]);
        }
    }
    return residual;
}

double g_entropy(double x) {
    if (!(x >= 0.0)) {
        throw InvalidArgument("g(x) needs x >= 0");
    }
    if (x == 0.0) return 0.0;
    // (x+1) ln(x+1) - x ln x == ln(1+x) + x ln(1 + 1/x), no large cancellation.
    return std::log1p(x) + x * std::log1p(1.0 / x);
}

namespace {
void require_photon_numbers(double ns, double nth) {
    if (!(ns >= 0.0) || !(nth >= 0.0) || !std::isfinite(ns) || !std::isfinite(nth)) {
        throw InvalidArgument("photon numbers must be finite and non-negative");
    }
}
}  // namespace

CapacityReport gaussian_capacity_holevo(double mean_photons, double noise_photons) {
    require_photon_numbers(mean_photons, noise_photons);
    const double c = g_entropy(mean_photons + noise_photons) - g_entropy(noise_photons);
    return CapacityReport::from_nats(std::max(0.0, c), CapacityKind::gaussian_holevo);
}

CapacityReport gaussian_capacity_shannon(double mean_photons, double noise_photons) {
    require_photon_numbers(mean_photons, noise_photons);
    return CapacityReport::from_nats(std::log1p(mean_photons / (1.0 + noise_photons)),
                                     CapacityKind::gaussian_shannon);
}

double quantum_advantage_gap(double mean_photons, double noise_photons) {
    return gaussian_capacity_holevo(mean_photons, noise_photons).value_nats -
           gaussian_capacity_shannon(mean_photons, noise_photons).value_nats;
}

}  // namespace qshannon
