#include "qshannon/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qshannon/linalg.hpp"

namespace qshannon {

namespace {

CMatrix plain_gram(const Constellation& c) { return gram(c, GramKind::plain).entries; }

void require_matching(const Constellation& c, const Povm& p) {
    if (p.vectors.rows() != static_cast<Eigen::Index>(c.size())) {
        throw InvalidArgument("POVM vectors are not expressed in this constellation's signal coordinates");
    }
}

double completeness_defect(const CMatrix& mu, const CMatrix& signal_projector) {
    return (mu * mu.adjoint() - signal_projector).norm();
}

}  // namespace

CMatrix signal_coordinates(const Constellation& c) { return linalg::psd_sqrt(plain_gram(c)); }

void validate_channel(const ChannelMatrix& ch) {
    if (ch.input_priors.size() != ch.p.rows()) {
        throw InvalidArgument("channel prior vector does not match the number of inputs");
    }
    require_admissible_priors(
        std::vector<double>(ch.input_priors.data(), ch.input_priors.data() + ch.input_priors.size()),
        static_cast<std::size_t>(ch.p.rows()));
    for (Eigen::Index i = 0; i < ch.p.rows(); ++i) {
        if ((ch.p.row(i).array() < 0.0).any() || (ch.p.row(i).array() > 1.0).any()) {
            throw InvalidArgument("channel entries must lie in [0, 1]");
        }
        if (std::abs(ch.p.row(i).sum() - 1.0) > 1e-12) {
            throw InvalidArgument("channel row " + std::to_string(i) + " does not sum to one");
        }
    }
}

Povm complete_povm(const CMatrix& raw_vectors, const Constellation& c) {
    if (raw_vectors.rows() != static_cast<Eigen::Index>(c.size())) {
        throw InvalidArgument("raw POVM vectors have the wrong dimension");
    }
    const CMatrix t = raw_vectors * raw_vectors.adjoint();
    Povm p;
    p.vectors = linalg::psd_pinv_sqrt(t) * raw_vectors;
    p.completeness_defect = completeness_defect(p.vectors, linalg::range_projector(plain_gram(c)));
    return p;
}

Povm srm_povm(const Constellation& c) {
    if (c.fully_degenerate()) {
        throw InvalidArgument("square-root measurement is undefined for identical states");
    }
    const CMatrix g = plain_gram(c);
    const CMatrix s = linalg::psd_sqrt(g);
    Povm p;
    p.vectors = linalg::psd_pinv_sqrt(g) * s;
    p.completeness_defect = completeness_defect(p.vectors, linalg::range_projector(g));
    return p;
}

Povm helstrom_povm(const Constellation& c) {
    if (c.size() != 2) {
        throw InvalidArgument("Helstrom measurement needs exactly two states");
    }
    const CMatrix s = signal_coordinates(c);
    const CVector psi0 = s.col(0);
    const CVector psi1 = s.col(1);
    const CMatrix a = c.prior(0) * psi0 * psi0.adjoint() - c.prior(1) * psi1 * psi1.adjoint();
    const linalg::HermitianEigen e = linalg::eigh(a);
    // Descending order: column 0 spans the positive part (decide 0).
    Povm p;
    p.vectors = e.vectors;
    p.completeness_defect =
        completeness_defect(p.vectors, linalg::range_projector(plain_gram(c)));
    return p;
}

ChannelMatrix povm_channel(const Constellation& c, const Povm& p) {
    require_matching(c, p);
    const CMatrix s = signal_coordinates(c);
    const CMatrix amp = s.adjoint() * p.vectors;  // (i, j) = <psi_i|mu_j>
    ChannelMatrix ch;
    ch.p = amp.cwiseAbs2();
    for (Eigen::Index i = 0; i < ch.p.rows(); ++i) {
        const double row = ch.p.row(i).sum();
        if (row > 0.0) ch.p.row(i) /= row;
    }
    ch.input_priors = Eigen::Map<const RVector>(c.priors().data(), static_cast<Eigen::Index>(c.size()));
    return ch;
}

ChannelMatrix srm_channel(const Constellation& c) { return povm_channel(c, srm_povm(c)); }

double error_probability(const ChannelMatrix& ch) {
    double correct = 0.0;
    const Eigen::Index n = std::min(ch.p.rows(), ch.p.cols());
    for (Eigen::Index i = 0; i < n; ++i) correct += ch.input_priors[i] * ch.p(i, i);
    return 1.0 - correct;
}

double helstrom_from_overlap(double overlap_sq, double xi0, double xi1) {
    const double x = 4.0 * xi0 * xi1 * overlap_sq;
    // (1 - sqrt(1 - x)) / 2 == x / (2 (1 + sqrt(1 - x)))
    return 0.5 * x / (1.0 + std::sqrt(std::max(0.0, 1.0 - x)));
}

double helstrom_binary(const Constellation& c) {
    if (c.size() != 2) {
        throw InvalidArgument("Helstrom bound is defined for binary constellations only");
    }
    const double k2 = std::norm(coherent_inner(c.amplitude(0), c.amplitude(1)));
    return helstrom_from_overlap(k2, c.prior(0), c.prior(1));
}

RVector psk_gram_spectrum(const Constellation& c) {
    if (!is_psk(c)) {
        throw InvalidArgument("constellation is not phase-shift keyed");
    }
    const auto m = static_cast<Eigen::Index>(c.size());
    CVector first_row(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        first_row[k] = coherent_inner(c.amplitude(0), c.amplitude(static_cast<std::size_t>(k)));
    }
    RVector lambda(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        Complex sum = 0.0;
        for (Eigen::Index k = 0; k < m; ++k) {
            const auto idx = static_cast<double>((k * j) % m);
            sum += first_row[k] * std::polar(1.0, -2.0 * kPi * idx / static_cast<double>(m));
        }
        double v = sum.real();
        if (v < -1e-10) {
            throw NumericalError("PSK Gram spectrum has a negative eigenvalue");
        }
        lambda[j] = std::max(0.0, v);
    }
    return lambda;
}

double covariant_optimal_pe(const Constellation& c) {
    if (!c.uniform_priors()) {
        throw InvalidArgument("covariant optimum requires uniform priors");
    }
    const RVector lambda = psk_gram_spectrum(c);
    const double m = static_cast<double>(c.size());
    const double root_sum = lambda.cwiseSqrt().sum();
    return std::max(0.0, 1.0 - root_sum * root_sum / (m * m));
}

RVector psk_srm_channel_row(std::size_t n_states, double mean_photons) {
    if (n_states < 2) {
        throw InvalidArgument("PSK needs at least two states");
    }
    if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
        throw InvalidArgument("mean photon number must be finite and non-negative");
    }
    const auto n = static_cast<Eigen::Index>(n_states);
    RVector lambda = RVector::Zero(n);
    if (mean_photons == 0.0) {
        lambda[0] = static_cast<double>(n);
    } else {
        const double ln_ns = std::log(mean_photons);
        const auto n_hi = static_cast<long>(std::ceil(mean_photons + 40.0 * std::sqrt(mean_photons) + 60.0));
        for (long k = 0; k <= n_hi; ++k) {
            const double log_p = -mean_photons + static_cast<double>(k) * ln_ns -
                                 std::lgamma(static_cast<double>(k) + 1.0);
            lambda[k % n] += std::exp(log_p);
        }
        lambda *= static_cast<double>(n);
    }

    CVector twiddle(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        twiddle[j] = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n));
    }
    const RVector roots = lambda.cwiseSqrt();
    RVector row(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex s = 0.0;
        for (Eigen::Index m = 0; m < n; ++m) {
            if (roots[m] != 0.0) s += roots[m] * twiddle[(m * k) % n];
        }
        row[k] = std::norm(s / static_cast<double>(n));
    }
    row /= row.sum();
    return row;
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double homodyne_bpsk_pe(double mean_photons) {
    if (!(mean_photons >= 0.0)) {
        throw InvalidArgument("mean photon number must be non-negative");
    }
    return gaussian_q(2.0 * std::sqrt(mean_photons));
}

double homodyne_binary_pe(double mean_photons, double xi0, double xi1) {
    require_admissible_priors({xi0, xi1}, 2);
    if (!(mean_photons >= 0.0)) {
        throw InvalidArgument("mean photon number must be non-negative");
    }
    const double a = std::sqrt(mean_photons);
    if (a == 0.0) return std::min(xi0, xi1);
    constexpr double sigma = 0.5;
    // Decide +a when x exceeds the likelihood-ratio threshold t.
    const double t = std::log(xi1 / xi0) / (8.0 * a);
    return xi0 * gaussian_q((a - t) / sigma) + xi1 * gaussian_q((t + a) / sigma);
}

namespace {

OptimalityReport bayes_report(const Constellation& c, const Povm& p) {
    require_matching(c, p);
    if (p.size() != c.size()) {
        throw InvalidArgument("Bayes conditions need one POVM element per state");
    }
    const CMatrix s = signal_coordinates(c);
    const auto m = static_cast<Eigen::Index>(c.size());
    const CMatrix overlaps = s.adjoint() * p.vectors;  // (i, l) = <psi_i|mu_l>
    const RVector norms = p.vectors.colwise().norm().transpose();

    OptimalityReport r;
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
            if (a == b) continue;
            // <mu_a| xi_a rho_a - xi_b rho_b |mu_b>
            const Complex core = c.prior(a) * std::conj(overlaps(a, a)) * overlaps(a, b) -
                                 c.prior(b) * std::conj(overlaps(b, a)) * overlaps(b, b);
            r.pairwise_residual = std::max(r.pairwise_residual, std::abs(core) * norms[a] * norms[b]);
        }
    }

    CMatrix gamma = CMatrix::Zero(m, m);
    for (Eigen::Index l = 0; l < m; ++l) {
        gamma += c.prior(l) * s.col(l) * (s.col(l).adjoint() * p.vectors.col(l)) *
                 p.vectors.col(l).adjoint();
    }
    r.hermiticity_defect = linalg::hermiticity_defect(gamma);
    const CMatrix gamma_h = 0.5 * (gamma + gamma.adjoint());
    r.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (Eigen::Index l = 0; l < m; ++l) {
        const CMatrix diff = gamma_h - c.prior(l) * s.col(l) * s.col(l).adjoint();
        r.min_eigenvalue = std::min(r.min_eigenvalue, linalg::eigvalsh(diff).minCoeff());
    }
    r.optimal = r.pairwise_residual < kOptimalityResidualTol &&
                r.hermiticity_defect < kOptimalityResidualTol &&
                r.min_eigenvalue > kOptimalityEigenFloor;
    return r;
}

}  // namespace

OptimalityReport check_bayes_optimality(const Constellation& c, const Povm& p) {
    return bayes_report(c, p);
}

OptimalityReport check_minimax(const Constellation& c, const Povm& p) {
    OptimalityReport r = bayes_report(c, p);
    const ChannelMatrix ch = povm_channel(c, p);
    const RVector diag = ch.p.diagonal();
    r.conditional_spread = diag.maxCoeff() - diag.minCoeff();
    r.optimal = r.optimal && r.conditional_spread < kOptimalityResidualTol;
    return r;
}

}  // namespace qshannon
