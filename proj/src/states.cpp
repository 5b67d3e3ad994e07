#include "qshannon/states.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qshannon/linalg.hpp"

namespace qshannon {

Amplitude::Amplitude(double re, double im) : re_(re), im_(im) {
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw InvalidArgument("amplitude components must be finite");
    }
}

Amplitude Amplitude::from_polar(double mean_photons, double phase) {
    if (!(mean_photons >= 0.0)) {
        throw InvalidArgument("mean photon number must be non-negative");
    }
    const Complex z = std::polar(std::sqrt(mean_photons), phase);
    return Amplitude(z);
}

double Amplitude::phase() const { return std::atan2(im_, re_); }

void require_admissible_priors(const std::vector<double>& priors, std::size_t expected_size) {
    if (priors.size() != expected_size) {
        throw InvalidArgument("prior vector has length " + std::to_string(priors.size()) +
                              ", expected " + std::to_string(expected_size));
    }
    double sum = 0.0;
    for (double p : priors) {
        if (!std::isfinite(p) || !(p > 0.0)) {
            throw InvalidArgument("priors must be strictly positive");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw InvalidArgument("priors must sum to one (got " + std::to_string(sum) + ")");
    }
}

Constellation::Constellation(std::vector<Amplitude> amplitudes, std::vector<double> priors)
    : amplitudes_(std::move(amplitudes)), priors_(std::move(priors)) {
    const std::size_t m = amplitudes_.size();
    if (m < 2) {
        throw InvalidArgument("a constellation needs at least two states");
    }
    if (priors_.empty()) {
        priors_.assign(m, 1.0 / static_cast<double>(m));
    }
    require_admissible_priors(priors_, m);

    fully_degenerate_ = true;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const bool same = std::abs(amplitudes_[i].value() - amplitudes_[j].value()) <= 1e-12;
            degenerate_ = degenerate_ || same;
            if (i == 0) fully_degenerate_ = fully_degenerate_ && same;
        }
    }
}

bool Constellation::uniform_priors(double tol) const {
    const double u = 1.0 / static_cast<double>(size());
    for (double p : priors_) {
        if (std::abs(p - u) > tol) return false;
    }
    return true;
}

Constellation Constellation::with_priors(std::vector<double> priors) const {
    return Constellation(amplitudes_, std::move(priors));
}

std::string_view to_string(GramKind kind) {
    switch (kind) {
        case GramKind::plain: return "plain";
        case GramKind::modified: return "modified";
        case GramKind::modulus: return "modulus";
        case GramKind::modulus_squared: return "modulus_squared";
    }
    return "plain";
}

GramKind gram_kind_from_string(std::string_view name) {
    if (name == "plain") return GramKind::plain;
    if (name == "modified") return GramKind::modified;
    if (name == "modulus") return GramKind::modulus;
    if (name == "modulus_squared") return GramKind::modulus_squared;
    throw InvalidArgument("unknown Gram kind '" + std::string(name) + "'");
}

Complex coherent_inner(const Amplitude& a, const Amplitude& b) {
    const Complex za = a.value();
    const Complex zb = b.value();
    return std::exp(-0.5 * std::norm(za) - 0.5 * std::norm(zb) + std::conj(za) * zb);
}

Constellation psk_constellation(std::size_t m, double mean_photons, std::vector<double> priors) {
    if (m < 2) {
        throw InvalidArgument("PSK needs M >= 2");
    }
    if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
        throw InvalidArgument("mean photon number must be finite and non-negative");
    }
    std::vector<Amplitude> amps;
    amps.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        amps.push_back(Amplitude::from_polar(mean_photons, 2.0 * kPi * static_cast<double>(k) /
                                                               static_cast<double>(m)));
    }
    return Constellation(std::move(amps), std::move(priors));
}

bool is_psk(const Constellation& c, double tol) {
    const std::size_t m = c.size();
    const Complex a0 = c.amplitude(0).value();
    const double scale = 1.0 + std::abs(a0);
    for (std::size_t k = 1; k < m; ++k) {
        const Complex expected =
            a0 * std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m));
        if (std::abs(c.amplitude(k).value() - expected) > tol * scale) return false;
    }
    return true;
}

GramMatrix gram(const Constellation& c, GramKind kind) {
    const auto m = static_cast<Eigen::Index>(c.size());
    CMatrix g(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        g(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < m; ++j) {
            g(i, j) = coherent_inner(c.amplitude(i), c.amplitude(j));
            g(j, i) = std::conj(g(i, j));
        }
    }
    switch (kind) {
        case GramKind::plain:
            break;
        case GramKind::modified:
            for (Eigen::Index i = 0; i < m; ++i) {
                for (Eigen::Index j = 0; j < m; ++j) {
                    g(i, j) *= std::sqrt(c.prior(i) * c.prior(j));
                }
            }
            break;
        case GramKind::modulus:
            g = g.cwiseAbs().cast<Complex>();
            break;
        case GramKind::modulus_squared:
            g = g.cwiseAbs2().cast<Complex>();
            break;
    }
    return {std::move(g), kind};
}

RVector gram_eigenvalues(const GramMatrix& g) {
    linalg::require_hermitian(g.entries);
    RVector v = linalg::eigvalsh(g.entries);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (v[k] < -1e-10) {
            throw NumericalError("Gram matrix has eigenvalue " + std::to_string(v[k]) +
                                 " below the -1e-10 floor");
        }
        if (v[k] < 0.0) v[k] = 0.0;
    }
    return v;
}

double QuasiBellPair::overlap_13() const { return 2.0 * kappa / (1.0 + kappa * kappa); }

RMatrix QuasiBellPair::gram() const {
    RMatrix g = RMatrix::Identity(4, 4);
    g(0, 2) = g(2, 0) = overlap_13();
    return g;
}

QuasiBellPair quasi_bell(const Amplitude& alpha) {
    if (alpha.mean_photons() <= 0.0) {
        throw InvalidArgument("quasi-Bell states need alpha != 0 (h2 is singular at kappa = 1)");
    }
    QuasiBellPair q;
    q.alpha = alpha;
    q.kappa = std::exp(-2.0 * alpha.mean_photons());
    const double k2 = q.kappa * q.kappa;
    const double h_even = 1.0 / std::sqrt(2.0 * (1.0 + k2));
    // 1 - kappa^2 via expm1 keeps h2 accurate when |alpha| is tiny.
    const double h_odd = 1.0 / std::sqrt(-2.0 * std::expm1(-4.0 * alpha.mean_photons()));
    q.normalizers = {h_even, h_odd, h_even, h_odd};
    return q;
}

}  // namespace qshannon
