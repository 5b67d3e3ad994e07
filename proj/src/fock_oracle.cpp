#include "qshannon/fock_oracle.hpp"

#include <cmath>
#include <string>

#include "qshannon/linalg.hpp"

namespace qshannon::fock {

int auto_truncation(double mean_photons) {
    return static_cast<int>(std::ceil(mean_photons + 10.0 * std::sqrt(mean_photons) + 20.0));
}

FockVector coherent_fock(const Amplitude& a, std::optional<int> n_max) {
    const double n_bar = a.mean_photons();
    if (n_bar > kMaxMeanPhotons) {
        throw InvalidArgument("Fock oracle is limited to |alpha|^2 <= 100 (got " +
                              std::to_string(n_bar) + ")");
    }
    const int n = n_max.value_or(auto_truncation(n_bar));
    if (n < 0) {
        throw InvalidArgument("truncation must be non-negative");
    }
    FockVector v{CVector(n + 1), n};
    const Complex z = a.value();
    v.coefficients[0] = std::exp(-0.5 * n_bar);
    for (int k = 1; k <= n; ++k) {
        v.coefficients[k] = v.coefficients[k - 1] * z / std::sqrt(static_cast<double>(k));
    }
    const double tail = 1.0 - v.coefficients.squaredNorm();
    if (tail > 1e-12) {
        throw InvalidArgument("truncation n_max=" + std::to_string(n) + " leaves tail " +
                              std::to_string(tail) + " > 1e-12");
    }
    return v;
}

FockVector phase_shift(const FockVector& v, double theta) {
    FockVector out = v;
    for (int k = 0; k <= v.n_max; ++k) {
        out.coefficients[k] *= std::polar(1.0, theta * static_cast<double>(k));
    }
    return out;
}

std::pair<FockVector, FockVector> match_truncation(const FockVector& x, const FockVector& y) {
    const int n = std::max(x.n_max, y.n_max);
    auto grow = [n](const FockVector& v) {
        FockVector out{CVector::Zero(n + 1), n};
        out.coefficients.head(v.n_max + 1) = v.coefficients;
        return out;
    };
    return {grow(x), grow(y)};
}

Complex inner(const FockVector& x, const FockVector& y) {
    const int n = std::min(x.n_max, y.n_max);
    // Components beyond the shorter truncation multiply zeros.
    return x.coefficients.head(n + 1).dot(y.coefficients.head(n + 1));
}

CMatrix density_matrix(const std::vector<std::pair<double, FockVector>>& mix) {
    int n = 0;
    for (const auto& [w, v] : mix) n = std::max(n, v.n_max);
    CMatrix rho = CMatrix::Zero(n + 1, n + 1);
    for (const auto& [w, v] : mix) {
        CVector full = CVector::Zero(n + 1);
        full.head(v.n_max + 1) = v.coefficients;
        rho.noalias() += w * full * full.adjoint();
    }
    return rho;
}

double helstrom_binary_oracle(const FockVector& s0, const FockVector& s1, double xi0, double xi1) {
    const CMatrix delta = density_matrix({{xi1, s1}, {-xi0, s0}});
    const RVector eig = linalg::eigvalsh(delta);
    return 0.5 * (xi0 + xi1 - eig.cwiseAbs().sum());
}

double von_neumann_entropy_oracle(const std::vector<std::pair<double, FockVector>>& mix) {
    const RVector eig = linalg::eigvalsh(density_matrix(mix));
    double s = 0.0;
    for (Eigen::Index k = 0; k < eig.size(); ++k) {
        if (eig[k] > 1e-300) s -= eig[k] * std::log(eig[k]);
    }
    return s;
}

Complex two_mode_overlap(const ProductPair& x, const ProductPair& y) {
    return inner(x.a, y.a) * inner(x.b, y.b);
}

Complex two_mode_overlap(const TwoModeState& x, const TwoModeState& y) {
    Complex total = 0.0;
    for (const auto& [cx, px] : x.terms) {
        for (const auto& [cy, py] : y.terms) {
            total += std::conj(cx) * cy * two_mode_overlap(px, py);
        }
    }
    return total;
}

TwoModeState quasi_bell_state(const Amplitude& alpha, int index, double theta_b,
                              std::optional<int> n_max) {
    if (index < 1 || index > 4) {
        throw InvalidArgument("quasi-Bell index must be 1..4");
    }
    const Amplitude minus(-alpha.value());
    const FockVector plus_v = coherent_fock(alpha, n_max);
    const FockVector minus_v = coherent_fock(minus, n_max);
    const double sign = (index % 2 == 1) ? 1.0 : -1.0;
    const bool same = index <= 2;

    TwoModeState s;
    const FockVector& b_first = same ? plus_v : minus_v;
    const FockVector& b_second = same ? minus_v : plus_v;
    s.terms.push_back({1.0, {plus_v, phase_shift(b_first, theta_b)}});
    s.terms.push_back({sign, {minus_v, phase_shift(b_second, theta_b)}});

    // Normalize from the Fock representation itself, not from the closed-form h_i.
    TwoModeState unshifted;
    unshifted.terms.push_back({1.0, {plus_v, b_first}});
    unshifted.terms.push_back({sign, {minus_v, b_second}});
    const double norm = std::sqrt(two_mode_overlap(unshifted, unshifted).real());
    for (auto& term : s.terms) term.first /= norm;
    return s;
}

}  // namespace qshannon::fock
