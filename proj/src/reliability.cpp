#include "qshannon/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qshannon/capacity.hpp"
#include "qshannon/linalg.hpp"
#include "qshannon/optimize.hpp"
#include "qshannon/sweep.hpp"

namespace qshannon {

namespace {

double power_sum(const RVector& lambda, double exponent) {
    double total = 0.0;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda[k] > 0.0) total += std::pow(lambda[k], exponent);
    }
    return total;
}

double mu_from_spectrum(const RVector& lambda, double s) { return -std::log(power_sum(lambda, 1.0 + s)); }

void require_s(double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw InvalidArgument("s must lie in [0, 1]");
    }
}

void require_rate(double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
        throw InvalidArgument("rate must be finite and non-negative");
    }
}

/// Spectrum of rho_xi = sum_j xi_j |psi_j><psi_j| in signal coordinates.
linalg::HermitianEigen mixture_eigen(const CMatrix& coords, const RVector& xi) {
    const CMatrix rho = coords * xi.cast<Complex>().asDiagonal() * coords.adjoint();
    linalg::HermitianEigen e = linalg::eigh(rho);
    e.values = e.values.cwiseMax(0.0);
    return e;
}

/// Slope at s = 0 of a concave exponent: the objective has no positive maximum
/// once the rate reaches it.
bool beyond_slope(double rate, double slope) { return rate >= slope * (1.0 - 1e-13); }

/// max_s mu(s) - mu(0) - s R; mu(0) vanishes up to rounding.
optimize::ScalarMax best_s(const RVector& lambda, double rate) {
    if (beyond_slope(rate, linalg::shannon_entropy_nats(std::span<const double>(lambda.data(), lambda.size())))) {
        return {0.0, 0.0};
    }
    const double mu0 = mu_from_spectrum(lambda, 0.0);
    return optimize::golden_section_maximize(
        [&](double s) { return mu_from_spectrum(lambda, s) - mu0 - s * rate; }, 0.0, 1.0, 1e-10);
}

}  // namespace

double mu_q(const Constellation& c, double s) {
    require_s(s);
    return mu_from_spectrum(gram_eigenvalues(gram(c, GramKind::modified)), s);
}

double mu_q_derivative(const Constellation& c, double s) {
    require_s(s);
    const RVector lambda = gram_eigenvalues(gram(c, GramKind::modified));
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda[k] <= 0.0) continue;
        const double w = std::pow(lambda[k], 1.0 + s);
        num -= w * std::log(lambda[k]);
        den += w;
    }
    return num / den;
}

ExponentPoint reliability_quantum_point(const Constellation& c, double rate, PriorMode mode) {
    require_rate(rate);
    ExponentPoint pt;
    pt.priors = c.priors();
    const RVector lambda = gram_eigenvalues(gram(c, GramKind::modified));
    optimize::ScalarMax best = best_s(lambda, rate);

    if (mode == PriorMode::optimize) {
        const CMatrix coords = signal_coordinates(c);
        RVector xi = Eigen::Map<const RVector>(c.priors().data(), static_cast<Eigen::Index>(c.size()));
        auto objective = [&](const RVector& v) { return best_s(mixture_eigen(coords, v).values, rate); };
        for (int iter = 0; iter < 500; ++iter) {
            const linalg::HermitianEigen e = mixture_eigen(coords, xi);
            const double s = best.argmax;
            CVector powered(e.values.size());
            for (Eigen::Index k = 0; k < e.values.size(); ++k) {
                powered[k] = e.values[k] > 0.0 ? std::pow(e.values[k], s) : 0.0;
            }
            const CMatrix rho_s = e.vectors * powered.asDiagonal() * e.vectors.adjoint();
            const double trace = power_sum(e.values, 1.0 + s);
            RVector grad(xi.size());
            for (Eigen::Index j = 0; j < xi.size(); ++j) {
                grad[j] = -(1.0 + s) * coords.col(j).dot(rho_s * coords.col(j)).real() / trace;
            }
            double step = 1.0;
            bool moved = false;
            while (step > 1e-12) {
                const RVector candidate = optimize::project_to_simplex(xi + step * grad);
                const optimize::ScalarMax trial = objective(candidate);
                if (trial.value > best.value + 1e-15) {
                    const double change = (candidate - xi).lpNorm<Eigen::Infinity>();
                    xi = candidate;
                    best = trial;
                    moved = change > 1e-10;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        pt.priors.assign(xi.data(), xi.data() + xi.size());
    }
    pt.s_opt = best.argmax;
    pt.value = std::max(0.0, best.value);
    return pt;
}

double reliability_quantum(const Constellation& c, double rate, PriorMode mode) {
    return reliability_quantum_point(c, rate, mode).value;
}

double gallager_e0(const ChannelMatrix& ch, double s) {
    require_s(s);
    const double inv = 1.0 / (1.0 + s);
    double total = 0.0;
    for (Eigen::Index j = 0; j < ch.p.cols(); ++j) {
        double inner = 0.0;
        for (Eigen::Index i = 0; i < ch.p.rows(); ++i) {
            const double pji = ch.p(i, j);
            if (pji > 0.0) inner += ch.input_priors[i] * std::pow(pji, inv);
        }
        if (inner > 0.0) total += std::pow(inner, 1.0 + s);
    }
    return -std::log(total);
}

double reliability_semi(const ChannelMatrix& ch, double rate) {
    require_rate(rate);
    validate_channel(ch);
    if (beyond_slope(rate, mutual_information(ch).value_nats)) return 0.0;
    const double e0_zero = gallager_e0(ch, 0.0);
    const optimize::ScalarMax best = optimize::golden_section_maximize(
        [&](double s) { return gallager_e0(ch, s) - e0_zero - s * rate; }, 0.0, 1.0, 1e-10);
    return std::max(0.0, best.value);
}

ExponentCurve quantum_curve(const Constellation& c, std::span<const double> rates, int jobs,
                            PriorMode mode) {
    ExponentCurve curve;
    curve.kind = ExponentKind::quantum;
    curve.rate_grid.assign(rates.begin(), rates.end());
    curve.exponent = sweep::map(rates.size(), [&](std::size_t k) { return reliability_quantum(c, rates[k], mode); },
                                jobs);
    return curve;
}

ExponentCurve semi_curve(const ChannelMatrix& ch, std::span<const double> rates, int jobs) {
    ExponentCurve curve;
    curve.kind = ExponentKind::semi;
    curve.rate_grid.assign(rates.begin(), rates.end());
    curve.exponent =
        sweep::map(rates.size(), [&](std::size_t k) { return reliability_semi(ch, rates[k]); }, jobs);
    return curve;
}

namespace {

double neg_log_or_inf(double x) {
    return x > 0.0 ? -std::log(x) : std::numeric_limits<double>::infinity();
}

}  // namespace

CutoffReport cutoff_quantum(const Constellation& c) {
    const RMatrix gamma = gram(c, GramKind::modulus_squared).entries.real();
    const auto m = static_cast<double>(c.size());

    CutoffReport r;
    const optimize::SimplexQpResult qp = optimize::minimize_quadratic_on_simplex(gamma);
    r.r_q = neg_log_or_inf(qp.value);
    r.optimal_priors.assign(qp.x.data(), qp.x.data() + qp.x.size());
    r.r_q_uniform = neg_log_or_inf(gamma.sum() / (m * m));

    const Eigen::SelfAdjointEigenSolver<RMatrix> es(gamma, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo > 1e-12 * hi) {
        const RVector y = gamma.ldlt().solve(RVector::Ones(gamma.rows()));
        const double total = y.sum();
        const RVector xi = y / total;
        r.closed_form_priors.assign(xi.data(), xi.data() + xi.size());
        r.closed_form_interior = total > 0.0 && (xi.array() > 0.0).all();
        r.r_q_closed_form = std::log(total);
    }
    r.r_semi_upper = cutoff_semi_upper(c);
    return r;
}

double cutoff_semi_upper(const Constellation& c) {
    const RMatrix g = gram(c, GramKind::modulus).entries.real();
    return neg_log_or_inf(optimize::minimize_quadratic_on_simplex(g).value);
}

std::int64_t required_code_length(double exponent, double target_pe) {
    if (!(target_pe > 0.0 && target_pe < 1.0)) {
        throw InvalidArgument("target error probability must lie in (0, 1)");
    }
    if (!(exponent > 0.0)) {
        throw InvalidArgument("rate not supported: error exponent is not positive");
    }
    const double n = std::ceil(std::log(2.0 / target_pe) / exponent);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

std::int64_t required_code_length(double r_q, double rate, double target_pe) {
    return required_code_length(r_q - rate, target_pe);
}

double g_half(double t) {
    if (!(t >= 0.5)) {
        throw InvalidArgument("lambda must be >= 1/2");
    }
    const double root_sum = std::sqrt(t + 0.5) + std::sqrt(t - 0.5);
    // (a + b)/(a - b) with a^2 - b^2 = 1 equals (a + b)^2.
    return root_sum * root_sum / (2.0 * t);
}

double gaussian_cutoff(double codeword_energy, double lambda) {
    if (!(codeword_energy >= 0.0) || !std::isfinite(codeword_energy)) {
        throw InvalidArgument("codeword energy must be finite and non-negative");
    }
    if (!(lambda >= 0.5)) {
        throw InvalidArgument("lambda must be >= 1/2 (unphysical thermal parameter)");
    }
    const double g = lambda * g_half(lambda);
    const double x = codeword_energy / g;
    const double root = std::sqrt(x * x + 1.0);
    const double d = 0.5 * (1.0 + root);
    // 1 - D(x) = -x^2 / (2 (1 + sqrt(x^2 + 1)))
    const double one_minus_d = -x * x / (2.0 * (1.0 + root));
    return 2.0 * (0.5 * x + one_minus_d) + std::log(d);
}

}  // namespace qshannon
