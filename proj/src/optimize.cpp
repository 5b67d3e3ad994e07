#include "qshannon/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qshannon::optimize {

ScalarMax golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                  double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    ScalarMax best{0.5 * (a + b), f(0.5 * (a + b))};
    for (double x : {lo, hi}) {
        const double v = f(x);
        if (v > best.value) best = {x, v};
    }
    return best;
}

RVector project_to_simplex(const RVector& v) {
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumulative += u[k];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) theta = t;
    }
    return (v.array() - theta).cwiseMax(0.0).matrix();
}

SimplexQpResult minimize_quadratic_on_simplex(const RMatrix& q, double tol) {
    const Eigen::Index n = q.rows();
    if (n == 0 || q.cols() != n) {
        throw InvalidArgument("quadratic form must be a non-empty square matrix");
    }
    const RMatrix sym = 0.5 * (q + q.transpose());
    RVector x = RVector::Constant(n, 1.0 / static_cast<double>(n));
    std::vector<bool> at_bound(static_cast<std::size_t>(n), false);
    const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());

    SimplexQpResult result;
    const int max_iter = 50 * static_cast<int>(n) + 100;
    for (int iter = 0; iter < max_iter; ++iter) {
        result.iterations = iter + 1;
        std::vector<Eigen::Index> free;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!at_bound[static_cast<std::size_t>(i)]) free.push_back(i);
        }
        const auto nf = static_cast<Eigen::Index>(free.size());
        const RVector grad = 2.0 * sym * x;

        // [2 Q_FF  -1] [p_F]   [-g_F]
        // [ 1^T    0 ] [ nu] = [  0 ]
        RMatrix kkt = RMatrix::Zero(nf + 1, nf + 1);
        RVector rhs = RVector::Zero(nf + 1);
        for (Eigen::Index a = 0; a < nf; ++a) {
            for (Eigen::Index b = 0; b < nf; ++b) kkt(a, b) = 2.0 * sym(free[a], free[b]);
            kkt(a, nf) = -1.0;
            kkt(nf, a) = 1.0;
            rhs[a] = -grad[free[a]];
        }
        const RVector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
        const double nu = sol[nf];
        RVector step = RVector::Zero(n);
        for (Eigen::Index a = 0; a < nf; ++a) step[free[a]] = sol[a];

        if (step.lpNorm<Eigen::Infinity>() <= tol) {
            // Stationary on the face: check bound multipliers g_i - nu >= 0.
            Eigen::Index worst = -1;
            double worst_mult = -tol * scale;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (!at_bound[static_cast<std::size_t>(i)]) continue;
                const double mult = grad[i] - nu;
                if (mult < worst_mult) {
                    worst_mult = mult;
                    worst = i;
                }
            }
            if (worst < 0) break;
            at_bound[static_cast<std::size_t>(worst)] = false;
            continue;
        }

        double alpha = 1.0;
        Eigen::Index blocking = -1;
        for (Eigen::Index a = 0; a < nf; ++a) {
            const Eigen::Index i = free[a];
            if (step[i] < 0.0) {
                const double limit = -x[i] / step[i];
                if (limit < alpha) {
                    alpha = limit;
                    blocking = i;
                }
            }
        }
        x += alpha * step;
        if (blocking >= 0) {
            x[blocking] = 0.0;
            at_bound[static_cast<std::size_t>(blocking)] = true;
        }
        x = x.cwiseMax(0.0);
        x /= x.sum();
    }
    result.x = x;
    result.value = x.dot(sym * x);
    return result;
}

}  // namespace qshannon::optimize
