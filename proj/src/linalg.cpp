#include "qshannon/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qshannon::linalg {

double hermiticity_defect(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) {
        throw InvalidArgument("matrix is not square");
    }
    const double scale = std::max(1.0, a.size() ? a.cwiseAbs().maxCoeff() : 0.0);
    const double defect = hermiticity_defect(a);
    if (defect > tol * scale) {
        throw InvalidArgument("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
}

HermitianEigen eigh(const CMatrix& a) {
    const CMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    const Eigen::Index n = sym.rows();
    // Eigen returns ascending order.
    HermitianEigen out{RVector(n), CMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = solver.eigenvalues()[n - 1 - k];
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

RVector eigvalsh(const CMatrix& a) {
    const CMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    RVector v = solver.eigenvalues().reverse();
    return v;
}

CMatrix psd_sqrt(const CMatrix& a, double floor) {
    const HermitianEigen e = eigh(a);
    RVector roots(e.values.size());
    for (Eigen::Index k = 0; k < roots.size(); ++k) {
        roots[k] = e.values[k] > floor ? std::sqrt(e.values[k]) : 0.0;
    }
    return e.vectors * roots.asDiagonal() * e.vectors.adjoint();
}

CMatrix psd_pinv_sqrt(const CMatrix& a, double rank_tol) {
    const HermitianEigen e = eigh(a);
    const double cut = rank_tol * std::max(0.0, e.values.size() ? e.values[0] : 0.0);
    RVector inv(e.values.size());
    for (Eigen::Index k = 0; k < inv.size(); ++k) {
        inv[k] = e.values[k] > cut ? 1.0 / std::sqrt(e.values[k]) : 0.0;
    }
    return e.vectors * inv.asDiagonal() * e.vectors.adjoint();
}

CMatrix range_projector(const CMatrix& a, double rank_tol) {
    const HermitianEigen e = eigh(a);
    const double cut = rank_tol * std::max(0.0, e.values.size() ? e.values[0] : 0.0);
    RVector mask(e.values.size());
    for (Eigen::Index k = 0; k < mask.size(); ++k) {
        mask[k] = e.values[k] > cut ? 1.0 : 0.0;
    }
    return e.vectors * mask.asDiagonal() * e.vectors.adjoint();
}

double shannon_entropy_nats(std::span<const double> p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) h -= x * std::log(x);
    }
    return h;
}

}  // namespace qshannon::linalg
