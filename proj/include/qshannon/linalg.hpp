#pragma once

#include <span>

#include "qshannon/common.hpp"

namespace qshannon::linalg {

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.
struct HermitianEigen {
    RVector values;
    CMatrix vectors;  // column k belongs to values[k]
};

/// Largest |A - A^H| entry.
double hermiticity_defect(const CMatrix& a);

/// Throws InvalidArgument if `a` is not square and Hermitian to `tol` (relative to its scale).
void require_hermitian(const CMatrix& a, double tol = 1e-12);

HermitianEigen eigh(const CMatrix& a);

/// Eigenvalues in descending order.
RVector eigvalsh(const CMatrix& a);

/// Principal square root of a PSD matrix; eigenvalues below `floor` are treated as zero.
CMatrix psd_sqrt(const CMatrix& a, double floor = 0.0);

/// Moore-Penrose inverse square root on the range of a PSD matrix.
/// Eigenvalues at or below `rank_tol * max eigenvalue` are treated as null space.
CMatrix psd_pinv_sqrt(const CMatrix& a, double rank_tol = 1e-12);

/// Orthogonal projector onto the eigenvectors whose eigenvalue exceeds `rank_tol * max`.
CMatrix range_projector(const CMatrix& a, double rank_tol = 1e-12);

/// -sum p ln p over strictly positive entries.
double shannon_entropy_nats(std::span<const double> p);

}  // namespace qshannon::linalg
