#pragma once

#include <functional>

#include "qshannon/common.hpp"

namespace qshannon::optimize {

struct ScalarMax {
    double argmax = 0.0;
    double value = 0.0;
};

/// Maximizes a unimodal function on [lo, hi] by golden-section search. Both
/// endpoints are also evaluated, so boundary maxima are returned exactly.
ScalarMax golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                  double tol = 1e-10);

/// Euclidean projection onto the probability simplex.
RVector project_to_simplex(const RVector& v);

struct SimplexQpResult {
    RVector x;
    double value = 0.0;
    int iterations = 0;
};

/// min x^T Q x subject to sum x = 1, x >= 0, for symmetric positive semidefinite Q.
/// Primal active-set method; each subproblem is an equality-constrained KKT solve
/// done with a rank-revealing factorization, so singular Q is handled.
SimplexQpResult minimize_quadratic_on_simplex(const RMatrix& q, double tol = 1e-12);

}  // namespace qshannon::optimize
