#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qshannon/common.hpp"
#include "qshannon/detection.hpp"
#include "qshannon/states.hpp"

namespace qshannon {

enum class ExponentKind { quantum, semi };

struct ExponentCurve {
    std::vector<double> rate_grid;  // nats per symbol
    std::vector<double> exponent;
    ExponentKind kind = ExponentKind::quantum;
};

/// Cutoff rates and the prior that attains R_Q.
struct CutoffReport {
    double r_q = 0.0;                  // -ln min_xi xi^T Gamma xi, Gamma_ij = |<psi_i|psi_j>|^2
    double r_semi_upper = 0.0;         // same with G_ij = |<psi_i|psi_j>|
    std::vector<double> optimal_priors;
    double r_q_uniform = 0.0;          // uniform-prior value -ln(sum_ij Gamma_ij / M^2)
    bool closed_form_interior = false; // Gamma^{-1} 1 / (1^T Gamma^{-1} 1) exists and is > 0
    std::vector<double> closed_form_priors;
    double r_q_closed_form = 0.0;      // ln(1^T Gamma^{-1} 1), meaningful when interior
};

/// mu_Q(rho_xi, s) = -ln sum_j lambda_j^{1+s}, lambda = modified Gram spectrum.
double mu_q(const Constellation& c, double s);

/// d mu_Q / ds = -sum lambda^{1+s} ln lambda / sum lambda^{1+s}
double mu_q_derivative(const Constellation& c, double s);

enum class PriorMode {
    given,     // use the constellation's priors (uniform is optimal for covariant sets)
    optimize,  // projected-gradient search over the simplex
};

struct ExponentPoint {
    double value = 0.0;  // floored at 0
    double s_opt = 0.0;
    std::vector<double> priors;
};

ExponentPoint reliability_quantum_point(const Constellation& c, double rate,
                                        PriorMode mode = PriorMode::given);

/// max over s in [0,1] (and optionally priors) of mu_Q - s R, floored at 0.
double reliability_quantum(const Constellation& c, double rate, PriorMode mode = PriorMode::given);

/// Gallager exponent of a classical channel:
/// max_s [-s R - ln sum_j (sum_i xi_i P(j|i)^{1/(1+s)})^{1+s}], floored at 0.
double reliability_semi(const ChannelMatrix& ch, double rate);

/// Gallager E_0(s) of a classical channel (no rate term).
double gallager_e0(const ChannelMatrix& ch, double s);

/// `jobs == 1` evaluates serially; otherwise points are spread over OpenMP threads.
ExponentCurve quantum_curve(const Constellation& c, std::span<const double> rates, int jobs = 1,
                            PriorMode mode = PriorMode::given);
ExponentCurve semi_curve(const ChannelMatrix& ch, std::span<const double> rates, int jobs = 1);

CutoffReport cutoff_quantum(const Constellation& c);

/// Upper bound on the individual-measurement cutoff rate.
double cutoff_semi_upper(const Constellation& c);

/// Smallest n with 2 exp(-n E) <= target. Throws InvalidArgument when E <= 0
/// (the rate is not supported).
std::int64_t required_code_length(double exponent, double target_pe);

/// Same planner with the cutoff-rate exponent R_Q - R.
std::int64_t required_code_length(double r_q, double rate, double target_pe);

/// (sqrt(t + 1/2) + sqrt(t - 1/2))^2 / (2t), t >= 1/2.
double g_half(double t);

/// Cutoff rate of the coherent-state Gaussian channel with thermal parameter
/// lambda >= 1/2 at codeword energy Nsc.
double gaussian_cutoff(double codeword_energy, double lambda);

}  // namespace qshannon
