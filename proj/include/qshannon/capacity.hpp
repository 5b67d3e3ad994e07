#pragma once

#include <string_view>

#include "qshannon/common.hpp"
#include "qshannon/detection.hpp"
#include "qshannon/states.hpp"

namespace qshannon {

enum class CapacityKind { mutual_info, holevo_info, gaussian_holevo, gaussian_shannon };

std::string_view to_string(CapacityKind kind);

/// Information quantity; nats is canonical, bits is derived.
struct CapacityReport {
    double value_nats = 0.0;
    double value_bits = 0.0;
    CapacityKind kind = CapacityKind::mutual_info;

    static CapacityReport from_nats(double nats, CapacityKind kind);
};

/// sum_ij xi_i P(j|i) ln[P(j|i) / sum_k xi_k P(j|k)], with 0 ln 0 = 0.
CapacityReport mutual_information(const ChannelMatrix& ch);

/// S(rho_T) for a pure-state constellation: entropy of the modified Gram spectrum.
CapacityReport holevo_information(const Constellation& c);

/// max_{i,j} ||Pi_j (F_j - F_i) Pi_i|| with F_j = sum_i xi_i rho_i ln[P(j|i)/P(j)].
/// A small value is necessary, not sufficient, for the POVM to maximize mutual information.
double holevo_condition_residual(const Constellation& c, const Povm& p);

/// g(x) = (x+1) ln(x+1) - x ln x, g(0) = 0.
double g_entropy(double x);

/// g(Ns + Nth) - g(Nth)
CapacityReport gaussian_capacity_holevo(double mean_photons, double noise_photons);

/// ln(1 + Ns / (1 + Nth)), the heterodyne-receiver capacity.
CapacityReport gaussian_capacity_shannon(double mean_photons, double noise_photons);

/// C_Holevo - C_Shannon in nats.
double quantum_advantage_gap(double mean_photons, double noise_photons);

}  // namespace qshannon
