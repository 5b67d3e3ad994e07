#pragma once

// Quantum reading of a binary phase memory: bit 1 reflects the probe through
// U(theta) = exp(i theta a^dag a), bit 0 leaves it unchanged.

#include <string_view>

#include "qshannon/common.hpp"
#include "qshannon/states.hpp"

namespace qshannon {

enum class ReadingSource { coherent, quasi_bell };
enum class ReadingReceiver { homodyne, quantum };

std::string_view to_string(ReadingSource s);
std::string_view to_string(ReadingReceiver r);
ReadingSource reading_source_from_string(std::string_view name);
ReadingReceiver reading_receiver_from_string(std::string_view name);

struct ReadingScenario {
    Amplitude alpha;
    double theta = kPi;
    ReadingSource source = ReadingSource::coherent;
    ReadingReceiver receiver = ReadingReceiver::quantum;
    double xi0 = 0.5;
    double xi1 = 0.5;

    /// theta in [0, 2 pi), priors admissible.
    void validate() const;
};

/// |<Psi2| I (x) U(theta) |Psi2>| from the four product terms. Zero at theta = pi.
double reading_overlap(const Amplitude& alpha, double theta);

/// Entanglement of formation in ebits. Psi1 and Psi3 give the binary entropy of
/// (1 + C)/2 with C = 2 kappa / (1 + kappa^2); Psi2 and Psi4 give 1.
double entanglement_of_formation(int pair_index, double kappa);

/// Error probability for the pi-shift memory. Throws for other theta and for the
/// quasi-Bell source with a homodyne receiver.
double reading_error(const ReadingScenario& s);

}  // namespace qshannon
