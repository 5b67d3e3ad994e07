#include "qshannon/reading.hpp"

#include <cmath>
#include <string>

#include "qshannon/detection.hpp"

namespace qshannon {

std::string_view to_string(ReadingSource s) { return s == ReadingSource::coherent ? "coherent" : "quasi_bell"; }

std::string_view to_string(ReadingReceiver r) { return r == ReadingReceiver::homodyne ? "homodyne" : "quantum"; }

ReadingSource reading_source_from_string(std::string_view name) {
    if (name == "coherent") return ReadingSource::coherent;
    if (name == "quasi_bell") return ReadingSource::quasi_bell;
    throw InvalidArgument("unknown reading source '" + std::string(name) + "'");
}

ReadingReceiver reading_receiver_from_string(std::string_view name) {
    if (name == "homodyne") return ReadingReceiver::homodyne;
    if (name == "quantum") return ReadingReceiver::quantum;
    throw InvalidArgument("unknown reading receiver '" + std::string(name) + "'");
}

void ReadingScenario::validate() const {
    if (!(theta >= 0.0 && theta < 2.0 * kPi)) {
        throw InvalidArgument("phase shift must lie in [0, 2 pi)");
    }
    require_admissible_priors({xi0, xi1}, 2);
}

double reading_overlap(const Amplitude& alpha, double theta) {
    if (alpha.mean_photons() <= 0.0) {
        throw InvalidArgument("reading overlap needs alpha != 0");
    }
    if (!std::isfinite(theta)) {
        throw InvalidArgument("phase shift must be finite");
    }
    const QuasiBellPair q = quasi_bell(alpha);
    const double h2 = q.normalizers[1];
    const Amplitude a = alpha;
    const Amplitude minus_a(-alpha.value());
    const Amplitude a_rot(alpha.value() * std::polar(1.0, theta));
    const Amplitude minus_a_rot(-alpha.value() * std::polar(1.0, theta));
    // h2^2 [<a|a><a|a'> - <a|-a><a|-a'> - <-a|a><-a|a'> + <-a|-a><-a|-a'>], a' = a e^{i theta}
    const Complex sum = coherent_inner(a, a) * coherent_inner(a, a_rot) -
                        coherent_inner(a, minus_a) * coherent_inner(a, minus_a_rot) -
                        coherent_inner(minus_a, a) * coherent_inner(minus_a, a_rot) +
                        coherent_inner(minus_a, minus_a) * coherent_inner(minus_a, minus_a_rot);
    return h2 * h2 * std::abs(sum);
}

double entanglement_of_formation(int pair_index, double kappa) {
    if (pair_index < 1 || pair_index > 4) {
        throw InvalidArgument("quasi-Bell index must be 1..4");
    }
    if (!(kappa >= 0.0 && kappa < 1.0)) {
        throw InvalidArgument("overlap kappa must lie in [0, 1)");
    }
    if (pair_index == 2 || pair_index == 4) return 1.0;
    const double c = 2.0 * kappa / (1.0 + kappa * kappa);
    const double p = 0.5 * (1.0 + c);
    const double q = 0.5 * (1.0 - c);
    double e = 0.0;
    if (p > 0.0) e -= p * std::log2(p);
    if (q > 0.0) e -= q * std::log2(q);
    return e;
}

double reading_error(const ReadingScenario& s) {
    s.validate();
    if (std::abs(s.theta - kPi) > 1e-12) {
        throw InvalidArgument("reading error formulas hold for the pi phase shift only");
    }
    const double n = s.alpha.mean_photons();
    if (s.source == ReadingSource::coherent) {
        if (s.receiver == ReadingReceiver::homodyne) return homodyne_binary_pe(n, s.xi0, s.xi1);
        return helstrom_from_overlap(std::exp(-4.0 * n), s.xi0, s.xi1);
    }
    if (s.receiver == ReadingReceiver::quantum) {
        if (n <= 0.0) {
            throw InvalidArgument("quasi-Bell source needs alpha != 0");
        }
        return 0.0;
    }
    throw InvalidArgument("no error formula for a quasi-Bell source with a homodyne receiver");
}

}  // namespace qshannon
