#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "qshannon/common.hpp"

namespace qshannon {

/// Complex amplitude of a coherent state |alpha>. Mean photon number is |alpha|^2.
class Amplitude {
public:
    constexpr Amplitude() = default;
    Amplitude(double re, double im);
    explicit Amplitude(Complex z) : Amplitude(z.real(), z.imag()) {}

    /// sqrt(mean_photons) * exp(i phase)
    static Amplitude from_polar(double mean_photons, double phase);

    [[nodiscard]] Complex value() const { return {re_, im_}; }
    [[nodiscard]] double re() const { return re_; }
    [[nodiscard]] double im() const { return im_; }
    [[nodiscard]] double mean_photons() const { return re_ * re_ + im_ * im_; }
    [[nodiscard]] double phase() const;

    friend bool operator==(const Amplitude&, const Amplitude&) = default;

private:
    double re_ = 0.0;
    double im_ = 0.0;
};

/// Ordered coherent-state signal set with strictly positive, normalized priors.
class Constellation {
public:
    /// Empty `priors` means uniform. Throws InvalidArgument on M < 2 or inadmissible priors.
    explicit Constellation(std::vector<Amplitude> amplitudes, std::vector<double> priors = {});

    [[nodiscard]] std::size_t size() const { return amplitudes_.size(); }
    [[nodiscard]] const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }
    [[nodiscard]] const std::vector<double>& priors() const { return priors_; }
    [[nodiscard]] const Amplitude& amplitude(std::size_t i) const { return amplitudes_.at(i); }
    [[nodiscard]] double prior(std::size_t i) const { return priors_.at(i); }

    /// At least two amplitudes coincide; the Gram matrix is then singular.
    [[nodiscard]] bool degenerate() const { return degenerate_; }
    /// Every amplitude is the same state.
    [[nodiscard]] bool fully_degenerate() const { return fully_degenerate_; }
    [[nodiscard]] bool uniform_priors(double tol = 1e-12) const;

    [[nodiscard]] Constellation with_priors(std::vector<double> priors) const;

private:
    std::vector<Amplitude> amplitudes_;
    std::vector<double> priors_;
    bool degenerate_ = false;
    bool fully_degenerate_ = false;
};

/// Validates a probability vector: all entries > 0 and sum within 1e-12 of one.
void require_admissible_priors(const std::vector<double>& priors, std::size_t expected_size);

enum class GramKind { plain, modified, modulus, modulus_squared };

std::string_view to_string(GramKind kind);
GramKind gram_kind_from_string(std::string_view name);

struct GramMatrix {
    CMatrix entries;
    GramKind kind = GramKind::plain;
};

/// <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)
Complex coherent_inner(const Amplitude& a, const Amplitude& b);

/// sqrt(Ns) exp(i 2 pi k / M), k = 0..M-1. Ns = 0 yields a degenerate (flagged) set.
Constellation psk_constellation(std::size_t m, double mean_photons, std::vector<double> priors = {});

/// True if the amplitudes have a common modulus and consecutive phases step by 2 pi / M.
bool is_psk(const Constellation& c, double tol = 1e-9);

GramMatrix gram(const Constellation& c, GramKind kind = GramKind::plain);

/// Descending spectrum. Values in [-1e-10, 0) are clamped to 0; anything more negative throws.
RVector gram_eigenvalues(const GramMatrix& g);

/// Two-mode entangled coherent states
///   Psi1,2 = h (|a>|a> +- |-a>|-a>),  Psi3,4 = h (|a>|-a> +- |-a>|a>)
struct QuasiBellPair {
    Amplitude alpha;
    double kappa = 0.0;                 // <alpha|-alpha> = exp(-2|alpha|^2)
    std::array<double, 4> normalizers{};  // h1..h4

    /// |<Psi1|Psi3>| = 2 kappa / (1 + kappa^2)
    [[nodiscard]] double overlap_13() const;
    /// Gram matrix of Psi1..Psi4; only the (1,3) pair is non-orthogonal.
    [[nodiscard]] RMatrix gram() const;
};

QuasiBellPair quasi_bell(const Amplitude& alpha);

}  // namespace qshannon
