#pragma once

// Y-00 quantum stream cipher simulator and the amplitude-level block cipher.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qshannon/common.hpp"
#include "qshannon/detection.hpp"
#include "qshannon/states.hpp"

namespace qshannon {

/// Fibonacci LFSR. Output is the low bit of the state; the feedback bit is the XOR
/// of the tapped stages and enters at the top.
class Lfsr {
public:
    static std::vector<int> default_taps() { return {16, 14, 13, 11}; }

    /// Taps are exponents of the feedback polynomial; the largest is the degree (<= 64).
    /// The seed is reduced to `degree` bits and must not reduce to zero.
    explicit Lfsr(std::uint64_t seed, std::vector<int> taps = default_taps());

    int next_bit();
    /// `count` bits packed most-significant first.
    std::uint64_t next_bits(int count);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] std::uint64_t state() const { return state_; }
    [[nodiscard]] const std::vector<int>& taps() const { return taps_; }

private:
    std::vector<int> taps_;
    int degree_ = 0;
    std::uint64_t mask_ = 0;
    std::uint64_t feedback_mask_ = 0;
    std::uint64_t state_ = 0;
};

enum class Mapper { direct, keyed_polarity };
std::string_view to_string(Mapper m);
Mapper mapper_from_string(std::string_view name);

enum class EveAttack { srm, heterodyne };
std::string_view to_string(EveAttack a);
EveAttack eve_attack_from_string(std::string_view name);

enum class BobReceiver { quantum, homodyne };
std::string_view to_string(BobReceiver r);
BobReceiver bob_receiver_from_string(std::string_view name);

struct CipherParams {
    std::size_t m = 2;  // number of bases, a power of two; m = 1 is plain BPSK
    double mean_photons = 1.0;
    int key_bits = 16;
    std::vector<int> lfsr_taps = Lfsr::default_taps();
    std::uint64_t seed = 1;
    Mapper mapper = Mapper::keyed_polarity;

    /// Throws InvalidArgument on any violated constraint.
    void validate() const;
    [[nodiscard]] int basis_bits() const;
    [[nodiscard]] std::size_t phase_states() const { return 2 * m; }
};

struct CipherMetrics {
    std::size_t slots = 0;
    std::size_t bob_errors = 0;
    double bob_ber = 0.0;
    std::size_t eve_symbol_errors = 0;
    double eve_ser = 0.0;

    friend bool operator==(const CipherMetrics&, const CipherMetrics&) = default;
};

struct CipherTrace {
    std::vector<std::uint8_t> data_bits;
    std::vector<std::uint32_t> running_key;     // basis index per slot
    std::vector<std::uint8_t> polarity;         // mapper bit per slot (0 for direct)
    std::vector<std::uint32_t> phase_index;     // k in 0..2M-1, phase pi k / M
    std::vector<Amplitude> transmitted_amplitudes;
    std::vector<std::uint8_t> bob_decisions;    // empty for transmit-only traces
    std::vector<std::uint32_t> eve_outcomes;
    CipherMetrics metrics;

    friend bool operator==(const CipherTrace&, const CipherTrace&) = default;
};

std::vector<std::uint8_t> lfsr_keystream(const CipherParams& params, std::size_t length);

/// Transmit side: basis from log2 M keystream bits, then one mapper bit, per slot.
/// Amplitude sqrt(Ns) exp(i pi (m / M + b')), b' = data XOR polarity.
CipherTrace y00_encrypt(const std::vector<std::uint8_t>& data, const CipherParams& params);

/// Full channel run: Bob measures in the known basis, Eve heterodynes and rounds to the
/// nearest of the 2M phases. Noise is drawn from a generator seeded with `noise_seed`.
CipherTrace y00_simulate(const std::vector<std::uint8_t>& data, const CipherParams& params,
                         std::uint64_t noise_seed, BobReceiver receiver = BobReceiver::homodyne);

/// Antipodal pair error: Helstrom (1 - sqrt(1 - exp(-4 Ns)))/2 or homodyne Q(2 sqrt Ns).
double bob_error_probability(double mean_photons, BobReceiver receiver = BobReceiver::quantum);
double bob_error_probability(const CipherParams& params, BobReceiver receiver = BobReceiver::quantum);

/// First row of Eve's circulant channel over the 2M phase states: P(k + d | k) = row[d].
RVector eve_channel_row(const CipherParams& params, EveAttack attack);

/// Full 2M x 2M channel. O(M^2) memory; the reports work from the row.
ChannelMatrix eve_channel(const CipherParams& params, EveAttack attack);

/// Heterodyne phase density of |sqrt(Ns)> at phase phi.
double heterodyne_phase_density(double mean_photons, double phi);

/// max(1, floor(2 sigma / (pi / M))), sigma = 1 / (2 sqrt(Ns)).
std::size_t masking_number(const CipherParams& params);

struct SecurityReport {
    double pe_bob = 0.0;
    double pe_eve = 0.0;
    double c1_eve_lower = 0.0;   // nats, I(uniform 2M input; Eve outcome)
    double c_bob = 0.0;          // nats, Bob's binary channel with the key
    double c_eve_data = 0.0;     // nats, I(data bit; Eve outcome) without the key
    std::size_t masking_number = 1;
    bool masking_warning = false;
    double unicity_lower_bound = 0.0;  // symbols, +inf when c1 = 0
    bool advantage = false;
    EveAttack attack = EveAttack::srm;
    BobReceiver receiver = BobReceiver::quantum;
};

SecurityReport security_report(const CipherParams& params, EveAttack attack = EveAttack::srm,
                               BobReceiver receiver = BobReceiver::quantum);

/// Homodyne Bob bit-error rate over `slots` random data bits. Noise comes from
/// independent per-chunk generators, so both versions return the same count.
std::size_t bob_errors_monte_carlo_serial(const CipherParams& params, std::size_t slots, std::uint64_t seed);
std::size_t bob_errors_monte_carlo(const CipherParams& params, std::size_t slots, std::uint64_t seed,
                                   int jobs = 0);

enum class BlockMode { givens, phase_randomization };
std::string_view to_string(BlockMode m);
BlockMode block_mode_from_string(std::string_view name);

struct BlockKey {
    std::uint64_t seed = 1;
    std::vector<int> taps = Lfsr::default_taps();
    BlockMode mode = BlockMode::givens;
};

/// Keyed M x M unitary: a product of Givens rotations over every index pair,
/// followed by diagonal phases, with 16 keystream bits per angle.
/// Phase randomization keeps only the diagonal phases.
CMatrix keyed_unitary(std::size_t m, const BlockKey& key);

/// ||L^H L - I||_F
double unitarity_defect(const CMatrix& l);

/// alpha_out = L alpha_in. Throws InvalidArgument (reporting the defect) unless L is unitary to 1e-10.
std::vector<Amplitude> block_encrypt(const std::vector<Amplitude>& amplitudes, const CMatrix& l);
std::vector<Amplitude> block_encrypt(const std::vector<Amplitude>& amplitudes, const BlockKey& key);

/// alpha = L^H alpha_out
std::vector<Amplitude> block_decrypt(const std::vector<Amplitude>& amplitudes, const CMatrix& l);
std::vector<Amplitude> block_decrypt(const std::vector<Amplitude>& amplitudes, const BlockKey& key);

}  // namespace qshannon
