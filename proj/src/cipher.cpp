#include "qshannon/cipher.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qshannon/sweep.hpp"

namespace qshannon {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double binary_entropy_nats(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

double entropy_nats(const RVector& p) {
    double h = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (p[k] > 0.0) h -= p[k] * std::log(p[k]);
    }
    return h;
}

}  // namespace

Lfsr::Lfsr(std::uint64_t seed, std::vector<int> taps) : taps_(std::move(taps)) {
    if (taps_.empty()) {
        throw InvalidArgument("LFSR needs at least one tap");
    }
    std::set<int> unique(taps_.begin(), taps_.end());
    if (unique.size() != taps_.size() || *unique.begin() < 1 || *unique.rbegin() > 64) {
        throw InvalidArgument("LFSR taps must be distinct integers in [1, 64]");
    }
    degree_ = *unique.rbegin();
    mask_ = degree_ == 64 ? ~0ULL : ((1ULL << degree_) - 1);
    for (int t : taps_) feedback_mask_ |= 1ULL << (degree_ - t);
    state_ = seed & mask_;
    if (state_ == 0) {
        throw InvalidArgument("LFSR seed must be nonzero in its low " + std::to_string(degree_) + " bits");
    }
}

int Lfsr::next_bit() {
    const int out = static_cast<int>(state_ & 1ULL);
    const auto fb = static_cast<std::uint64_t>(std::popcount(state_ & feedback_mask_) & 1);
    state_ = (state_ >> 1) | (fb << (degree_ - 1));
    return out;
}

std::uint64_t Lfsr::next_bits(int count) {
    std::uint64_t v = 0;
    for (int k = 0; k < count; ++k) v = (v << 1) | static_cast<std::uint64_t>(next_bit());
    return v;
}

std::string_view to_string(Mapper m) { return m == Mapper::direct ? "direct" : "keyed_polarity"; }

Mapper mapper_from_string(std::string_view name) {
    if (name == "direct") return Mapper::direct;
    if (name == "keyed_polarity") return Mapper::keyed_polarity;
    throw InvalidArgument("unknown mapper '" + std::string(name) + "'");
}

std::string_view to_string(EveAttack a) { return a == EveAttack::srm ? "srm" : "heterodyne"; }

EveAttack eve_attack_from_string(std::string_view name) {
    if (name == "srm") return EveAttack::srm;
    if (name == "heterodyne") return EveAttack::heterodyne;
    throw InvalidArgument("unknown attack '" + std::string(name) + "'");
}

std::string_view to_string(BobReceiver r) { return r == BobReceiver::quantum ? "quantum" : "homodyne"; }

BobReceiver bob_receiver_from_string(std::string_view name) {
    if (name == "quantum") return BobReceiver::quantum;
    if (name == "homodyne") return BobReceiver::homodyne;
    throw InvalidArgument("unknown receiver '" + std::string(name) + "'");
}

void CipherParams::validate() const {
    if (m == 0 || !std::has_single_bit(m) || m > (1ULL << 30)) {
        throw InvalidArgument("basis count M must be a power of two");
    }
    if (!(mean_photons > 0.0) || !std::isfinite(mean_photons)) {
        throw InvalidArgument("mean photon number must be positive and finite");
    }
    const Lfsr probe(seed, lfsr_taps);
    if (key_bits < probe.degree()) {
        throw InvalidArgument("key length must be at least the LFSR degree");
    }
}

int CipherParams::basis_bits() const { return std::countr_zero(m); }

std::vector<std::uint8_t> lfsr_keystream(const CipherParams& params, std::size_t length) {
    Lfsr lfsr(params.seed, params.lfsr_taps);
    std::vector<std::uint8_t> bits(length);
    for (auto& b : bits) b = static_cast<std::uint8_t>(lfsr.next_bit());
    return bits;
}

CipherTrace y00_encrypt(const std::vector<std::uint8_t>& data, const CipherParams& params) {
    params.validate();
    Lfsr lfsr(params.seed, params.lfsr_taps);
    const int bits = params.basis_bits();
    const double radius = std::sqrt(params.mean_photons);
    const auto n_phase = static_cast<std::uint32_t>(params.phase_states());
    const auto m = static_cast<std::uint32_t>(params.m);

    CipherTrace t;
    const std::size_t n = data.size();
    t.data_bits.reserve(n);
    t.running_key.reserve(n);
    t.polarity.reserve(n);
    t.phase_index.reserve(n);
    t.transmitted_amplitudes.reserve(n);
    for (std::uint8_t d : data) {
        if (d > 1) throw InvalidArgument("data bits must be 0 or 1");
        const auto basis = static_cast<std::uint32_t>(lfsr.next_bits(bits));
        const auto pol = static_cast<std::uint8_t>(params.mapper == Mapper::keyed_polarity ? lfsr.next_bit() : 0);
        const std::uint32_t b = d ^ pol;
        const std::uint32_t k = (basis + m * b) % n_phase;
        t.data_bits.push_back(d);
        t.running_key.push_back(basis);
        t.polarity.push_back(pol);
        t.phase_index.push_back(k);
        t.transmitted_amplitudes.push_back(
            Amplitude(std::polar(radius, kPi * static_cast<double>(k) / static_cast<double>(m))));
    }
    t.metrics.slots = n;
    return t;
}

CipherTrace y00_simulate(const std::vector<std::uint8_t>& data, const CipherParams& params,
                         std::uint64_t noise_seed, BobReceiver receiver) {
    CipherTrace t = y00_encrypt(data, params);
    std::mt19937_64 gen(splitmix64(noise_seed));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double radius = std::sqrt(params.mean_photons);
    const double pe_quantum = bob_error_probability(params.mean_photons, BobReceiver::quantum);
    const double step = kPi / static_cast<double>(params.m);
    const auto n_phase = static_cast<long long>(params.phase_states());
    const std::size_t n = data.size();
    t.bob_decisions.reserve(n);
    t.eve_outcomes.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        const std::uint8_t b = t.data_bits[s] ^ t.polarity[s];
        std::uint8_t b_hat = 0;
        if (receiver == BobReceiver::homodyne) {
            // Quadrature along the known basis; vacuum variance 1/4.
            const double x = (b ? -radius : radius) + 0.5 * gauss(gen);
            b_hat = x < 0.0 ? 1 : 0;
        } else {
            b_hat = uniform(gen) < pe_quantum ? (b ^ 1) : b;
        }
        const std::uint8_t decision = b_hat ^ t.polarity[s];
        t.bob_decisions.push_back(decision);
        if (decision != t.data_bits[s]) ++t.metrics.bob_errors;

        // Heterodyne: each quadrature of the outcome carries variance 1/2.
        const double n_re = gauss(gen);
        const double n_im = gauss(gen);
        const Complex beta = t.transmitted_amplitudes[s].value() + std::sqrt(0.5) * Complex(n_re, n_im);
        long long k_hat = std::llround(std::arg(beta) / step) % n_phase;
        if (k_hat < 0) k_hat += n_phase;
        t.eve_outcomes.push_back(static_cast<std::uint32_t>(k_hat));
        if (static_cast<std::uint32_t>(k_hat) != t.phase_index[s]) ++t.metrics.eve_symbol_errors;
    }
    if (n > 0) {
        t.metrics.bob_ber = static_cast<double>(t.metrics.bob_errors) / static_cast<double>(n);
        t.metrics.eve_ser = static_cast<double>(t.metrics.eve_symbol_errors) / static_cast<double>(n);
    }
    return t;
}

double bob_error_probability(double mean_photons, BobReceiver receiver) {
    if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
        throw InvalidArgument("mean photon number must be finite and non-negative");
    }
    if (receiver == BobReceiver::homodyne) return homodyne_bpsk_pe(mean_photons);
    return helstrom_from_overlap(std::exp(-4.0 * mean_photons), 0.5, 0.5);
}

double bob_error_probability(const CipherParams& params, BobReceiver receiver) {
    params.validate();
    return bob_error_probability(params.mean_photons, receiver);
}

double heterodyne_phase_density(double mean_photons, double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double root = std::sqrt(mean_photons);
    return (std::exp(-mean_photons) +
            std::sqrt(kPi) * root * c * std::exp(-mean_photons * s * s) * std::erfc(-root * c)) /
           (2.0 * kPi);
}

RVector eve_channel_row(const CipherParams& params, EveAttack attack) {
    params.validate();
    const std::size_t n = params.phase_states();
    if (attack == EveAttack::srm) return psk_srm_channel_row(n, params.mean_photons);

    using boost::math::quadrature::gauss_kronrod;
    const double width = kPi / static_cast<double>(params.m);
    auto density = [&](double phi) { return heterodyne_phase_density(params.mean_photons, phi); };
    RVector row(static_cast<Eigen::Index>(n));
    for (std::size_t d = 0; d < n; ++d) {
        const double lo = width * (static_cast<double>(d) - 0.5);
        const double hi = width * (static_cast<double>(d) + 0.5);
        // Sectors deep in the tail need no refinement.
        const double coarse = gauss_kronrod<double, 31>::integrate(density, lo, hi, 0);
        row[static_cast<Eigen::Index>(d)] =
            coarse < 1e-20 ? coarse : gauss_kronrod<double, 31>::integrate(density, lo, hi, 12, 1e-12);
    }
    row = row.cwiseMax(0.0);
    row /= row.sum();
    return row;
}

ChannelMatrix eve_channel(const CipherParams& params, EveAttack attack) {
    const RVector row = eve_channel_row(params, attack);
    const Eigen::Index n = row.size();
    ChannelMatrix ch;
    ch.p.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) ch.p(i, j) = row[(j - i + n) % n];
    }
    ch.input_priors = RVector::Constant(n, 1.0 / static_cast<double>(n));
    return ch;
}

std::size_t masking_number(const CipherParams& params) {
    params.validate();
    const double sigma = 1.0 / (2.0 * std::sqrt(params.mean_photons));
    const double spacing = kPi / static_cast<double>(params.m);
    const double count = std::floor(2.0 * sigma / spacing);
    return count < 1.0 ? 1 : static_cast<std::size_t>(count);
}

namespace {

/// I(data bit; Eve outcome) when Eve lacks the key: input k = basis + M b' with
/// the basis uniform, and b' = data XOR polarity.
double eve_data_information(const RVector& row, const CipherParams& params) {
    if (params.mapper == Mapper::keyed_polarity) return 0.0;
    const auto n = row.size();
    const auto m = static_cast<Eigen::Index>(params.m);
    // P(j | b) = (1/M) sum_{basis} row[(j - basis - M b) mod 2M]
    RVector window(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double acc = 0.0;
        for (Eigen::Index basis = 0; basis < m; ++basis) acc += row[((j - basis) % n + n) % n];
        window[j] = acc / static_cast<double>(m);
    }
    double info = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double p0 = window[j];
        const double p1 = window[((j - m) % n + n) % n];
        const double pj = 0.5 * (p0 + p1);
        if (p0 > 0.0) info += 0.5 * p0 * std::log(p0 / pj);
        if (p1 > 0.0) info += 0.5 * p1 * std::log(p1 / pj);
    }
    return std::max(0.0, info);
}

}  // namespace

SecurityReport security_report(const CipherParams& params, EveAttack attack, BobReceiver receiver) {
    params.validate();
    SecurityReport r;
    r.attack = attack;
    r.receiver = receiver;
    r.pe_bob = bob_error_probability(params.mean_photons, receiver);
    const RVector row = eve_channel_row(params, attack);
    r.pe_eve = std::max(0.0, 1.0 - row[0]);
    // Circulant channel, uniform input: I = ln N - H(row).
    r.c1_eve_lower = std::max(0.0, std::log(static_cast<double>(row.size())) - entropy_nats(row));
    r.c_bob = std::log(2.0) - binary_entropy_nats(r.pe_bob);
    r.c_eve_data = eve_data_information(row, params);
    r.masking_number = masking_number(params);
    r.masking_warning = r.masking_number <= 1;
    const double needed = static_cast<double>(params.key_bits) * kLn2;
    r.unicity_lower_bound =
        r.c1_eve_lower > 0.0 ? std::ceil(needed / r.c1_eve_lower) : std::numeric_limits<double>::infinity();
    r.advantage = 10.0 * r.pe_bob < r.pe_eve && r.c_bob > r.c_eve_data;
    return r;
}

namespace {

constexpr std::size_t kMonteCarloChunk = 1 << 16;

std::vector<std::uint8_t> polarity_stream(const CipherParams& params, std::size_t slots) {
    std::vector<std::uint8_t> pol(slots, 0);
    if (params.mapper != Mapper::keyed_polarity) return pol;
    Lfsr lfsr(params.seed, params.lfsr_taps);
    const int bits = params.basis_bits();
    for (auto& p : pol) {
        lfsr.next_bits(bits);
        p = static_cast<std::uint8_t>(lfsr.next_bit());
    }
    return pol;
}

std::size_t chunk_errors(const CipherParams& params, const std::vector<std::uint8_t>& pol, std::size_t chunk,
                         std::size_t slots, std::uint64_t seed) {
    std::mt19937_64 gen(splitmix64(seed ^ splitmix64(chunk)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double radius = std::sqrt(params.mean_photons);
    const std::size_t begin = chunk * kMonteCarloChunk;
    const std::size_t end = std::min(slots, begin + kMonteCarloChunk);
    std::size_t errors = 0;
    for (std::size_t s = begin; s < end; ++s) {
        const auto d = static_cast<std::uint8_t>(gen() & 1ULL);
        const std::uint8_t b = d ^ pol[s];
        const double x = (b ? -radius : radius) + 0.5 * gauss(gen);
        const std::uint8_t decision = static_cast<std::uint8_t>(x < 0.0 ? 1 : 0) ^ pol[s];
        if (decision != d) ++errors;
    }
    return errors;
}

}  // namespace

std::size_t bob_errors_monte_carlo_serial(const CipherParams& params, std::size_t slots, std::uint64_t seed) {
    params.validate();
    const auto pol = polarity_stream(params, slots);
    const std::size_t chunks = (slots + kMonteCarloChunk - 1) / kMonteCarloChunk;
    std::size_t total = 0;
    for (std::size_t c = 0; c < chunks; ++c) total += chunk_errors(params, pol, c, slots, seed);
    return total;
}

std::size_t bob_errors_monte_carlo(const CipherParams& params, std::size_t slots, std::uint64_t seed, int jobs) {
    params.validate();
    const auto pol = polarity_stream(params, slots);
    const std::size_t chunks = (slots + kMonteCarloChunk - 1) / kMonteCarloChunk;
    const auto counts = sweep::map_parallel(
        chunks, [&](std::size_t c) { return chunk_errors(params, pol, c, slots, seed); }, jobs);
    std::size_t total = 0;
    for (std::size_t v : counts) total += v;
    return total;
}

std::string_view to_string(BlockMode m) { return m == BlockMode::givens ? "givens" : "phase_randomization"; }

BlockMode block_mode_from_string(std::string_view name) {
    if (name == "givens") return BlockMode::givens;
    if (name == "phase_randomization") return BlockMode::phase_randomization;
    throw InvalidArgument("unknown block mode '" + std::string(name) + "'");
}

CMatrix keyed_unitary(std::size_t m, const BlockKey& key) {
    if (m == 0) {
        throw InvalidArgument("block size must be positive");
    }
    Lfsr lfsr(key.seed, key.taps);
    auto angle = [&] { return 2.0 * kPi * static_cast<double>(lfsr.next_bits(16)) / 65536.0; };
    const auto n = static_cast<Eigen::Index>(m);
    CMatrix l = CMatrix::Identity(n, n);
    if (key.mode == BlockMode::givens) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double theta = angle();
                const Complex e = std::polar(1.0, angle());
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                // rows i, j <- [c, -e s; conj(e) s, c] [row_i; row_j]
                const CVector ri = l.row(i).transpose();
                const CVector rj = l.row(j).transpose();
                l.row(i) = (c * ri - e * s * rj).transpose();
                l.row(j) = (std::conj(e) * s * ri + c * rj).transpose();
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) l.row(i) *= std::polar(1.0, angle());
    return l;
}

double unitarity_defect(const CMatrix& l) {
    if (l.rows() != l.cols()) return std::numeric_limits<double>::infinity();
    return (l.adjoint() * l - CMatrix::Identity(l.rows(), l.cols())).norm();
}

namespace {

std::vector<Amplitude> transform_block(const CMatrix& l, const std::vector<Amplitude>& amplitudes) {
    if (static_cast<std::size_t>(l.cols()) != amplitudes.size()) {
        throw InvalidArgument("block size does not match the transform");
    }
    const double defect = unitarity_defect(l);
    if (!(defect <= 1e-10)) {
        std::ostringstream msg;
        msg << "block transform is not unitary (defect " << defect << ")";
        throw InvalidArgument(msg.str());
    }
    CVector v(l.cols());
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = amplitudes[static_cast<std::size_t>(k)].value();
    const CVector out = l * v;
    std::vector<Amplitude> result;
    result.reserve(amplitudes.size());
    for (Eigen::Index k = 0; k < out.size(); ++k) result.emplace_back(out[k]);
    return result;
}

}  // namespace

std::vector<Amplitude> block_encrypt(const std::vector<Amplitude>& amplitudes, const CMatrix& l) {
    return transform_block(l, amplitudes);
}

std::vector<Amplitude> block_encrypt(const std::vector<Amplitude>& amplitudes, const BlockKey& key) {
    return transform_block(keyed_unitary(amplitudes.size(), key), amplitudes);
}

std::vector<Amplitude> block_decrypt(const std::vector<Amplitude>& amplitudes, const CMatrix& l) {
    return transform_block(l.adjoint(), amplitudes);
}

std::vector<Amplitude> block_decrypt(const std::vector<Amplitude>& amplitudes, const BlockKey& key) {
    return transform_block(keyed_unitary(amplitudes.size(), key).adjoint(), amplitudes);
}

}  // namespace qshannon
