// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qshannon/capacity.hpp"
#include "qshannon/cipher.hpp"
#include "qshannon/detection.hpp"
#include "qshannon/estimation.hpp"
#include "qshannon/fock_oracle.hpp"
#include "qshannon/reading.hpp"
#include "qshannon/reliability.hpp"
#include "support.hpp"

using namespace qshannon;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

const std::vector<double> kEnergyGrid{0.1, 0.5, 1.0, 2.0, 5.0};
const std::vector<std::size_t> kPskSizes{2, 3, 4, 8};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Outcome helstrom_oracle_agreement() {
    Outcome o;
    double worst = 0.0;
    for (double ns : kEnergyGrid) {
        for (double xi0 : {0.5, 0.7, 0.9}) {
            const Constellation c = psk_constellation(2, ns, {xi0, 1.0 - xi0});
            const auto fs = testing::fock_states(c);
            const double oracle = fock::helstrom_binary_oracle(fs[0], fs[1], xi0, 1.0 - xi0);
            const double diff = std::abs(helstrom_binary(c) - oracle);
            worst = std::max(worst, diff);
            o.require(diff <= 1e-8, "|a|^2=" + num(ns) + " xi0=" + num(xi0));
        }
    }
    o.detail << "max |closed - oracle| = " << num(worst) << " over 15 points";
    return o;
}

Outcome covariant_consistency() {
    Outcome o;
    double worst = 0.0;
    double worst_m2 = 0.0;
    for (std::size_t m : kPskSizes) {
        for (double ns : kEnergyGrid) {
            const Constellation c = psk_constellation(m, ns);
            const double pe = covariant_optimal_pe(c);
            const ChannelMatrix ch = srm_channel(c);
            for (Eigen::Index i = 0; i < ch.p.rows(); ++i) {
                const double diff = std::abs(pe - (1.0 - ch.p(i, i)));
                worst = std::max(worst, diff);
                o.require(diff <= 1e-10, "M=" + std::to_string(m) + " Ns=" + num(ns));
            }
            if (m == 2) {
                const double d2 = std::abs(pe - helstrom_binary(c));
                worst_m2 = std::max(worst_m2, d2);
                o.require(d2 <= 1e-10, "M=2 Helstrom reduction at Ns=" + num(ns));
            }
        }
    }
    o.detail << "max |Pe - (1 - P(i|i))| = " << num(worst) << ", max M=2 Helstrom gap = " << num(worst_m2);
    return o;
}

Outcome three_psk_example() {
    Outcome o;
    double worst = 0.0;
    for (double ns : {0.5, 1.0, 2.0}) {
        const double kc = std::exp(-1.5 * ns) * std::cos(std::sqrt(3.0) * ns / 2);
        const double ks = std::exp(-1.5 * ns) * std::sin(std::sqrt(3.0) * ns / 2);
        const Constellation c = psk_constellation(3, ns);
        const GramMatrix g = gram(c, GramKind::modified);
        const double entry_diff = std::abs(3.0 * g.entries(0, 1) - Complex(kc, ks));
        o.require(entry_diff <= 1e-12, "K_c + iK_s entry at Ns=" + num(ns));

        std::vector<double> closed{(1 + 2 * kc) / 3, (1 - kc - std::sqrt(3.0) * ks) / 3,
                                   (1 - kc + std::sqrt(3.0) * ks) / 3};
        std::sort(closed.rbegin(), closed.rend());
        const RVector lam = gram_eigenvalues(g);
        for (int k = 0; k < 3; ++k) {
            const double d = std::abs(lam[k] - closed[static_cast<std::size_t>(k)]);
            worst = std::max(worst, d);
            o.require(d <= 1e-12, "lambda at Ns=" + num(ns));
        }
        o.require(std::abs(lam.sum() - 1.0) <= 1e-12, "sum lambda at Ns=" + num(ns));

        const double b1 = 1 + 2 * kc;
        const double b2 = 1 - kc - std::sqrt(3.0) * ks;
        const double b3 = 1 - kc + std::sqrt(3.0) * ks;
        const double p11 = (3 + 2 * (std::sqrt(b1 * b2) + std::sqrt(b2 * b3) + std::sqrt(b3 * b1))) / 9;
        const ChannelMatrix ch = srm_channel(c);
        for (Eigen::Index i = 0; i < 3; ++i) {
            const double d = std::abs(ch.p(i, i) - p11);
            worst = std::max(worst, d);
            o.require(d <= 1e-12, "P(1|1) at Ns=" + num(ns));
        }
        if (ns == 1.0) {
            o.require(std::abs(kc - 0.144557) < 5e-7 && std::abs(ks - 0.169972) < 5e-7, "K_c, K_s anchors");
            o.require(std::abs(lam[0] - 0.4297) < 5e-5 && std::abs(lam[1] - 0.3833) < 5e-5 &&
                          std::abs(lam[2] - 0.1870) < 5e-5,
                      "lambda anchors {0.4297, 0.3833, 0.1870}");
            o.detail << "Ns=1: lambda = {" << num(lam[0]) << ", " << num(lam[1]) << ", " << num(lam[2])
                     << "}, P(1|1) = " << num(p11) << "; ";
        }
    }
    o.detail << "max closed-form deviation = " << num(worst);
    return o;
}

Outcome optimality_residuals() {
    Outcome o;
    double worst_pass = 0.0;
    double weakest_fail = std::numeric_limits<double>::infinity();
    std::mt19937_64 gen(2718);
    std::normal_distribution<double> n(0.0, 1.0);
    for (std::size_t m : kPskSizes) {
        for (double ns : kEnergyGrid) {
            const Constellation c = psk_constellation(m, ns);
            const Povm srm = srm_povm(c);
            const OptimalityReport bayes = check_bayes_optimality(c, srm);
            const OptimalityReport minimax = check_minimax(c, srm);
            worst_pass = std::max({worst_pass, bayes.pairwise_residual, minimax.conditional_spread});
            o.require(bayes.optimal, "Bayes conditions for SRM, M=" + std::to_string(m) + " Ns=" + num(ns));
            o.require(minimax.optimal, "minimax conditions for SRM, M=" + std::to_string(m) + " Ns=" + num(ns));

            CMatrix raw = srm.vectors;
            for (Eigen::Index i = 0; i < raw.rows(); ++i) {
                for (Eigen::Index j = 0; j < raw.cols(); ++j) raw(i, j) += 1e-2 * Complex(n(gen), n(gen));
            }
            const Povm bad = complete_povm(raw, c);
            const OptimalityReport r = check_bayes_optimality(c, bad);
            weakest_fail = std::min(weakest_fail, std::max(r.pairwise_residual, -r.min_eigenvalue));
            o.require(!r.optimal, "perturbed POVM accepted, M=" + std::to_string(m) + " Ns=" + num(ns));
        }
    }
    o.detail << "max SRM residual = " << num(worst_pass) << ", smallest perturbed violation = " << num(weakest_fail);
    return o;
}

Outcome capacity_ordering() {
    Outcome o;
    std::mt19937_64 gen(31415);
    std::uniform_int_distribution<std::size_t> size(2, 8);
    double tightest = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 500; ++trial) {
        const Constellation c = testing::random_constellation(gen, size(gen), 2.5);
        const double ih = holevo_information(c).value_nats;
        const double i_srm = mutual_information(srm_channel(c)).value_nats;
        tightest = std::min(tightest, ih - i_srm);
        o.require(i_srm <= ih + 1e-10, "I(SRM) > I_H on trial " + std::to_string(trial));
    }
    const std::vector<double> grid{0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1e3, 1e4};
    double min_gap = std::numeric_limits<double>::infinity();
    for (double ns : grid) {
        for (double nth : grid) {
            const double gap = quantum_advantage_gap(ns, nth);
            min_gap = std::min(min_gap, gap);
            o.require(gap >= -1e-12, "negative gap at Ns=" + num(ns) + " Nth=" + num(nth));
        }
    }
    double previous = std::numeric_limits<double>::infinity();
    for (double nth : {0.0, 1.0, 10.0, 100.0, 1e3, 1e4}) {
        const double gap = quantum_advantage_gap(1.0, nth);
        o.require(gap <= previous, "gap not decreasing in Nth at " + num(nth));
        previous = gap;
    }
    o.require(previous < 1e-3, "gap at Nth=1e4 is " + num(previous));
    o.detail << "min I_H - I(SRM) = " << num(tightest) << " over 500 sets, min gap = " << num(min_gap)
             << ", gap(Ns=1, Nth=1e4) = " << num(previous);
    return o;
}

std::vector<double> rates25() {
    std::vector<double> r;
    for (int k = 0; k < 25; ++k) r.push_back(1.2 * k / 24.0);
    return r;
}

Outcome reliability_orderings() {
    Outcome o;
    double min_margin = std::numeric_limits<double>::infinity();
    for (double ns : {0.5, 1.0, 2.0}) {
        const Constellation c = psk_constellation(3, ns);
        const ChannelMatrix ch = srm_channel(c);
        const double ih = holevo_information(c).value_nats;
        const CutoffReport cut = cutoff_quantum(c);
        o.require(cut.r_semi_upper <= cut.r_q + 1e-10, "R_semi > R_Q at Ns=" + num(ns));
        const std::vector<double> rates = rates25();
        const ExponentCurve eq = quantum_curve(c, rates, 1);
        const ExponentCurve es = semi_curve(ch, rates, 1);
        for (std::size_t k = 0; k < rates.size(); ++k) {
            min_margin = std::min(min_margin, eq.exponent[k] - es.exponent[k]);
            o.require(eq.exponent[k] >= es.exponent[k] - 1e-10, "E_Q < E_semi at Ns=" + num(ns) + " R=" + num(rates[k]));
            if (k > 0) o.require(eq.exponent[k] <= eq.exponent[k - 1] + 1e-12, "E_Q increasing at R=" + num(rates[k]));
            if (k > 0 && k + 1 < rates.size()) {
                o.require(eq.exponent[k + 1] - 2 * eq.exponent[k] + eq.exponent[k - 1] >= -1e-9,
                          "E_Q not convex at R=" + num(rates[k]));
            }
            if (rates[k] >= ih) {
                o.require(eq.exponent[k] == 0.0 && es.exponent[k] == 0.0, "exponent positive above I_H");
            }
        }
        o.require(reliability_quantum(c, ih + 1e-6) == 0.0, "E_Q(I_H + 1e-6) > 0 at Ns=" + num(ns));
        o.require(reliability_semi(ch, ih + 1e-6) == 0.0, "E_semi(I_H + 1e-6) > 0 at Ns=" + num(ns));
    }
    o.detail << "min E_Q - E_semi = " << num(min_margin) << " over 75 points";
    return o;
}

Outcome cutoff_closed_forms() {
    Outcome o;
    double worst = 0.0;
    for (double ns : kEnergyGrid) {
        const double kappa = std::exp(-2.0 * ns);
        const Constellation c = psk_constellation(2, ns);
        const CutoffReport r = cutoff_quantum(c);
        const double d1 = std::abs(r.r_q - std::log(2.0 / (1.0 + kappa * kappa)));
        const double d2 = std::abs(r.r_semi_upper - std::log(2.0 / (1.0 + kappa)));
        worst = std::max({worst, d1, d2});
        o.require(d1 <= 1e-8, "R_Q at Ns=" + num(ns));
        o.require(d2 <= 1e-8, "R_semi at Ns=" + num(ns));
    }
    std::mt19937_64 gen(1618);
    int interior = 0;
    double prior_worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const Constellation c = testing::random_constellation(gen, 2 + static_cast<std::size_t>(trial % 6), 1.5);
        const CutoffReport r = cutoff_quantum(c);
        if (!r.closed_form_interior) continue;
        ++interior;
        double d = std::abs(r.r_q - r.r_q_closed_form);
        for (std::size_t k = 0; k < r.optimal_priors.size(); ++k) {
            d = std::max(d, std::abs(r.optimal_priors[k] - r.closed_form_priors[k]));
        }
        prior_worst = std::max(prior_worst, d);
        o.require(d <= 1e-8, "closed-form priors vs solver on trial " + std::to_string(trial));
    }
    o.require(interior > 0, "no interior cases sampled");
    o.detail << "BPSK max deviation = " << num(worst) << "; " << interior
             << " interior random sets, max deviation = " << num(prior_worst);
    return o;
}

Outcome code_length_planner() {
    Outcome o;
    int compared = 0;
    int strictly_shorter = 0;
    std::vector<Constellation> sets;
    for (double ns : {0.5, 1.0, 2.0}) sets.push_back(psk_constellation(3, ns));
    sets.push_back(psk_constellation(2, 0.5));
    sets.push_back(psk_constellation(4, 1.0));
    sets.push_back(psk_constellation(8, 2.0));
    for (const Constellation& c : sets) {
        const ChannelMatrix ch = srm_channel(c);
        for (double r : rates25()) {
            const double eq = reliability_quantum(c, r);
            const double es = reliability_semi(ch, r);
            if (eq <= 0.0) {
                o.require(es <= 0.0, "E_semi supported where E_Q is not");
                continue;
            }
            for (double target : {1e-6, 1e-9, 1e-12}) {
                const auto nq = required_code_length(eq, target);
                if (es > 0.0) {
                    const auto ns_len = required_code_length(es, target);
                    o.require(nq <= ns_len, "n(E_Q) > n(E_semi) at R=" + num(r));
                    if (nq < ns_len) ++strictly_shorter;
                }
                ++compared;
            }
        }
    }
    o.detail << compared << " (set, rate, target) cases, " << strictly_shorter << " strictly shorter with E_Q";
    return o;
}

Outcome gaussian_cutoff_rate() {
    Outcome o;
    for (double lambda : {0.5, 0.75, 1.0, 2.0, 10.0}) {
        o.require(gaussian_cutoff(0.0, lambda) == 0.0, "R_Q(0) != 0 at lambda=" + num(lambda));
        double previous = -1.0;
        for (int k = 0; k <= 100; ++k) {
            const double value = gaussian_cutoff(0.1 * k, lambda);
            o.require(value > previous, "not increasing in Nsc at lambda=" + num(lambda));
            previous = value;
        }
    }
    double worst_jump = 0.0;
    for (double nsc : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const double d = 0.5 * (1.0 + std::sqrt(4.0 * nsc * nsc + 1.0));
        const double limit = 2.0 * (nsc + 1.0 - d) + std::log(d);
        o.require(std::abs(gaussian_cutoff(nsc, 0.5) - limit) <= 1e-12, "lambda=1/2 limit form at Nsc=" + num(nsc));
        const double jump = std::abs(gaussian_cutoff(nsc, 0.5 + 1e-6) - gaussian_cutoff(nsc, 0.5));
        worst_jump = std::max(worst_jump, jump);
        o.require(jump < 1e-6, "continuity at lambda=1/2, Nsc=" + num(nsc) + " jump " + num(jump));
    }
    o.detail << "max |R(1/2 + 1e-6) - R(1/2)| = " << num(worst_jump) << " (tolerance 1e-6)";
    return o;
}

Outcome estimation_set() {
    Outcome o;
    for (double ns : {0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 10.0, 100.0}) {
        o.require(squeezed_snr(ns, 1.0).snr == 4.0 * ns * (ns + 1.0), "squeezed SNR at Ns=" + num(ns));
    }
    double min_sum = std::numeric_limits<double>::infinity();
    double argmin_mu = 0.0;
    double argmin_nu = 0.0;
    for (int k = -200; k <= 200; ++k) {
        const SqueezeParams p = SqueezeParams::from_squeeze(0.01 * k);
        const auto [a, b] = generalized_heterodyne_vars(p);
        if (a + b < min_sum) {
            min_sum = a + b;
            argmin_mu = p.mu();
            argmin_nu = p.nu();
        }
        if (k != 0) o.require(a + b > 1.0, "variance sum <= 1 away from (1, 0)");
    }
    o.require(min_sum == 1.0 && argmin_mu == 1.0 && argmin_nu == 0.0, "variance-sum minimum not at (1, 0)");
    for (double n : {0.0, 0.5, 1.0, 2.0, 7.0}) {
        o.require(yuen_lax_heterodyne_var(n) == n + 1.0, "Var alpha at N=" + num(n));
        o.require(crb_single_quadrature(n) == n / 2.0 + 0.25, "Var x at N=" + num(n));
    }
    o.detail << "SNR(eps=1) = 4Ns(Ns+1) on 8 points; min variance sum " << num(min_sum) << " at (" << argmin_mu
             << ", " << argmin_nu << ")";
    return o;
}

Outcome cipher_properties() {
    Outcome o;
    CipherParams p;
    p.m = 64;
    p.mean_photons = 5.0;
    p.seed = 0x5EED;
    std::mt19937_64 gen(6);
    std::vector<std::uint8_t> data(20000);
    for (auto& b : data) b = static_cast<std::uint8_t>(gen() & 1);
    o.require(y00_simulate(data, p, 42) == y00_simulate(data, p, 42), "replay differs");

    CipherParams mc;
    mc.m = 4;
    mc.mean_photons = 0.5;
    const std::size_t slots = 1000000;
    const std::size_t serial = bob_errors_monte_carlo_serial(mc, slots, 17);
    const std::size_t parallel = bob_errors_monte_carlo(mc, slots, 17);
    o.require(serial == parallel, "serial and parallel Monte Carlo counts differ");
    const double pe = bob_error_probability(mc, BobReceiver::homodyne);
    const double mean = pe * static_cast<double>(slots);
    const double sigma = std::sqrt(mean * (1.0 - pe));
    const double z = (static_cast<double>(serial) - mean) / sigma;
    o.require(std::abs(z) <= 3.0, "Monte Carlo BER outside 3 sigma");

    CipherParams big;
    big.m = 2048;
    big.mean_photons = 1e4;
    big.key_bits = 256;
    big.seed = 7;
    const SecurityReport r = security_report(big);
    o.require(r.unicity_lower_bound * r.c1_eve_lower >= 256 * kLn2, "unicity bound below key_bits ln 2");
    o.require(r.advantage, "advantage false for M=2048");
    big.m = 1;
    const SecurityReport plain = security_report(big);
    o.require(!plain.advantage, "advantage true for M=1");
    o.require(plain.unicity_lower_bound * plain.c1_eve_lower >= 256 * kLn2, "unicity bound below key_bits ln 2 at M=1");
    o.detail << "MC errors " << serial << " vs " << num(mean) << " (z = " << num(z) << "); M=2048: pe_eve "
             << num(r.pe_eve) << ", c1 " << num(r.c1_eve_lower) << ", unicity " << r.unicity_lower_bound;
    return o;
}

Outcome block_cipher() {
    Outcome o;
    std::mt19937_64 gen(99);
    std::normal_distribution<double> n(0.0, 2.0);
    double worst_trip = 0.0;
    double worst_energy = 0.0;
    for (std::size_t m : {2u, 4u, 8u}) {
        const BlockKey key{0xC0DE + m, Lfsr::default_taps(), BlockMode::givens};
        const BlockKey phase{0xC0DE + m, Lfsr::default_taps(), BlockMode::phase_randomization};
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Amplitude> in;
            for (std::size_t k = 0; k < m; ++k) in.emplace_back(n(gen), n(gen));
            const auto out = block_encrypt(in, key);
            const auto back = block_decrypt(out, key);
            const auto ph = block_encrypt(in, phase);
            double e_in = 0.0;
            double e_out = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                worst_trip = std::max(worst_trip, std::abs(back[k].value() - in[k].value()));
                e_in += in[k].mean_photons();
                e_out += out[k].mean_photons();
                o.require(std::abs(std::abs(ph[k].value()) - std::abs(in[k].value())) < 1e-10,
                          "phase randomization changed a modulus");
            }
            worst_energy = std::max(worst_energy, std::abs(e_in - e_out));
        }
    }
    o.require(worst_trip < 1e-10, "round trip deviation " + num(worst_trip));
    o.require(worst_energy < 1e-10, "energy deviation " + num(worst_energy));
    o.detail << "max round-trip deviation " << num(worst_trip) << ", max energy change " << num(worst_energy);
    return o;
}

Outcome reading_properties() {
    Outcome o;
    double worst_overlap = 0.0;
    for (double a2 : {0.01, 0.1, 1.0, 10.0}) {
        const Amplitude a(std::sqrt(a2), 0.0);
        const double ov = reading_overlap(a, kPi);
        worst_overlap = std::max(worst_overlap, ov);
        o.require(ov < 1e-12, "overlap at pi for |a|^2=" + num(a2));
    }
    for (int k = 1; k <= 50; ++k) {
        const double a2 = 0.04 * k;
        for (double xi0 : {0.5, 0.7, 0.9}) {
            ReadingScenario s;
            s.alpha = Amplitude(std::sqrt(a2), 0.0);
            s.xi0 = xi0;
            s.xi1 = 1.0 - xi0;
            s.source = ReadingSource::quasi_bell;
            s.receiver = ReadingReceiver::quantum;
            const double q2 = reading_error(s);
            s.source = ReadingSource::coherent;
            const double q1 = reading_error(s);
            s.receiver = ReadingReceiver::homodyne;
            const double c = reading_error(s);
            o.require(q2 == 0.0, "P_e(Q2) != 0");
            o.require(0.0 <= q1 && q1 <= c, "ordering P_e(Q1) <= P_e(C) at |a|^2=" + num(a2));
        }
    }
    for (double kappa : {0.0, 1e-6, 0.1, 0.5, 0.9, 0.999999}) {
        o.require(entanglement_of_formation(2, kappa) == 1.0, "E(Psi2) != 1 at kappa=" + num(kappa));
    }
    o.detail << "max overlap at pi = " << num(worst_overlap);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Helstrom bound vs Fock oracle", helstrom_oracle_agreement},
        {"covariant formula vs SRM channel", covariant_consistency},
        {"3-PSK worked example", three_psk_example},
        {"Bayes/minimax optimality residuals", optimality_residuals},
        {"capacity ordering", capacity_ordering},
        {"reliability orderings", reliability_orderings},
        {"cutoff-rate closed forms", cutoff_closed_forms},
        {"code-length planner", code_length_planner},
        {"Gaussian cutoff rate", gaussian_cutoff_rate},
        {"estimation set", estimation_set},
        {"stream cipher", cipher_properties},
        {"block cipher", block_cipher},
        {"quantum reading", reading_properties},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failures;
        std::printf("%s %2zu %-36s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
