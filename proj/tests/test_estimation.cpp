#include <doctest.h>

#include <cmath>

#include "qshannon/estimation.hpp"

using namespace qshannon;
using doctest::Approx;

TEST_CASE("squeeze parameters") {
    CHECK_NOTHROW(SqueezeParams(1.0, 0.0));
    CHECK_THROWS_AS(SqueezeParams(0.5, 0.0), InvalidArgument);
    CHECK_THROWS_AS(SqueezeParams(2.0, 1.0), InvalidArgument);
    const SqueezeParams p = SqueezeParams::from_squeeze(1.0);
    CHECK(p.mu() == Approx(std::cosh(1.0)));
    CHECK(p.nu() == Approx(std::sinh(1.0)));
}

TEST_CASE("single-quadrature and heterodyne variances") {
    CHECK(crb_single_quadrature(0.0) == 0.25);
    CHECK(crb_single_quadrature(1.0) == 0.75);
    CHECK(yuen_lax_heterodyne_var(0.0) == 1.0);
    CHECK(yuen_lax_heterodyne_var(1.0) == 2.0);
    CHECK_THROWS_AS(crb_single_quadrature(-1.0), InvalidArgument);
}

TEST_CASE("generalized heterodyne") {
    const auto [a, b] = generalized_heterodyne_vars(SqueezeParams(1.0, 0.0));
    CHECK(a == 0.5);
    CHECK(b == 0.5);
    const auto [c, d] = generalized_heterodyne_vars(SqueezeParams::from_squeeze(1.0));
    CHECK(c == Approx(0.25 + 0.25 * std::exp(2.0)).epsilon(1e-14));
    CHECK(d == Approx(0.25 + 0.25 * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("variance sum is minimal without squeezing") {
    for (int k = -40; k <= 40; ++k) {
        const double r = 0.05 * k;
        const auto [a, b] = generalized_heterodyne_vars(SqueezeParams::from_squeeze(r));
        if (k == 0) {
            CHECK(a + b == Approx(1.0).epsilon(1e-15));
        } else {
            CHECK(a + b > 1.0);
        }
    }
}

TEST_CASE("squeezed and coherent probes") {
    CHECK(squeezed_snr(1.0, 1.0).snr == Approx(8.0).epsilon(1e-15));
    CHECK(coherent_snr(1.0, 1.0).snr == Approx(4.0).epsilon(1e-15));
    CHECK(coherent_snr(1.0, 1.0).variance == 0.25);
    const EstimationReport zero = squeezed_snr(0.0, 1.0);
    CHECK(zero.snr == 0.0);
    CHECK(zero.variance == Approx(0.25));
    CHECK(coherent_snr(0.0, 0.7).snr == 0.0);
    for (double ns : {0.0, 0.3, 1.0, 2.0, 7.5, 100.0}) {
        CHECK(squeezed_snr(ns, 1.0).snr == 4 * ns * (ns + 1));
        const EstimationReport r = squeezed_snr(ns, 0.6);
        CHECK(r.mu_s * r.mu_s - r.nu_s * r.nu_s == Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(squeezed_snr(1.0, 1.5), InvalidArgument);
}

TEST_CASE("squeezed SNR is monotone in loss and energy") {
    for (double ns : {0.1, 1.0, 5.0}) {
        double previous = -1.0;
        for (int k = 0; k <= 50; ++k) {
            const double snr = squeezed_snr(ns, k / 50.0).snr;
            CHECK(snr >= previous);
            previous = snr;
        }
    }
    for (double eps : {0.1, 0.5, 1.0}) {
        double previous = -1.0;
        for (int k = 0; k <= 50; ++k) {
            const double snr = squeezed_snr(0.1 * k, eps).snr;
            CHECK(snr >= previous);
            previous = snr;
        }
    }
}

TEST_CASE("crossover between squeezed and coherent probes") {
    for (double ns : {0.5, 1.0, 3.0}) {
        const double eps = snr_crossover(ns);
        CHECK(squeezed_snr(ns, eps).snr == Approx(coherent_snr(ns, eps).snr).epsilon(1e-9));
        CHECK(squeezed_snr(ns, std::min(1.0, eps + 0.05)).snr >= coherent_snr(ns, std::min(1.0, eps + 0.05)).snr);
    }
    CHECK_THROWS_AS(snr_crossover(0.0), InvalidArgument);
}

TEST_CASE("heterodyne, dual homodyne and phase readout") {
    CHECK(heterodyne_snr(1.0) == Approx(2.0));
    CHECK(heterodyne_snr(1.0, 1.0) == Approx(1.0));
    CHECK(dual_homodyne_snr(1.5) == Approx(3.0));
    CHECK(phase_readout(1.0, 1.0) == Approx(kPi / 4));
    CHECK(phase_readout(-1.0, 0.0) == Approx(kPi));
    CHECK_THROWS_AS(phase_readout(std::nan(""), 1.0), InvalidArgument);
}
