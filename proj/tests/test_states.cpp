#include <doctest.h>

#include <cmath>
#include <random>

#include "qshannon/states.hpp"
#include "support.hpp"

using namespace qshannon;
using doctest::Approx;

TEST_CASE("coherent inner product") {
    const Amplitude a(0.3, -0.7);
    CHECK(std::abs(coherent_inner(a, a) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(coherent_inner(Amplitude{}, Amplitude{}) - Complex(1.0)) < 1e-15);

    const Amplitude p(std::sqrt(0.5), 0.0);
    const Amplitude m(-std::sqrt(0.5), 0.0);
    const auto fp = fock::coherent_fock(p);
    const auto fm = fock::coherent_fock(m);
    CHECK(std::abs(coherent_inner(p, m) - fock::inner(fp, fm)) < 1e-12);
    CHECK(coherent_inner(p, m).real() == Approx(std::exp(-2.0 * 0.5 * 2.0 / 2.0)).epsilon(1e-14));
}

TEST_CASE("coherent inner product symmetry and bound") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> n(0.0, 1.5);
    for (int k = 0; k < 200; ++k) {
        const Amplitude a(n(gen), n(gen));
        const Amplitude b(n(gen), n(gen));
        const Complex ab = coherent_inner(a, b);
        CHECK(std::abs(ab - std::conj(coherent_inner(b, a))) < 1e-15);
        CHECK(std::abs(ab) <= 1.0 + 1e-15);
    }
}

TEST_CASE("amplitude validation") {
    CHECK_THROWS_AS(Amplitude(std::nan(""), 0.0), InvalidArgument);
    CHECK_THROWS_AS(Amplitude::from_polar(-1.0, 0.0), InvalidArgument);
    CHECK(Amplitude::from_polar(4.0, kPi / 2).im() == Approx(2.0));
}

TEST_CASE("psk constellation") {
    const Constellation bpsk = psk_constellation(2, 0.5);
    CHECK(bpsk.amplitude(0).re() == Approx(std::sqrt(0.5)));
    CHECK(bpsk.amplitude(1).re() == Approx(-std::sqrt(0.5)));
    CHECK(bpsk.prior(0) == 0.5);
    CHECK(bpsk.prior(1) == 0.5);

    const Constellation psk3 = psk_constellation(3, 1.0);
    CHECK(psk3.amplitude(1).phase() == Approx(2 * kPi / 3));
    CHECK(std::remainder(psk3.amplitude(2).phase() + 2 * kPi / 3, 2 * kPi) == Approx(0.0).epsilon(1e-12));
    CHECK(is_psk(psk3));

    const Constellation vacuum = psk_constellation(4, 0.0);
    CHECK(vacuum.degenerate());
    CHECK(vacuum.fully_degenerate());
    CHECK(vacuum.size() == 4);
}

TEST_CASE("constellation priors are strictly admissible") {
    const std::vector<Amplitude> amps{Amplitude(1, 0), Amplitude(-1, 0)};
    CHECK_THROWS_AS(Constellation(amps, {1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(Constellation(amps, {0.6, 0.6}), InvalidArgument);
    CHECK_THROWS_AS(Constellation(amps, {0.5}), InvalidArgument);
    CHECK_THROWS_AS(Constellation({Amplitude(1, 0)}), InvalidArgument);
    CHECK_NOTHROW(Constellation(amps, {0.3, 0.7}));
}

TEST_CASE("gram matrix kinds") {
    const double kappa = std::exp(-1.0);
    const Constellation bpsk = psk_constellation(2, 0.5);
    const GramMatrix plain = gram(bpsk);
    CHECK(plain.entries(0, 0).real() == Approx(1.0));
    CHECK(plain.entries(0, 1).real() == Approx(kappa).epsilon(1e-14));

    const RVector modified = gram_eigenvalues(gram(bpsk, GramKind::modified));
    CHECK(modified[0] == Approx((1 + kappa) / 2).epsilon(1e-14));
    CHECK(modified[1] == Approx((1 - kappa) / 2).epsilon(1e-14));

    const Constellation far({Amplitude(20, 0), Amplitude(-20, 0)}, {0.3, 0.7});
    const GramMatrix far_plain = gram(far);
    CHECK(std::abs(far_plain.entries(0, 1)) < 1e-300);
    const GramMatrix far_mod = gram(far, GramKind::modified);
    CHECK(far_mod.entries(0, 0).real() == Approx(0.3));
    CHECK(far_mod.entries(1, 1).real() == Approx(0.7));

    const GramMatrix mod2 = gram(bpsk, GramKind::modulus_squared);
    CHECK(mod2.entries(0, 1).real() == Approx(kappa * kappa));
    CHECK(gram_kind_from_string(to_string(GramKind::modulus)) == GramKind::modulus);
    CHECK_THROWS_AS(gram_kind_from_string("nope"), InvalidArgument);
}

TEST_CASE("three-psk modified gram has the K_c, K_s structure") {
    const double ns = 1.0;
    const double kc = std::exp(-1.5 * ns) * std::cos(std::sqrt(3.0) * ns / 2);
    const double ks = std::exp(-1.5 * ns) * std::sin(std::sqrt(3.0) * ns / 2);
    CHECK(kc == Approx(0.14458).epsilon(1e-4));
    CHECK(ks == Approx(0.16996).epsilon(1e-4));

    const GramMatrix g = gram(psk_constellation(3, ns), GramKind::modified);
    const Complex plus(kc / 3, ks / 3);
    CHECK(std::abs(g.entries(0, 1) - plus) < 1e-14);
    CHECK(std::abs(g.entries(0, 2) - std::conj(plus)) < 1e-14);
    CHECK(std::abs(g.entries(1, 2) - plus) < 1e-14);

    const RVector lam = gram_eigenvalues(g);
    std::vector<double> expected{(1 + 2 * kc) / 3, (1 - kc + std::sqrt(3.0) * ks) / 3,
                                 (1 - kc - std::sqrt(3.0) * ks) / 3};
    std::sort(expected.rbegin(), expected.rend());
    for (int k = 0; k < 3; ++k) CHECK(lam[k] == Approx(expected[static_cast<std::size_t>(k)]).epsilon(1e-12));
    CHECK(lam[0] == Approx(0.4297).epsilon(1e-3));
    CHECK(lam[1] == Approx(0.3833).epsilon(1e-3));
    CHECK(lam[2] == Approx(0.1870).epsilon(1e-3));
    CHECK(lam.sum() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gram matrices of random constellations are PSD with unit trace") {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<std::size_t> size(2, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        const Constellation c = testing::random_constellation(gen, size(gen));
        const GramMatrix plain = gram(c);
        const GramMatrix mod = gram(c, GramKind::modified);
        const Eigen::SelfAdjointEigenSolver<CMatrix> ep(plain.entries, Eigen::EigenvaluesOnly);
        const Eigen::SelfAdjointEigenSolver<CMatrix> em(mod.entries, Eigen::EigenvaluesOnly);
        REQUIRE(ep.eigenvalues().minCoeff() >= -1e-10);
        REQUIRE(em.eigenvalues().minCoeff() >= -1e-10);
        REQUIRE(std::abs(mod.entries.trace().real() - 1.0) < 1e-12);
        REQUIRE((plain.entries - plain.entries.adjoint()).norm() < 1e-14);
    }
}

TEST_CASE("psk gram is circulant with DFT spectrum") {
    for (std::size_t m : {2u, 3u, 4u, 8u}) {
        for (double ns : {0.1, 0.5, 1.0, 2.0, 5.0}) {
            const GramMatrix g = gram(psk_constellation(m, ns));
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    const auto ii = static_cast<Eigen::Index>(i);
                    const auto jj = static_cast<Eigen::Index>(j);
                    const auto d = static_cast<Eigen::Index>((j + m - i) % m);
                    CHECK(std::abs(g.entries(ii, jj) - g.entries(0, d)) < 1e-14);
                }
            }
            std::vector<double> dft;
            for (std::size_t k = 0; k < m; ++k) {
                Complex sum = 0.0;
                for (std::size_t n = 0; n < m; ++n) {
                    sum += g.entries(0, static_cast<Eigen::Index>(n)) *
                           std::polar(1.0, 2 * kPi * static_cast<double>(k * n) / static_cast<double>(m));
                }
                dft.push_back(sum.real());
            }
            std::sort(dft.rbegin(), dft.rend());
            const RVector dense = gram_eigenvalues(g);
            for (std::size_t k = 0; k < m; ++k) {
                CHECK(dense[static_cast<Eigen::Index>(k)] == Approx(dft[k]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("gram eigenvalues clamp tiny negatives only") {
    GramMatrix g;
    g.entries = CMatrix::Identity(2, 2);
    CHECK(gram_eigenvalues(g).isApprox(RVector::Ones(2)));
    g.entries(1, 1) = -1e-11;
    CHECK(gram_eigenvalues(g)[1] == 0.0);
    g.entries(1, 1) = -1e-6;
    CHECK_THROWS_AS(gram_eigenvalues(g), NumericalError);
}

TEST_CASE("quasi-Bell pair") {
    const QuasiBellPair q = quasi_bell(Amplitude(std::sqrt(0.5), 0.0));
    CHECK(q.kappa == Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(q.overlap_13() == Approx(0.64805).epsilon(1e-4));
    const double k2 = q.kappa * q.kappa;
    CHECK(q.normalizers[0] == Approx(1 / std::sqrt(2 * (1 + k2))));
    CHECK(q.normalizers[1] == Approx(1 / std::sqrt(2 * (1 - k2))));
    CHECK(q.normalizers[2] == Approx(q.normalizers[0]));
    CHECK(q.normalizers[3] == Approx(q.normalizers[1]));

    const RMatrix g = q.gram();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j) {
                CHECK(g(i, j) == Approx(1.0));
            } else if ((i == 0 && j == 2) || (i == 2 && j == 0)) {
                CHECK(g(i, j) == Approx(q.overlap_13()));
            } else {
                CHECK(g(i, j) == 0.0);
            }
        }
    }

    CHECK(quasi_bell(Amplitude(std::sqrt(20.0), 0.0)).overlap_13() < 1e-15);
    CHECK_THROWS_AS(quasi_bell(Amplitude{}), InvalidArgument);
}
