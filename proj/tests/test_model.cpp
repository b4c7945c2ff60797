#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/model.hpp"

using namespace qsearch;
namespace orc = qsearch::oracle;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_matches_oracle(const Hamiltonian2& h, const orc::Mat& expected, double tol = 1e-12) {
    EXPECT_LE(orc::max_abs(orc::to_eigen(h) - expected), tol);
}

}  // namespace

TEST(SearchParams, RejectsOutOfDomain) {
    EXPECT_THROW(SearchParams::from_overlap(0.0, 0.0, 0.0, 0.1), InvalidParams);
    EXPECT_THROW(SearchParams::from_overlap(-1.0, 0.0, 0.0, 0.1), InvalidParams);
    EXPECT_THROW(SearchParams::from_overlap(1.0, 1.5, 0.0, 0.1), InvalidParams);
    EXPECT_THROW(SearchParams::from_overlap(1.0, -0.1, 0.0, 0.1), InvalidParams);
    EXPECT_THROW(SearchParams::from_overlap(1.0, 0.5, 0.0, 0.0), InvalidParams);
    EXPECT_THROW(SearchParams::from_overlap(1.0, 0.5, 0.0, 1.0), InvalidParams);
    EXPECT_THROW(SearchParams::from_overlap(1.0, 0.5, std::nan(""), 0.5), InvalidParams);
    EXPECT_THROW(SearchParams::from_count(1.0, 0.5, 0.0, 1), InvalidParams);
    EXPECT_NO_THROW(SearchParams::from_overlap(1.0, 1.0, 0.0, 0.5));
    EXPECT_NO_THROW(SearchParams::from_overlap(1.0, 0.0, 0.0, 0.5));
}

TEST(SearchParams, CountConversionIsExact) {
    for (std::uint64_t n : {2ull, 3ull, 100ull, 12345ull, 1'000'000ull, 100'000'000ull}) {
        const auto p = SearchParams::from_count(1.0, 0.5, 0.0, n);
        EXPECT_EQ(p.overlap(), 1.0 / std::sqrt(static_cast<double>(n)));
        EXPECT_EQ(p.count(), n);
    }
}

TEST(SearchParams, PhaseReducedToOneTurn) {
    EXPECT_DOUBLE_EQ(SearchParams::from_overlap(1, 0, -kPi / 2, 0.1).phase(), 1.5 * kPi);
    EXPECT_DOUBLE_EQ(SearchParams::from_overlap(1, 0, 5 * kPi, 0.1).phase(), kPi);
    EXPECT_EQ(reduce_angle(2 * kPi), 0.0);
    EXPECT_EQ(reduce_angle(-1e-300), 0.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const double r = reduce_angle(d(rng));
        EXPECT_GE(r, 0.0);
        EXPECT_LT(r, 2 * kPi);
    }
}

TEST(StateVector2, NormalizedChecksNorm) {
    EXPECT_NO_THROW(StateVector2::normalized(0.6, Complex(0.0, 0.8)));
    EXPECT_THROW(StateVector2::normalized(0.6, 0.6), InvalidParams);
    const auto psi = initial_state(0.1);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(psi.target_probability(), 0.01);
}

TEST(BuildGeneralized, EpsilonZeroEntries) {
    const auto h = build_generalized(SearchParams::from_overlap(1.0, 0.0, 0.0, 0.1));
    EXPECT_NEAR(h.entry(0, 0).real(), 1.01, 1e-15);
    EXPECT_NEAR(h.entry(1, 1).real(), 0.99, 1e-15);
    EXPECT_NEAR(h.entry(0, 1).real(), 0.099498743710662, 1e-14);
    expect_matches_oracle(h, orc::generalized(1.0, 0.0, 0.0, 0.1));
}

TEST(BuildGeneralized, VanishingOverlapLimit) {
    for (double phi : {0.0, 0.7, 2.0, 4.5}) {
        const auto h = build_generalized(SearchParams::from_overlap(1.0, 0.5, phi, 1e-8));
        EXPECT_NEAR(h.entry(0, 0).real(), 1.0, 1e-7);
        EXPECT_NEAR(h.entry(1, 1).real(), 1.0, 1e-7);
        EXPECT_NEAR(std::abs(h.entry(0, 1) - std::polar(0.5, phi)), 0.0, 1e-7);
    }
}

TEST(BuildGeneralized, EqualCouplingQuarterPhase) {
    const auto h = build_generalized(SearchParams::from_overlap(1.0, 1.0, kPi / 2, 0.1));
    const Complex expected = std::sqrt(0.99) * Complex(0.1, 1.0);
    EXPECT_LE(std::abs(h.entry(0, 1) - expected), 1e-15);
    expect_matches_oracle(h, orc::generalized(1.0, 1.0, kPi / 2, 0.1));
}

TEST(BuildGeneralized, MatchesOuterProductsAndIsHermitian) {
    orc::ParamSampler sampler(11);
    for (int i = 0; i < 1000; ++i) {
        const SearchParams p = sampler.next();
        const auto h = build_generalized(p);
        EXPECT_TRUE(h.is_hermitian());
        expect_matches_oracle(h, orc::generalized(p.energy(), p.coupling(), p.phase(), p.overlap()), 1e-12);
    }
}

TEST(BuildFarhiGutmann, ReducesToEpsilonZero) {
    const auto fg = build_farhi_gutmann(1.0, 0.1);
    const auto gen = build_generalized(SearchParams::from_overlap(1.0, 0.0, 1.234, 0.1));
    EXPECT_EQ(max_abs_diff(fg.matrix(), gen.matrix()), 0.0);

    const auto h = build_farhi_gutmann(2.0, 0.5);
    EXPECT_NEAR(h.entry(0, 0).real(), 2.5, 1e-15);
    EXPECT_NEAR(h.entry(1, 1).real(), 1.5, 1e-15);
    EXPECT_NEAR(h.entry(0, 1).real(), 0.8660254037844386, 1e-15);
    expect_matches_oracle(h, orc::generalized(2.0, 0.0, 0.0, 0.5));

    EXPECT_TRUE(build_farhi_gutmann(1.0, 0.999999).is_hermitian());
    EXPECT_THROW(build_farhi_gutmann(0.0, 0.5), InvalidParams);
    EXPECT_THROW(build_farhi_gutmann(1.0, 1.0), InvalidParams);
}

TEST(PauliDecompose, BasisMatrices) {
    const auto id = pauli_decompose(Hamiltonian2(Matrix2::identity()));
    EXPECT_EQ(id.c0, 1.0);
    EXPECT_EQ(id.cx, 0.0);
    EXPECT_EQ(id.cy, 0.0);
    EXPECT_EQ(id.cz, 0.0);

    const auto sx = pauli_decompose(Hamiltonian2(0.0, 1.0, 1.0, 0.0));
    EXPECT_EQ(sx.c0, 0.0);
    EXPECT_EQ(sx.cx, 1.0);
    EXPECT_EQ(sx.cy, 0.0);
    EXPECT_EQ(sx.cz, 0.0);

    const auto sy = pauli_decompose(Hamiltonian2(0.0, Complex(0, -1), Complex(0, 1), 0.0));
    EXPECT_EQ(sy.cy, 1.0);
}

TEST(PauliDecompose, RejectsNonHermitian) {
    EXPECT_THROW(pauli_decompose(Hamiltonian2(0.0, 1.0, 2.0, 0.0)), NonHermitian);
    EXPECT_THROW(pauli_decompose(Hamiltonian2(Complex(0, 1e-9), 0.0, 0.0, 0.0)), NonHermitian);
    EXPECT_NO_THROW(pauli_decompose(Hamiltonian2(Complex(0, 1e-13), 0.0, 0.0, 0.0)));
}

TEST(PauliDecompose, RabiNormIsHalfEigenGap) {
    const auto h = build_generalized(SearchParams::from_overlap(1.0, 0.5, kPi, 0.1));
    const double rabi = pauli_decompose(h).rabi_norm();
    EXPECT_NEAR(rabi, 0.4, 1e-15);
    EXPECT_NEAR(rabi, 0.5 * orc::eigen_gap(orc::to_eigen(h)), 1e-14);
}

TEST(PauliDecompose, GeneralizedClosedForms) {
    orc::ParamSampler sampler(12);
    for (int i = 0; i < 1000; ++i) {
        const SearchParams p = sampler.next();
        const double e = p.energy(), eps = p.coupling(), phi = p.phase(), x = p.overlap();
        const double s = std::sqrt(1 - x * x);
        const double aligned = e * x + eps * std::cos(phi);
        const auto c = pauli_decompose(build_generalized(p));
        const double scale = e;
        EXPECT_NEAR(c.c0, e + eps * x * std::cos(phi), 1e-14 * scale);
        EXPECT_NEAR(c.cz, x * aligned, 1e-14 * scale);
        EXPECT_NEAR(c.cx, s * aligned, 1e-14 * scale);
        EXPECT_NEAR(c.cy, -s * eps * std::sin(phi), 1e-14 * scale);

        // |c|^2 = (Ex + eps cos phi)^2 + (1 - x^2) eps^2 sin^2 phi
        const double denom = aligned * aligned + (1 - x * x) * std::pow(eps * std::sin(phi), 2);
        const double rabi = c.rabi_norm();
        if (denom > 1e-20) {
            EXPECT_NEAR(rabi * rabi / denom, 1.0, 1e-12);
            const double gap = orc::eigen_gap(orc::generalized(e, eps, phi, x));
            EXPECT_NEAR(2 * rabi / gap, 1.0, 1e-12);
        }
    }
}

TEST(PauliDecompose, ReconstructionOfRandomHermitian) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const Complex off(d(rng), d(rng));
        const Hamiltonian2 h(d(rng), off, std::conj(off), d(rng));
        const auto c = pauli_decompose(h);
        EXPECT_LE(max_abs_diff(c.reconstruct().matrix(), h.matrix()), 1e-12);
        EXPECT_GE(c.rabi_norm(), 0.0);
    }
}

TEST(DecomposeInteraction, EpsilonZeroIsFreePlusExchange) {
    const double x = 0.1;
    const auto d = decompose_interaction(SearchParams::from_overlap(1.0, 0.0, 2.0, x));
    EXPECT_NEAR(d.e1, 1.01, 1e-15);
    EXPECT_NEAR(d.e2, 0.99, 1e-15);
    EXPECT_NEAR(d.e3, x * std::sqrt(1 - x * x), 1e-15);
    EXPECT_EQ(d.varphi, 0.0);
}

TEST(DecomposeInteraction, VanishingOverlapLimit) {
    const auto d = decompose_interaction(SearchParams::from_overlap(1.0, 0.5, 1.3, 1e-8));
    EXPECT_NEAR(d.e1, 1.0, 1e-7);
    EXPECT_NEAR(d.e2, 1.0, 1e-7);
    EXPECT_NEAR(d.e3, 0.5, 1e-7);
    EXPECT_NEAR(d.varphi, 1.3, 1e-7);
}

TEST(DecomposeInteraction, EqualCouplingQuarterPhase) {
    const auto p = SearchParams::from_overlap(1.0, 1.0, kPi / 2, 0.1);
    const auto d = decompose_interaction(p);
    EXPECT_NEAR(d.e3, 0.9999499987499374, 1e-15);
    EXPECT_NEAR(d.varphi, 1.4711276743037347, 1e-15);
    expect_matches_oracle(recompose_from_interaction(d, p.overlap()), orc::generalized(1.0, 1.0, kPi / 2, 0.1));
}

TEST(DecomposeInteraction, ExponentSignPairMatches) {
    // E3 e^{-i varphi} must equal sqrt(1 - x^2)(Ex + eps e^{-i phi}) as well.
    orc::ParamSampler sampler(14);
    for (int i = 0; i < 200; ++i) {
        const SearchParams p = sampler.next();
        const auto d = decompose_interaction(p);
        const double s = std::sqrt(1 - p.overlap() * p.overlap());
        const Complex minus = s * (p.energy() * p.overlap() + std::polar(p.coupling(), -p.phase()));
        EXPECT_LE(std::abs(std::polar(d.e3, -d.varphi) - minus), 1e-12);
        EXPECT_GE(d.e3, 0.0);
        EXPECT_GT(d.varphi, -kPi);
        EXPECT_LE(d.varphi, kPi);
        EXPECT_NEAR(d.e2, p.energy() * (1 - p.overlap() * p.overlap()), 1e-12);
    }
}

TEST(RecomposeFromInteraction, RoundTrip) {
    const auto p = SearchParams::from_overlap(1.0, 0.3, 1.0, 0.1);
    const auto h = recompose_from_interaction(decompose_interaction(p), p.overlap());
    EXPECT_LE(max_abs_diff(h.matrix(), build_generalized(p).matrix()), 1e-12);

    orc::ParamSampler sampler(15);
    for (int i = 0; i < 1000; ++i) {
        const SearchParams q = sampler.next();
        const auto r = recompose_from_interaction(decompose_interaction(q), q.overlap());
        EXPECT_LE(max_abs_diff(r.matrix(), build_generalized(q).matrix()), 1e-12);
    }
}

TEST(RecomposeFromInteraction, EpsilonZeroIsFarhiGutmann) {
    const auto d = decompose_interaction(SearchParams::from_overlap(1.5, 0.0, 0.0, 0.3));
    EXPECT_LE(max_abs_diff(recompose_from_interaction(d, 0.3).matrix(), build_farhi_gutmann(1.5, 0.3).matrix()),
              1e-12);
}

TEST(RecomposeFromInteraction, UncoupledIdentity) {
    for (double x : {0.05, 0.3, 0.7}) {
        const auto h = recompose_from_interaction({1.0, 1.0, 0.0, 0.0}, x);
        EXPECT_LE(max_abs_diff(h.matrix(), Matrix2::identity()), 1e-12);
    }
}

TEST(RecomposeFromInteraction, RejectsBadInput) {
    EXPECT_THROW(recompose_from_interaction({1.0, 0.0, 0.0, 0.0}, 0.1), InvalidParams);
    EXPECT_THROW(recompose_from_interaction({1.0, 1.0, -0.1, 0.0}, 0.1), InvalidParams);
    EXPECT_THROW(recompose_from_interaction({1.0, 1.0, 0.0, 0.0}, 1.0), InvalidParams);
}
