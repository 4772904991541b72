#include <gtest/gtest.h>

#include <random>

#include "hamlie/dividedpowers.hpp"

using namespace hamlie;

namespace {

// Exact integer binomial, reduced afterwards; independent of Lucas' theorem.
fp_t exact_binom_mod(int n, int k, fp_t p) {
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<fp_t>(r % p);
}

DPElement random_element(fp_t p, std::mt19937_64& rng, int terms) {
    DPElement e(p);
    for (int t = 0; t < terms; ++t) e.set(rng() % p, rng() % p, rng() % p);
    return e;
}

Derivation random_derivation(fp_t p, std::mt19937_64& rng) {
    return {random_element(p, rng, 3), random_element(p, rng, 3)};
}

}  // namespace

TEST(Binomial, LucasAgreesWithExactIntegers) {
    for (fp_t p : {5u, 7u, 11u})
        for (int n = 0; n < 40; ++n)
            for (int k = 0; k <= n; ++k) EXPECT_EQ(binom_mod(n, k, p), exact_binom_mod(n, k, p)) << n << " " << k;
}

TEST(DividedPowers, MonomialProductRule) {
    for (fp_t p : {5u, 7u}) {
        const int P = static_cast<int>(p);
        for (int a = 0; a < P; ++a)
            for (int c = 0; c < P; ++c) {
                DPElement prod = DPElement::monomial(p, a, 1) * DPElement::monomial(p, c, 0);
                fp_t expect = a + c < P ? exact_binom_mod(a + c, a, p) : 0;
                if (a + c < P) EXPECT_EQ(prod.coeff(a + c, 1), expect);
                else EXPECT_TRUE(prod.is_zero());
            }
    }
    // x * x = 2 x^(2), and x^(p-1) * x = p x^(p) = 0.
    DPElement x = DPElement::monomial(5, 1, 0);
    EXPECT_EQ((x * x).coeff(2, 0), 2u);
    EXPECT_TRUE((DPElement::monomial(5, 4, 0) * x).is_zero());
}

TEST(DividedPowers, RingAxiomsOnRandomElements) {
    std::mt19937_64 rng(7);
    for (fp_t p : {5u, 7u}) {
        for (int t = 0; t < 20; ++t) {
            DPElement f = random_element(p, rng, 4), g = random_element(p, rng, 4), h = random_element(p, rng, 4);
            EXPECT_EQ(f * g, g * f);
            EXPECT_EQ((f * g) * h, f * (g * h));
            EXPECT_EQ(f * (g + h), f * g + f * h);
            EXPECT_EQ(f * DPElement::one(p), f);
        }
    }
}

TEST(Derivations, PartialsLowerExponents) {
    DPElement m = DPElement::monomial(7, 3, 2);
    EXPECT_EQ(m.partial_x(), DPElement::monomial(7, 2, 2));
    EXPECT_EQ(m.partial_y(), DPElement::monomial(7, 3, 1));
    EXPECT_TRUE(DPElement::monomial(7, 0, 4).partial_x().is_zero());
}

TEST(Derivations, LeibnizRule) {
    std::mt19937_64 rng(13);
    for (fp_t p : {5u, 7u})
        for (int t = 0; t < 25; ++t) {
            Derivation d = random_derivation(p, rng);
            DPElement f = random_element(p, rng, 3), g = random_element(p, rng, 3);
            EXPECT_EQ(apply_derivation(d, f * g), apply_derivation(d, f) * g + f * apply_derivation(d, g));
        }
}

TEST(Derivations, BracketIsOperatorCommutator) {
    std::mt19937_64 rng(17);
    for (fp_t p : {5u, 7u})
        for (int t = 0; t < 15; ++t) {
            Derivation d = random_derivation(p, rng), e = random_derivation(p, rng);
            FpMatrix md = operator_matrix(d), me = operator_matrix(e);
            EXPECT_EQ(operator_matrix(bracket(d, e)), md * me - me * md);
        }
}

TEST(Derivations, JacobiOnRandomTriples) {
    std::mt19937_64 rng(19);
    const fp_t p = 5;
    for (int t = 0; t < 20; ++t) {
        Derivation a = random_derivation(p, rng), b = random_derivation(p, rng), c = random_derivation(p, rng);
        Derivation s = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        EXPECT_TRUE(s.is_zero());
    }
}

TEST(PMap, KnownPowers) {
    for (fp_t p : {5u, 7u, 11u}) {
        const int P = static_cast<int>(p);
        // d_y^[p] = 0 and (x d_x)^[p] = x d_x.
        EXPECT_TRUE(p_power(Derivation::dy(p, 0, 0)).is_zero());
        EXPECT_EQ(p_power(Derivation::dx(p, 1, 0)), Derivation::dx(p, 1, 0));
        // (-d_x + x^(p-1) y d_y)^[p] = y d_y.
        Derivation e = Derivation::dy(p, P - 1, 1) - Derivation::dx(p, 0, 0);
        EXPECT_EQ(p_power(e), Derivation::dy(p, 0, 1));
        // Hence (d_x - x^(p-1) y d_y)^[p] = -y d_y.
        EXPECT_EQ(p_power(e.scaled(p - 1)), Derivation::dy(p, 0, 1, p - 1));
    }
}

TEST(PMap, SingleNonToralTermsOfNonnegativeDegreeArePNilpotent) {
    const fp_t p = 5;
    const int P = static_cast<int>(p);
    for (int a = 0; a < P; ++a)
        for (int b = 0; b < P; ++b) {
            if (a + b < 1) continue;
            if (!(a == 1 && b == 0)) EXPECT_TRUE(p_power(Derivation::dx(p, a, b)).is_zero()) << a << "," << b;
            if (!(a == 0 && b == 1)) EXPECT_TRUE(p_power(Derivation::dy(p, a, b)).is_zero()) << a << "," << b;
        }
}

TEST(PMap, MatchesOperatorPower) {
    std::mt19937_64 rng(23);
    const fp_t p = 5;
    for (int t = 0; t < 10; ++t) {
        Derivation d = random_derivation(p, rng);
        EXPECT_EQ(operator_matrix(p_power(d)), operator_matrix(d).pow(p));
    }
}
