#include <gtest/gtest.h>

#include <sstream>

#include "hamlie/cartan.hpp"

using namespace hamlie;

namespace {

std::size_t rank_of(fp_t p, const std::vector<FpVector>& vs, std::size_t n) {
    if (vs.empty()) return 0;
    return rank(FpMatrix::from_rows(p, vs, n));
}

bool same_span(fp_t p, const std::vector<FpVector>& a, const std::vector<FpVector>& b, std::size_t n) {
    std::vector<FpVector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    std::size_t r = rank_of(p, both, n);
    return r == rank_of(p, a, n) && r == rank_of(p, b, n);
}

}  // namespace

TEST(Algebras, Dimensions) {
    for (fp_t p : {5u, 7u}) {
        auto w2 = build_W2(p, false);
        EXPECT_EQ(w2->dim(), 2u * p * p);
        EXPECT_EQ(build_H(p).dim(), p * p);
        EXPECT_EQ(build_p_envelope(p)->dim(), p * p + 1);
    }
    EXPECT_EQ(build_p_envelope(11)->dim(), 122u);
    EXPECT_THROW(build_p_envelope(4), std::invalid_argument);
}

TEST(Algebras, HamiltonianSpanIsASubalgebra) {
    const fp_t p = 5;
    auto h = hamiltonian_basis(p);
    std::vector<std::string> names(h.size(), "");
    for (std::size_t i = 0; i < h.size(); ++i) names[i] = h[i].to_string();
    // Throws if the span were not closed.
    auto alg = algebra_from_derivations(p, "H", h, names, false);
    EXPECT_EQ(alg->dim(), p * p);
}

TEST(Algebras, FiltrationDimensions) {
    for (fp_t p : {5u, 7u, 11u}) {
        auto hh = build_p_envelope(p);
        auto h0 = filtration_component(*hh, 0), h1 = filtration_component(*hh, 1);
        EXPECT_EQ(h0.size(), p * p - 1);
        EXPECT_EQ(h1.size(), p * p - 5);
        // Codimension two inside the p-envelope.
        EXPECT_EQ(hh->dim() - h0.size(), 2u);
        std::vector<FpVector> tail0, tail1;
        for (std::size_t i = 2; i < hh->dim(); ++i) tail0.push_back(hh->unit(i));
        for (std::size_t i = 6; i < hh->dim(); ++i) tail1.push_back(hh->unit(i));
        EXPECT_TRUE(same_span(p, h0, tail0, hh->dim()));
        EXPECT_TRUE(same_span(p, h1, tail1, hh->dim()));
        for (std::size_t i = 0; i < hh->dim(); ++i) EXPECT_EQ(hh->depths[i] >= 1, i >= 6) << i;
    }
}

TEST(Algebras, Gl2ProjectionIsAHomomorphism) {
    const fp_t p = 7;
    auto hh = build_p_envelope(p);
    for (std::size_t i = 2; i < hh->dim(); ++i)
        for (std::size_t j = 2; j < hh->dim(); ++j) {
            FpMatrix a = gl2_projection(*hh, hh->unit(i)), b = gl2_projection(*hh, hh->unit(j));
            EXPECT_EQ(gl2_projection(*hh, hh->bracket(hh->unit(i), hh->unit(j))), a * b - b * a) << i << "," << j;
        }
    EXPECT_THROW(gl2_projection(*hh, hh->unit(0)), std::invalid_argument);
    EXPECT_TRUE(gl2_projection(*hh, hh->unit(6)).is_zero());
}

TEST(Algebras, NamedBrackets) {
    for (fp_t p : {5u, 7u}) {
        auto hh = build_p_envelope(p);
        auto e = [&](const char* n) { return named_element(*hh, n); };
        EXPECT_EQ(hh->bracket(e("X"), e("Y")), e("H"));
        FpVector two_x = e("X");
        PrimeField f(p);
        for (auto& x : two_x) x = f.mul(x, 2);
        EXPECT_EQ(hh->bracket(e("H"), e("X")), two_x);
        // [d_y, d_x'] = -x^(p-1) d_y.
        FpVector expect = e("x^(p-1)d_y");
        for (auto& x : expect) x = f.neg(x);
        EXPECT_EQ(hh->bracket(e("d_y"), e("d_x'")), expect);
        for (const auto& n : named_elements()) EXPECT_NO_THROW(named_element(*hh, n)) << n;
    }
}

TEST(Algebras, PMapFacts) {
    for (fp_t p : {5u, 7u, 11u}) {
        auto hh = build_p_envelope(p);
        FpVector minus_ydy = hh->unit(3);
        minus_ydy[3] = p - 1;
        EXPECT_EQ(to_dense(hh->pmap[0], hh->dim()), minus_ydy);
        EXPECT_TRUE(hh->pmap[1].empty());
        EXPECT_EQ(to_dense(hh->pmap[2], hh->dim()), hh->unit(2));
        EXPECT_EQ(to_dense(hh->pmap[3], hh->dim()), hh->unit(3));
        for (std::size_t i = 4; i < hh->dim(); ++i) EXPECT_TRUE(hh->pmap[i].empty()) << hh->names[i];
    }
}

TEST(Algebras, JacobiExhaustiveAtFive) {
    auto hh = build_p_envelope(5);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < hh->dim(); ++i)
        for (std::size_t j = 0; j < hh->dim(); ++j)
            for (std::size_t k = 0; k < hh->dim(); ++k)
                if (!jacobi_holds(*hh, i, j, k)) ++failures;
    EXPECT_EQ(failures, 0u);
}

TEST(Algebras, StructureConstantsMatchDerivationBrackets) {
    auto hh = build_p_envelope(7);
    for (std::size_t i = 0; i < hh->dim(); ++i)
        for (std::size_t j = 0; j < hh->dim(); ++j)
            EXPECT_EQ(hh->realize(to_dense(hh->brackets[i][j], hh->dim())),
                      bracket(hh->realization[i], hh->realization[j]));
}

TEST(Subalgebras, NGenerationDependsOnP) {
    for (fp_t p : {5u, 7u, 11u}) {
        auto hh = build_p_envelope(p);
        std::vector<FpVector> gens;
        for (const char* n : {"X", "x^(p-1)d_y", "A", "C"}) gens.push_back(named_element(*hh, n));
        auto sub = spin_subalgebra(*hh, gens);
        std::vector<FpVector> n_basis = filtration_component(*hh, 1);
        n_basis.push_back(named_element(*hh, "X"));
        if (p == 5) {
            EXPECT_LT(sub.size(), p * p - 4);
            gens.push_back(named_element(*hh, "J"));
            auto closed = spin_subalgebra(*hh, gens);
            EXPECT_EQ(closed.size(), p * p - 4);
            EXPECT_TRUE(same_span(p, closed, n_basis, hh->dim()));
        } else {
            EXPECT_EQ(sub.size(), p * p - 4);
            EXPECT_TRUE(same_span(p, sub, n_basis, hh->dim()));
        }
    }
}

TEST(Subalgebras, GeneratorSetSpinsToEverything) {
    for (fp_t p : {5u, 7u}) {
        auto hh = build_p_envelope(p);
        std::vector<FpVector> gens;
        for (auto g : hh->generators) gens.push_back(hh->unit(g));
        EXPECT_EQ(spin_subalgebra(*hh, gens).size(), hh->dim());
    }
}

TEST(Subalgebras, WittRolesObeyWittBrackets) {
    for (fp_t p : {5u, 7u}) {
        auto hh = build_p_envelope(p);
        auto roles = witt_roles(*hh);
        ASSERT_EQ(roles.size(), p);
        PrimeField f(p);
        for (int i = 0; i < static_cast<int>(p); ++i)
            for (int j = 0; j < static_cast<int>(p); ++j) {
                // [x^(i) d, x^(j) d] = (C(i+j-1, i) - C(i+j-1, j)) x^(i+j-1) d.
                FpVector expect(hh->dim(), 0);
                if (i + j - 1 >= 0 && i + j - 1 < static_cast<int>(p)) {
                    fp_t c = f.sub(binom_mod(i + j - 1, i, p), binom_mod(i + j - 1, j, p));
                    f.axpy(expect, c, roles[i + j - 1]);
                }
                EXPECT_EQ(hh->bracket(roles[i], roles[j]), expect) << i << "," << j;
            }
    }
}

TEST(Algebras, StructureTableIsDeterministic) {
    std::ostringstream a, b;
    write_structure_table(a, *build_p_envelope(5));
    write_structure_table(b, *detail::make_p_envelope(5));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(a.str().find("[e0,e1] ="), std::string::npos);
}
