#include <gtest/gtest.h>

#include <map>
#include <random>

#include "hamlie/induction.hpp"
#include "hamlie/oracles.hpp"

using namespace hamlie;

namespace {

const InducedModule& induced(fp_t p, std::int64_t a, std::int64_t b) {
    static std::map<std::tuple<fp_t, fp_t, fp_t>, InducedModule> cache;
    Weight w = make_weight(a, b, p);
    auto key = std::make_tuple(p, w.x, w.y);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_induced(p, w)).first;
    return it->second;
}

FpVector engine_action(const InducedModule& z, const std::string& name, const FpVector& v) {
    return z.module->apply_element(named_element(*z.module->alg, name), v);
}

FpVector random_vector(const InducedModule& z, std::mt19937_64& rng) {
    FpVector v(z.dim());
    for (auto& x : v) x = static_cast<fp_t>(rng() % z.p);
    return v;
}

FpVector unit_vector(const InducedModule& z, int a1, int a2, std::size_t i) {
    FpVector v(z.dim(), 0);
    v[z.index(a1, a2, i)] = 1;
    return v;
}

// Maximal vectors of Z, as global vectors: a basis of each space plus a few random combinations.
std::vector<FpVector> maximal_samples(const InducedModule& z, std::mt19937_64& rng) {
    std::vector<FpVector> out;
    PrimeField f(z.p);
    for (const auto& sp : maximal_vectors(*z.module)) {
        for (const auto& b : sp.basis) out.push_back(z.module->to_global(sp.block, b));
        if (sp.basis.size() > 1)
            for (int t = 0; t < 3; ++t) {
                FpVector c(sp.basis[0].size(), 0);
                for (const auto& b : sp.basis) f.axpy(c, static_cast<fp_t>(rng() % z.p), b);
                out.push_back(z.module->to_global(sp.block, c));
            }
    }
    return out;
}

}  // namespace

TEST(GL2, SimpleModuleRelations) {
    for (fp_t p : {5u, 7u}) {
        PrimeField f(p);
        for (fp_t a = 0; a < p; ++a)
            for (fp_t b = 0; b < p; ++b) {
                GL2Module m = GL2Module::simple(p, {a, b});
                ASSERT_EQ(m.dim(), f.sub(a, b) + 1u);
                FpMatrix H = m.xdx - m.ydy;
                EXPECT_EQ(m.X * m.Y - m.Y * m.X, H);
                EXPECT_EQ(H * m.X - m.X * H, m.X.scaled(2));
                EXPECT_EQ(H * m.Y - m.Y * H, m.Y.scaled(p - 2));
                EXPECT_TRUE(m.X.pow(p).is_zero());
                EXPECT_TRUE(m.Y.pow(p).is_zero());
                EXPECT_EQ(m.xdx.pow(p), m.xdx);
                EXPECT_EQ(m.ydy.pow(p), m.ydy);
                // the top vector carries lambda
                EXPECT_EQ(m.weight_of(m.n), (Weight{a, b}));
            }
    }
}

TEST(GL2, TwoDimensionalCase) {
    GL2Module m = GL2Module::simple(7, {3, 2});
    ASSERT_EQ(m.dim(), 2u);
    EXPECT_EQ(m.X * FpVector({1, 0}), (FpVector{0, 1}));
    EXPECT_EQ(m.Y * FpVector({0, 1}), (FpVector{1, 0}));
    // the lower vector has weights (b, b+1) with b = a-1
    EXPECT_EQ(m.weight_of(0), (Weight{2, 3}));
}

TEST(GL2, YActionFromSl2Lemma) {
    // (Y X^i) m = i(-alpha - i + 1) X^{i-1} m for the lowest vector m of H-weight alpha = -n.
    const fp_t p = 5;
    PrimeField f(p);
    GL2Module m = GL2Module::simple(p, {2, 0});
    ASSERT_EQ(m.dim(), 3u);
    std::int64_t alpha = -static_cast<std::int64_t>(m.n);
    FpVector low = {1, 0, 0};
    FpVector xi = low;
    for (int i = 1; i <= 2; ++i) {
        FpVector prev = xi;
        xi = m.X * xi;
        FpVector expect = prev;
        fp_t c = f.from_int(i * (-alpha - i + 1));
        for (auto& x : expect) x = f.mul(x, c);
        EXPECT_EQ(m.Y * xi, expect);
    }
}

TEST(Induced, DimensionsAndModuleChecksAtFive) {
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            const InducedModule& z = induced(5, a, b);
            EXPECT_EQ(z.dim(), 25u * z.m0.dim());
            CheckResult r = verify_module(*z.module);
            EXPECT_TRUE(r.ok) << z.module->label << ": " << r.detail;
        }
}

TEST(Induced, SampledModuleChecksAtSeven) {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {6, 6}, {0, 6}, {4, 1}, {2, 5}}) {
        const InducedModule& z = induced(7, a, b);
        CheckResult r = verify_module(*z.module);
        EXPECT_TRUE(r.ok) << z.module->label << ": " << r.detail;
    }
    EXPECT_EQ(induced(7, 1, 0).dim(), 98u);
    EXPECT_EQ(induced(5, 0, 0).dim(), 25u);
}

TEST(Induced, PBWWeightBookkeeping) {
    for (fp_t p : {5u, 7u}) {
        const InducedModule& z = induced(p, 3, 1);
        AlgebraPtr alg = z.module->alg;
        FpMatrix hx = z.module->dense(alg->torus_x), hy = z.module->dense(alg->torus_y);
        PrimeField f(p);
        for (std::size_t k = 0; k < z.dim(); ++k) {
            PBWIndex t = z.unpack(k);
            ASSERT_EQ(z.index(t), k);
            Weight mw = z.m0.weight_of(t.i - 1);
            FpVector e(z.dim(), 0);
            e[k] = 1;
            FpVector ex(z.dim(), 0), ey(z.dim(), 0);
            ex[k] = f.sub(mw.x, static_cast<fp_t>(t.a1));
            ey[k] = f.sub(mw.y, static_cast<fp_t>(t.a2));
            EXPECT_EQ(hx * e, ex);
            EXPECT_EQ(hy * e, ey);
        }
    }
}

TEST(Induced, TopVectorIsMaximal) {
    for (fp_t p : {5u, 7u})
        for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 0}, {0, 0}, {1, 0}, {4, 4}}) {
            const InducedModule& z = induced(p, a, b);
            FpVector top = unit_vector(z, 0, 0, z.m0.dim());
            for (auto r : z.module->alg->raising) EXPECT_TRUE(is_zero(z.module->apply(r, top)));
        }
    const InducedModule& z = induced(5, 2, 0);
    auto ws = maximal_weights(*z.module);
    EXPECT_NE(std::find(ws.begin(), ws.end(), Weight{2, 0}), ws.end());
}

TEST(Induced, WorkedActions) {
    for (fp_t p : {5u, 7u}) {
        PrimeField f(p);
        // d_x' d_x'^{p-1} (x) m = -y d_y (x) m = -a (1 (x) m)
        for (fp_t a = 0; a < p; ++a) {
            const InducedModule& z = induced(p, a, a);
            FpVector out = z.module->apply(0, unit_vector(z, p - 1, 0, 1));
            FpVector expect(z.dim(), 0);
            expect[z.index(0, 0, 1)] = f.neg(a);
            EXPECT_EQ(out, expect);
        }
        // x d_x multiplies d_x'^{a1} d_y^{a2} (x) m by wt_x(m) - a1
        const InducedModule& z = induced(p, 1, 0);
        for (std::size_t k = 0; k < z.dim(); k += 3) {
            PBWIndex t = z.unpack(k);
            FpVector e(z.dim(), 0);
            e[k] = 1;
            FpVector expect(z.dim(), 0);
            expect[k] = f.sub(z.m0.weight_of(t.i - 1).x, static_cast<fp_t>(t.a1));
            EXPECT_EQ(z.module->apply(z.module->alg->torus_x, e), expect);
        }
    }
}

TEST(Oracles, GeneralFormulasMatchEngineOnRandomVectors) {
    std::mt19937_64 rng(20240601);
    const std::vector<std::pair<int, int>> weights = {{0, 0}, {1, 0}, {-1, -1}, {0, -1}, {3, 1}};
    for (fp_t p : {5u, 7u})
        for (auto [a, b] : weights) {
            const InducedModule& z = induced(p, a, b);
            for (const auto& name : oracle_elements()) {
                if (!oracle_is_general(name)) continue;
                if (name == "J" && p != 5) continue;
                if (name == "L") continue;  // see PrintedLDisplayIsNegativeOfL
                for (int trial = 0; trial < 200; ++trial) {
                    FpVector v = random_vector(z, rng);
                    ASSERT_EQ(oracle_action(z, name, v), engine_action(z, name, v))
                        << name << " on " << z.module->label << " p=" << p << " trial " << trial;
                }
            }
        }
}

// The printed L formula is the action of -L = x y^(p-2) d_x - y^(p-1) d_y. Pinned here
// term by term; the hand check below fixes which side carries the sign.
TEST(Oracles, PrintedLDisplayIsNegativeOfL) {
    std::mt19937_64 rng(5150);
    for (fp_t p : {5u, 7u})
        for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {-1, -1}, {0, -1}, {3, 1}}) {
            const InducedModule& z = induced(p, a, b);
            PrimeField f(p);
            for (int trial = 0; trial < 200; ++trial) {
                FpVector v = random_vector(z, rng);
                FpVector eng = engine_action(z, "L", v);
                for (auto& x : eng) x = f.neg(x);
                ASSERT_EQ(oracle_action(z, "L", v), eng) << z.module->label << " p=" << p;
            }
        }
}

TEST(Oracles, LOnDyPowerByHand) {
    // L d_y^{p-2} (x) m = (ad(-d_y))^{p-2}(L) m = -(y d_y - x d_x) m, the lower terms lying in H^_(1).
    for (fp_t p : {5u, 7u}) {
        PrimeField f(p);
        const InducedModule& z = induced(p, 3, 1);
        for (std::size_t i = 1; i <= z.m0.dim(); ++i) {
            Weight w = z.m0.weight_of(i - 1);
            FpVector expect(z.dim(), 0);
            expect[z.index(0, 0, i)] = f.sub(w.x, w.y);
            EXPECT_EQ(engine_action(z, "L", unit_vector(z, 0, p - 2, i)), expect);
        }
    }
}

TEST(Oracles, DyOnlyShiftsBelowTopExponent) {
    const InducedModule& z = induced(7, 2, 0);
    for (int a1 = 0; a1 < 6; ++a1)
        for (int a2 = 0; a2 < 6; ++a2) {
            FpVector v = unit_vector(z, a1, a2, 2);
            EXPECT_EQ(engine_action(z, "d_y", v), unit_vector(z, a1, a2 + 1, 2));
        }
}

TEST(Oracles, MaximalVectorFormulasMatchEngine) {
    std::mt19937_64 rng(7);
    for (fp_t p : {5u, 7u})
        for (fp_t a = 0; a < p; ++a)
            for (fp_t b = 0; b < p; ++b) {
                const InducedModule& z = induced(p, a, b);
                for (const auto& v : maximal_samples(z, rng))
                    for (const auto& name : oracle_elements()) {
                        if (name == "J" && p != 5) continue;
                        if (name == "L") continue;
                        FpVector eng = engine_action(z, name, v);
                        ASSERT_EQ(oracle_action(z, name, v), eng) << name << " on " << z.module->label;
                        if (name != "L" && name != "Y" && name != "d_y")
                            EXPECT_TRUE(is_zero(eng)) << name << " should kill a maximal vector";
                    }
            }
}

TEST(Oracles, COnTopCornerOfOneDimensionalInduction) {
    for (fp_t p : {5u, 7u}) {
        PrimeField f(p);
        for (fp_t a = 0; a < p; ++a) {
            const InducedModule& z = induced(p, a, a);
            FpVector v = unit_vector(z, p - 1, p - 1, 1);
            FpVector expect(z.dim(), 0);
            expect[z.index(0, p - 3, 1)] = f.sub(p - 1, a);
            EXPECT_EQ(engine_action(z, "C", v), expect);
            EXPECT_EQ(oracle_action(z, "C", v), expect);
        }
    }
}

TEST(Oracles, YOnTwoDimensionalW) {
    for (fp_t p : {5u, 7u}) {
        const InducedModule& z = induced(p, 3, 2);
        PrimeField f(p);
        FpVector w = unit_vector(z, 1, 1, 2);
        f.axpy(w, 1, unit_vector(z, 0, 2, 1));
        FpVector expect = unit_vector(z, 1, 1, 1);
        for (auto& x : expect) x = f.neg(x);
        f.axpy(expect, p - 1, unit_vector(z, 2, 0, 2));
        EXPECT_EQ(engine_action(z, "Y", w), expect);
        EXPECT_EQ(oracle_action(z, "Y", w), expect);
    }
}

TEST(Oracles, MaximalVectorFactsHold) {
    // For a maximal vector v = sum d_x'^{a1} d_y^{a2} (x) m_a of weight lambda:
    // X m_a = 0 if a1 = p-1 or a2 = 0; r_a m_a = 0 and t_a m_a = 0 and Y m_a = 0 if a2 = p-1;
    // s_a m_a = 0 if a1 = p-1.
    std::mt19937_64 rng(99);
    for (fp_t p : {5u, 7u}) {
        PrimeField f(p);
        for (fp_t l1 = 0; l1 < p; ++l1)
            for (fp_t l2 = 0; l2 < p; ++l2) {
                const InducedModule& z = induced(p, l1, l2);
                for (const auto& sp : maximal_vectors(*z.module)) {
                    FpVector v = z.module->to_global(sp.block, sp.basis[0]);
                    Weight w = sp.weight;
                    detail::OracleBuilder o(z, v);
                    for (int a1 = 0; a1 < static_cast<int>(p); ++a1)
                        for (int a2 = 0; a2 < static_cast<int>(p); ++a2) {
                            FpVector m = o.m(a1, a2);
                            if (is_zero(m)) continue;
                            const int P = static_cast<int>(p);
                            if (a1 == P - 1 || a2 == 0) EXPECT_TRUE(is_zero(o.X(m))) << z.module->label;
                            if (a2 == P - 1) {
                                EXPECT_TRUE(is_zero(o.Y(m))) << z.module->label;
                                EXPECT_EQ(f.from_int(ActionScalars::r(w.x, w.y, a1, a2)), 0u) << z.module->label;
                                EXPECT_EQ(f.from_int(ActionScalars::t(w.x, w.y, a1, a2)), 0u) << z.module->label;
                            }
                            if (a1 == P - 1)
                                EXPECT_EQ(f.from_int(ActionScalars::s(w.x, w.y, a1, a2)), 0u) << z.module->label;
                        }
                }
            }
    }
}

TEST(Oracles, UnknownNameRejected) {
    const InducedModule& z = induced(5, 0, 0);
    EXPECT_THROW(oracle_action(z, "Q", FpVector(z.dim(), 0)), std::invalid_argument);
    EXPECT_THROW(oracle_action(induced(7, 0, 0), "J", FpVector(49, 0)), std::invalid_argument);
}
