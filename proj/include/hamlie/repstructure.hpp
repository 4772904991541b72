#pragma once
// Simple restricted H^-modules: exceptional weights, the catalog of p^2 - p + 1 classes,
// labelled composition tables of Z(lambda), the module O(2;(1,1))/(k.1), maximal-vector
// shapes and isomorphism tests.

#include <algorithm>
#include <future>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hamlie/induction.hpp"
#include "hamlie/module.hpp"

namespace hamlie {

inline Weight omega0(fp_t p) { return {p - 1, p - 1}; }
inline Weight omega1(fp_t p) { return {0, p - 1}; }
inline Weight omega2(fp_t) { return {0, 0}; }

inline fp_t weight_gap(Weight l, fp_t p) { return PrimeField(p).sub(l.x, l.y); }

inline bool is_exceptional(Weight l, fp_t p) {
    return weight_gap(l, p) == 1 || l == omega0(p) || l == omega1(p) || l == omega2(p);
}

// Representatives of the simple classes: lambda1 - lambda2 != 1, or lambda = omega1.
inline bool is_catalog_rep(Weight l, fp_t p) { return weight_gap(l, p) != 1 || l == omega1(p); }

inline std::string weight_name(Weight l, fp_t p) {
    if (l == omega0(p)) return "omega0";
    if (l == omega1(p)) return "omega1";
    if (l == omega2(p)) return "omega2";
    return "";
}

inline std::vector<Weight> all_weights(fp_t p) {
    std::vector<Weight> out;
    for (fp_t a = 0; a < p; ++a)
        for (fp_t b = 0; b < p; ++b) out.push_back({a, b});
    return out;
}

// --- modules realized directly -----------------------------------------------------------

inline MatrixModule trivial_module(AlgebraPtr alg) {
    return MatrixModule::from_columns(alg, "trivial", {Weight{0, 0}}, [](std::size_t, std::size_t) { return SparseCoords{}; });
}

// O(2;(1,1))/(k.1) with H^ acting by derivations. Basis: divided-power monomials
// x^(a) y^(b) other than 1, in the order a*p + b; x^(a) y^(b) has weight (a, b).
inline MatrixModule build_O_module(fp_t p) {
    require_prime(p);
    AlgebraPtr alg = build_p_envelope(p);
    std::vector<std::pair<int, int>> mons;
    std::vector<Weight> weights;
    for (int a = 0; a < static_cast<int>(p); ++a)
        for (int b = 0; b < static_cast<int>(p); ++b)
            if (a || b) {
                mons.emplace_back(a, b);
                weights.push_back({static_cast<fp_t>(a), static_cast<fp_t>(b)});
            }
    return MatrixModule::from_columns(alg, "O/(k.1)", std::move(weights), [&](std::size_t g, std::size_t k) {
        DPElement img = apply_derivation(alg->realization[g], DPElement::monomial(p, mons[k].first, mons[k].second));
        SparseCoords col;
        for (std::size_t j = 0; j < mons.size(); ++j)
            if (fp_t c = img.coeff(mons[j].first, mons[j].second)) col.emplace_back(static_cast<std::uint32_t>(j), c);
        return col;
    });
}

inline FpVector pbw_vector(const InducedModule& z, const std::vector<std::tuple<int, int, std::size_t, fp_t>>& terms) {
    FpVector v(z.dim(), 0);
    PrimeField f(z.p);
    for (auto [a1, a2, i, c] : terms) v[z.index(a1, a2, i)] = f.add(v[z.index(a1, a2, i)], c % z.p);
    return v;
}

// --- maximal-vector shapes ------------------------------------------------------------------

struct ShapeVector {
    std::string name;
    FpVector vec;  // global coordinates in Z(lambda)
};

// The candidate maximal vectors of the classification, by gap r = lambda1 - lambda2.
inline std::vector<ShapeVector> max_vector_shapes(const InducedModule& z) {
    const int P = static_cast<int>(z.p);
    const std::size_t n = z.m0.n;
    if (n == 0)
        return {{"1(x)m", pbw_vector(z, {{0, 0, 1, 1}})},
                {"d_y(x)m", pbw_vector(z, {{0, 1, 1, 1}})},
                {"d_x'^(p-1)d_y^(p-1)(x)m", pbw_vector(z, {{P - 1, P - 1, 1, 1}})}};
    if (n == 1)
        return {{"1(x)m2", pbw_vector(z, {{0, 0, 2, 1}})},
                {"v", pbw_vector(z, {{1, 0, 2, 1}, {0, 1, 1, 1}})},
                {"w", pbw_vector(z, {{1, 1, 2, 1}, {0, 2, 1, 1}})}};
    return {{"1(x)m_top", pbw_vector(z, {{0, 0, n + 1, 1}})}};
}

inline bool is_maximal_vector(const MatrixModule& m, const FpVector& v) {
    for (auto r : m.alg->raising)
        if (!is_zero(m.apply(r, v))) return false;
    return true;
}

// Every space of maximal vectors is spanned by the shape vectors of its weight that are maximal.
inline CheckResult check_max_vector_shapes(const InducedModule& z) {
    const MatrixModule& m = *z.module;
    auto shapes = max_vector_shapes(z);
    for (const auto& sp : maximal_vectors(m)) {
        EchelonBasis want(m.p(), m.blocks[sp.block].members.size());
        for (const auto& s : shapes) {
            FpVector loc = m.to_local(sp.block, s.vec);
            if (is_zero(loc) || m.to_global(sp.block, loc) != s.vec) continue;
            if (is_maximal_vector(m, s.vec)) want.insert(loc);
        }
        EchelonBasis got(m.p(), m.blocks[sp.block].members.size());
        for (const auto& b : sp.basis) got.insert(b);
        bool same = want.dim() == got.dim();
        for (const auto& r : got.rows()) same = same && want.contains(r);
        if (!same)
            return {false, m.label + ": maximal vectors of weight " + weight_label(sp.weight, m.p()) +
                               " do not match the classified shapes"};
    }
    return {true, ""};
}

// Names of the shapes that are maximal vectors of z.
inline std::vector<std::string> maximal_shapes(const InducedModule& z) {
    std::vector<std::string> out;
    for (const auto& s : max_vector_shapes(z))
        if (is_maximal_vector(*z.module, s.vec)) out.push_back(s.name);
    return out;
}

// --- isomorphism ----------------------------------------------------------------------------

// Basis of Hom_H^(a, b): solves T rho_a(e) = rho_b(e) T for every basis element e.
// T preserves weights, so the unknowns are one block matrix per common weight.
inline std::vector<FpMatrix> intertwiners(const MatrixModule& a, const MatrixModule& b) {
    if (a.alg != b.alg) throw std::invalid_argument("modules over different algebras");
    const fp_t p = a.p();
    PrimeField f(p);
    // offset[s] of the unknown block T_s : a-block s -> b-block with the same weight
    std::vector<std::size_t> offset(a.blocks.size(), MatrixModule::npos), bblock(a.blocks.size(), MatrixModule::npos);
    std::size_t n = 0;
    for (std::size_t s = 0; s < a.blocks.size(); ++s) {
        std::size_t t = b.find_block(a.blocks[s].weight);
        if (t == MatrixModule::npos) continue;
        bblock[s] = t;
        offset[s] = n;
        n += a.blocks[s].members.size() * b.blocks[t].members.size();
    }
    if (n == 0) return {};
    auto var = [&](std::size_t s, std::size_t i, std::size_t j) {
        return offset[s] + i * a.blocks[s].members.size() + j;
    };
    EchelonBasis eqs(p, n);
    for (std::size_t g = 0; g < a.alg->dim(); ++g)
        for (std::size_t s = 0; s < a.blocks.size(); ++s) {
            // (T rho_a(g))|_s = T_{s'} A_{g,s}, (rho_b(g) T)|_s = B_{g,bs} T_s, both landing in weight w(s)+w(g).
            std::size_t sa = a.targets[g][s];
            std::size_t bs = bblock[s];
            std::size_t tb = bs == MatrixModule::npos ? MatrixModule::npos : b.targets[g][bs];
            std::size_t ta = sa == MatrixModule::npos ? MatrixModule::npos : bblock[sa];
            std::size_t out = tb != MatrixModule::npos ? tb : ta;
            if (out == MatrixModule::npos) continue;
            const std::size_t rows = b.blocks[out].members.size(), cols = a.blocks[s].members.size();
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    FpVector eq(n, 0);
                    if (sa != MatrixModule::npos && ta == out) {
                        const FpMatrix& A = a.action[g][s];
                        for (std::size_t k = 0; k < A.rows(); ++k)
                            if (fp_t c = A(k, j)) eq[var(sa, i, k)] = f.add(eq[var(sa, i, k)], c);
                    }
                    if (tb != MatrixModule::npos) {
                        const FpMatrix& B = b.action[g][bs];
                        for (std::size_t k = 0; k < B.cols(); ++k)
                            if (fp_t c = B(i, k)) eq[var(s, k, j)] = f.sub(eq[var(s, k, j)], c);
                    }
                    if (!is_zero(eq)) eqs.insert(eq);
                }
        }
    FpMatrix system = eqs.dim() ? FpMatrix::from_rows(p, eqs.rows(), n) : FpMatrix(p, 0, n);
    std::vector<FpMatrix> out;
    for (const auto& sol : nullspace(system)) {
        FpMatrix t(p, b.dim(), a.dim());
        for (std::size_t s = 0; s < a.blocks.size(); ++s) {
            if (offset[s] == MatrixModule::npos) continue;
            const auto& bm = b.blocks[bblock[s]].members;
            const auto& am = a.blocks[s].members;
            for (std::size_t i = 0; i < bm.size(); ++i)
                for (std::size_t j = 0; j < am.size(); ++j) t(bm[i], am[j]) = sol[var(s, i, j)];
        }
        out.push_back(std::move(t));
    }
    return out;
}

inline std::vector<Weight> sorted_max_weights(const MatrixModule& m) {
    auto w = maximal_weights(m);
    std::sort(w.begin(), w.end());
    return w;
}

// Simple modules are isomorphic iff they have equal dimension and equal sets of
// maximal-vector weights.
inline bool iso_test(const MatrixModule& a, const MatrixModule& b) {
    if (!is_simple(a) || !is_simple(b)) throw std::invalid_argument("iso_test expects simple modules");
    return a.dim() == b.dim() && sorted_max_weights(a) == sorted_max_weights(b);
}

// Independent decision through the intertwiner solver: a nonzero map between
// simple modules of equal dimension is an isomorphism.
inline bool iso_by_intertwiner(const MatrixModule& a, const MatrixModule& b) {
    if (a.dim() != b.dim()) return false;
    for (const auto& t : intertwiners(a, b))
        if (rank(t) == a.dim()) return true;
    return false;
}

// --- composition tables ---------------------------------------------------------------------

struct SeriesEntry {
    Weight label;  // name of the factor: lambda for the head of Z(lambda), else its catalog representative
    Weight rep;    // catalog representative of its class
    std::size_t dim = 0;
    bool head = false;
    std::vector<Weight> max_weights;
};

inline Weight catalog_rep_of(const std::vector<Weight>& max_weights, fp_t p) {
    std::vector<Weight> reps;
    for (auto w : max_weights)
        if (is_catalog_rep(w, p) && std::find(reps.begin(), reps.end(), w) == reps.end()) reps.push_back(w);
    if (reps.size() != 1)
        throw std::logic_error("simple factor does not single out a catalog representative (" +
                               std::to_string(reps.size()) + " candidates)");
    return reps.front();
}

inline std::vector<CompositionFactor> induced_series(const InducedModule& z, std::optional<std::uint64_t> seed = {}) {
    const MatrixModule& m = *z.module;
    FpVector top(z.dim(), 0);
    top[z.index(0, 0, z.m0.dim())] = 1;
    std::size_t s = m.block_of[z.index(0, 0, z.m0.dim())];
    return composition_series(m, std::make_pair(s, m.to_local(s, top)), seed);
}

inline bool entry_less(const SeriesEntry& a, const SeriesEntry& b) {
    if (a.label != b.label) return a.label < b.label;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.head < b.head;
}

// Labelled factors of Z(lambda), sorted by label.
inline std::vector<SeriesEntry> factor_table(const InducedModule& z, std::optional<std::uint64_t> seed = {}) {
    std::vector<SeriesEntry> out;
    for (const auto& fct : induced_series(z, seed)) {
        SeriesEntry e;
        e.max_weights = fct.max_weights;
        std::sort(e.max_weights.begin(), e.max_weights.end());
        e.rep = catalog_rep_of(e.max_weights, z.p);
        e.label = fct.head ? z.lambda : e.rep;
        e.dim = fct.dim();
        e.head = fct.head;
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), entry_less);
    return out;
}

inline std::shared_ptr<MatrixModule> head_of(const InducedModule& z) {
    for (const auto& f : induced_series(z))
        if (f.head) return f.module;
    throw std::logic_error("no head factor found");
}

// --- catalog ----------------------------------------------------------------------------------

struct SimpleClass {
    Weight rep;
    std::size_t dim = 0;
    std::vector<Weight> aliases;  // other weights lambda with L(lambda) in this class
    std::string realization;
    std::shared_ptr<MatrixModule> module;
    std::vector<Weight> max_weights;
};

// Predicted dimension of L(lambda) for a catalog representative.
inline std::size_t predicted_dim(Weight l, fp_t p) {
    if (l == omega2(p)) return 1;
    if (l == omega0(p) || l == omega1(p)) return static_cast<std::size_t>(p) * p - 1;
    return static_cast<std::size_t>(p) * p * (weight_gap(l, p) + 1);
}

inline SimpleClass realize_simple(fp_t p, Weight l) {
    SimpleClass c;
    c.rep = l;
    AlgebraPtr alg = build_p_envelope(p);
    if (l == omega2(p)) {
        c.module = std::make_shared<MatrixModule>(trivial_module(alg));
        c.realization = "trivial";
    } else if (l == omega0(p)) {
        InducedModule z = build_induced(p, l);
        const int P = static_cast<int>(p);
        ModuleSubspace corner = spin_vector(*z.module, pbw_vector(z, {{P - 1, P - 1, 1, 1}}));
        c.module = std::make_shared<MatrixModule>(quotient_module(*z.module, corner, "L" + weight_label(l, p)));
        c.realization = "Z(-1,-1)/<d_x'^(p-1) d_y^(p-1) (x) m>";
    } else if (l == omega1(p)) {
        InducedModule z = build_induced(p, omega2(p));
        ModuleSubspace sub = spin_vector(*z.module, pbw_vector(z, {{0, 1, 1, 1}}));
        c.module = std::make_shared<MatrixModule>(submodule_module(*z.module, sub, "L" + weight_label(l, p)));
        c.realization = "H<d_y (x) m> in Z(0,0)";
    } else if (!is_exceptional(l, p)) {
        c.module = build_induced(p, l).module;
        c.realization = "Z" + weight_label(l, p);
    } else {
        throw std::invalid_argument("not a catalog representative: " + weight_label(l, p));
    }
    c.dim = c.module->dim();
    c.max_weights = sorted_max_weights(*c.module);
    // L(a,b) = L(a,b+1) for a - b = 1, except (0,-1) which is its own class.
    PrimeField f(p);
    Weight below{l.x, f.sub(l.y, 1)};
    if (weight_gap(l, p) == 0 && below != omega1(p)) c.aliases.push_back(below);
    return c;
}

inline std::vector<SimpleClass> catalog(fp_t p, bool parallel = true) {
    require_prime(p);
    build_p_envelope(p);
    std::vector<Weight> reps;
    for (auto l : all_weights(p))
        if (is_catalog_rep(l, p)) reps.push_back(l);
    std::vector<SimpleClass> out(reps.size());
    if (parallel) {
        std::vector<std::future<SimpleClass>> jobs;
        for (auto l : reps) jobs.push_back(std::async(std::launch::async, [p, l] { return realize_simple(p, l); }));
        for (std::size_t i = 0; i < reps.size(); ++i) out[i] = jobs[i].get();
    } else {
        for (std::size_t i = 0; i < reps.size(); ++i) out[i] = realize_simple(p, reps[i]);
    }
    return out;
}

}  // namespace hamlie
