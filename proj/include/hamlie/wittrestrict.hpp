#pragma once
// Restriction of p-envelope modules to the copy of W(1;1) inside it, Chang's simple
// W(1;1)-modules, the graded algorithm for composition factors and the direct
// cross-check through composition series, and the balanced-toral check.

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "hamlie/repstructure.hpp"

namespace hamlie {

// W(1;1) realized as span{x^(j) d_x}, basis index j; weights (j-1, 0) for x d_x.
inline AlgebraPtr build_witt(fp_t p) {
    static std::mutex mu;
    static std::map<fp_t, AlgebraPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(p); it != cache.end()) return it->second;
    require_prime(p);
    std::vector<Derivation> basis;
    std::vector<std::string> names;
    for (int j = 0; j < static_cast<int>(p); ++j) {
        basis.push_back(Derivation::dx(p, j, 0));
        names.push_back(j == 0 ? "d" : j == 1 ? "xd" : "x^(" + std::to_string(j) + ")d");
    }
    auto alg = algebra_from_derivations(p, "W(1;1)", std::move(basis), std::move(names), true);
    alg->torus_x = 1;
    for (std::size_t j = 0; j < p; ++j) {
        alg->generators.push_back(j);
        if (j >= 2) alg->raising.push_back(j);
    }
    cache[p] = alg;
    return alg;
}

// Weight of y d_y - x d_x on a vector of torus weight w.
inline fp_t h_weight(Weight w, fp_t p) { return PrimeField(p).sub(w.y, w.x); }

// The W(1;1)-module obtained by letting x^(j) d act through its role in the p-envelope.
inline MatrixModule restrict_to_W(const MatrixModule& m) {
    const fp_t p = m.p();
    AlgebraPtr w = build_witt(p);
    auto roles = witt_roles(*m.alg);
    std::vector<Weight> weights;
    for (auto bw : m.basis_weights) weights.push_back({h_weight(bw, p), 0});
    return MatrixModule::from_columns(w, m.label + "|W", std::move(weights), [&](std::size_t g, std::size_t k) {
        FpVector e(m.dim(), 0);
        e[k] = 1;
        return to_sparse(m.apply_element(roles[g], e));
    });
}

// Z+(r) = u(W) (x)_{W_(0)} k v with x d v = r v and W_(1) v = 0; basis d^j (x) v.
inline MatrixModule chang_module(fp_t p, fp_t r) {
    AlgebraPtr w = build_witt(p);
    PrimeField f(p);
    const int P = static_cast<int>(p);
    std::vector<Weight> weights;
    for (int j = 0; j < P; ++j) weights.push_back({f.sub(r % p, static_cast<fp_t>(j)), 0});
    return MatrixModule::from_columns(w, "Z+(" + std::to_string(r) + ")", std::move(weights), [&](std::size_t g, std::size_t j) {
        const int k = static_cast<int>(g), J = static_cast<int>(j);
        FpVector out(p, 0);
        // x^(k) d d^J = sum_t C(J,t) (-1)^t d^{J-t} x^(k-t) d
        for (int t = 0; t <= J && t <= k; ++t) {
            fp_t c = f.mul(binom_mod(J, t, p), (t % 2) ? f.neg(1) : 1);
            if (k - t == 1) out[J - t] = f.add(out[J - t], f.mul(c, r % p));
            if (k - t == 0 && J - t + 1 < P) out[J - t + 1] = f.add(out[J - t + 1], c);
        }
        return to_sparse(out);
    });
}

struct WittSimple {
    fp_t r = 0;
    std::shared_ptr<MatrixModule> module;
    std::vector<Weight> max_weights;
    std::size_t dim() const { return module->dim(); }
};

// L_W(r): the factor of Z+(r) containing the image of 1 (x) v.
inline WittSimple chang_simple(fp_t p, fp_t r) {
    MatrixModule z = chang_module(p, r);
    std::size_t s = z.block_of[0];
    FpVector v(z.blocks[s].members.size(), 0);
    v[z.local_of[0]] = 1;
    for (auto& fct : composition_series(z, std::make_pair(s, v)))
        if (fct.head) {
            fct.module->label = "L_W(" + std::to_string(r) + ")";
            return {r, fct.module, sorted_max_weights(*fct.module)};
        }
    throw std::logic_error("Z+(r) has no head");
}

inline const std::vector<WittSimple>& witt_simples(fp_t p) {
    static std::mutex mu;
    static std::map<fp_t, std::vector<WittSimple>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& out = cache[p];
    if (out.empty())
        for (fp_t r = 0; r < p; ++r) out.push_back(chang_simple(p, r));
    return out;
}

inline std::size_t witt_simple_dim(fp_t r, fp_t p) { return r == 0 ? 1 : r == p - 1 ? p - 1 : p; }

// Label of a simple W-module, by matching dimension and maximal weights against L_W(r).
inline fp_t identify_witt_simple(const MatrixModule& m) {
    auto mw = sorted_max_weights(m);
    std::vector<fp_t> hits;
    for (const auto& s : witt_simples(m.p()))
        if (s.dim() == m.dim() && s.max_weights == mw) hits.push_back(s.r);
    if (hits.size() != 1) throw std::logic_error("simple W-module of dim " + std::to_string(m.dim()) + " matches " +
                                                 std::to_string(hits.size()) + " Chang references");
    return hits.front();
}

// counts[r] = multiplicity of L_W(r)
using FactorMultiset = std::map<fp_t, std::size_t>;

inline std::size_t multiset_dim(const FactorMultiset& fm, fp_t p) {
    std::size_t d = 0;
    for (auto [r, c] : fm) d += c * witt_simple_dim(r, p);
    return d;
}

inline std::string multiset_string(const FactorMultiset& fm) {
    std::ostringstream os;
    bool first = true;
    for (auto [r, c] : fm) {
        os << (first ? "" : " + ") << "L_W(" << r << ")";
        if (c != 1) os << "^" << c;
        first = false;
    }
    return first ? "0" : os.str();
}

inline FactorMultiset direct_factors(const MatrixModule& wm, std::optional<std::uint64_t> seed = {}) {
    FactorMultiset out;
    if (wm.dim() == 0) return out;
    for (const auto& f : composition_series(wm, std::nullopt, seed)) ++out[identify_witt_simple(*f.module)];
    return out;
}

// --- the graded algorithm ------------------------------------------------------------

// grade index -> multiset of x d-weights
using WeightLists = std::map<int, std::multiset<fp_t>>;

// Repeatedly take the top nonempty list l_r and a weight mu in it; record
// L_W(0) (mu = 0, removing one 0 from l_r), L_W(p-1) (mu = 1, removing 1, ..., p-1 from
// l_r, l_{r-2}, ...) or L_W(mu-1) (removing mu, mu+1, ..., mu+p-1 likewise).
// By default mu is the largest residue present; with rng it is drawn at random.
inline FactorMultiset graded_factors(WeightLists lists, fp_t p, std::mt19937_64* rng = nullptr) {
    PrimeField f(p);
    FactorMultiset out;
    auto take = [&](int grade, fp_t w) {
        auto it = lists.find(grade);
        if (it == lists.end()) throw std::logic_error("graded algorithm: grade " + std::to_string(grade) + " is empty");
        auto pos = it->second.find(w);
        if (pos == it->second.end())
            throw std::logic_error("graded algorithm: weight " + std::to_string(w) + " missing from grade " +
                                   std::to_string(grade));
        it->second.erase(pos);
        if (it->second.empty()) lists.erase(it);
    };
    while (!lists.empty()) {
        auto top = std::prev(lists.end());
        const int r = top->first;
        fp_t mu;
        if (rng) {
            std::vector<fp_t> distinct(top->second.begin(), top->second.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            mu = distinct[std::uniform_int_distribution<std::size_t>(0, distinct.size() - 1)(*rng)];
        } else {
            mu = *top->second.rbegin();
        }
        if (mu == 0) {
            ++out[0];
            take(r, 0);
        } else if (mu == 1) {
            ++out[p - 1];
            for (fp_t k = 1; k < p; ++k) take(r - 2 * static_cast<int>(k - 1), k);
        } else {
            ++out[mu - 1];
            for (fp_t k = 0; k < p; ++k) take(r - 2 * static_cast<int>(k), f.add(mu, k));
        }
    }
    return out;
}

// Checks d V(i) in V(i+2) and x d V(i) in V(i) for a basis grading; the detail names a witness.
inline CheckResult check_grading(const MatrixModule& wm, const std::vector<int>& grade) {
    if (grade.size() != wm.dim()) return {false, "grading has the wrong length"};
    for (std::size_t k = 0; k < wm.dim(); ++k) {
        FpVector e(wm.dim(), 0);
        e[k] = 1;
        FpVector d = wm.apply(0, e), h = wm.apply(1, e);
        for (std::size_t t = 0; t < wm.dim(); ++t) {
            if (d[t] && grade[t] != grade[k] + 2)
                return {false, "d sends basis vector " + std::to_string(k) + " (grade " + std::to_string(grade[k]) +
                                   ") onto basis vector " + std::to_string(t) + " (grade " + std::to_string(grade[t]) + ")"};
            if (h[t] && grade[t] != grade[k])
                return {false, "x d moves basis vector " + std::to_string(k) + " out of grade " + std::to_string(grade[k])};
        }
    }
    return {};
}

inline WeightLists weight_lists(const MatrixModule& wm, const std::vector<int>& grade) {
    WeightLists l;
    for (std::size_t k = 0; k < wm.dim(); ++k) l[grade[k]].insert(wm.basis_weights[k].x);
    return l;
}

// The realization of L(lambda) as U/D inside Z(lambda), with U and D spanned by PBW basis
// vectors, and a list of pieces S_1, ..., S_n partitioning U \ D such that every
// D + S_1 + ... + S_j is W-stable.
struct GradedPlan {
    InducedModule z;
    std::string name;
    std::vector<std::size_t> bottom;
    std::vector<std::vector<std::size_t>> pieces;
    std::vector<std::string> piece_names;
};

struct GradedPiece {
    std::string name;
    std::shared_ptr<MatrixModule> module;  // the subquotient as a W-module
    std::vector<int> grade;
    WeightLists lists;
    FactorMultiset factors;
};

struct GradedResult {
    CheckResult check;
    std::vector<GradedPiece> pieces;
    FactorMultiset factors;
};

inline GradedPlan graded_plan(fp_t p, Weight l) {
    l = {l.x % p, l.y % p};
    if (!is_catalog_rep(l, p)) throw std::invalid_argument("not a catalog representative: " + weight_label(l, p));
    GradedPlan plan;
    plan.z = build_induced(p, l == omega1(p) ? omega2(p) : l);
    const InducedModule& z = plan.z;
    const int P = static_cast<int>(p);
    auto all_where = [&](auto pred) {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < z.dim(); ++k)
            if (pred(z.unpack(k))) out.push_back(k);
        return out;
    };
    auto corner = [&](const PBWIndex& b) { return b.a1 == P - 1 && b.a2 == P - 1; };
    auto one = [&](const PBWIndex& b) { return b.a1 == 0 && b.a2 == 0; };
    if (l == omega2(p)) {
        plan.name = "Z(0,0)/<d_y (x) m>";
        plan.bottom = all_where([&](const PBWIndex& b) { return !one(b); });
        plan.pieces.push_back(all_where(one));
        plan.piece_names.push_back("1 (x) m");
    } else if (l == omega0(p)) {
        plan.name = "Z(-1,-1)/<corner>";
        plan.bottom = all_where(corner);
        plan.pieces.push_back(all_where([&](const PBWIndex& b) { return b.a1 <= P - 2; }));
        plan.pieces.push_back(all_where([&](const PBWIndex& b) { return b.a1 == P - 1 && !corner(b); }));
        plan.piece_names = {"a <= p-2", "a = p-1"};
    } else if (l == omega1(p)) {
        plan.name = "span{b != 1 (x) m} in Z(0,0)";
        plan.pieces.push_back(all_where([&](const PBWIndex& b) { return b.a1 <= P - 2 && !one(b); }));
        plan.pieces.push_back(all_where([&](const PBWIndex& b) { return b.a1 == P - 1; }));
        plan.piece_names = {"a <= p-2, not 1 (x) m", "a = p-1"};
    } else {
        plan.name = "Z" + weight_label(l, p);
        PrimeField f(p);
        for (std::size_t i = 1; i <= z.m0.dim(); ++i) {
            plan.pieces.push_back(all_where([&](const PBWIndex& b) { return b.a1 <= P - 2 && b.i == i; }));
            plan.piece_names.push_back("Z_" + std::to_string(f.centered(h_weight(z.m0.weight_of(i - 1), p))));
        }
        plan.pieces.push_back(all_where([&](const PBWIndex& b) { return b.a1 == P - 1; }));
        plan.piece_names.push_back("d_x'^(p-1) part");
    }
    return plan;
}

// Verifies the filtration, builds each subquotient as a graded W-module (grade 2b for
// the d_y-exponent b) and runs the algorithm on it.
inline GradedResult run_graded_plan(const GradedPlan& plan, std::mt19937_64* rng = nullptr) {
    const InducedModule& z = plan.z;
    const MatrixModule& m = *z.module;
    const fp_t p = z.p;
    auto roles = witt_roles(*m.alg);
    GradedResult res;
    std::vector<char> allowed(z.dim(), 0);
    auto stable = [&](const std::vector<std::size_t>& span, const std::string& what) -> bool {
        for (auto k : span) {
            FpVector e(z.dim(), 0);
            e[k] = 1;
            for (std::size_t j = 0; j < roles.size(); ++j) {
                FpVector img = m.apply_element(roles[j], e);
                for (std::size_t t = 0; t < img.size(); ++t)
                    if (img[t] && !allowed[t]) {
                        res.check = {false, what + " is not W-stable: " + build_witt(p)->names[j] + " on " +
                                                z.basis_label(k) + " has a term on " + z.basis_label(t)};
                        return false;
                    }
            }
        }
        return true;
    };
    for (auto k : plan.bottom) allowed[k] = 1;
    if (!stable(plan.bottom, "bottom")) return res;
    for (std::size_t j = 0; j < plan.pieces.size(); ++j) {
        const auto& piece = plan.pieces[j];
        for (auto k : piece) allowed[k] = 1;
        if (!stable(piece, "filtration step " + plan.piece_names[j])) return res;
        std::map<std::size_t, std::size_t> pos;
        std::vector<Weight> weights;
        GradedPiece gp;
        gp.name = plan.piece_names[j];
        for (auto k : piece) {
            pos[k] = weights.size();
            weights.push_back({h_weight(m.basis_weights[k], p), 0});
            gp.grade.push_back(2 * z.unpack(k).a2);
        }
        gp.module = std::make_shared<MatrixModule>(MatrixModule::from_columns(
            build_witt(p), plan.name + " " + gp.name, std::move(weights), [&](std::size_t g, std::size_t c) {
                FpVector e(z.dim(), 0);
                e[piece[c]] = 1;
                FpVector img = m.apply_element(roles[g], e);
                SparseCoords out;
                for (auto [k, loc] : pos)
                    if (img[k]) out.emplace_back(static_cast<std::uint32_t>(loc), img[k]);
                std::sort(out.begin(), out.end());
                return out;
            }));
        CheckResult g = check_grading(*gp.module, gp.grade);
        if (!g.ok) {
            res.check = {false, gp.name + ": " + g.detail};
            return res;
        }
        gp.lists = weight_lists(*gp.module, gp.grade);
        gp.factors = graded_factors(gp.lists, p, rng);
        for (auto [r, c] : gp.factors) res.factors[r] += c;
        res.pieces.push_back(std::move(gp));
    }
    std::size_t total = 0;
    for (const auto& pc : plan.pieces) total += pc.size();
    if (multiset_dim(res.factors, p) != total) res.check = {false, "dimension accounting failed"};
    return res;
}

inline GradedResult graded_restriction(fp_t p, Weight l, std::mt19937_64* rng = nullptr) {
    return run_graded_plan(graded_plan(p, l), rng);
}

// The restriction predicted for L(lambda), lambda a catalog representative.
inline FactorMultiset predicted_restriction(fp_t p, Weight l) {
    l = {l.x % p, l.y % p};
    FactorMultiset out;
    if (l == omega2(p)) {
        out[0] = 1;
    } else if (l == omega0(p) || l == omega1(p)) {
        for (fp_t j = 0; j + 1 < p; ++j) out[j] = 1;
        out[p - 1] = 2;
    } else {
        std::size_t reps = weight_gap(l, p) + 1;
        for (fp_t j = 1; j + 1 < p; ++j) out[j] = reps;
        out[0] = 2 * reps;
        out[p - 1] = 2 * reps;
    }
    return out;
}

// Multiplicities of L_W(j) agree for 1 <= j <= p-2.
inline bool equal_middle_multiplicities(const FactorMultiset& fm, fp_t p) {
    auto get = [&](fp_t j) {
        auto it = fm.find(j);
        return it == fm.end() ? std::size_t{0} : it->second;
    };
    for (fp_t j = 2; j + 1 < p; ++j)
        if (get(j) != get(1)) return false;
    return true;
}

// --- balanced toral elements -------------------------------------------------------------

struct BalancedReport {
    std::vector<std::size_t> eigendims;  // dimension of the i-eigenspace of ad h, i in F_p
    bool semisimple = false;             // eigenspaces fill the algebra
    bool degenerate = false;             // every nonzero eigenspace is empty
    std::size_t common = 0;              // common nonzero-eigenvalue dimension
    bool balanced = false;               // equal nonzero dims, all divisible by d
};

inline BalancedReport balanced_toral_check(const LieAlgebra& alg, const Derivation& h, std::size_t d) {
    if (d == 0) throw std::invalid_argument("balanced_toral_check: d must be positive");
    if (!(p_power(h).coords() == h.coords())) throw std::invalid_argument("element is not toral: h^[p] != h");
    FpVector c = alg.require_coordinates(h);
    const fp_t p = alg.p;
    FpMatrix ad(p, alg.dim(), alg.dim());
    for (std::size_t j = 0; j < alg.dim(); ++j) {
        FpVector col = alg.bracket(c, alg.unit(j));
        for (std::size_t i = 0; i < alg.dim(); ++i) ad(i, j) = col[i];
    }
    BalancedReport r;
    std::size_t total = 0;
    for (fp_t i = 0; i < p; ++i) {
        r.eigendims.push_back(eigenspace(ad, i).size());
        total += r.eigendims.back();
    }
    r.semisimple = total == alg.dim();
    r.common = r.eigendims[1];
    r.balanced = r.semisimple;
    r.degenerate = true;
    for (fp_t i = 1; i < p; ++i) {
        if (r.eigendims[i] != r.common || r.eigendims[i] % d) r.balanced = false;
        if (r.eigendims[i]) r.degenerate = false;
    }
    return r;
}

inline Derivation witt_torus_element(fp_t p) { return Derivation::dy(p, 0, 1) - Derivation::dx(p, 1, 0); }

}  // namespace hamlie
