#pragma once
// Finite-dimensional restricted modules whose basis consists of torus weight vectors.
// Each basis element of the acting algebra is a weight vector for the adjoint torus,
// so its action splits into small dense blocks between weight spaces.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hamlie/cartan.hpp"
#include "hamlie/primefield.hpp"

namespace hamlie {

struct Block {
    Weight weight;
    std::vector<std::size_t> members;  // basis indices of this weight space
};

struct CheckResult {
    bool ok = true;
    std::string detail;
};

class MatrixModule {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    AlgebraPtr alg;
    std::string label;
    std::vector<Weight> basis_weights;
    std::vector<Block> blocks;
    std::vector<std::size_t> block_of, local_of;
    std::vector<std::vector<std::size_t>> targets;  // targets[g][s], npos when absent
    std::vector<std::vector<FpMatrix>> action;      // action[g][s]: block s -> targets[g][s]

    fp_t p() const { return alg->p; }
    std::size_t dim() const { return basis_weights.size(); }

    std::size_t find_block(Weight w) const {
        auto it = index_.find(w);
        return it == index_.end() ? npos : it->second;
    }

    // Builds the block structure from the weights of the basis, then fills the
    // action from column(g, k) = rho(e_g) applied to basis vector k.
    static MatrixModule from_columns(AlgebraPtr alg, std::string label, std::vector<Weight> weights,
                                     const std::function<SparseCoords(std::size_t, std::size_t)>& column) {
        MatrixModule m = with_weights(std::move(alg), std::move(label), std::move(weights));
        for (std::size_t g = 0; g < m.alg->dim(); ++g)
            for (std::size_t s = 0; s < m.blocks.size(); ++s) {
                std::size_t t = m.targets[g][s];
                const auto& src = m.blocks[s].members;
                for (std::size_t c = 0; c < src.size(); ++c)
                    for (auto [r, v] : column(g, src[c])) {
                        if (!v) continue;
                        if (t == npos || m.block_of[r] != t)
                            throw std::logic_error("action of " + m.alg->names[g] + " does not respect weights in " +
                                                   m.label);
                        m.action[g][s](m.local_of[r], c) = v;
                    }
            }
        return m;
    }

    // Same, but from local block maps: block_map(g, s) must be sized target x source.
    static MatrixModule from_blocks(AlgebraPtr alg, std::string label, std::vector<Weight> weights,
                                    const std::function<FpMatrix(std::size_t, std::size_t)>& block_map) {
        MatrixModule m = with_weights(std::move(alg), std::move(label), std::move(weights));
        for (std::size_t g = 0; g < m.alg->dim(); ++g)
            for (std::size_t s = 0; s < m.blocks.size(); ++s) {
                if (m.targets[g][s] == npos) continue;
                FpMatrix b = block_map(g, s);
                if (b.rows() != m.action[g][s].rows() || b.cols() != m.action[g][s].cols())
                    throw std::logic_error("block map has the wrong shape");
                m.action[g][s] = std::move(b);
            }
        return m;
    }

    FpVector to_global(std::size_t s, const FpVector& local) const {
        FpVector v(dim(), 0);
        for (std::size_t i = 0; i < local.size(); ++i) v[blocks[s].members[i]] = local[i];
        return v;
    }
    FpVector to_local(std::size_t s, const FpVector& global) const {
        FpVector v(blocks[s].members.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = global[blocks[s].members[i]];
        return v;
    }

    FpVector apply(std::size_t g, const FpVector& global) const {
        FpVector out(dim(), 0);
        PrimeField f(p());
        for (std::size_t s = 0; s < blocks.size(); ++s) {
            std::size_t t = targets[g][s];
            if (t == npos) continue;
            FpVector img = action[g][s] * to_local(s, global);
            for (std::size_t i = 0; i < img.size(); ++i) {
                std::size_t r = blocks[t].members[i];
                out[r] = f.add(out[r], img[i]);
            }
        }
        return out;
    }
    // Action of an arbitrary algebra element given by coordinates.
    FpVector apply_element(const FpVector& coords, const FpVector& global) const {
        FpVector out(dim(), 0);
        PrimeField f(p());
        for (std::size_t g = 0; g < coords.size(); ++g)
            if (coords[g]) f.axpy(out, coords[g], apply(g, global));
        return out;
    }

    FpMatrix dense(std::size_t g) const {
        FpMatrix m(p(), dim(), dim());
        for (std::size_t s = 0; s < blocks.size(); ++s) {
            std::size_t t = targets[g][s];
            if (t == npos) continue;
            const FpMatrix& b = action[g][s];
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j) m(blocks[t].members[i], blocks[s].members[j]) = b(i, j);
        }
        return m;
    }

private:
    static MatrixModule with_weights(AlgebraPtr alg, std::string label, std::vector<Weight> weights) {
        MatrixModule m;
        m.alg = std::move(alg);
        m.label = std::move(label);
        m.basis_weights = std::move(weights);
        std::map<Weight, std::vector<std::size_t>> groups;
        for (std::size_t k = 0; k < m.basis_weights.size(); ++k) groups[m.basis_weights[k]].push_back(k);
        m.block_of.assign(m.dim(), npos);
        m.local_of.assign(m.dim(), npos);
        for (auto& [w, mem] : groups) {
            m.index_[w] = m.blocks.size();
            for (std::size_t i = 0; i < mem.size(); ++i) {
                m.block_of[mem[i]] = m.blocks.size();
                m.local_of[mem[i]] = i;
            }
            m.blocks.push_back({w, mem});
        }
        const std::size_t n = m.alg->dim();
        m.targets.assign(n, std::vector<std::size_t>(m.blocks.size(), npos));
        m.action.assign(n, std::vector<FpMatrix>(m.blocks.size()));
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t s = 0; s < m.blocks.size(); ++s) {
                std::size_t t = m.find_block(add_weights(m.blocks[s].weight, m.alg->weights[g], m.p()));
                m.targets[g][s] = t;
                if (t != npos)
                    m.action[g][s] = FpMatrix(m.p(), m.blocks[t].members.size(), m.blocks[s].members.size());
            }
        return m;
    }

    std::map<Weight, std::size_t> index_;
};

using ModulePtr = std::shared_ptr<const MatrixModule>;

namespace detail {

inline std::string weight_string(Weight w) {
    return "(" + std::to_string(w.x) + "," + std::to_string(w.y) + ")";
}

// Block map of rho(sum c_g e_g) out of block s into block t; zero where absent.
inline FpMatrix element_block(const MatrixModule& m, const SparseCoords& c, std::size_t s, std::size_t t) {
    FpMatrix out(m.p(), m.blocks[t].members.size(), m.blocks[s].members.size());
    for (auto [g, coef] : c) {
        if (m.targets[g][s] != t) {
            if (m.targets[g][s] == MatrixModule::npos) continue;
            throw std::logic_error("element is not homogeneous");
        }
        out = out + m.action[g][s].scaled(coef);
    }
    return out;
}

}  // namespace detail

// The torus acts on each block by its weight.
inline CheckResult check_weights(const MatrixModule& m) {
    const auto& a = *m.alg;
    for (std::size_t s = 0; s < m.blocks.size(); ++s) {
        std::size_t d = m.blocks[s].members.size();
        if (a.torus_x != LieAlgebra::npos &&
            m.action[a.torus_x][s] != FpMatrix::identity(m.p(), d).scaled(m.blocks[s].weight.x))
            return {false, "torus element 1 is not scalar on weight " + detail::weight_string(m.blocks[s].weight)};
        if (a.torus_y != LieAlgebra::npos &&
            m.action[a.torus_y][s] != FpMatrix::identity(m.p(), d).scaled(m.blocks[s].weight.y))
            return {false, "torus element 2 is not scalar on weight " + detail::weight_string(m.blocks[s].weight)};
    }
    return {};
}

// [rho(a), rho(b)] = rho([a, b]) for every pair of basis elements, block by block.
inline CheckResult check_homomorphism(const MatrixModule& m) {
    const auto& A = *m.alg;
    const auto npos = MatrixModule::npos;
    for (std::size_t a = 0; a < A.dim(); ++a)
        for (std::size_t b = a + 1; b < A.dim(); ++b)
            for (std::size_t s = 0; s < m.blocks.size(); ++s) {
                Weight w = add_weights(add_weights(m.blocks[s].weight, A.weights[a], m.p()), A.weights[b], m.p());
                std::size_t t = m.find_block(w);
                if (t == npos) continue;
                FpMatrix lhs(m.p(), m.blocks[t].members.size(), m.blocks[s].members.size());
                std::size_t mid = m.targets[b][s];
                if (mid != npos) lhs = lhs + m.action[a][mid] * m.action[b][s];
                mid = m.targets[a][s];
                if (mid != npos) lhs = lhs - m.action[b][mid] * m.action[a][s];
                FpMatrix rhs = detail::element_block(m, A.brackets[a][b], s, t);
                if (lhs != rhs)
                    return {false, "bracket [" + A.names[a] + ", " + A.names[b] + "] fails on weight " +
                                       detail::weight_string(m.blocks[s].weight)};
            }
    return {};
}

// rho(e)^p = rho(e^[p]) for every basis element.
inline CheckResult check_restricted(const MatrixModule& m) {
    const auto& A = *m.alg;
    const auto npos = MatrixModule::npos;
    for (std::size_t g = 0; g < A.dim(); ++g)
        for (std::size_t s = 0; s < m.blocks.size(); ++s) {
            std::size_t d = m.blocks[s].members.size();
            FpMatrix acc = FpMatrix::identity(m.p(), d);
            std::size_t cur = s;
            bool vanished = false;
            for (fp_t k = 0; k < m.p(); ++k) {
                std::size_t nxt = m.targets[g][cur];
                if (nxt == npos) { vanished = true; break; }
                acc = m.action[g][cur] * acc;
                cur = nxt;
            }
            FpMatrix rhs = detail::element_block(m, A.pmap[g], s, s);
            bool ok = vanished ? rhs.is_zero() : (cur == s && acc == rhs);
            if (!ok)
                return {false, "p-th power of " + A.names[g] + " fails on weight " +
                                   detail::weight_string(m.blocks[s].weight)};
        }
    return {};
}

inline CheckResult verify_module(const MatrixModule& m) {
    for (auto r : {check_weights(m), check_homomorphism(m), check_restricted(m)})
        if (!r.ok) return {false, m.label + ": " + r.detail};
    return {};
}

// A subspace spanned by weight vectors, stored per weight block.
class ModuleSubspace {
public:
    explicit ModuleSubspace(const MatrixModule& m) {
        for (const auto& b : m.blocks) parts.emplace_back(m.p(), b.members.size());
    }
    std::vector<EchelonBasis> parts;
    std::size_t dim() const {
        std::size_t d = 0;
        for (const auto& e : parts) d += e.dim();
        return d;
    }
};

// Submodule generated by weight vectors (block, local coordinates).
inline ModuleSubspace spin(const MatrixModule& m, const std::vector<std::pair<std::size_t, FpVector>>& seeds) {
    ModuleSubspace sub(m);
    std::vector<std::pair<std::size_t, FpVector>> queue;
    for (const auto& [s, v] : seeds)
        if (sub.parts[s].insert(v)) queue.emplace_back(s, v);
    for (std::size_t k = 0; k < queue.size() && sub.dim() < m.dim(); ++k) {
        auto [s, v] = queue[k];
        for (auto g : m.alg->generators) {
            std::size_t t = m.targets[g][s];
            if (t == MatrixModule::npos) continue;
            FpVector img = m.action[g][s] * v;
            if (sub.parts[t].insert(img)) queue.emplace_back(t, std::move(img));
        }
    }
    return sub;
}

// Splits an arbitrary vector into weight components and spins all of them.
inline ModuleSubspace spin_vector(const MatrixModule& m, const FpVector& global) {
    std::vector<std::pair<std::size_t, FpVector>> seeds;
    for (std::size_t s = 0; s < m.blocks.size(); ++s) {
        FpVector loc = m.to_local(s, global);
        if (!is_zero(loc)) seeds.emplace_back(s, std::move(loc));
    }
    return spin(m, seeds);
}

inline bool is_submodule(const MatrixModule& m, const ModuleSubspace& sub) {
    for (std::size_t g = 0; g < m.alg->dim(); ++g)
        for (std::size_t s = 0; s < m.blocks.size(); ++s) {
            std::size_t t = m.targets[g][s];
            if (t == MatrixModule::npos) continue;
            for (const auto& row : sub.parts[s].rows())
                if (!sub.parts[t].contains(m.action[g][s] * row)) return false;
        }
    return true;
}

namespace detail {

inline std::vector<std::size_t> complement_positions(const EchelonBasis& e) {
    std::vector<char> piv(e.ambient(), 0);
    for (auto c : e.pivots()) piv[c] = 1;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < e.ambient(); ++i)
        if (!piv[i]) out.push_back(i);
    return out;
}

}  // namespace detail

// Image of a local vector of block s in the quotient by sub.
inline FpVector quotient_local(const ModuleSubspace& sub, std::size_t s, FpVector v) {
    sub.parts[s].reduce(v);
    auto comp = detail::complement_positions(sub.parts[s]);
    FpVector out(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) out[i] = v[comp[i]];
    return out;
}

inline MatrixModule quotient_module(const MatrixModule& m, const ModuleSubspace& sub, std::string label) {
    std::vector<Weight> weights;
    std::vector<std::vector<std::size_t>> comp(m.blocks.size());
    for (std::size_t s = 0; s < m.blocks.size(); ++s) {
        comp[s] = detail::complement_positions(sub.parts[s]);
        weights.insert(weights.end(), comp[s].size(), m.blocks[s].weight);
    }
    return MatrixModule::from_blocks(m.alg, std::move(label), std::move(weights), [&](std::size_t g, std::size_t qs) {
        // Blocks of the quotient are the nonempty complements, in the same weight order.
        Weight w = Weight{};
        std::size_t s = MatrixModule::npos, seen = 0;
        for (std::size_t b = 0; b < m.blocks.size(); ++b) {
            if (comp[b].empty()) continue;
            if (seen++ == qs) { s = b; w = m.blocks[b].weight; break; }
        }
        (void)w;
        std::size_t t = m.targets[g][s];
        FpMatrix out(m.p(), t == MatrixModule::npos ? 0 : comp[t].size(), comp[s].size());
        if (t == MatrixModule::npos) return out;
        for (std::size_t j = 0; j < comp[s].size(); ++j) {
            FpVector img = m.action[g][s].col(comp[s][j]);
            FpVector q = quotient_local(sub, t, img);
            for (std::size_t i = 0; i < q.size(); ++i) out(i, j) = q[i];
        }
        return out;
    });
}

inline MatrixModule submodule_module(const MatrixModule& m, const ModuleSubspace& sub, std::string label) {
    std::vector<Weight> weights;
    std::vector<std::size_t> nonempty;
    for (std::size_t s = 0; s < m.blocks.size(); ++s) {
        weights.insert(weights.end(), sub.parts[s].dim(), m.blocks[s].weight);
        if (sub.parts[s].dim()) nonempty.push_back(s);
    }
    return MatrixModule::from_blocks(m.alg, std::move(label), std::move(weights), [&](std::size_t g, std::size_t qs) {
        std::size_t s = nonempty[qs];
        std::size_t t = m.targets[g][s];
        const auto& rows = sub.parts[s].rows();
        FpMatrix out(m.p(), t == MatrixModule::npos ? 0 : sub.parts[t].dim(), rows.size());
        if (t == MatrixModule::npos) return out;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            auto c = sub.parts[t].coordinates(m.action[g][s] * rows[j]);
            if (!c) throw std::logic_error("subspace is not a submodule");
            for (std::size_t i = 0; i < c->size(); ++i) out(i, j) = (*c)[i];
        }
        return out;
    });
}

struct MaxVectorSpace {
    std::size_t block;
    Weight weight;
    std::vector<FpVector> basis;  // local coordinates in the block
};

// Weight vectors killed by every raising generator of the acting algebra.
inline std::vector<MaxVectorSpace> maximal_vectors(const MatrixModule& m) {
    std::vector<MaxVectorSpace> out;
    for (std::size_t s = 0; s < m.blocks.size(); ++s) {
        std::vector<FpMatrix> parts;
        for (auto r : m.alg->raising)
            if (m.targets[r][s] != MatrixModule::npos) parts.push_back(m.action[r][s]);
        std::vector<FpVector> ns;
        if (parts.empty()) {
            ns = nullspace(FpMatrix(m.p(), 0, m.blocks[s].members.size()));
        } else {
            ns = nullspace(FpMatrix::stack(parts));
        }
        if (!ns.empty()) out.push_back({s, m.blocks[s].weight, std::move(ns)});
    }
    return out;
}

inline std::vector<Weight> maximal_weights(const MatrixModule& m) {
    std::vector<Weight> w;
    for (const auto& s : maximal_vectors(m)) w.push_back(s.weight);
    return w;
}

// Calls fn on one representative of every line in span(basis); stops when fn returns true.
// Throws once more than `limit` lines have been visited without a hit.
inline bool for_each_line(fp_t p, const std::vector<FpVector>& basis, const std::function<bool(const FpVector&)>& fn,
                          std::size_t limit = 20000) {
    const std::size_t k = basis.size();
    if (k == 0) return false;
    PrimeField f(p);
    std::size_t visited = 0;
    // Coefficient vectors whose first nonzero entry is 1.
    for (std::size_t lead = 0; lead < k; ++lead) {
        std::size_t free = k - lead - 1, count = 1;
        for (std::size_t i = 0; i < free; ++i) {
            if (count > limit) break;
            count *= p;
        }
        for (std::size_t code = 0; code < count; ++code) {
            if (++visited > limit) throw std::runtime_error("maximal-vector space too large to enumerate");
            FpVector v = basis[lead];
            std::size_t c = code;
            for (std::size_t j = lead + 1; j < k; ++j) {
                f.axpy(v, static_cast<fp_t>(c % p), basis[j]);
                c /= p;
            }
            if (fn(v)) return true;
        }
    }
    return false;
}

// A nonzero proper submodule, if any. A proper submodule contains a maximal vector,
// so it suffices to spin every maximal vector (one per line) and look for one that
// does not generate everything. Basis vectors are tried first.
inline std::optional<ModuleSubspace> find_proper_submodule(const MatrixModule& m, std::mt19937_64* rng = nullptr) {
    auto spaces = maximal_vectors(m);
    if (rng) std::shuffle(spaces.begin(), spaces.end(), *rng);
    std::optional<ModuleSubspace> found;
    auto attempt = [&](std::size_t block, const FpVector& v) {
        ModuleSubspace s = spin(m, {{block, v}});
        if (s.dim() < m.dim()) {
            found.emplace(std::move(s));
            return true;
        }
        return false;
    };
    for (const auto& sp : spaces)
        for (const auto& b : sp.basis)
            if (attempt(sp.block, b)) return found;
    for (const auto& sp : spaces) {
        if (sp.basis.size() < 2) continue;
        if (for_each_line(m.p(), sp.basis, [&](const FpVector& v) { return attempt(sp.block, v); })) return found;
    }
    return std::nullopt;
}

inline bool is_simple(const MatrixModule& m) {
    if (m.dim() == 0) return false;
    return !find_proper_submodule(m).has_value();
}

struct CompositionFactor {
    std::shared_ptr<MatrixModule> module;
    std::vector<Weight> max_weights;
    bool head = false;  // contains the image of the tracked generating vector
    std::size_t dim() const { return module->dim(); }
};

namespace detail {

inline void collect_factors(std::shared_ptr<MatrixModule> m, std::optional<std::pair<std::size_t, FpVector>> tracked,
                            std::mt19937_64* rng, std::vector<CompositionFactor>& out) {
    auto sub = find_proper_submodule(*m, rng);
    if (!sub) {
        out.push_back({m, maximal_weights(*m), tracked.has_value() && !is_zero(tracked->second)});
        return;
    }
    auto lower = std::make_shared<MatrixModule>(submodule_module(*m, *sub, m->label + "/sub"));
    std::optional<std::pair<std::size_t, FpVector>> carried;
    auto upper = std::make_shared<MatrixModule>(quotient_module(*m, *sub, m->label + "/quo"));
    if (tracked) {
        FpVector q = quotient_local(*sub, tracked->first, tracked->second);
        Weight w = m->blocks[tracked->first].weight;
        std::size_t qb = upper->find_block(w);
        if (qb != MatrixModule::npos) carried.emplace(qb, std::move(q));
    }
    collect_factors(lower, std::nullopt, rng, out);
    collect_factors(upper, carried, rng, out);
}

}  // namespace detail

// Composition factors from the bottom up. When a vector is tracked, the factor in
// which its image survives is flagged as the head.
inline std::vector<CompositionFactor> composition_series(const MatrixModule& m,
                                                         std::optional<std::pair<std::size_t, FpVector>> tracked = {},
                                                         std::optional<std::uint64_t> seed = {}) {
    std::vector<CompositionFactor> out;
    std::optional<std::mt19937_64> rng;
    if (seed) rng.emplace(*seed);
    detail::collect_factors(std::make_shared<MatrixModule>(m), std::move(tracked), rng ? &*rng : nullptr, out);
    return out;
}

inline MatrixModule direct_sum(const MatrixModule& a, const MatrixModule& b) {
    if (a.alg != b.alg) throw std::invalid_argument("direct sum of modules over different algebras");
    std::vector<Weight> w = a.basis_weights;
    w.insert(w.end(), b.basis_weights.begin(), b.basis_weights.end());
    const std::size_t na = a.dim();
    return MatrixModule::from_columns(a.alg, a.label + "+" + b.label, std::move(w), [&](std::size_t g, std::size_t k) {
        const MatrixModule& src = k < na ? a : b;
        std::size_t kk = k < na ? k : k - na, off = k < na ? 0 : na;
        std::size_t s = src.block_of[kk], t = src.targets[g][s];
        SparseCoords col;
        if (t == MatrixModule::npos) return col;
        const FpMatrix& blk = src.action[g][s];
        for (std::size_t i = 0; i < blk.rows(); ++i)
            if (fp_t v = blk(i, src.local_of[kk])) col.emplace_back(static_cast<std::uint32_t>(src.blocks[t].members[i] + off), v);
        return col;
    });
}

// Searches for an isomorphism between simple modules by spinning (v, u) inside the
// direct sum, for a maximal vector v of a and every line u of maximal vectors of
// the same weight in b: the result is the graph of a module map exactly when its
// dimension is dim(a). Returns the dense dim(b) x dim(a) matrix of that map.
inline std::optional<FpMatrix> find_isomorphism(const MatrixModule& a, const MatrixModule& b) {
    if (a.dim() != b.dim() || a.dim() == 0) return std::nullopt;
    auto ma = maximal_vectors(a);
    if (ma.empty()) return std::nullopt;
    const auto& va = ma.front();
    std::size_t bb = b.find_block(va.weight);
    if (bb == MatrixModule::npos) return std::nullopt;
    std::vector<FpMatrix> parts;
    for (auto r : b.alg->raising)
        if (b.targets[r][bb] != MatrixModule::npos) parts.push_back(b.action[r][bb]);
    auto cand = parts.empty() ? nullspace(FpMatrix(b.p(), 0, b.blocks[bb].members.size())) : nullspace(FpMatrix::stack(parts));
    MatrixModule sum = direct_sum(a, b);
    FpVector gv = a.to_global(va.block, va.basis.front());
    std::optional<FpMatrix> result;
    for_each_line(a.p(), cand, [&](const FpVector& u) {
        FpVector whole = gv;
        FpVector gu = b.to_global(bb, u);
        whole.insert(whole.end(), gu.begin(), gu.end());
        std::size_t s = sum.block_of[b.blocks[bb].members.front() + a.dim()];
        ModuleSubspace graph = spin(sum, {{s, sum.to_local(s, whole)}});
        if (graph.dim() != a.dim()) return false;
        // Read T off the graph: each basis row restricted to the a-part is invertible.
        FpMatrix t(a.p(), b.dim(), a.dim());
        for (std::size_t blk = 0; blk < sum.blocks.size(); ++blk) {
            std::vector<FpVector> ga, gb;
            for (const auto& row : graph.parts[blk].rows()) {
                FpVector g = sum.to_global(blk, row);
                ga.emplace_back(g.begin(), g.begin() + a.dim());
                gb.emplace_back(g.begin() + a.dim(), g.end());
            }
            SpanCoordinates sol(a.p(), ga, a.dim());
            for (std::size_t k = 0; k < a.dim(); ++k) {
                if (sum.block_of[k] != blk) continue;
                FpVector e(a.dim(), 0);
                e[k] = 1;
                auto c = sol.coordinates(e);
                if (!c) return false;
                FpVector img(b.dim(), 0);
                PrimeField f(a.p());
                for (std::size_t r = 0; r < c->size(); ++r) f.axpy(img, (*c)[r], gb[r]);
                for (std::size_t i = 0; i < b.dim(); ++i) t(i, k) = img[i];
            }
        }
        result = t;
        return true;
    });
    return result;
}

// T rho_a(e) = rho_b(e) T for every basis element e.
inline bool is_intertwiner(const MatrixModule& a, const MatrixModule& b, const FpMatrix& t) {
    for (std::size_t g = 0; g < a.alg->dim(); ++g)
        if (t * a.dense(g) != b.dense(g) * t) return false;
    return true;
}

}  // namespace hamlie
