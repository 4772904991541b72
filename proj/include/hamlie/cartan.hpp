#pragma once
// Restricted Lie algebras given by structure constants: W(2;(1,1)), the Hamiltonian
// algebra H(2;(1,1)) and its p-envelope, plus filtrations and named elements.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hamlie/dividedpowers.hpp"
#include "hamlie/primefield.hpp"

namespace hamlie {

// Eigenvalues of the two torus elements; Witt-algebra weights leave y at zero.
struct Weight {
    fp_t x = 0, y = 0;
    bool operator==(const Weight& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Weight& o) const { return !(*this == o); }
    bool operator<(const Weight& o) const { return x != o.x ? x < o.x : y < o.y; }
};

inline Weight add_weights(Weight a, Weight b, fp_t p) { return {(a.x + b.x) % p, (a.y + b.y) % p}; }
inline Weight make_weight(std::int64_t a, std::int64_t b, fp_t p) {
    PrimeField f(p);
    return {f.from_int(a), f.from_int(b)};
}

using SparseCoords = std::vector<std::pair<std::uint32_t, fp_t>>;

inline SparseCoords to_sparse(const FpVector& v) {
    SparseCoords s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
    return s;
}
inline FpVector to_dense(const SparseCoords& s, std::size_t n) {
    FpVector v(n, 0);
    for (auto [i, c] : s) v[i] = c;
    return v;
}

class LieAlgebra {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    fp_t p = 0;
    std::string label;
    std::vector<std::string> names;
    std::vector<Weight> weights;  // ad-torus weight of each basis element
    std::vector<int> depths;      // filtration degree of each basis element
    std::vector<Derivation> realization;
    std::vector<std::vector<SparseCoords>> brackets;
    std::vector<SparseCoords> pmap;
    std::vector<std::size_t> generators;  // generate the algebra as a Lie algebra
    std::vector<std::size_t> raising;     // generate the part that kills maximal vectors
    std::size_t torus_x = npos, torus_y = npos;

    std::size_t dim() const { return names.size(); }

    FpVector unit(std::size_t i) const {
        FpVector v(dim(), 0);
        v.at(i) = 1;
        return v;
    }

    FpVector bracket(const FpVector& u, const FpVector& v) const {
        PrimeField f(p);
        FpVector r(dim(), 0);
        for (std::size_t i = 0; i < dim(); ++i) {
            if (!u[i]) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (!v[j]) continue;
                fp_t c = f.mul(u[i], v[j]);
                for (auto [k, s] : brackets[i][j]) r[k] = f.add(r[k], f.mul(c, s));
            }
        }
        return r;
    }

    // Coordinates of a derivation in the realized basis.
    std::optional<FpVector> coordinates(const Derivation& d) const {
        if (!solver_) throw std::logic_error("algebra has no realization inside W(2;(1,1))");
        return solver_->coordinates(d.coords());
    }
    FpVector require_coordinates(const Derivation& d) const {
        auto c = coordinates(d);
        if (!c) throw std::invalid_argument("element " + d.to_string() + " is not in " + label);
        return *c;
    }
    Derivation realize(const FpVector& c) const {
        Derivation d(p);
        PrimeField f(p);
        for (std::size_t i = 0; i < dim(); ++i)
            if (c[i]) d = d + realization[i].scaled(c[i]);
        return d;
    }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        return npos;
    }

    void set_solver(std::shared_ptr<const SpanCoordinates> s) { solver_ = std::move(s); }

private:
    std::shared_ptr<const SpanCoordinates> solver_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

// Common ad-weight of all terms, or nullopt for an inhomogeneous derivation.
inline std::optional<Weight> weight_of(const Derivation& d) {
    const fp_t p = d.prime();
    std::optional<Weight> w;
    bool ok = true;
    auto visit = [&](const DPElement& e, int sx, int sy) {
        for (int a = 0; a < static_cast<int>(p); ++a)
            for (int b = 0; b < static_cast<int>(p); ++b) {
                if (!e.coeff(a, b)) continue;
                Weight t = make_weight(a + sx, b + sy, p);
                if (w && *w != t) ok = false;
                w = t;
            }
    };
    visit(d.fx, -1, 0);
    visit(d.fy, 0, -1);
    if (!ok || !w) return std::nullopt;
    return w;
}

// Lowest degree a+b-1 among the terms x^(a) y^(b) d.
inline int depth_of(const Derivation& d) {
    const int P = static_cast<int>(d.prime());
    int best = 2 * P;
    for (int a = 0; a < P; ++a)
        for (int b = 0; b < P; ++b)
            if (d.fx.coeff(a, b) || d.fy.coeff(a, b)) best = std::min(best, a + b - 1);
    return best;
}

// Closes a list of independent derivations into structure constants; throws if the
// span is not a restricted subalgebra (or, without p-map, not a subalgebra).
inline std::shared_ptr<LieAlgebra> algebra_from_derivations(fp_t p, std::string label,
                                                            std::vector<Derivation> basis,
                                                            std::vector<std::string> names,
                                                            bool with_pmap = true) {
    auto alg = std::make_shared<LieAlgebra>();
    alg->p = p;
    alg->label = std::move(label);
    alg->names = std::move(names);
    const std::size_t n = basis.size();
    std::vector<FpVector> coords;
    for (const auto& d : basis) coords.push_back(d.coords());
    auto solver = std::make_shared<SpanCoordinates>(p, coords, 2 * static_cast<std::size_t>(p) * p);
    alg->set_solver(solver);
    alg->realization = std::move(basis);
    for (const auto& d : alg->realization) {
        auto w = weight_of(d);
        if (!w) throw std::invalid_argument("basis element is not a torus weight vector: " + d.to_string());
        alg->weights.push_back(*w);
        alg->depths.push_back(depth_of(d));
    }
    alg->brackets.assign(n, std::vector<SparseCoords>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto c = solver->coordinates(bracket(alg->realization[i], alg->realization[j]).coords());
            if (!c) throw std::invalid_argument(alg->label + " is not closed under the bracket");
            alg->brackets[i][j] = to_sparse(*c);
            PrimeField f(p);
            for (auto& x : *c) x = f.neg(x);
            alg->brackets[j][i] = to_sparse(*c);
        }
    if (with_pmap) {
        for (std::size_t i = 0; i < n; ++i) {
            auto c = solver->coordinates(p_power(alg->realization[i]).coords());
            if (!c) throw std::invalid_argument(alg->label + " is not closed under the p-map");
            alg->pmap.push_back(to_sparse(*c));
        }
    }
    return alg;
}

inline std::shared_ptr<LieAlgebra> build_W2(fp_t p, bool with_pmap = true) {
    require_prime(p);
    std::vector<Derivation> basis;
    std::vector<std::string> names;
    for (int side = 0; side < 2; ++side)
        for (int a = 0; a < static_cast<int>(p); ++a)
            for (int b = 0; b < static_cast<int>(p); ++b) {
                basis.push_back(side == 0 ? Derivation::dx(p, a, b) : Derivation::dy(p, a, b));
                names.push_back(basis.back().to_string());
            }
    return algebra_from_derivations(p, "W(2;(1,1))", std::move(basis), std::move(names), with_pmap);
}

// The standard basis of H(2;(1,1)), with x^(-1) = y^(-1) = 0:
// y^(j-1) d_x - x^(p-1) y^(j) d_y for 0 <= j < p, and
// x^(i-1) y^(j) d_y - x^(i) y^(j-1) d_x for 1 <= i < p, 0 <= j < p.
inline std::vector<Derivation> hamiltonian_basis(fp_t p) {
    const int P = static_cast<int>(p);
    std::vector<Derivation> out;
    for (int j = 0; j < P; ++j)
        out.push_back(Derivation::dx(p, 0, j - 1) - Derivation::dy(p, P - 1, j));
    for (int i = 1; i < P; ++i)
        for (int j = 0; j < P; ++j)
            out.push_back(Derivation::dy(p, i - 1, j) - Derivation::dx(p, i, j - 1));
    return out;
}

struct SubalgebraSpan {
    AlgebraPtr parent;
    std::vector<FpVector> basis;  // coordinates in the parent
    std::size_t dim() const { return basis.size(); }
};

inline SubalgebraSpan build_H(fp_t p) {
    auto w2 = build_W2(p, false);
    SubalgebraSpan h{w2, {}};
    for (const auto& d : hamiltonian_basis(p)) h.basis.push_back(w2->require_coordinates(d));
    return h;
}

// Named elements of the p-envelope, written as derivations.
inline Derivation named_derivation(fp_t p, const std::string& name) {
    const int P = static_cast<int>(p);
    using D = Derivation;
    if (name == "d_x'") return D::dx(p, 0, 0) - D::dy(p, P - 1, 1);
    if (name == "d_y") return D::dy(p, 0, 0);
    if (name == "xd_x") return D::dx(p, 1, 0);
    if (name == "yd_y") return D::dy(p, 0, 1);
    if (name == "X") return D::dy(p, 1, 0);
    if (name == "Y") return D::dx(p, 0, 1) - D::dy(p, P - 1, 2);
    if (name == "H") return D::dx(p, 1, 0) - D::dy(p, 0, 1);
    if (name == "h") return D::dy(p, 0, 1) - D::dx(p, 1, 0);
    if (name == "toral") return D::dx(p, 1, 0) + D::dy(p, 0, 1);
    if (name == "A") return D::dy(p, 0, 2) - D::dx(p, 1, 1);
    if (name == "B") return D::dy(p, 1, 1) - D::dx(p, 2, 0);
    if (name == "C") return D::dx(p, 0, 2) - D::dy(p, P - 1, 3);
    if (name == "D") return D::dy(p, 2, 1) - D::dx(p, 3, 0);
    if (name == "F") return D::dy(p, 1, P - 1) - D::dx(p, 2, P - 2);
    if (name == "J") return D::dy(p, P - 2, P - 1) - D::dx(p, P - 1, P - 2);
    if (name == "L") return D::dy(p, 0, P - 1) - D::dx(p, 1, P - 2);
    if (name == "x^(p-1)d_y") return D::dy(p, P - 1, 0);
    if (name == "x^(2)d_y") return D::dy(p, 2, 0);
    throw std::invalid_argument("unknown named element: " + name);
}

inline const std::vector<std::string>& named_elements() {
    static const std::vector<std::string> names = {"d_x'", "d_y", "xd_x", "yd_y", "X", "Y", "H", "h", "toral",
                                                   "A", "B", "C", "D", "F", "J", "L", "x^(p-1)d_y", "x^(2)d_y"};
    return names;
}

namespace detail {

inline std::shared_ptr<LieAlgebra> make_p_envelope(fp_t p) {
    require_prime(p);
    const int P = static_cast<int>(p);
    std::vector<Derivation> basis;
    std::vector<std::string> names;
    auto add = [&](Derivation d, std::string name) {
        basis.push_back(std::move(d));
        names.push_back(std::move(name));
    };
    // Degree -1 part, then gl2 representatives, then the rest by depth.
    for (const char* n : {"d_x'", "d_y", "xd_x", "yd_y", "X", "Y"}) add(named_derivation(p, n), n);
    std::vector<std::pair<int, Derivation>> rest;
    rest.emplace_back(P - 2, named_derivation(p, "x^(p-1)d_y"));
    for (int j = 3; j < P; ++j) rest.emplace_back(j - 2, Derivation::dx(p, 0, j - 1) - Derivation::dy(p, P - 1, j));
    for (int i = 1; i < P; ++i)
        for (int j = 0; j < P; ++j)
            if (i + j >= 3) rest.emplace_back(i + j - 2, Derivation::dy(p, i - 1, j) - Derivation::dx(p, i, j - 1));
    std::stable_sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::map<std::string, std::string> alias;
    for (const char* n : {"A", "B", "C", "D", "F", "J", "L", "x^(p-1)d_y", "x^(2)d_y"})
        alias[named_derivation(p, n).to_string()] = n;
    for (auto& [depth, d] : rest) {
        auto it = alias.find(d.to_string());
        std::string name = it != alias.end() ? it->second : d.to_string();
        add(std::move(d), name);
    }
    auto alg = algebra_from_derivations(p, "H^(2;(1,1))", std::move(basis), std::move(names));

    // The span must be H(2;(1,1)) plus the toral element x d_x + y d_y.
    std::vector<FpVector> span;
    for (const auto& d : hamiltonian_basis(p)) span.push_back(d.coords());
    span.push_back(named_derivation(p, "toral").coords());
    SpanCoordinates ref(p, span, 2 * static_cast<std::size_t>(p) * p);
    if (ref.size() != alg->dim()) throw std::logic_error("p-envelope has the wrong dimension");
    for (const auto& d : alg->realization)
        if (!ref.coordinates(d.coords())) throw std::logic_error("p-envelope basis leaves H + k(x d_x + y d_y)");

    alg->torus_x = 2;
    alg->torus_y = 3;
    std::vector<std::string> gens = {"X", "x^(p-1)d_y", "A", "C"};
    if (p == 5) gens.push_back("J");
    for (const auto& g : gens) alg->raising.push_back(alg->index_of(g));
    alg->generators = alg->raising;
    for (const char* g : {"Y", "d_x'", "d_y", "xd_x", "yd_y"}) alg->generators.push_back(alg->index_of(g));
    for (auto i : alg->generators)
        if (i == LieAlgebra::npos) throw std::logic_error("generator missing from the adapted basis");
    return alg;
}

}  // namespace detail

// The p-envelope H(2;(1,1)) + k(x d_x + y d_y), in an adapted basis:
// 0 d_x', 1 d_y, 2 x d_x, 3 y d_y, 4 X = x d_y, 5 Y, then depth >= 1 elements.
inline AlgebraPtr build_p_envelope(fp_t p) {
    static std::mutex mu;
    static std::map<fp_t, AlgebraPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    AlgebraPtr alg = detail::make_p_envelope(p);
    cache[p] = alg;
    return alg;
}

inline FpVector named_element(const LieAlgebra& alg, const std::string& name) {
    return alg.require_coordinates(named_derivation(alg.p, name));
}

// Basis of the intersection of the algebra with W_(n), the span of terms of degree >= n.
inline std::vector<FpVector> filtration_component(const LieAlgebra& alg, int n) {
    const fp_t p = alg.p;
    const int P = static_cast<int>(p);
    std::vector<std::size_t> low_rows;
    for (int side = 0; side < 2; ++side)
        for (int a = 0; a < P; ++a)
            for (int b = 0; b < P; ++b)
                if (a + b - 1 < n) low_rows.push_back(side * p * p + a * p + b);
    FpMatrix m(p, low_rows.size(), alg.dim());
    for (std::size_t j = 0; j < alg.dim(); ++j) {
        FpVector c = alg.realization[j].coords();
        for (std::size_t r = 0; r < low_rows.size(); ++r) m(r, j) = c[low_rows[r]];
    }
    return nullspace(m);
}

// Image in gl2 of an element of the degree >= 0 part, as a 2x2 matrix with
// x d_x -> E11, y d_y -> E22, x d_y -> E12, Y -> E21 and depth >= 1 -> 0.
inline FpMatrix gl2_projection(const LieAlgebra& hhat, const FpVector& c) {
    if (c.at(0) || c.at(1)) throw std::invalid_argument("gl2_projection: element has a degree -1 component");
    FpMatrix m(hhat.p, 2, 2);
    m(0, 0) = c[2];
    m(1, 1) = c[3];
    m(0, 1) = c[4];
    m(1, 0) = c[5];
    return m;
}

// Smallest subalgebra containing the given elements; right-normed brackets with
// the generators already span it.
inline std::vector<FpVector> spin_subalgebra(const LieAlgebra& alg, const std::vector<FpVector>& gens) {
    EchelonBasis span(alg.p, alg.dim());
    std::vector<FpVector> queue;
    for (const auto& g : gens)
        if (span.insert(g)) queue.push_back(g);
    for (std::size_t k = 0; k < queue.size(); ++k)
        for (const auto& g : gens) {
            FpVector b = alg.bracket(g, queue[k]);
            if (span.insert(b)) queue.push_back(b);
        }
    return span.rows();
}

inline bool jacobi_holds(const LieAlgebra& alg, std::size_t i, std::size_t j, std::size_t k) {
    FpVector a = alg.unit(i), b = alg.unit(j), c = alg.unit(k);
    FpVector s = alg.bracket(a, alg.bracket(b, c));
    PrimeField f(alg.p);
    f.axpy(s, 1, alg.bracket(b, alg.bracket(c, a)));
    f.axpy(s, 1, alg.bracket(c, alg.bracket(a, b)));
    return is_zero(s);
}

// Elements of the p-envelope playing the roles x^(j) d of W(1;1):
// d_y, y d_y - x d_x, and y^(j) d_y - x y^(j-1) d_x.
inline std::vector<FpVector> witt_roles(const LieAlgebra& hhat) {
    const fp_t p = hhat.p;
    std::vector<FpVector> out;
    out.push_back(hhat.require_coordinates(Derivation::dy(p, 0, 0)));
    for (int j = 1; j < static_cast<int>(p); ++j)
        out.push_back(hhat.require_coordinates(Derivation::dy(p, 0, j) - Derivation::dx(p, 1, j - 1)));
    return out;
}

// Deterministic listing of the nonzero brackets [e_i, e_j], i < j.
inline void write_structure_table(std::ostream& os, const LieAlgebra& alg) {
    os << "# " << alg.label << " p=" << alg.p << " dim=" << alg.dim() << "\n";
    for (std::size_t i = 0; i < alg.dim(); ++i) os << "e" << i << " = " << alg.names[i] << "\n";
    for (std::size_t i = 0; i < alg.dim(); ++i)
        for (std::size_t j = i + 1; j < alg.dim(); ++j) {
            if (alg.brackets[i][j].empty()) continue;
            os << "[e" << i << ",e" << j << "] =";
            for (auto [k, c] : alg.brackets[i][j]) os << " " << c << "*e" << k;
            os << "\n";
        }
}

}  // namespace hamlie
