#pragma once
// Induced modules Z(lambda) = u(H^) (x)_{u(H^_(0))} L_0(lambda) with PBW basis
// d_x'^{a1} d_y^{a2} (x) m_i, 0 <= a1, a2 < p, 1 <= i <= n+1.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hamlie/cartan.hpp"
#include "hamlie/module.hpp"

namespace hamlie {

// The simple restricted gl2-module L_0(lambda) of dimension n+1, n = lambda1 - lambda2 mod p:
// X m_i = m_{i+1}, Y m_i = (i-1)(n-i+2) m_{i-1}, x d_x m_i = (lambda1 - (n+1-i)) m_i,
// y d_y m_i = (lambda2 + (n+1-i)) m_i. Stored 0-based.
struct GL2Module {
    fp_t p = 0;
    Weight lambda;
    std::size_t n = 0;
    FpMatrix xdx, ydy, X, Y;

    std::size_t dim() const { return n + 1; }

    static GL2Module simple(fp_t p, Weight lambda) {
        GL2Module m;
        PrimeField f(p);
        m.p = p;
        m.lambda = lambda;
        m.n = f.sub(lambda.x, lambda.y);
        const std::size_t d = m.n + 1;
        m.xdx = FpMatrix(p, d, d);
        m.ydy = FpMatrix(p, d, d);
        m.X = FpMatrix(p, d, d);
        m.Y = FpMatrix(p, d, d);
        for (std::size_t i = 1; i <= d; ++i) {
            std::int64_t shift = static_cast<std::int64_t>(m.n + 1 - i);
            m.xdx(i - 1, i - 1) = f.from_int(static_cast<std::int64_t>(lambda.x) - shift);
            m.ydy(i - 1, i - 1) = f.from_int(static_cast<std::int64_t>(lambda.y) + shift);
            if (i < d) m.X(i, i - 1) = 1;
            if (i > 1) m.Y(i - 2, i - 1) = f.from_int(static_cast<std::int64_t>(i - 1) * static_cast<std::int64_t>(m.n - i + 2));
        }
        return m;
    }

    Weight weight_of(std::size_t i0) const { return {xdx(i0, i0), ydy(i0, i0)}; }

    // Action of the degree >= 0 part through its gl2 image.
    FpMatrix rho0(const LieAlgebra& hhat, const FpVector& c) const {
        FpMatrix g = gl2_projection(hhat, c);
        return xdx.scaled(g(0, 0)) + ydy.scaled(g(1, 1)) + X.scaled(g(0, 1)) + Y.scaled(g(1, 0));
    }
};

struct PBWIndex {
    int a1 = 0, a2 = 0;
    std::size_t i = 1;  // 1-based index of m_i
    bool operator==(const PBWIndex& o) const { return a1 == o.a1 && a2 == o.a2 && i == o.i; }
};

class InducedModule {
public:
    fp_t p = 0;
    Weight lambda;
    GL2Module m0;
    std::shared_ptr<MatrixModule> module;

    std::size_t dim() const { return static_cast<std::size_t>(p) * p * m0.dim(); }
    std::size_t index(int a1, int a2, std::size_t i) const {
        return (static_cast<std::size_t>(a1) * p + static_cast<std::size_t>(a2)) * m0.dim() + (i - 1);
    }
    std::size_t index(const PBWIndex& k) const { return index(k.a1, k.a2, k.i); }
    PBWIndex unpack(std::size_t k) const {
        PBWIndex r;
        r.i = k % m0.dim() + 1;
        k /= m0.dim();
        r.a2 = static_cast<int>(k % p);
        r.a1 = static_cast<int>(k / p);
        return r;
    }
    Weight weight_of(const PBWIndex& k) const {
        Weight w = m0.weight_of(k.i - 1);
        PrimeField f(p);
        return {f.sub(w.x, static_cast<fp_t>(k.a1)), f.sub(w.y, static_cast<fp_t>(k.a2))};
    }
    std::string basis_label(std::size_t k) const {
        PBWIndex b = unpack(k);
        return "d_x'^" + std::to_string(b.a1) + " d_y^" + std::to_string(b.a2) + " (x) m" + std::to_string(b.i);
    }
};

namespace detail {

// Memoised rewriting of e_b . (d_x'^{a1} d_y^{a2} (x) m_i) into the PBW basis. With
// D in the degree >= 0 part, D d_x' = d_x' D + [D, d_x'] and D d_y = d_y D + [D, d_y]
// move D to the right until it meets M, where it acts through gl2. Powers that reach
// p are replaced using the p-map: d_x'^p = d_x'^[p], d_y^p = d_y^[p].
class Straightener {
public:
    Straightener(const LieAlgebra& alg, const InducedModule& z)
        : A_(alg), z_(z), f_(alg.p), dim_(z.dim()),
          memo_(alg.dim(), std::vector<SparseCoords>(dim_)), state_(alg.dim(), std::vector<char>(dim_, 0)),
          budget_(64 * dim_ * alg.dim() + 1024) {
        for (std::size_t b = 0; b < A_.dim(); ++b)
            rho0_.push_back(b >= 2 ? z.m0.rho0(A_, A_.unit(b)) : FpMatrix());
    }

    const SparseCoords& column(std::size_t b, std::size_t k) {
        if (state_[b][k] == 2) return memo_[b][k];
        if (state_[b][k] == 1) throw std::logic_error("straightening revisited an unfinished term");
        if (++steps_ > budget_) throw std::runtime_error("straightening exceeded its rewrite budget");
        state_[b][k] = 1;
        FpVector acc(dim_, 0);
        compute(b, k, acc);
        memo_[b][k] = to_sparse(acc);
        state_[b][k] = 2;
        return memo_[b][k];
    }

private:
    void add_unit(FpVector& acc, std::size_t k, fp_t c) { acc[k] = f_.add(acc[k], c); }

    void add_element(FpVector& acc, const SparseCoords& elem, std::size_t k, fp_t scale = 1) {
        for (auto [g, c] : elem) {
            fp_t s = f_.mul(c, scale);
            for (auto [r, v] : column(g, k)) acc[r] = f_.add(acc[r], f_.mul(s, v));
        }
    }

    void add_generator_on(FpVector& acc, std::size_t g, const SparseCoords& vec) {
        for (auto [k, c] : vec)
            for (auto [r, v] : column(g, k)) acc[r] = f_.add(acc[r], f_.mul(c, v));
    }

    void compute(std::size_t b, std::size_t k, FpVector& acc) {
        const PBWIndex t = z_.unpack(k);
        const int P = static_cast<int>(A_.p);
        if (b == 0) {
            if (t.a1 < P - 1) add_unit(acc, z_.index(t.a1 + 1, t.a2, t.i), 1);
            else add_element(acc, A_.pmap[0], z_.index(0, t.a2, t.i));
            return;
        }
        if (b == 1) {
            if (t.a1 == 0) {
                if (t.a2 < P - 1) add_unit(acc, z_.index(0, t.a2 + 1, t.i), 1);
                else add_element(acc, A_.pmap[1], z_.index(0, 0, t.i));
                return;
            }
            std::size_t prev = z_.index(t.a1 - 1, t.a2, t.i);
            SparseCoords inner = column(1, prev);
            add_generator_on(acc, 0, inner);
            add_element(acc, A_.brackets[1][0], prev);
            return;
        }
        if (t.a1 > 0) {
            std::size_t prev = z_.index(t.a1 - 1, t.a2, t.i);
            SparseCoords inner = column(b, prev);
            add_generator_on(acc, 0, inner);
            add_element(acc, A_.brackets[b][0], prev);
            return;
        }
        if (t.a2 > 0) {
            std::size_t prev = z_.index(0, t.a2 - 1, t.i);
            SparseCoords inner = column(b, prev);
            add_generator_on(acc, 1, inner);
            add_element(acc, A_.brackets[b][1], prev);
            return;
        }
        const FpMatrix& r = rho0_[b];
        for (std::size_t j = 1; j <= z_.m0.dim(); ++j)
            if (fp_t v = r(j - 1, t.i - 1)) add_unit(acc, z_.index(0, 0, j), v);
    }

    const LieAlgebra& A_;
    const InducedModule& z_;
    PrimeField f_;
    std::size_t dim_;
    std::vector<std::vector<SparseCoords>> memo_;
    std::vector<std::vector<char>> state_;
    std::vector<FpMatrix> rho0_;
    std::size_t budget_, steps_ = 0;
};

}  // namespace detail

inline std::string weight_label(Weight w, fp_t p) {
    PrimeField f(p);
    return "(" + std::to_string(f.centered(w.x)) + "," + std::to_string(f.centered(w.y)) + ")";
}

// Builds Z(lambda) over the p-envelope, with lambda given by canonical residues.
inline InducedModule build_induced(fp_t p, Weight lambda) {
    require_prime(p);
    AlgebraPtr alg = build_p_envelope(p);
    InducedModule z;
    z.p = p;
    z.lambda = {lambda.x % p, lambda.y % p};
    z.m0 = GL2Module::simple(p, z.lambda);
    detail::Straightener st(*alg, z);
    std::vector<Weight> weights(z.dim());
    for (std::size_t k = 0; k < z.dim(); ++k) weights[k] = z.weight_of(z.unpack(k));
    z.module = std::make_shared<MatrixModule>(MatrixModule::from_columns(
        alg, "Z" + weight_label(z.lambda, p), std::move(weights),
        [&](std::size_t g, std::size_t k) { return st.column(g, k); }));
    return z;
}

inline InducedModule build_induced(fp_t p, std::int64_t l1, std::int64_t l2) {
    return build_induced(p, make_weight(l1, l2, p));
}

// Scalars appearing in the hand-computed actions, with lambda(a)_i = lambda_i + a_i.
struct ActionScalars {
    static std::int64_t c2(std::int64_t n) { return n * (n - 1) / 2; }
    static std::int64_t c3(std::int64_t n) { return n * (n - 1) * (n - 2) / 6; }
    static std::int64_t r(std::int64_t l1, std::int64_t l2, std::int64_t a1, std::int64_t a2) {
        return a1 * ((l1 + a1) - (l2 + a2)) + a1 * a2 - c2(a1);
    }
    static std::int64_t s(std::int64_t l1, std::int64_t l2, std::int64_t a1, std::int64_t a2) {
        return a2 * ((l1 + a1) - (l2 + a2)) - a1 * a2 + c2(a2);
    }
    static std::int64_t t(std::int64_t l1, std::int64_t l2, std::int64_t a1, std::int64_t a2) {
        return c2(a1) * ((l2 + a2) - (l1 + a1)) - c2(a1) * a2 + c3(a1);
    }
    static std::int64_t w(std::int64_t l1, std::int64_t, std::int64_t a1, std::int64_t a2) {
        return a2 * (l1 + a1) - c2(a2);
    }
};

}  // namespace hamlie
