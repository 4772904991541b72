#pragma once
// Closed formulas for the action of single elements on a vector
// v = sum_a d_x'^{a1} d_y^{a2} (x) m_a of Z(lambda), written straight from the
// hand computations. A scalar lambda(a)_1 (resp. lambda(a)_2) multiplying m_a is
// read as x d_x (resp. y d_y) acting on m_a, which agrees with lambda_i + a_i
// whenever v is a weight vector of weight lambda.
//
// Those for x d_y, d_y, Y, x^(p-1) d_y, L and J hold for every v. Those for
// x^(2) d_y, A, B, C, D and F were simplified using that v is maximal.

#include <string>

#include "hamlie/induction.hpp"

namespace hamlie {

namespace detail {

class OracleBuilder {
public:
    OracleBuilder(const InducedModule& z, const FpVector& v) : z_(z), v_(v), f_(z.p), out_(z.dim(), 0) {}

    int P() const { return static_cast<int>(z_.p); }

    FpVector m(int a1, int a2) const {
        FpVector r(z_.m0.dim());
        for (std::size_t i = 1; i <= z_.m0.dim(); ++i) r[i - 1] = v_[z_.index(a1, a2, i)];
        return r;
    }
    FpVector X(const FpVector& u) const { return z_.m0.X * u; }
    FpVector Y(const FpVector& u) const { return z_.m0.Y * u; }
    // (cx * x d_x + cy * y d_y + c) u
    FpVector lin(const FpVector& u, std::int64_t cx, std::int64_t cy, std::int64_t c) const {
        FpVector r(u.size(), 0);
        f_.axpy(r, f_.from_int(cx), z_.m0.xdx * u);
        f_.axpy(r, f_.from_int(cy), z_.m0.ydy * u);
        f_.axpy(r, f_.from_int(c), u);
        return r;
    }

    // Adds coef * d_x'^{c1} d_y^{c2} (x) u. Powers of d_y at p or beyond vanish.
    void put(int c1, int c2, const FpVector& u, std::int64_t coef = 1) {
        fp_t k = f_.from_int(coef);
        if (k == 0 || is_zero(u)) return;
        if (c1 < 0 || c2 < 0) throw std::logic_error("oracle produced a negative exponent with nonzero coefficient");
        if (c2 >= P()) return;
        if (c1 >= P()) throw std::logic_error("oracle produced d_x'^p");
        for (std::size_t i = 1; i <= u.size(); ++i)
            if (u[i - 1]) {
                std::size_t idx = z_.index(c1, c2, i);
                out_[idx] = f_.add(out_[idx], f_.mul(k, u[i - 1]));
            }
    }

    FpVector result() const { return out_; }

private:
    const InducedModule& z_;
    const FpVector& v_;
    PrimeField f_;
    FpVector out_;
};

inline std::int64_t c2(std::int64_t n) { return n * (n - 1) / 2; }
inline std::int64_t c3(std::int64_t n) { return n * (n - 1) * (n - 2) / 6; }

}  // namespace detail

inline const std::vector<std::string>& oracle_elements() {
    static const std::vector<std::string> names = {"X", "d_y", "Y", "x^(p-1)d_y", "L", "J",
                                                   "x^(2)d_y", "B", "A", "C", "D", "F"};
    return names;
}

// True for the formulas that hold without assuming v maximal.
inline bool oracle_is_general(const std::string& name) {
    return name == "X" || name == "d_y" || name == "Y" || name == "x^(p-1)d_y" || name == "L" || name == "J";
}

inline FpVector oracle_action(const InducedModule& z, const std::string& name, const FpVector& v) {
    using detail::c2;
    using detail::c3;
    detail::OracleBuilder o(z, v);
    const int P = o.P();
    auto each = [&](auto&& fn) {
        for (int a1 = 0; a1 < P; ++a1)
            for (int a2 = 0; a2 < P; ++a2) fn(a1, a2, o.m(a1, a2));
    };

    if (name == "X") {
        each([&](int a1, int a2, const FpVector& m) {
            o.put(a1, a2, o.X(m));
            o.put(a1 - 1, a2 + 1, m, -a1);
        });
    } else if (name == "d_y") {
        each([&](int a1, int a2, const FpVector& m) {
            o.put(a1, a2 + 1, m);
            if (a1 == P - 1) o.put(0, a2, o.X(m));
        });
    } else if (name == "Y") {
        each([&](int a1, int a2, const FpVector& m) {
            o.put(a1, a2, o.Y(m));
            if (a1 != P - 1) o.put(a1 + 1, a2 - 1, m, -a2);
            if (a1 == P - 2) o.put(0, a2 - 2, o.X(m), -c2(a2));
            if (a1 == P - 1) {
                // w_a m_a = (a2 lambda(a)_1 - C(a2,2)) m_a
                o.put(0, a2 - 1, o.lin(m, a2, 0, -c2(a2)));
                o.put(1, a2 - 2, o.X(m), c2(a2));
            }
        });
    } else if (name == "x^(p-1)d_y") {
        each([&](int a1, int a2, const FpVector& m) {
            if (a1 == P - 2) o.put(0, a2, o.X(m), -1);
            if (a1 == P - 1) {
                o.put(1, a2, o.X(m));
                o.put(0, a2 + 1, m);
            }
        });
    } else if (name == "L") {
        each([&](int a1, int a2, const FpVector& m) {
            if (a2 == P - 3) o.put(a1 - 1, 0, o.Y(m), -a1);
            if (a2 == P - 2) {
                o.put(a1 - 1, 1, o.Y(m), 2 * a1);
                o.put(a1, 0, o.lin(m, -1, 1, a1));
            }
            if (a2 == P - 1) {
                o.put(a1 - 1, 2, o.Y(m), -a1);
                o.put(a1, 1, o.lin(m, 1, -1, -1 - a1));
            }
        });
        o.put(0, 0, o.X(o.m(P - 1, P - 1)), -2);
    } else if (name == "J") {
        if (P != 5) throw std::invalid_argument("the closed formula for J is only available at p = 5");
        o.put(0, 0, o.X(o.m(2, 4)));
        o.put(0, 0, o.lin(o.m(3, 3), -1, 1, 0));
        o.put(0, 0, o.Y(o.m(4, 2)), -1);
        o.put(1, 0, o.X(o.m(3, 4)), 3);
        o.put(0, 1, o.lin(o.m(3, 4), -4, 4, -1));
        o.put(1, 0, o.lin(o.m(4, 3), -4, 4, 1));
        o.put(0, 1, o.Y(o.m(4, 3)), -3);
        o.put(1, 1, o.lin(o.m(4, 4), -1, 1, 0));
        o.put(2, 0, o.X(o.m(4, 4)));
        o.put(0, 2, o.Y(o.m(4, 4)), -1);
    } else if (name == "x^(2)d_y") {
        each([&](int a1, int a2, const FpVector& m) {
            o.put(a1 - 2, a2 + 1, m, c2(a1));
            o.put(a1 - 1, a2, o.X(m), -a1);
        });
    } else if (name == "B") {
        each([&](int a1, int a2, const FpVector& m) {
            // r_a = a1 (lambda(a)_1 - lambda(a)_2) + a1 a2 - C(a1,2)
            o.put(a1 - 1, a2, o.lin(m, a1, -a1, a1 * a2 - c2(a1)));
            o.put(a1, a2 - 1, o.X(m), -a2);
        });
    } else if (name == "A") {
        each([&](int a1, int a2, const FpVector& m) {
            // s_a = a2 (lambda(a)_1 - lambda(a)_2) - a1 a2 + C(a2,2)
            o.put(a1, a2 - 1, o.lin(m, a2, -a2, -a1 * a2 + c2(a2)));
            o.put(a1 - 1, a2, o.Y(m), a1);
        });
    } else if (name == "C") {
        each([&](int a1, int a2, const FpVector& m) {
            if (a1 < P - 2) {
                o.put(a1 + 1, a2 - 2, m, c2(a2));
                o.put(a1, a2 - 1, o.Y(m), -a2);
            } else if (a1 == P - 2) {
                o.put(P - 1, a2 - 2, m, c2(a2));
                o.put(P - 2, a2 - 1, o.Y(m), -a2);
                o.put(0, a2 - 3, o.X(m), 2 * c3(a2));
            } else {
                o.put(P - 1, a2 - 1, o.Y(m), -a2);
                // (C(a2,2)(lambda(a)_2 - 2 lambda(a)_1 + a2 - 2) - 2 C(a2,3)) m_a
                o.put(0, a2 - 2, o.lin(m, -2 * c2(a2), c2(a2), c2(a2) * (a2 - 2) - 2 * c3(a2)));
            }
        });
    } else if (name == "D") {
        each([&](int a1, int a2, const FpVector& m) {
            // t_a = C(a1,2)(lambda(a)_2 - lambda(a)_1) - C(a1,2) a2 + C(a1,3)
            o.put(a1 - 2, a2, o.lin(m, -c2(a1), c2(a1), -c2(a1) * a2 + c3(a1)));
            o.put(a1 - 1, a2 - 1, o.X(m), a1 * a2);
        });
    } else if (name == "F") {
        each([&](int a1, int a2, const FpVector& m) {
            if (a2 == P - 3) o.put(a1 - 2, 0, o.Y(m), -c2(a1));
            if (a2 == P - 2) {
                o.put(a1 - 2, 1, o.Y(m), 2 * c2(a1));
                o.put(a1 - 1, 0, o.lin(m, -a1, a1, c2(a1)));
            }
            if (a2 == P - 1) {
                o.put(a1, 0, o.X(m));
                o.put(a1 - 2, 2, o.Y(m), -c2(a1));
                o.put(a1 - 1, 1, o.lin(m, a1, -a1, -a1 - c2(a1)));
            }
        });
    } else {
        throw std::invalid_argument("no closed formula for " + name);
    }
    return o.result();
}

}  // namespace hamlie
