#pragma once
// The divided power algebra O(2;(1,1)) and its special derivations W(2;(1,1)).
// Elements are stored densely: p^2 coefficients indexed by a*p + b for x^(a) y^(b).

#include <sstream>
#include <string>
#include <vector>

#include "hamlie/primefield.hpp"

namespace hamlie {

// Binomial coefficient mod p via Lucas' theorem.
inline fp_t binom_mod(std::int64_t n, std::int64_t k, fp_t p) {
    if (k < 0 || n < 0 || k > n) return 0;
    PrimeField f(p);
    fp_t r = 1;
    while (n || k) {
        std::int64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        fp_t num = 1, den = 1;
        for (std::int64_t i = 0; i < kd; ++i) {
            num = f.mul(num, static_cast<fp_t>(nd - i));
            den = f.mul(den, static_cast<fp_t>(i + 1));
        }
        r = f.mul(r, f.mul(num, f.inv(den)));
        n /= p;
        k /= p;
    }
    return r;
}

struct DPMonomial {
    int a = 0;  // exponent of x
    int b = 0;  // exponent of y
    bool operator==(const DPMonomial& o) const { return a == o.a && b == o.b; }
    bool operator<(const DPMonomial& o) const { return a != o.a ? a < o.a : b < o.b; }
};

class DPElement {
public:
    explicit DPElement(fp_t p) : p_(p), c_(static_cast<std::size_t>(p) * p, 0) {}

    static DPElement monomial(fp_t p, int a, int b, fp_t coeff = 1) {
        DPElement e(p);
        if (a >= 0 && b >= 0 && a < static_cast<int>(p) && b < static_cast<int>(p)) e.c_[a * p + b] = coeff % p;
        return e;
    }
    static DPElement one(fp_t p) { return monomial(p, 0, 0); }

    fp_t prime() const { return p_; }
    fp_t coeff(int a, int b) const { return c_[a * p_ + b]; }
    void set(int a, int b, fp_t v) { c_[a * p_ + b] = v % p_; }
    const FpVector& coeffs() const { return c_; }
    FpVector& coeffs() { return c_; }
    bool is_zero() const { return hamlie::is_zero(c_); }

    DPElement operator+(const DPElement& o) const { DPElement r = *this; PrimeField(p_).axpy(r.c_, 1, o.c_); return r; }
    DPElement operator-(const DPElement& o) const { DPElement r = *this; PrimeField(p_).axpy(r.c_, p_ - 1, o.c_); return r; }
    DPElement scaled(fp_t s) const {
        DPElement r = *this;
        PrimeField f(p_);
        for (auto& x : r.c_) x = f.mul(x, s % p_);
        return r;
    }
    bool operator==(const DPElement& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const DPElement& o) const { return !(*this == o); }

    // x^(a) x^(c) = C(a+c, a) x^(a+c), vanishing once a+c reaches p.
    DPElement operator*(const DPElement& o) const {
        DPElement r(p_);
        const int P = static_cast<int>(p_);
        PrimeField f(p_);
        for (int a = 0; a < P; ++a)
            for (int b = 0; b < P; ++b) {
                fp_t u = coeff(a, b);
                if (!u) continue;
                for (int c = 0; c + a < P; ++c)
                    for (int d = 0; d + b < P; ++d) {
                        fp_t v = o.coeff(c, d);
                        if (!v) continue;
                        fp_t k = f.mul(binom_mod(a + c, a, p_), binom_mod(b + d, b, p_));
                        if (!k) continue;
                        fp_t& t = r.c_[(a + c) * p_ + (b + d)];
                        t = f.add(t, f.mul(k, f.mul(u, v)));
                    }
            }
        return r;
    }

    DPElement partial_x() const {
        DPElement r(p_);
        for (int a = 1; a < static_cast<int>(p_); ++a)
            for (int b = 0; b < static_cast<int>(p_); ++b) r.c_[(a - 1) * p_ + b] = coeff(a, b);
        return r;
    }
    DPElement partial_y() const {
        DPElement r(p_);
        for (int a = 0; a < static_cast<int>(p_); ++a)
            for (int b = 1; b < static_cast<int>(p_); ++b) r.c_[a * p_ + b - 1] = coeff(a, b);
        return r;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        PrimeField f(p_);
        for (int a = 0; a < static_cast<int>(p_); ++a)
            for (int b = 0; b < static_cast<int>(p_); ++b) {
                fp_t v = coeff(a, b);
                if (!v) continue;
                std::int64_t s = f.centered(v);
                os << (s < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
                std::int64_t m = s < 0 ? -s : s;
                bool bare = (a == 0 && b == 0);
                if (m != 1 || bare) os << m;
                if (a) os << "x^(" << a << ")";
                if (b) os << "y^(" << b << ")";
                first = false;
            }
        return first ? "0" : os.str();
    }

private:
    fp_t p_;
    FpVector c_;
};

// f d_x + g d_y.
struct Derivation {
    DPElement fx, fy;

    explicit Derivation(fp_t p) : fx(p), fy(p) {}
    Derivation(DPElement x, DPElement y) : fx(std::move(x)), fy(std::move(y)) {}

    static Derivation dx(fp_t p, int a, int b, fp_t c = 1) { return {DPElement::monomial(p, a, b, c), DPElement(p)}; }
    static Derivation dy(fp_t p, int a, int b, fp_t c = 1) { return {DPElement(p), DPElement::monomial(p, a, b, c)}; }

    fp_t prime() const { return fx.prime(); }
    Derivation operator+(const Derivation& o) const { return {fx + o.fx, fy + o.fy}; }
    Derivation operator-(const Derivation& o) const { return {fx - o.fx, fy - o.fy}; }
    Derivation scaled(fp_t s) const { return {fx.scaled(s), fy.scaled(s)}; }
    bool operator==(const Derivation& o) const { return fx == o.fx && fy == o.fy; }
    bool operator!=(const Derivation& o) const { return !(*this == o); }
    bool is_zero() const { return fx.is_zero() && fy.is_zero(); }

    // Coordinates in the monomial basis of W(2;(1,1)): d_x block then d_y block.
    FpVector coords() const {
        FpVector v = fx.coeffs();
        v.insert(v.end(), fy.coeffs().begin(), fy.coeffs().end());
        return v;
    }
    static Derivation from_coords(fp_t p, const FpVector& v) {
        Derivation d(p);
        const std::size_t n = static_cast<std::size_t>(p) * p;
        if (v.size() != 2 * n) throw std::invalid_argument("derivation coordinates have wrong length");
        std::copy(v.begin(), v.begin() + n, d.fx.coeffs().begin());
        std::copy(v.begin() + n, v.end(), d.fy.coeffs().begin());
        return d;
    }

    std::string to_string() const {
        std::string sx = fx.is_zero() ? "" : "(" + fx.to_string() + ")d_x";
        std::string sy = fy.is_zero() ? "" : "(" + fy.to_string() + ")d_y";
        if (sx.empty() && sy.empty()) return "0";
        if (sx.empty()) return sy;
        if (sy.empty()) return sx;
        return sx + " + " + sy;
    }
};

inline DPElement apply_derivation(const Derivation& d, const DPElement& f) {
    return d.fx * f.partial_x() + d.fy * f.partial_y();
}

// [D, E] = D o E - E o D; a derivation is fixed by its values on x and y,
// so the bracket's coefficients are D(E(x)) - E(D(x)) and likewise for y.
inline Derivation bracket(const Derivation& d, const Derivation& e) {
    return {apply_derivation(d, e.fx) - apply_derivation(e, d.fx),
            apply_derivation(d, e.fy) - apply_derivation(e, d.fy)};
}

// Matrix of D acting on O(2;(1,1)) in the monomial basis.
inline FpMatrix operator_matrix(const Derivation& d) {
    const fp_t p = d.prime();
    const std::size_t n = static_cast<std::size_t>(p) * p;
    FpMatrix m(p, n, n);
    for (int a = 0; a < static_cast<int>(p); ++a)
        for (int b = 0; b < static_cast<int>(p); ++b) {
            DPElement img = apply_derivation(d, DPElement::monomial(p, a, b));
            for (std::size_t r = 0; r < n; ++r) m(r, a * p + b) = img.coeffs()[r];
        }
    return m;
}

// D^[p] = D^p as an operator on O(2;(1,1)); the result is read off on x and y
// and then checked against D^p on every monomial.
inline Derivation p_power(const Derivation& d) {
    const fp_t p = d.prime();
    auto iterate = [&](DPElement f) {
        for (fp_t k = 0; k < p; ++k) f = apply_derivation(d, f);
        return f;
    };
    Derivation r(iterate(DPElement::monomial(p, 1, 0)), iterate(DPElement::monomial(p, 0, 1)));
    for (int a = 0; a < static_cast<int>(p); ++a)
        for (int b = 0; b < static_cast<int>(p); ++b) {
            DPElement m = DPElement::monomial(p, a, b);
            if (iterate(m) != apply_derivation(r, m)) throw std::logic_error("p-th power failed to be a derivation");
        }
    return r;
}

}  // namespace hamlie
