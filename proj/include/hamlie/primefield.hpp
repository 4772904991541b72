#pragma once
// Arithmetic in F_p and dense linear algebra over it.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamlie {

using fp_t = std::uint32_t;
using FpVector = std::vector<fp_t>;

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Every algebra here needs p >= 5; the upper bound keeps p^3-dimensional
// modules within reach of dense storage.
inline void require_prime(std::uint64_t p) {
    if (!is_prime(p) || p < 5 || p > 97)
        throw std::invalid_argument("characteristic must be a prime in [5, 97], got " +
                                    std::to_string(p));
}

struct PrimeField {
    fp_t p;

    explicit PrimeField(fp_t prime) : p(prime) {
        if (!is_prime(prime)) throw std::invalid_argument("not a prime: " + std::to_string(prime));
    }

    fp_t add(fp_t a, fp_t b) const { fp_t s = a + b; return s >= p ? s - p : s; }
    fp_t sub(fp_t a, fp_t b) const { return a >= b ? a - b : a + p - b; }
    fp_t neg(fp_t a) const { return a == 0 ? 0 : p - a; }
    fp_t mul(fp_t a, fp_t b) const {
        return static_cast<fp_t>(static_cast<std::uint64_t>(a) * b % p);
    }
    fp_t pow(fp_t a, std::uint64_t e) const {
        fp_t r = 1 % p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    fp_t inv(fp_t a) const {
        if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
        return pow(a, p - 2);
    }
    fp_t from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        return static_cast<fp_t>(r < 0 ? r + p : r);
    }
    // Representative in (-p/2, p/2].
    std::int64_t centered(fp_t a) const {
        return a > p / 2 ? static_cast<std::int64_t>(a) - p : static_cast<std::int64_t>(a);
    }
    // a += c*b on vectors of equal length.
    void axpy(FpVector& a, fp_t c, const FpVector& b) const {
        if (c == 0) return;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (b[i]) a[i] = static_cast<fp_t>((a[i] + static_cast<std::uint64_t>(c) * b[i]) % p);
    }
};

// A field element that remembers its modulus; mixing moduli is an error.
class Fp {
public:
    Fp(std::int64_t v, fp_t p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
        v_ = PrimeField(p).from_int(v);
    }
    fp_t value() const { return v_; }
    fp_t prime() const { return p_; }

    Fp operator+(const Fp& o) const { check(o); return Fp(static_cast<std::int64_t>(v_) + o.v_, p_); }
    Fp operator-(const Fp& o) const { check(o); return Fp(static_cast<std::int64_t>(v_) - o.v_, p_); }
    Fp operator*(const Fp& o) const { check(o); return Fp(static_cast<std::int64_t>(static_cast<std::uint64_t>(v_) * o.v_ % p_), p_); }
    Fp operator-() const { return Fp(-static_cast<std::int64_t>(v_), p_); }
    Fp inverse() const { return Fp(PrimeField(p_).inv(v_), p_); }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }
    bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

private:
    void check(const Fp& o) const {
        if (o.p_ != p_) throw std::invalid_argument("field elements over different primes");
    }
    fp_t v_;
    fp_t p_;
};

inline std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value(); }

class FpMatrix {
public:
    FpMatrix() : p_(2), rows_(0), cols_(0) {}
    FpMatrix(fp_t p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FpMatrix identity(fp_t p, std::size_t n) {
        FpMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static FpMatrix from_rows(fp_t p, const std::vector<FpVector>& rows, std::size_t cols) {
        FpMatrix m(p, rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c] % p;
        }
        return m;
    }

    fp_t prime() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    fp_t& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    fp_t operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    const fp_t* row_ptr(std::size_t r) const { return a_.data() + r * cols_; }
    fp_t* row_ptr(std::size_t r) { return a_.data() + r * cols_; }

    FpVector row(std::size_t r) const { return FpVector(row_ptr(r), row_ptr(r) + cols_); }
    FpVector col(std::size_t c) const {
        FpVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    bool is_zero() const {
        for (fp_t x : a_) if (x) return false;
        return true;
    }
    bool operator==(const FpMatrix& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }

    FpMatrix operator+(const FpMatrix& o) const { return combine(o, 1); }
    FpMatrix operator-(const FpMatrix& o) const { return combine(o, p_ - 1); }

    FpMatrix scaled(fp_t c) const {
        FpMatrix m = *this;
        PrimeField f(p_);
        for (fp_t& x : m.a_) x = f.mul(x, c % p_);
        return m;
    }

    FpMatrix operator*(const FpMatrix& o) const {
        if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("matrix shape mismatch");
        FpMatrix m(p_, rows_, o.cols_);
        std::vector<std::uint64_t> acc(o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            const fp_t* ar = row_ptr(i);
            for (std::size_t k = 0; k < cols_; ++k) {
                fp_t c = ar[k];
                if (!c) continue;
                const fp_t* br = o.row_ptr(k);
                for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += static_cast<std::uint64_t>(c) * br[j];
                if ((k & 1023) == 1023)
                    for (auto& x : acc) x %= p_;
            }
            fp_t* mr = m.row_ptr(i);
            for (std::size_t j = 0; j < o.cols_; ++j) mr[j] = static_cast<fp_t>(acc[j] % p_);
        }
        return m;
    }

    FpVector operator*(const FpVector& v) const {
        if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
        FpVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint64_t s = 0;
            const fp_t* ar = row_ptr(i);
            for (std::size_t k = 0; k < cols_; ++k) s += static_cast<std::uint64_t>(ar[k]) * v[k];
            out[i] = static_cast<fp_t>(s % p_);
        }
        return out;
    }

    FpMatrix transpose() const {
        FpMatrix t(p_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    FpMatrix pow(std::uint64_t e) const {
        if (rows_ != cols_) throw std::invalid_argument("power of a non-square matrix");
        FpMatrix r = identity(p_, rows_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    // Vertical concatenation.
    static FpMatrix stack(const std::vector<FpMatrix>& parts) {
        if (parts.empty()) return {};
        std::size_t rows = 0, cols = parts.front().cols_;
        for (const auto& m : parts) {
            if (m.cols_ != cols) throw std::invalid_argument("stack: column mismatch");
            rows += m.rows_;
        }
        FpMatrix s(parts.front().p_, rows, cols);
        std::size_t at = 0;
        for (const auto& m : parts) {
            std::copy(m.a_.begin(), m.a_.end(), s.a_.begin() + at * cols);
            at += m.rows_;
        }
        return s;
    }

private:
    FpMatrix combine(const FpMatrix& o, fp_t c) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_) throw std::invalid_argument("matrix shape mismatch");
        FpMatrix m = *this;
        for (std::size_t i = 0; i < a_.size(); ++i)
            m.a_[i] = static_cast<fp_t>((a_[i] + static_cast<std::uint64_t>(c) * o.a_[i]) % p_);
        return m;
    }

    fp_t p_;
    std::size_t rows_, cols_;
    std::vector<fp_t> a_;
};

struct RrefResult {
    FpMatrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

inline RrefResult rref(FpMatrix m) {
    PrimeField f(m.prime());
    const fp_t p = m.prime();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        fp_t inv = f.inv(m(r, c));
        fp_t* rr = m.row_ptr(r);
        for (std::size_t j = c; j < m.cols(); ++j) rr[j] = f.mul(rr[j], inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            fp_t k = m(i, c);
            if (!k) continue;
            fp_t* ri = m.row_ptr(i);
            fp_t nk = p - k;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (rr[j]) ri[j] = static_cast<fp_t>((ri[j] + static_cast<std::uint64_t>(nk) * rr[j]) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const FpMatrix& m) { return rref(m).rank(); }

// Basis of {v : m v = 0}.
inline std::vector<FpVector> nullspace(const FpMatrix& m) {
    const fp_t p = m.prime();
    std::vector<FpVector> basis;
    if (m.rows() == 0) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            FpVector v(m.cols(), 0);
            v[c] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    RrefResult rr = rref(m);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : rr.pivots) is_pivot[c] = 1;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        FpVector v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
            fp_t x = rr.reduced(i, free);
            v[rr.pivots[i]] = x ? p - x : 0;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Basis of the c-eigenspace of a square matrix.
inline std::vector<FpVector> eigenspace(const FpMatrix& m, fp_t c) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigenspace of a non-square matrix");
    FpMatrix s = m;
    PrimeField f(m.prime());
    for (std::size_t i = 0; i < m.rows(); ++i) s(i, i) = f.sub(s(i, i), c % m.prime());
    return nullspace(s);
}

// Incrementally maintained row-echelon basis of a subspace of F_p^n.
class EchelonBasis {
public:
    EchelonBasis(fp_t p, std::size_t n) : f_(p), n_(n) {}

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<FpVector>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // Subtracts the span from v in place; afterwards v vanishes on every pivot.
    void reduce(FpVector& v) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            fp_t c = v[pivots_[k]];
            if (c) f_.axpy(v, f_.p - c, rows_[k]);
        }
    }
    bool contains(FpVector v) const {
        reduce(v);
        for (fp_t x : v) if (x) return false;
        return true;
    }
    // Returns true when v enlarged the span.
    bool insert(FpVector v) {
        if (v.size() != n_) throw std::invalid_argument("EchelonBasis: wrong vector length");
        reduce(v);
        std::size_t piv = 0;
        while (piv < n_ && v[piv] == 0) ++piv;
        if (piv == n_) return false;
        fp_t inv = f_.inv(v[piv]);
        for (fp_t& x : v) x = f_.mul(x, inv);
        // Keep earlier rows clear of the new pivot so coordinates stay readable.
        for (auto& r : rows_) {
            fp_t c = r[piv];
            if (c) f_.axpy(r, f_.p - c, v);
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }
    // Coordinates of v with respect to rows(), or nullopt when v is outside the span.
    std::optional<FpVector> coordinates(const FpVector& v) const {
        FpVector c(rows_.size());
        for (std::size_t k = 0; k < rows_.size(); ++k) c[k] = v[pivots_[k]];
        FpVector w = v;
        reduce(w);
        for (fp_t x : w) if (x) return std::nullopt;
        return c;
    }

private:
    PrimeField f_;
    std::size_t n_;
    std::vector<FpVector> rows_;
    std::vector<std::size_t> pivots_;
};

// Coordinates with respect to a fixed list of independent vectors.
class SpanCoordinates {
public:
    SpanCoordinates(fp_t p, const std::vector<FpVector>& vectors, std::size_t n)
        : p_(p), n_(n), k_(vectors.size()), basis_(p, n + vectors.size()) {
        for (std::size_t i = 0; i < k_; ++i) {
            FpVector aug(n + k_, 0);
            if (vectors[i].size() != n) throw std::invalid_argument("SpanCoordinates: wrong vector length");
            std::copy(vectors[i].begin(), vectors[i].end(), aug.begin());
            aug[n + i] = 1;
            basis_.insert(std::move(aug));
        }
        for (auto piv : basis_.pivots())
            if (piv >= n) throw std::invalid_argument("SpanCoordinates: vectors are linearly dependent");
    }
    std::size_t size() const { return k_; }
    std::optional<FpVector> coordinates(const FpVector& v) const {
        FpVector aug(n_ + k_, 0);
        std::copy(v.begin(), v.end(), aug.begin());
        basis_.reduce(aug);
        for (std::size_t i = 0; i < n_; ++i) if (aug[i]) return std::nullopt;
        FpVector c(aug.begin() + n_, aug.end());
        PrimeField f(p_);
        for (auto& x : c) x = f.neg(x);
        return c;
    }

private:
    fp_t p_;
    std::size_t n_, k_;
    EchelonBasis basis_;
};

inline bool is_zero(const FpVector& v) {
    for (fp_t x : v) if (x) return false;
    return true;
}

}  // namespace hamlie
