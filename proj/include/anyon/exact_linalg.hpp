#ifndef ANYON_EXACT_LINALG_HPP
#define ANYON_EXACT_LINALG_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "anyon/errors.hpp"

namespace anyon {

using Integer = mpz_class;
using Rational = mpq_class;

// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw InvalidArgument("ragged matrix initializer");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_symmetric() const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    // Rows [r0, r0+nr) and columns [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        T tmp;
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b(k, j) == 0) continue;
                    tmp = aik * b(k, j);
                    c(i, j) += tmp;
                }
            }
        return c;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

// Canonical num/den (gmpxx does not reduce on construction).
inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

RationalMatrix to_rational(const IntegerMatrix& m);
// Throws InvalidArgument when some entry is not an integer.
IntegerMatrix to_integer(const RationalMatrix& m);
bool is_integral(const RationalMatrix& m);
// Block diagonal matrix with the given blocks in order.
IntegerMatrix direct_sum(const std::vector<IntegerMatrix>& blocks);

struct SnfResult {
    IntegerMatrix U;
    IntegerMatrix V;
    IntegerMatrix S;

    // Diagonal of S, length min(rows, cols).
    std::vector<Integer> diagonal() const;
};

struct HnfResult {
    IntegerMatrix H;  // row echelon form, positive pivots, entries above a pivot in [0, pivot)
    IntegerMatrix U;  // unimodular with U * input == H
    std::size_t rank = 0;
};

struct Inertia {
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t n_zero = 0;
    long signature() const { return static_cast<long>(n_plus) - static_cast<long>(n_minus); }
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

SnfResult smith_normal_form(const IntegerMatrix& m);
Integer determinant(const IntegerMatrix& m);
Rational determinant(const RationalMatrix& m);
RationalMatrix rational_inverse(const RationalMatrix& m);
Inertia inertia(const IntegerMatrix& m);
Inertia inertia(const RationalMatrix& m);
HnfResult hermite_normal_form(const IntegerMatrix& m);

// Basis (rows of an upper triangular matrix in Hermite form) of the full-rank
// lattice spanned by the given rows together with d * Z^n. Every intermediate
// entry stays below d, so this is the workhorse for overlattices of large rank.
IntegerMatrix hermite_basis_modulo(const std::vector<std::vector<Integer>>& generators,
                                   std::size_t n, const Integer& d);

// Rows spanning {y in Z^rows : y * m == 0}; the result is saturated.
IntegerMatrix integer_left_kernel(const IntegerMatrix& m);

// Number theory on machine integers.
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t mod64(std::int64_t a, std::int64_t m);  // result in [0, m)
std::int64_t mulmod64(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod64(std::int64_t a, std::int64_t e, std::int64_t m);
std::int64_t inverse_mod64(std::int64_t a, std::int64_t m);  // throws when not invertible
std::int64_t ipow64(std::int64_t base, unsigned exp);        // throws on overflow
bool is_prime64(std::int64_t n);
// (p, r) with n == p^r, or (0, 0) when n is not a prime power.
std::pair<std::int64_t, unsigned> prime_power_decomposition(std::int64_t n);

int jacobi_symbol(std::int64_t a, std::int64_t n);
std::vector<std::int64_t> sqrt_mod_prime_power(std::int64_t a, std::int64_t p, unsigned k);

std::string to_string(const Rational& q);  // "p/q" in lowest terms, or "p"

}  // namespace anyon

#endif
