#include "anyon/exact_linalg.hpp"

#include <algorithm>
#include <limits>

namespace anyon {

namespace {

// round(a / b) with halves rounded up; b != 0.
Integer nearest_quotient(const Integer& a, const Integer& b) {
    Integer num = 2 * a + b;
    Integer den = 2 * b;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

Integer floor_quotient(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// row dst -= q * row src
void row_sub(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(src, j) != 0) m(dst, j) -= q * m(src, j);
}

// col dst -= q * col src
void col_sub(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, src) != 0) m(i, dst) -= q * m(i, src);
}

void negate_row(IntegerMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// Index of the smallest nonzero |column c| entry among rows [from, rows), or rows() if none.
std::size_t smallest_in_column(const IntegerMatrix& a, std::size_t c, std::size_t from) {
    std::size_t best = a.rows();
    for (std::size_t i = from; i < a.rows(); ++i) {
        if (a(i, c) == 0) continue;
        if (best == a.rows() || abs(a(i, c)) < abs(a(best, c))) best = i;
    }
    return best;
}

std::size_t smallest_in_row(const IntegerMatrix& a, std::size_t r, std::size_t from) {
    std::size_t best = a.cols();
    for (std::size_t j = from; j < a.cols(); ++j) {
        if (a(r, j) == 0) continue;
        if (best == a.cols() || abs(a(r, j)) < abs(a(r, best))) best = j;
    }
    return best;
}

struct Xgcd {
    std::int64_t g, x, y;
};

Xgcd xgcd64(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

}  // namespace

RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

bool is_integral(const RationalMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).get_den() != 1) return false;
    return true;
}

IntegerMatrix to_integer(const RationalMatrix& m) {
    IntegerMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw InvalidArgument("matrix has a non-integer entry");
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

IntegerMatrix direct_sum(const std::vector<IntegerMatrix>& blocks) {
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    IntegerMatrix out(rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        out.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return out;
}

std::vector<Integer> SnfResult::diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
}

SnfResult smith_normal_form(const IntegerMatrix& m) {
    SnfResult res{IntegerMatrix::identity(m.rows()), IntegerMatrix::identity(m.cols()), m};
    IntegerMatrix& A = res.S;
    IntegerMatrix& U = res.U;
    IntegerMatrix& V = res.V;
    const std::size_t n = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < n; ++t) {
        // Global pivot: smallest nonzero magnitude, row-major order breaks ties.
        std::size_t pi = A.rows(), pj = A.cols();
        for (std::size_t i = t; i < A.rows(); ++i)
            for (std::size_t j = t; j < A.cols(); ++j) {
                if (A(i, j) == 0) continue;
                if (pi == A.rows() || abs(A(i, j)) < abs(A(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == A.rows()) break;
        A.swap_rows(t, pi);
        U.swap_rows(t, pi);
        A.swap_cols(t, pj);
        V.swap_cols(t, pj);

        for (;;) {
            bool dirty = false;
            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < A.rows(); ++i) {
                    if (A(i, t) == 0) continue;
                    Integer q = nearest_quotient(A(i, t), A(t, t));
                    row_sub(A, i, t, q);
                    row_sub(U, i, t, q);
                    if (A(i, t) != 0) clean = false;
                }
                if (clean) break;
                std::size_t s = smallest_in_column(A, t, t + 1);
                A.swap_rows(t, s);
                U.swap_rows(t, s);
            }
            for (;;) {
                bool clean = true;
                for (std::size_t j = t + 1; j < A.cols(); ++j) {
                    if (A(t, j) == 0) continue;
                    Integer q = nearest_quotient(A(t, j), A(t, t));
                    col_sub(A, j, t, q);
                    col_sub(V, j, t, q);
                    if (A(t, j) != 0) clean = false;
                }
                if (clean) break;
                std::size_t s = smallest_in_row(A, t, t + 1);
                A.swap_cols(t, s);
                V.swap_cols(t, s);
                dirty = true;  // column t changed
            }
            if (dirty) continue;

            bool divisible = true;
            for (std::size_t i = t + 1; i < A.rows() && divisible; ++i)
                for (std::size_t j = t + 1; j < A.cols(); ++j) {
                    if (A(i, j) == 0) continue;
                    Integer r;
                    mpz_tdiv_r(r.get_mpz_t(), A(i, j).get_mpz_t(), A(t, t).get_mpz_t());
                    if (r != 0) {
                        row_sub(A, t, i, -1);
                        row_sub(U, t, i, -1);
                        divisible = false;
                        break;
                    }
                }
            if (divisible) break;
        }
        if (A(t, t) < 0) {
            negate_row(A, t);
            negate_row(U, t);
        }
    }
    return res;
}

Integer determinant(const IntegerMatrix& m) {
    if (!m.square()) throw InvalidArgument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntegerMatrix A = m;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            std::size_t s = smallest_in_column(A, k, k + 1);
            if (s == n) return 0;
            A.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
                mpz_divexact(A(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            A(i, k) = 0;
        }
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

Rational determinant(const RationalMatrix& m) {
    if (!m.square()) throw InvalidArgument("determinant of a non-square matrix");
    RationalMatrix A = m;
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && A(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            A.swap_rows(p, k);
            det = -det;
        }
        det *= A(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (A(i, k) == 0) continue;
            Rational f = A(i, k) / A(k, k);
            for (std::size_t j = k; j < n; ++j) A(i, j) -= f * A(k, j);
        }
    }
    return det;
}

RationalMatrix rational_inverse(const RationalMatrix& m) {
    if (!m.square()) throw InvalidArgument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix A = m;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && A(p, k) == 0) ++p;
        if (p == n) throw InvalidArgument("singular matrix has no inverse");
        A.swap_rows(p, k);
        inv.swap_rows(p, k);
        Rational piv = A(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            A(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || A(i, k) == 0) continue;
            Rational f = A(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                if (A(k, j) != 0) A(i, j) -= f * A(k, j);
                if (inv(k, j) != 0) inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

Inertia inertia(const RationalMatrix& m) {
    if (!m.is_symmetric()) throw InvalidArgument("inertia requires a symmetric matrix");
    const std::size_t n = m.rows();
    RationalMatrix A = m;
    std::vector<bool> alive(n, true);
    std::size_t remaining = n;
    Inertia res;

    while (remaining > 0) {
        std::size_t d = n;
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && A(i, i) != 0) {
                d = i;
                break;
            }
        if (d != n) {
            const Rational piv = A(d, d);
            if (piv > 0) ++res.n_plus;
            else ++res.n_minus;
            alive[d] = false;
            --remaining;
            for (std::size_t i = 0; i < n; ++i) {
                if (!alive[i] || A(i, d) == 0) continue;
                Rational f = A(i, d) / piv;
                for (std::size_t j = 0; j < n; ++j)
                    if (alive[j] && A(d, j) != 0) A(i, j) -= f * A(d, j);
            }
            continue;
        }
        // Zero diagonal: a nonzero off-diagonal pair gives a hyperbolic 2x2 block.
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n && bi == n; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j)
                if (alive[j] && A(i, j) != 0) {
                    bi = i;
                    bj = j;
                    break;
                }
        }
        if (bi == n) {
            res.n_zero += remaining;
            break;
        }
        ++res.n_plus;
        ++res.n_minus;
        alive[bi] = alive[bj] = false;
        remaining -= 2;
        const Rational b = A(bi, bj);
        std::vector<Rational> ci(n), cj(n);
        for (std::size_t x = 0; x < n; ++x)
            if (alive[x]) {
                ci[x] = A(x, bi);
                cj[x] = A(x, bj);
            }
        for (std::size_t x = 0; x < n; ++x) {
            if (!alive[x]) continue;
            for (std::size_t y = 0; y < n; ++y) {
                if (!alive[y]) continue;
                if ((ci[x] == 0 || cj[y] == 0) && (cj[x] == 0 || ci[y] == 0)) continue;
                A(x, y) -= (ci[x] * cj[y] + cj[x] * ci[y]) / b;
            }
        }
    }
    return res;
}

Inertia inertia(const IntegerMatrix& m) { return inertia(to_rational(m)); }

HnfResult hermite_normal_form(const IntegerMatrix& m) {
    HnfResult res{m, IntegerMatrix::identity(m.rows()), 0};
    IntegerMatrix& H = res.H;
    IntegerMatrix& U = res.U;
    std::size_t r = 0;
    for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
        for (;;) {
            std::size_t s = smallest_in_column(H, c, r);
            if (s == H.rows()) break;
            H.swap_rows(r, s);
            U.swap_rows(r, s);
            bool clean = true;
            for (std::size_t i = r + 1; i < H.rows(); ++i) {
                if (H(i, c) == 0) continue;
                Integer q = nearest_quotient(H(i, c), H(r, c));
                row_sub(H, i, r, q);
                row_sub(U, i, r, q);
                if (H(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H(r, c) == 0) continue;  // no pivot in this column
        if (H(r, c) < 0) {
            negate_row(H, r);
            negate_row(U, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_quotient(H(i, c), H(r, c));
            row_sub(H, i, r, q);
            row_sub(U, i, r, q);
        }
        ++r;
    }
    res.rank = r;
    return res;
}

IntegerMatrix hermite_basis_modulo(const std::vector<std::vector<Integer>>& generators, std::size_t n,
                                   const Integer& d) {
    if (d <= 0) throw InvalidArgument("hermite_basis_modulo: modulus must be positive");
    if (d >= Integer(1) << 62) throw InvalidArgument("hermite_basis_modulo: modulus too large");
    const std::int64_t D = d.get_si();
    using Row = std::vector<std::int64_t>;
    auto reduce = [D](std::int64_t v) { return mod64(v, D); };

    std::vector<Row> work;
    for (const auto& g : generators) {
        if (g.size() != n) throw InvalidArgument("hermite_basis_modulo: generator length mismatch");
        Row row(n);
        for (std::size_t j = 0; j < n; ++j) {
            Integer v;
            mpz_fdiv_r(v.get_mpz_t(), g[j].get_mpz_t(), d.get_mpz_t());
            row[j] = v.get_si();
        }
        work.push_back(std::move(row));
    }

    std::vector<Row> piv(n);
    for (std::size_t j = 0; j < n; ++j) {
        Row p(n, 0);
        p[j] = D;
        for (auto& w : work) {
            if (w[j] == 0) continue;
            Xgcd e = xgcd64(p[j], w[j]);
            const std::int64_t a = p[j] / e.g, b = w[j] / e.g;
            Row np(n, 0), nw(n, 0);
            np[j] = e.g;
            for (std::size_t k = j + 1; k < n; ++k) {
                __int128 vp = static_cast<__int128>(e.x) * p[k] + static_cast<__int128>(e.y) * w[k];
                __int128 vw = static_cast<__int128>(a) * w[k] - static_cast<__int128>(b) * p[k];
                np[k] = reduce(static_cast<std::int64_t>(vp % D));
                nw[k] = reduce(static_cast<std::int64_t>(vw % D));
            }
            p = std::move(np);
            w = std::move(nw);
        }
        piv[j] = std::move(p);
    }

    IntegerMatrix H(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) H(i, j) = static_cast<long>(piv[i][j]);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < c; ++i) {
            Integer q = floor_quotient(H(i, c), H(c, c));
            row_sub(H, i, c, q);
        }
    return H;
}

IntegerMatrix integer_left_kernel(const IntegerMatrix& m) {
    HnfResult h = hermite_normal_form(m);
    IntegerMatrix k(m.rows() - h.rank, m.rows());
    for (std::size_t i = h.rank; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) k(i - h.rank, j) = h.U(i, j);
    return k;
}

// ---------------------------------------------------------------------------
// machine-integer number theory

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return (a / gcd64(a, b)) * b;
}

std::int64_t mod64(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mulmod64(std::int64_t a, std::int64_t b, std::int64_t m) {
    __int128 r = static_cast<__int128>(mod64(a, m)) * mod64(b, m) % m;
    return static_cast<std::int64_t>(r);
}

std::int64_t powmod64(std::int64_t a, std::int64_t e, std::int64_t m) {
    std::int64_t result = 1 % m, base = mod64(a, m);
    while (e > 0) {
        if (e & 1) result = mulmod64(result, base, m);
        base = mulmod64(base, base, m);
        e >>= 1;
    }
    return result;
}

std::int64_t inverse_mod64(std::int64_t a, std::int64_t m) {
    Xgcd e = xgcd64(mod64(a, m), m);
    if (e.g != 1) throw InvalidArgument("value is not invertible modulo " + std::to_string(m));
    return mod64(e.x, m);
}

std::int64_t ipow64(std::int64_t base, unsigned exp) {
    std::int64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && std::abs(r) > std::numeric_limits<std::int64_t>::max() / std::abs(base))
            throw InvalidArgument("integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

bool is_prime64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::int64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::int64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::pair<std::int64_t, unsigned> prime_power_decomposition(std::int64_t n) {
    if (n < 2) return {0, 0};
    std::int64_t p = n;
    for (std::int64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) {
            p = f;
            break;
        }
    unsigned r = 0;
    while (n % p == 0) {
        n /= p;
        ++r;
    }
    if (n != 1) return {0, 0};
    return {p, r};
}

int jacobi_symbol(std::int64_t a, std::int64_t n) {
    if (n <= 0 || n % 2 == 0) throw InvalidArgument("jacobi_symbol: n must be odd and positive");
    a = mod64(a, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

namespace {

// Tonelli-Shanks; a must be a nonzero quadratic residue mod the odd prime p.
std::int64_t sqrt_mod_prime(std::int64_t a, std::int64_t p) {
    a = mod64(a, p);
    if (p % 4 == 3) return powmod64(a, (p + 1) / 4, p);
    std::int64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::int64_t z = 2;
    while (jacobi_symbol(z, p) != -1) ++z;
    std::int64_t m = s, c = powmod64(z, q, p), t = powmod64(a, q, p), r = powmod64(a, (q + 1) / 2, p);
    while (t != 1) {
        std::int64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod64(tt, tt, p);
            ++i;
        }
        std::int64_t b = c;
        for (std::int64_t j = 0; j < m - i - 1; ++j) b = mulmod64(b, b, p);
        m = i;
        c = mulmod64(b, b, p);
        t = mulmod64(t, c, p);
        r = mulmod64(r, b, p);
    }
    return r;
}

}  // namespace

std::vector<std::int64_t> sqrt_mod_prime_power(std::int64_t a, std::int64_t p, unsigned k) {
    if (k == 0) throw InvalidArgument("sqrt_mod_prime_power: k must be positive");
    if (!is_prime64(p)) throw InvalidArgument("sqrt_mod_prime_power: p must be prime");
    const std::int64_t m = ipow64(p, k);
    a = mod64(a, m);
    if (a % p == 0) throw InvalidArgument("sqrt_mod_prime_power: a must be coprime to p");

    std::vector<std::int64_t> roots;
    if (p == 2) {
        if (k == 1) return {1};
        if (k == 2) return a % 4 == 1 ? std::vector<std::int64_t>{1, 3} : std::vector<std::int64_t>{};
        if (a % 8 != 1) return {};
        std::int64_t x = 1;
        for (unsigned e = 3; e < k; ++e) {
            const std::int64_t next = std::int64_t{1} << (e + 1);
            if (mod64(mulmod64(x, x, next) - a, next) != 0) x += std::int64_t{1} << (e - 1);
        }
        const std::int64_t half = m / 2;
        roots = {mod64(x, m), mod64(-x, m), mod64(x + half, m), mod64(-x + half, m)};
    } else {
        if (jacobi_symbol(a, p) != 1) return {};
        std::int64_t x = sqrt_mod_prime(a, p);
        std::int64_t pe = p;
        for (unsigned e = 1; e < k; ++e) {
            const std::int64_t next = pe * p;
            const std::int64_t diff = mod64(a - mulmod64(x, x, next), next) / pe;
            const std::int64_t t = mulmod64(diff, inverse_mod64(mulmod64(2, x, p), p), p);
            x = mod64(x + t * pe, next);
            pe = next;
        }
        roots = {x, mod64(-x, m)};
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace anyon
