#include "anyon/lattice_realization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace anyon {

namespace {

Integer floor_of(const Rational& x) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
}

Integer ceil_of(const Rational& x) {
    Integer f;
    mpz_cdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
}

Integer round_of(const Rational& x) { return floor_of(x + Rational(1, 2)); }

// x mod m in [0, m)
Rational mod_rational(const Rational& x, const Integer& m) {
    Rational r = x - Rational(floor_of(x / m) * m);
    r.canonicalize();
    return r;
}

using RationalVector = std::vector<Rational>;

Rational pairing(const RationalVector& x, const IntegerMatrix& K, const RationalVector& y) {
    Rational s = 0;
    for (std::size_t i = 0; i < K.rows(); ++i) {
        if (x[i] == 0) continue;
        Rational t = 0;
        for (std::size_t j = 0; j < K.cols(); ++j)
            if (K(i, j) != 0 && y[j] != 0) t += K(i, j) * y[j];
        s += x[i] * t;
    }
    return s;
}

std::vector<Integer> apply_integral(const IntegerMatrix& K, const RationalVector& y) {
    std::vector<Integer> w(K.rows());
    for (std::size_t i = 0; i < K.rows(); ++i) {
        Rational t = 0;
        for (std::size_t j = 0; j < K.cols(); ++j) t += K(i, j) * y[j];
        if (t.get_den() != 1) throw VerificationFailure("dual vector does not pair integrally");
        w[i] = t.get_num();
    }
    return w;
}

Integer denominator_lcm(const RationalMatrix& m) {
    Integer d = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).get_den_mpz_t());
    return d;
}

IntegerMatrix scaled_to_integer(const RationalMatrix& m, const Integer& d) {
    IntegerMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational v = m(i, j) * d;
            v.canonicalize();
            out(i, j) = v.get_num();
        }
    return out;
}

RationalMatrix scaled_to_rational(const IntegerMatrix& m, const Integer& d) {
    RationalMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = make_rational(m(i, j), d);
    return out;
}

// Gram of the rows of B (rational, ambient coordinates) under the integral Gram G.
IntegerMatrix gram_of_rows(const RationalMatrix& B, const IntegerMatrix& G) {
    const Integer d = denominator_lcm(B);
    const IntegerMatrix Bi = scaled_to_integer(B, d);
    const IntegerMatrix P = Bi * G * Bi.transpose();
    const Integer d2 = d * d;
    IntegerMatrix out(P.rows(), P.cols());
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t j = 0; j < P.cols(); ++j) {
            if (!mpz_divisible_p(P(i, j).get_mpz_t(), d2.get_mpz_t()))
                throw VerificationFailure("glued lattice is not integral");
            out(i, j) = P(i, j) / d2;
        }
    return out;
}

bool all_diagonal_even(const IntegerMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, i) % 2 != 0) return false;
    return true;
}

void require_even_nondegenerate(const IntegerMatrix& gram, const char* who) {
    if (!gram.is_symmetric()) throw InvalidArgument(std::string(who) + ": Gram matrix is not symmetric");
    if (!all_diagonal_even(gram)) throw InvalidArgument(std::string(who) + ": odd diagonal entry, not an even lattice");
    if (determinant(gram) == 0) throw InvalidArgument(std::string(who) + ": Gram matrix is singular");
}

std::string join(const std::vector<std::int64_t>& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ']';
    return os.str();
}

IntegerMatrix quaternion_matrix(std::int64_t s) {
    // Lexicographically largest a >= b >= c >= d >= 0 with a^2 + b^2 + c^2 + d^2 = s.
    for (std::int64_t a = static_cast<std::int64_t>(std::sqrt(static_cast<double>(s))) + 1; a >= 0; --a) {
        if (a * a > s) continue;
        for (std::int64_t b = a; b >= 0; --b) {
            if (a * a + b * b > s) continue;
            for (std::int64_t c = b; c >= 0; --c) {
                const std::int64_t rest = s - a * a - b * b - c * c;
                if (rest < 0) continue;
                std::int64_t d = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rest)));
                while (d * d > rest) --d;
                while ((d + 1) * (d + 1) <= rest) ++d;
                if (d * d != rest || d > c) continue;
                const long A = a, B = b, C = c, D = d;
                return IntegerMatrix{{A, -B, -C, -D}, {B, A, -D, C}, {C, D, A, -B}, {D, -C, B, A}};
            }
        }
    }
    throw VerificationFailure("no four-square decomposition");
}

}  // namespace

// ---------------------------------------------------------------------------
// Lattice and discriminant form

Lattice Lattice::from_gram(IntegerMatrix gram) {
    if (!gram.square()) throw InvalidArgument("Gram matrix must be square");
    if (!gram.is_symmetric()) throw InvalidArgument("Gram matrix must be symmetric");
    if (determinant(gram) == 0) throw InvalidArgument("Gram matrix must be nonsingular");
    Lattice l;
    l.gram = std::move(gram);
    return l;
}

bool Lattice::is_even() const { return all_diagonal_even(gram); }

bool Lattice::is_positive_definite() const { return inertia(gram).n_plus == rank(); }

std::int64_t DiscriminantData::order() const {
    std::int64_t n = 1;
    for (auto f : invariant_factors) n *= f;
    return n;
}

MetricGroup DiscriminantData::to_metric_group() const {
    std::vector<Rational> q;
    for (const auto& v : q2_values) q.push_back(mod_rational(v / 2, 1));
    return MetricGroup::from_generators(invariant_factors, q, bilinear_values);
}

CosetMap::CosetMap(const IntegerMatrix& gram) {
    const SnfResult snf = smith_normal_form(gram);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        const Integer s = abs(snf.S(i, i));
        if (s == 1) continue;
        if (!s.fits_slong_p()) throw BudgetExceeded("discriminant group too large");
        keep.push_back(i);
        factors_.push_back(s.get_si());
    }
    rows_ = IntegerMatrix(keep.size(), gram.cols());
    for (std::size_t k = 0; k < keep.size(); ++k)
        for (std::size_t j = 0; j < gram.cols(); ++j) rows_(k, j) = snf.U(keep[k], j);
}

Element CosetMap::operator()(const std::vector<Integer>& w) const {
    Element e(factors_.size());
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        Integer t = 0;
        for (std::size_t j = 0; j < w.size(); ++j) t += rows_(k, j) * w[j];
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(factors_[k]));
        e[k] = r.get_si();
    }
    return e;
}

DiscriminantData discriminant_form(const IntegerMatrix& gram) {
    require_even_nondegenerate(gram, "discriminant_form");
    const std::size_t n = gram.rows();
    const SnfResult snf = smith_normal_form(gram);

    // U K V = S, so K (V e_i / s_i) = U^{-1} e_i: the columns of V scaled by
    // 1/s_i are dual vectors generating the discriminant group.
    DiscriminantData d;
    std::vector<RationalVector> ys;
    for (std::size_t i = 0; i < n; ++i) {
        const Integer s = abs(snf.S(i, i));
        if (s == 1) continue;
        if (!s.fits_slong_p()) throw BudgetExceeded("discriminant group too large");
        RationalVector y(n);
        for (std::size_t j = 0; j < n; ++j) {
            y[j] = make_rational(snf.V(j, i), snf.S(i, i));
            y[j] -= round_of(y[j]);
        }
        d.invariant_factors.push_back(s.get_si());
        d.generator_reps.push_back(apply_integral(gram, y));
        ys.push_back(std::move(y));
    }
    const std::size_t k = ys.size();
    d.bilinear_values = RationalMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        d.q2_values.push_back(mod_rational(pairing(ys[i], gram, ys[i]), 2));
        for (std::size_t j = 0; j < k; ++j) d.bilinear_values(i, j) = mod_rational(pairing(ys[i], gram, ys[j]), 1);
    }
    return d;
}

// ---------------------------------------------------------------------------
// Verification

bool VerificationReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

VerificationReport verify_realization(const IntegerMatrix& gram, const MetricGroup& target, std::int64_t budget) {
    VerificationReport rep;
    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        rep.checks.push_back(Check{name, ok, detail});
    };

    if (!gram.is_symmetric()) {
        add("symmetric", false, "Gram matrix is not square and symmetric");
        return rep;
    }
    add("symmetric", true, std::to_string(gram.rows()) + "x" + std::to_string(gram.rows()));

    const bool even = all_diagonal_even(gram);
    add("even", even, even ? "all diagonal entries even" : "odd diagonal entry");

    const Integer det = determinant(gram);
    if (det == 0) {
        add("nondegenerate", false, "determinant is 0");
        return rep;
    }
    add("order", abs(det) == target.order(),
        "|det| = " + Integer(abs(det)).get_str() + ", |A| = " + std::to_string(target.order()));

    rep.inertia = inertia(gram);
    rep.target_central_charge = central_charge_gauss(target, budget);
    const long sig = rep.inertia.signature();
    const long sig_mod = ((sig % 8) + 8) % 8;
    add("signature", sig_mod == rep.target_central_charge,
        "signature " + std::to_string(sig) + " (" + std::to_string(rep.inertia.n_plus) + "+, " +
            std::to_string(rep.inertia.n_minus) + "-), central charge of target " +
            std::to_string(rep.target_central_charge));

    if (!even) {
        add("isomorphism", false, "no discriminant form for an odd lattice");
        return rep;
    }
    const DiscriminantData dd = discriminant_form(gram);
    MetricGroup g = dd.to_metric_group();
    const bool same_group = g.invariant_factors() == target.invariant_factors();
    std::optional<Isometry> iso;
    if (same_group) iso = is_isomorphic(g, target, budget);
    std::string detail = "discriminant group " + join(g.invariant_factors()) + ", target " +
                         join(target.invariant_factors());
    if (same_group) detail += iso ? ", isometry found" : ", forms differ";
    add("isomorphism", iso.has_value(), detail);
    rep.discriminant = std::move(g);
    return rep;
}

// ---------------------------------------------------------------------------
// Explicit lattices

Lattice cartan_A(std::size_t n) {
    if (n < 1) throw InvalidArgument("cartan_A: n must be positive");
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 2;
        if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = -1;
    }
    return Lattice::from_gram(std::move(m));
}

Lattice cartan_D(std::size_t n) {
    if (n < 3) throw InvalidArgument("cartan_D: n must be at least 3");
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
    for (std::size_t i = 0; i + 2 < n; ++i) m(i, i + 1) = m(i + 1, i) = -1;
    m(n - 3, n - 1) = m(n - 1, n - 3) = -1;
    return Lattice::from_gram(std::move(m));
}

Lattice cartan_E(std::size_t n) {
    if (n < 6 || n > 8) throw InvalidArgument("cartan_E: n must be 6, 7 or 8");
    // chain of n-1 nodes with the last node attached to the third
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
    for (std::size_t i = 0; i + 2 < n; ++i) m(i, i + 1) = m(i + 1, i) = -1;
    m(2, n - 1) = m(n - 1, 2) = -1;
    return Lattice::from_gram(std::move(m));
}

DoublePrimeResult k_double_prime(std::int64_t p, unsigned r, int s, std::int64_t search_bound) {
    if (!is_prime64(p) || p % 4 != 1) throw InvalidArgument("k_double_prime: p must be a prime = 1 mod 4");
    if (s != 1 && s != -1) throw InvalidArgument("k_double_prime: s must be +1 or -1");
    const std::int64_t M = ipow64(p, r);

    std::int64_t q = 0;
    for (std::int64_t c = 3; c <= search_bound; c += 4) {
        if (!is_prime64(c) || c == p) continue;
        if (jacobi_symbol(mod64(2 * M, c), c) != 1) continue;
        if (jacobi_symbol(mod64(2 * c, p), p) != s) continue;
        q = c;
        break;
    }
    if (q == 0) throw BudgetExceeded("k_double_prime: no auxiliary prime below " + std::to_string(search_bound));

    const auto roots = sqrt_mod_prime_power(mod64(2 * M, q), q, 1);
    std::int64_t t = 0;
    for (auto x : roots)
        if (x >= 1 && x < q) {
            t = x;
            break;
        }
    if (t == 0) throw VerificationFailure("k_double_prime: no square root of 2 p^r");

    const std::size_t c = static_cast<std::size_t>(q) + 1;
    IntegerMatrix K(c, c);
    const Integer Mz = static_cast<long>(M), qz = static_cast<long>(q), tz = static_cast<long>(t);
    K(0, 0) = (qz * Mz + 1) / 2;
    K(0, c - 1) = K(c - 1, 0) = Mz;
    for (std::size_t i = 1; i + 1 < c; ++i) {
        K(i, i) = 2;
        if (i + 2 < c) K(i, i + 1) = K(i + 1, i) = -1;
    }
    const std::size_t hook = c - 1 - static_cast<std::size_t>(t);
    K(hook, c - 1) = K(c - 1, hook) = 1;
    const Integer corner_num = 2 * Mz + tz * (qz - tz);
    if (corner_num % qz != 0) throw VerificationFailure("k_double_prime: corner entry not integral");
    K(c - 1, c - 1) = corner_num / qz;

    Lattice L = Lattice::from_gram(std::move(K));
    if (!L.is_even()) throw VerificationFailure("k_double_prime: result is not even");
    if (determinant(L.gram) != M) throw VerificationFailure("k_double_prime: determinant differs from p^r");
    if (!L.is_positive_definite()) throw VerificationFailure("k_double_prime: result is not positive definite");
    return DoublePrimeResult{std::move(L), q, t};
}

Lattice k_e(unsigned r) {
    if (r < 2 || r % 2 != 0 || r > 60) throw InvalidArgument("k_e: r must be even and at least 2");
    const long corner = static_cast<long>((ipow64(2, r) + 2) / 3);
    return Lattice::from_gram(IntegerMatrix{{corner, 0, 1}, {0, 2, -1}, {1, -1, 2}});
}

Lattice k_o(unsigned r) {
    if (r < 3 || r % 2 != 1 || r > 61) throw InvalidArgument("k_o: r must be odd and at least 3");
    const long corner = static_cast<long>((ipow64(2, r) + 4) / 3);
    return Lattice::from_gram(IntegerMatrix{{corner, 0, 1, 0, 0, 0, -1},
                                            {0, 2, -1, 0, 0, 0, 0},
                                            {1, -1, 2, -1, 0, 0, 0},
                                            {0, 0, -1, 2, -1, 0, -1},
                                            {0, 0, 0, -1, 2, -1, 0},
                                            {0, 0, 0, 0, -1, 2, 0},
                                            {-1, 0, 0, -1, 0, 0, 2}});
}

// ---------------------------------------------------------------------------
// Gluing and complements

bool is_totally_isotropic(const GlueGroup& glue, const IntegerMatrix& ambient_gram) {
    const std::size_t n = glue.generators.rows();
    std::vector<RationalVector> v(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < glue.generators.cols(); ++j) v[i].push_back(glue.generators(i, j));
    for (std::size_t i = 0; i < n; ++i) {
        if (mod_rational(pairing(v[i], ambient_gram, v[i]), 2) != 0) return false;
        for (std::size_t j = i + 1; j < n; ++j)
            if (pairing(v[i], ambient_gram, v[j]).get_den() != 1) return false;
    }
    return true;
}

SelfDualGluing glue_selfdual_8(const Lattice& base, std::size_t rank_limit) {
    require_even_nondegenerate(base.gram, "glue_selfdual_8");
    if (!base.is_positive_definite()) throw InvalidArgument("glue_selfdual_8: base must be positive definite");
    const std::size_t n = base.rank();
    const std::size_t N = 8 * n;
    if (N > rank_limit)
        throw BudgetExceeded("glue_selfdual_8: rank " + std::to_string(N) + " exceeds limit " +
                             std::to_string(rank_limit));

    const DiscriminantData dd = discriminant_form(base.gram);
    const MetricGroup g = dd.to_metric_group();
    const std::int64_t level = g.level();
    const std::int64_t den = dd.invariant_factors.empty() ? 1 : dd.invariant_factors.back();

    // H = {(x, Q x) : x in D^4} with Q^t Q = (level - 1) I, so q vanishes on H
    // and H meets the first summand trivially.
    const IntegerMatrix Q = quaternion_matrix(level - 1);
    std::vector<std::vector<Integer>> rows;
    RationalMatrix glue(dd.generator_reps.size() * 4, N);
    std::size_t gi = 0;
    const RationalMatrix Kinv = rational_inverse(to_rational(base.gram));
    for (const auto& w : dd.generator_reps) {
        RationalVector y(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) y[a] += Kinv(a, b) * w[b];
        for (std::size_t i = 0; i < 4; ++i, ++gi) {
            for (std::size_t a = 0; a < n; ++a) {
                glue(gi, i * n + a) = y[a];
                for (std::size_t j = 0; j < 4; ++j) glue(gi, (4 + j) * n + a) = Q(j, i) * y[a];
            }
            std::vector<Integer> row(N);
            for (std::size_t c = 0; c < N; ++c) {
                Rational v = glue(gi, c) * den;
                v.canonicalize();
                row[c] = v.get_num();
            }
            rows.push_back(std::move(row));
        }
    }

    const IntegerMatrix H = hermite_basis_modulo(rows, N, den);
    RationalMatrix B = scaled_to_rational(H, den);
    const IntegerMatrix K8 = direct_sum(std::vector<IntegerMatrix>(8, base.gram));

    SelfDualGluing out;
    out.base_rank = n;
    out.glue.generators = std::move(glue);
    out.glue.order = 1;
    for (int i = 0; i < 4; ++i) out.glue.order *= dd.order();
    if (!is_totally_isotropic(out.glue, K8)) throw VerificationFailure("glue_selfdual_8: glue group is not isotropic");

    IntegerMatrix gram = gram_of_rows(B, K8);
    if (!all_diagonal_even(gram)) throw VerificationFailure("glue_selfdual_8: glued lattice is not even");
    if (abs(determinant(gram)) != 1) throw VerificationFailure("glue_selfdual_8: glued lattice is not unimodular");

    out.embedded_copy = RationalMatrix(n, N);
    for (std::size_t i = 0; i < n; ++i) out.embedded_copy(i, i) = 1;

    // Primitivity: the first summand's coordinates in the glued basis have trivial Smith form.
    const RationalMatrix coords = out.embedded_copy * rational_inverse(B);
    if (!is_integral(coords)) throw VerificationFailure("glue_selfdual_8: base is not contained in the gluing");
    for (const auto& s : smith_normal_form(to_integer(coords)).diagonal())
        if (abs(s) != 1) throw VerificationFailure("glue_selfdual_8: base is not primitive");

    out.lambda.gram = std::move(gram);
    out.lambda.ambient_basis = std::move(B);
    out.lambda.ambient_gram = K8;
    return out;
}

Lattice orthogonal_complement(const Lattice& ambient, const RationalMatrix& sub) {
    if (!ambient.ambient_basis) throw InvalidArgument("orthogonal_complement: ambient lattice has no ambient basis");
    const RationalMatrix& B = *ambient.ambient_basis;
    const IntegerMatrix& G = ambient.ambient_gram;
    if (sub.cols() != B.cols()) throw InvalidArgument("orthogonal_complement: dimension mismatch");

    // sub must be an integral combination of the basis rows
    const RationalMatrix Bt = B.transpose();
    const RationalMatrix X = sub * Bt * rational_inverse(B * Bt);
    if (!is_integral(X) || X * B != sub)
        throw InvalidArgument("orthogonal_complement: sublattice is not contained in the ambient lattice");

    const RationalMatrix P = B * to_rational(G) * sub.transpose();
    const IntegerMatrix Z = integer_left_kernel(scaled_to_integer(P, denominator_lcm(P)));
    Lattice out;
    out.ambient_gram = G;
    if (Z.rows() == 0) {
        out.ambient_basis = RationalMatrix(0, B.cols());
        return out;
    }
    RationalMatrix C = to_rational(Z) * B;
    const Integer d = denominator_lcm(C);
    const HnfResult h = hermite_normal_form(scaled_to_integer(C, d));
    C = scaled_to_rational(h.H.block(0, 0, h.rank, h.H.cols()), d);
    out.gram = gram_of_rows(C, G);
    if (determinant(out.gram) == 0) throw VerificationFailure("orthogonal_complement: degenerate complement");
    out.ambient_basis = std::move(C);
    return out;
}

Lattice complement_in_gluing(const Lattice& base, std::size_t rank_limit) {
    const SelfDualGluing glue = glue_selfdual_8(base, rank_limit);
    Lattice c = orthogonal_complement(glue.lambda, glue.embedded_copy);
    if (c.rank() != 7 * base.rank()) throw VerificationFailure("complement_in_gluing: unexpected rank");
    return c;
}

// ---------------------------------------------------------------------------
// E and F families

Lattice build_EF_positive(Family family, unsigned r, const std::optional<Lattice>& input) {
    if (family != Family::E && family != Family::F) throw InvalidArgument("build_EF_positive: family must be E or F");
    if (r < 1 || r > 20) throw InvalidArgument("build_EF_positive: r out of range");
    const std::int64_t M = ipow64(2, r);

    Lattice in;
    if (input) {
        in = *input;
    } else if (family == Family::E) {
        in = complement_in_gluing(Lattice::from_gram(IntegerMatrix{{static_cast<long>(M)}}));
    } else if (r == 1) {
        in = Lattice::from_gram(IntegerMatrix{{2}});
    } else if (r == 2) {
        in = cartan_D(5);
    } else {
        in = positive_definite_realization(PrimeFamilySpec{Family::C, 2, r, 0}).lattice;
    }
    require_even_nondegenerate(in.gram, "build_EF_positive");
    if (!in.is_positive_definite()) throw InvalidArgument("build_EF_positive: input lattice must be positive definite");

    const IntegerMatrix& K = in.gram;
    const std::size_t n = K.rows();
    const DiscriminantData dd = discriminant_form(K);
    if (dd.invariant_factors != std::vector<std::int64_t>{M})
        throw InvalidArgument("build_EF_positive: input discriminant group must be Z_" + std::to_string(M));

    // dual generator u * gen with u^2 q2(gen) = target mod 2
    const Rational target = mod_rational(make_rational(family == Family::E ? -1 : -3, M), 2);
    const RationalMatrix Kinv = rational_inverse(to_rational(K));
    RationalVector gen(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) gen[a] += Kinv(a, b) * dd.generator_reps[0][b];

    std::optional<RationalVector> lambda;
    for (std::int64_t u = 1; u < 2 * M && !lambda; u += 2) {
        if (mod_rational(Rational(static_cast<long>(u * u)) * dd.q2_values[0], 2) != target) continue;
        RationalVector y(n);
        for (std::size_t a = 0; a < n; ++a) {
            y[a] = gen[a] * u;
            y[a] -= round_of(y[a]);
        }
        lambda = std::move(y);
    }
    if (!lambda) throw InvalidArgument("build_EF_positive: no dual generator with the required norm");
    const std::vector<Integer> w = apply_integral(K, *lambda);
    const Rational norm = pairing(*lambda, K, *lambda);

    IntegerMatrix G;
    if (family == Family::E) {
        G = IntegerMatrix(2 + 2 * n, 2 + 2 * n);
        const Rational corner = make_rational(2, M) + 2 * norm;
        if (corner.get_den() != 1) throw VerificationFailure("build_EF_positive: corner entry not integral");
        G(0, 0) = corner.get_num();
        G(0, 1) = G(1, 0) = 1;
        G(1, 1) = static_cast<long>(M);
        for (std::size_t i = 0; i < n; ++i) {
            G(0, 2 + i) = G(2 + i, 0) = w[i];
            G(0, 2 + n + i) = G(2 + n + i, 0) = w[i];
        }
        G.set_block(2, 2, K);
        G.set_block(2 + n, 2 + n, K);
    } else {
        G = IntegerMatrix(3 + n, 3 + n);
        const Rational corner = make_rational(3, M) + norm;
        if (corner.get_den() != 1) throw VerificationFailure("build_EF_positive: corner entry not integral");
        G(0, 0) = corner.get_num();
        G(0, 1) = G(1, 0) = G(0, 2) = G(2, 0) = 1;
        G(1, 1) = G(2, 2) = static_cast<long>(M);
        for (std::size_t i = 0; i < n; ++i) G(0, 3 + i) = G(3 + i, 0) = w[i];
        G.set_block(3, 3, K);
    }
    Lattice out = Lattice::from_gram(std::move(G));
    if (!out.is_even()) throw VerificationFailure("build_EF_positive: result is not even");
    if (!out.is_positive_definite()) throw VerificationFailure("build_EF_positive: result is not positive definite");
    return out;
}

Realization positive_definite_realization(const PrimeFamilySpec& spec, std::size_t rank_limit) {
    validate(spec);
    const std::int64_t M = spec.modulus();
    const std::string Ms = std::to_string(M);
    auto limited = [&](std::int64_t rank) {
        if (rank < 0 || static_cast<std::size_t>(rank) > rank_limit)
            throw BudgetExceeded(spec.to_string() + ": realization of rank " + std::to_string(rank) +
                                 " exceeds limit " + std::to_string(rank_limit));
    };

    if (spec.p != 2) {
        if (spec.family != Family::A && spec.family != Family::B)
            throw InvalidArgument(spec.to_string() + ": family requires p = 2");
        const bool is_a = spec.family == Family::A;
        if (spec.p % 4 == 1) {
            DoublePrimeResult k = k_double_prime(spec.p, spec.r, is_a ? 1 : -1);
            limited(static_cast<std::int64_t>(k.lattice.rank()));
            return {std::move(k.lattice), "K''(" + Ms + ", " + std::to_string(k.auxiliary_prime + 1) + ", " +
                                              (is_a ? "1" : "-1") + ")"};
        }
        limited(M - 1);
        if (!is_a) return {cartan_A(static_cast<std::size_t>(M - 1)), "K'(" + Ms + ", " + std::to_string(M - 1) + ")"};
        return {complement_in_gluing(cartan_A(static_cast<std::size_t>(M - 1)), rank_limit),
                "K'(" + Ms + ", " + std::to_string(M - 1) + ")^perp"};
    }

    switch (spec.family) {
        case Family::A: return {Lattice::from_gram(IntegerMatrix{{static_cast<long>(M)}}), "(" + Ms + ")"};
        case Family::B:
            return {complement_in_gluing(Lattice::from_gram(IntegerMatrix{{static_cast<long>(M)}}), rank_limit),
                    "(" + Ms + ")^perp"};
        case Family::C:
            if (spec.r % 2 == 0)
                return {complement_in_gluing(k_e(spec.r), rank_limit), "K_e(" + std::to_string(spec.r) + ")^perp"};
            return {complement_in_gluing(k_o(spec.r), rank_limit), "K_o(" + std::to_string(spec.r) + ")^perp"};
        case Family::D:
            if (spec.r % 2 == 0) return {k_e(spec.r), "K_e(" + std::to_string(spec.r) + ")"};
            return {k_o(spec.r), "K_o(" + std::to_string(spec.r) + ")"};
        case Family::E: return {build_EF_positive(Family::E, spec.r), "E gluing"};
        case Family::F: return {build_EF_positive(Family::F, spec.r), "F gluing"};
    }
    throw InvalidArgument("unknown family");
}

// ---------------------------------------------------------------------------
// Conformal weights

namespace {

// Exhaustive enumeration of integer w with w^t A w <= bound, A positive definite.
class ShortVectors {
public:
    explicit ShortVectors(const RationalMatrix& A) : n_(A.rows()), q_(A) {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                q_(j, i) = q_(i, j);
                q_(i, j) /= q_(i, i);
            }
            for (std::size_t k = i + 1; k < n_; ++k)
                for (std::size_t l = k; l < n_; ++l) q_(k, l) -= q_(k, i) * q_(i, l);
        }
    }

    // Calls visit(w, norm) for every vector; returns false once `limit` vectors were visited.
    template <typename F>
    bool run(const Rational& bound, std::int64_t limit, F&& visit) {
        x_.assign(n_, 0);
        visited_ = 0;
        limit_ = limit;
        if (n_ == 0) {
            visit(x_, Rational(0));
            return true;
        }
        return descend(n_ - 1, bound, bound, visit);
    }

private:
    template <typename F>
    bool descend(std::size_t i, const Rational& remaining, const Rational& bound, F& visit) {
        Rational c = 0;
        for (std::size_t j = i + 1; j < n_; ++j) c -= q_(i, j) * x_[j];
        const Rational t = remaining / q_(i, i);
        Integer root;
        const Integer ft = floor_of(t);
        mpz_sqrt(root.get_mpz_t(), ft.get_mpz_t());
        root += 1;
        const Integer lo = floor_of(c) - root, hi = ceil_of(c) + root;
        for (Integer v = lo; v <= hi; ++v) {
            const Rational diff = Rational(v) - c;
            const Rational used = q_(i, i) * diff * diff;
            if (used > remaining) continue;
            x_[i] = v;
            const Rational rest = remaining - used;
            if (i == 0) {
                if (++visited_ > limit_) return false;
                visit(x_, bound - rest);
            } else if (!descend(i - 1, rest, bound, visit)) {
                return false;
            }
        }
        x_[i] = 0;
        return true;
    }

    std::size_t n_;
    RationalMatrix q_;
    std::vector<Integer> x_;
    std::int64_t visited_ = 0;
    std::int64_t limit_ = 0;
};

constexpr std::size_t kMaxEnumerationRank = 20;
constexpr std::int64_t kMaxEnumeratedVectors = 20'000'000;

}  // namespace

std::vector<CosetWeight> coset_minima(const IntegerMatrix& gram, std::int64_t budget) {
    require_even_nondegenerate(gram, "coset_minima");
    if (inertia(gram).n_plus != gram.rows()) throw InvalidArgument("coset_minima: lattice must be positive definite");
    if (gram.rows() > kMaxEnumerationRank)
        throw BudgetExceeded("coset_minima: rank " + std::to_string(gram.rows()) + " exceeds " +
                             std::to_string(kMaxEnumerationRank));
    const DiscriminantData dd = discriminant_form(gram);
    const std::int64_t order = dd.order();
    if (order > budget)
        throw BudgetExceeded("coset_minima: " + std::to_string(order) + " cosets exceed budget " +
                             std::to_string(budget));

    const CosetMap coset(gram);
    const auto& factors = coset.invariant_factors();
    auto index_of = [&](const Element& e) {
        std::int64_t idx = 0;
        for (std::size_t k = 0; k < e.size(); ++k) idx = idx * factors[k] + e[k];
        return idx;
    };

    ShortVectors sv(rational_inverse(to_rational(gram)));
    std::vector<std::optional<Rational>> best(static_cast<std::size_t>(order));
    std::int64_t found = 0;
    for (Rational bound = 2;; bound *= 2) {
        std::fill(best.begin(), best.end(), std::nullopt);
        found = 0;
        const bool complete = sv.run(bound, kMaxEnumeratedVectors, [&](const std::vector<Integer>& w, const Rational& norm) {
            auto& slot = best[static_cast<std::size_t>(index_of(coset(w)))];
            if (!slot) {
                slot = norm;
                ++found;
            } else if (norm < *slot) {
                slot = norm;
            }
        });
        if (!complete) throw BudgetExceeded("coset_minima: too many lattice vectors to enumerate");
        if (found == order) break;
    }

    std::vector<CosetWeight> out;
    for (std::int64_t idx = 0; idx < order; ++idx) {
        Element e(factors.size());
        std::int64_t rest = idx;
        for (std::size_t k = factors.size(); k-- > 0;) {
            e[k] = rest % factors[k];
            rest /= factors[k];
        }
        // q2 of the coset from the generator data must match the minimal norm mod 2
        Rational q2 = 0;
        for (std::size_t a = 0; a < e.size(); ++a) {
            q2 += e[a] * e[a] * dd.q2_values[a];
            for (std::size_t b = a + 1; b < e.size(); ++b) q2 += 2 * e[a] * e[b] * dd.bilinear_values(a, b);
        }
        const Rational norm = *best[static_cast<std::size_t>(idx)];
        if (mod_rational(q2 - norm, 2) != 0) throw VerificationFailure("coset_minima: weight disagrees with q2");
        Rational h = norm / 2;
        h.canonicalize();
        out.push_back(CosetWeight{std::move(e), std::move(h)});
    }
    return out;
}

Rational extremality_score(const IntegerMatrix& gram, std::int64_t budget) {
    const auto weights = coset_minima(gram, budget);
    const Integer r = static_cast<long>(weights.size());
    const Integer c = static_cast<long>(gram.rows());
    Rational sum = 0;
    for (const auto& w : weights) sum += w.h;
    Rational score = make_rational(r * c, 4) + Rational(r * (r - 1) / 2) - 6 * sum;
    score.canonicalize();
    return score;
}

}  // namespace anyon
