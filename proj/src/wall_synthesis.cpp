#include "anyon/wall_synthesis.hpp"

namespace anyon {

namespace {

// Even t minimizing |t * cur - prev|; on a tie the smaller |t| wins, then the positive one.
Integer closest_even_multiplier(const Integer& prev, const Integer& cur) {
    // x = prev / (2 cur); candidates 2 floor(x) and 2 ceil(x)
    Integer num = prev, den = 2 * cur;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Integer lo;
    mpz_fdiv_q(lo.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer t1 = 2 * lo, t2 = 2 * (lo + 1);
    Integer e1 = abs(t1 * cur - prev), e2 = abs(t2 * cur - prev);
    if (e1 != e2) return e1 < e2 ? t1 : t2;
    if (abs(t1) != abs(t2)) return abs(t1) < abs(t2) ? t1 : t2;
    return t1 > 0 ? t1 : t2;
}

void check_even_integral(const IntegerMatrix& K, const std::string& what) {
    if (!K.is_symmetric()) throw VerificationFailure(what + ": K is not symmetric");
    for (std::size_t i = 0; i < K.rows(); ++i)
        if (K(i, i) % 2 != 0) throw VerificationFailure(what + ": K has an odd diagonal entry");
}

}  // namespace

WallSequence wall_sequence(std::int64_t n, std::int64_t modulus) {
    auto [p, r] = prime_power_decomposition(modulus);
    if (p == 0) throw InvalidArgument("wall_sequence: modulus must be a prime power");
    if (n <= 0 || n >= modulus) throw InvalidArgument("wall_sequence: need 0 < n < modulus");
    if (n % p == 0) throw InvalidArgument("wall_sequence: n must be coprime to p");
    if (p != 2 && n % 2 != 0) throw InvalidArgument("wall_sequence: n must be even for odd p");

    WallSequence seq;
    seq.n = n;
    seq.modulus = modulus;
    seq.p = p;

    const Integer N = static_cast<long>(n), M = static_cast<long>(modulus);
    Integer d1 = static_cast<long>(inverse_mod64(n, modulus));
    for (int tries = 0;; ++tries) {
        if (tries > 4) throw VerificationFailure("wall_sequence: no initial solution with the required parity");
        Integer d2 = (N * d1 - 1) / M;
        const bool parity_ok = p == 2 ? (d2 % 2 == 0) : (d1 % 2 == 0);
        if (parity_ok && d2 > 0) {
            seq.d = {d1, d2};
            break;
        }
        d1 += M;
    }

    for (;;) {
        const Integer& prev = seq.d[seq.d.size() - 2];
        const Integer cur = seq.d.back();
        Integer t = closest_even_multiplier(prev, cur);
        Integer next = t * cur - prev;
        seq.a.push_back(t);
        if (next == 0) break;
        if (abs(next) >= abs(cur)) throw VerificationFailure("wall_sequence: remainders stopped decreasing");
        seq.d.push_back(next);
    }
    if (abs(seq.d.back()) != 1) throw VerificationFailure("wall_sequence: terminal remainder is not +-1");
    seq.epsilon = seq.d.back() > 0 ? 1 : -1;
    const bool k_odd = seq.k() % 2 == 1;
    if ((p != 2) != k_odd) throw VerificationFailure("wall_sequence: length parity contradicts the prime");
    return seq;
}

RationalMatrix tridiagonal_W(const Rational& first, const std::vector<Rational>& diag) {
    const std::size_t k = diag.size();
    RationalMatrix W(k + 1, k + 1);
    W(0, 0) = first;
    for (std::size_t i = 0; i < k; ++i) {
        W(i, i + 1) = W(i + 1, i) = 1;
        W(i + 1, i + 1) = diag[i];
    }
    return W;
}

RationalMatrix assemble_W(const WallSequence& seq) {
    std::vector<Rational> diag(seq.a.begin(), seq.a.end());
    RationalMatrix W = tridiagonal_W(make_rational(seq.n, seq.modulus), diag);
    if (determinant(W) != make_rational(seq.epsilon, seq.modulus))
        throw VerificationFailure("assemble_W: determinant differs from epsilon / modulus");
    return W;
}

IntegerMatrix k_from_wall(std::int64_t n, std::int64_t modulus) {
    const WallSequence seq = wall_sequence(n, modulus);
    const RationalMatrix Kq = rational_inverse(assemble_W(seq));
    if (!is_integral(Kq)) throw VerificationFailure("k_from_wall: inverse is not integral");
    IntegerMatrix K = to_integer(Kq);
    check_even_integral(K, "k_from_wall");
    if (abs(determinant(K)) != modulus) throw VerificationFailure("k_from_wall: |det K| differs from modulus");
    const auto diag = smith_normal_form(K).diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
        if (diag[i] != 1) throw VerificationFailure("k_from_wall: cokernel is not cyclic");
    if (diag.back() != modulus) throw VerificationFailure("k_from_wall: cokernel has the wrong order");
    return K;
}

std::int64_t choose_c_for_family(const PrimeFamilySpec& spec) {
    validate(spec);
    const std::int64_t M = spec.modulus();
    if (spec.p != 2) {
        if (spec.family == Family::A) {
            if (M == 3) throw SpecialCaseRouting(spec, "K'(3,2)^perp");
            return 4;
        }
        if (spec.family == Family::B) {
            const std::int64_t res = spec.p % 8;
            if (res == 3 || res == 5) return 2;
            if (res == 7) return spec.p - 1;
            return 2 * family_parameter(PrimeFamilySpec{Family::B, spec.p, spec.r, 0});
        }
        throw InvalidArgument(spec.to_string() + ": family requires p = 2");
    }
    switch (spec.family) {
        case Family::A: return 1;
        case Family::B:
            if (M == 2) throw SpecialCaseRouting(spec, "(2)^perp");
            if (M == 4) throw SpecialCaseRouting(spec, "(4)^perp");
            return 7;
        case Family::C:
            if (M == 4) throw SpecialCaseRouting(spec, "K_e(2)^perp");
            return 5;
        case Family::D: return 3;
        default:
            throw InvalidArgument(spec.to_string() + ": E and F have direct K-matrices, not Wall sequences");
    }
}

IntegerMatrix direct_EF_k(Family family, unsigned r) {
    if (r < 1 || r > 30) throw InvalidArgument("direct_EF_k: r out of range");
    const std::int64_t M = std::int64_t{1} << r;
    if (family == Family::E) return IntegerMatrix{{0, M}, {M, 0}};
    if (family != Family::F) throw InvalidArgument("direct_EF_k: family must be E or F");

    const std::int64_t sign = r % 2 == 0 ? 1 : -1;  // (-1)^r
    const std::int64_t a = (M - sign) / 3;
    const std::int64_t b = -sign;  // (-1)^{r-1}
    RationalMatrix W(4, 4);
    W(0, 0) = W(1, 1) = make_rational(2, M);
    W(0, 1) = W(1, 0) = make_rational(1, M);
    W(1, 2) = W(2, 1) = 1;
    W(2, 2) = 2 * a;
    W(2, 3) = W(3, 2) = 1;
    W(3, 3) = 2 * b;
    const RationalMatrix Kq = rational_inverse(W);
    if (!is_integral(Kq)) throw VerificationFailure("direct_EF_k: inverse is not integral");
    IntegerMatrix K = to_integer(Kq);
    check_even_integral(K, "direct_EF_k");
    return K;
}

}  // namespace anyon
