#include "anyon/metric_groups.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include "anyon/symmetry.hpp"

namespace anyon {

namespace {

Rational frac(const Rational& x) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - Rational(fl);
}

std::int64_t numerator_over(const Rational& v, std::int64_t level) {
    Rational scaled = frac(v) * level;
    if (scaled.get_den() != 1) throw InvalidArgument("value does not lie on the level grid");
    return scaled.get_num().get_si();
}

}  // namespace

MetricGroup::MetricGroup() { table_ = std::make_shared<const std::vector<std::int64_t>>(1, 0); }

MetricGroup MetricGroup::from_generators(const std::vector<std::int64_t>& orders,
                                         const std::vector<Rational>& q_gen,
                                         const RationalMatrix& bilinear) {
    const std::size_t k = orders.size();
    if (q_gen.size() != k || bilinear.rows() != k || bilinear.cols() != k)
        throw InvalidArgument("metric group: generator data have inconsistent sizes");

    RationalMatrix B(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        if (orders[i] < 1) throw InvalidArgument("metric group: generator orders must be positive");
        B(i, i) = frac(2 * q_gen[i]);
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            if (frac(bilinear(i, j) - bilinear(j, i)) != 0)
                throw InvalidArgument("metric group: bilinear data are not symmetric");
            B(i, j) = frac(bilinear(i, j));
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Rational n = orders[i];
        if (frac(n * n * q_gen[i]) != 0)
            throw InvalidArgument("metric group: q does not vanish on n_i * g_i");
        for (std::size_t j = 0; j < k; ++j)
            if (frac(n * B(i, j)) != 0)
                throw InvalidArgument("metric group: b is not well defined on the generator orders");
    }

    IntegerMatrix D(k, k);
    for (std::size_t i = 0; i < k; ++i) D(i, i) = static_cast<long>(orders[i]);
    SnfResult snf = smith_normal_form(D);
    IntegerMatrix Uinv = to_integer(rational_inverse(to_rational(snf.U)));

    std::vector<std::vector<Integer>> gens;
    MetricGroup g;
    for (std::size_t j = 0; j < k; ++j) {
        if (snf.S(j, j) <= 1) continue;
        std::vector<Integer> f(k);
        for (std::size_t i = 0; i < k; ++i) {
            Integer n = static_cast<long>(orders[i]);
            mpz_fdiv_r(f[i].get_mpz_t(), Uinv(i, j).get_mpz_t(), n.get_mpz_t());
        }
        gens.push_back(std::move(f));
        g.factors_.push_back(snf.S(j, j).get_si());
    }

    const std::size_t m = gens.size();
    std::vector<Rational> qn(m);
    RationalMatrix bn(m, m);
    for (std::size_t a = 0; a < m; ++a) {
        Rational v = 0;
        for (std::size_t i = 0; i < k; ++i) {
            v += Rational(gens[a][i] * gens[a][i]) * frac(q_gen[i]);
            for (std::size_t l = i + 1; l < k; ++l) v += Rational(gens[a][i] * gens[a][l]) * B(i, l);
        }
        qn[a] = frac(v);
        for (std::size_t c = 0; c < m; ++c) {
            Rational w = 0;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t l = 0; l < k; ++l) w += Rational(gens[a][i] * gens[c][l]) * B(i, l);
            bn(a, c) = frac(w);
        }
    }

    Integer level = 1;
    for (std::size_t a = 0; a < m; ++a) {
        mpz_lcm(level.get_mpz_t(), level.get_mpz_t(), qn[a].get_den_mpz_t());
        for (std::size_t c = 0; c < m; ++c) mpz_lcm(level.get_mpz_t(), level.get_mpz_t(), bn(a, c).get_den_mpz_t());
    }
    if (level > Integer(1) << 40) throw InvalidArgument("metric group: level too large");
    g.level_ = level.get_si();
    g.order_ = 1;
    for (auto n : g.factors_) {
        if (g.order_ > std::numeric_limits<std::int64_t>::max() / 4 / n)
            throw InvalidArgument("metric group: order too large");
        g.order_ *= n;
    }
    g.q_gen_.resize(m);
    g.b_gen_.resize(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        g.q_gen_[a] = numerator_over(qn[a], g.level_);
        for (std::size_t c = 0; c < m; ++c) g.b_gen_[a * m + c] = numerator_over(bn(a, c), g.level_);
    }
    g.table_.reset();
    if (g.order_ <= kDenseTableLimit) {
        auto table = std::make_shared<std::vector<std::int64_t>>();
        table->reserve(static_cast<std::size_t>(g.order_));
        g.for_each([&](const Element&, std::int64_t v) { table->push_back(v); });
        g.table_ = std::move(table);
    }
    return g;
}

std::int64_t MetricGroup::q_num(const Element& x) const {
    const std::size_t k = rank();
    __int128 acc = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (x[i] == 0) continue;
        acc += static_cast<__int128>(mulmod64(x[i], x[i], level_)) * q_gen_[i];
        for (std::size_t j = i + 1; j < k; ++j)
            if (x[j] != 0) acc += static_cast<__int128>(mulmod64(x[i], x[j], level_)) * b_gen_[i * k + j];
        acc %= level_;
    }
    return mod64(static_cast<std::int64_t>(acc % level_), level_);
}

std::int64_t MetricGroup::b_num(const Element& x, const Element& y) const {
    const std::size_t k = rank();
    __int128 acc = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < k; ++j)
            if (y[j] != 0) acc += static_cast<__int128>(mulmod64(x[i], y[j], level_)) * b_gen_[i * k + j];
        acc %= level_;
    }
    return mod64(static_cast<std::int64_t>(acc % level_), level_);
}

Element MetricGroup::element(std::int64_t index) const {
    Element x(rank());
    for (std::size_t i = rank(); i-- > 0;) {
        x[i] = index % factors_[i];
        index /= factors_[i];
    }
    return x;
}

std::int64_t MetricGroup::index(const Element& x) const {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) idx = idx * factors_[i] + x[i];
    return idx;
}

Element MetricGroup::add(const Element& x, const Element& y) const {
    Element z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mod64(x[i] + y[i], factors_[i]);
    return z;
}

Element MetricGroup::negate(const Element& x) const {
    Element z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mod64(-x[i], factors_[i]);
    return z;
}

Element MetricGroup::scale(std::int64_t k, const Element& x) const {
    Element z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mulmod64(k, x[i], factors_[i]);
    return z;
}

Element MetricGroup::generator(std::size_t i) const {
    Element e(rank(), 0);
    e[i] = 1;
    return e;
}

std::int64_t MetricGroup::element_order(const Element& x) const {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < rank(); ++i) o = lcm64(o, factors_[i] / gcd64(x[i], factors_[i]));
    return o;
}

const std::vector<std::int64_t>& MetricGroup::q_table() const {
    if (!table_) throw BudgetExceeded("metric group too large for a dense q table");
    return *table_;
}

void MetricGroup::for_each(const std::function<void(const Element&, std::int64_t)>& f) const {
    Element x(rank(), 0);
    for (std::int64_t n = 0; n < order_; ++n) {
        f(x, q_num(x));
        for (std::size_t i = rank(); i-- > 0;) {
            if (++x[i] < factors_[i]) break;
            x[i] = 0;
        }
    }
}

// ---------------------------------------------------------------------------

std::string PrimeFamilySpec::to_string() const {
    std::string s(1, static_cast<char>(family));
    s += "[" + std::to_string(p);
    if (r > 1) s += "^" + std::to_string(r);
    return s + "]";
}

void validate(const PrimeFamilySpec& spec) {
    const std::string name = spec.to_string();
    if (!is_prime64(spec.p)) throw InvalidArgument(name + ": p must be prime");
    if (spec.r < 1) throw InvalidArgument(name + ": r must be positive");
    (void)ipow64(spec.p, 2 * spec.r);  // throws when the group order overflows
    switch (spec.family) {
        case Family::A:
        case Family::B:
            break;
        case Family::C:
        case Family::D:
            if (spec.p != 2) throw InvalidArgument(name + ": family requires p = 2");
            if (spec.r < 2) throw InvalidArgument(name + ": family requires r >= 2");
            break;
        case Family::E:
        case Family::F:
            if (spec.p != 2) throw InvalidArgument(name + ": family requires p = 2");
            break;
        default:
            throw InvalidArgument("unknown family");
    }
    if (spec.parameter != 0) {
        if (spec.p == 2 || (spec.family != Family::A && spec.family != Family::B))
            throw InvalidArgument(name + ": only A/B with odd p take a parameter");
        if (spec.parameter % spec.p == 0) throw InvalidArgument(name + ": parameter divisible by p");
        const int want = spec.family == Family::A ? 1 : -1;
        if (jacobi_symbol(2 * spec.parameter, spec.p) != want)
            throw InvalidArgument(name + ": parameter violates the Legendre symbol condition");
    }
}

std::int64_t family_parameter(const PrimeFamilySpec& spec) {
    if (spec.parameter != 0) return spec.parameter;
    const int want = spec.family == Family::A ? 1 : -1;
    for (std::int64_t m = 1;; ++m)
        if (m % spec.p != 0 && jacobi_symbol(2 * m, spec.p) == want) return m;
}

MetricGroup build_prime(const PrimeFamilySpec& spec) {
    validate(spec);
    const std::int64_t M = spec.modulus();
    MetricGroup g;
    if (spec.family == Family::E || spec.family == Family::F) {
        RationalMatrix b(2, 2);
        b(0, 1) = b(1, 0) = make_rational(1, M);
        Rational qg = spec.family == Family::E ? Rational(0) : make_rational(1, M);
        g = MetricGroup::from_generators({M, M}, {qg, qg}, b);
    } else {
        Rational q;
        if (spec.p != 2) {
            q = make_rational(family_parameter(spec), M);
        } else {
            const std::int64_t num = spec.family == Family::A ? 1 : spec.family == Family::B ? -1
                                     : spec.family == Family::C                           ? 5
                                                                                          : -5;
            q = make_rational(num, 2 * M);
        }
        g = MetricGroup::from_generators({M}, {q}, RationalMatrix(1, 1));
    }
    if (!is_nondegenerate(g)) throw VerificationFailure(spec.to_string() + ": form is degenerate");
    return g;
}

MetricGroup direct_sum(const MetricGroup& g1, const MetricGroup& g2) {
    const std::size_t k1 = g1.rank(), k2 = g2.rank();
    std::vector<std::int64_t> orders;
    std::vector<Rational> q;
    RationalMatrix b(k1 + k2, k1 + k2);
    for (std::size_t i = 0; i < k1; ++i) {
        orders.push_back(g1.invariant_factors()[i]);
        q.push_back(g1.q_generator(i));
        for (std::size_t j = 0; j < k1; ++j) b(i, j) = g1.b_generator(i, j);
    }
    for (std::size_t i = 0; i < k2; ++i) {
        orders.push_back(g2.invariant_factors()[i]);
        q.push_back(g2.q_generator(i));
        for (std::size_t j = 0; j < k2; ++j) b(k1 + i, k1 + j) = g2.b_generator(i, j);
    }
    return MetricGroup::from_generators(orders, q, b);
}

MetricGroup conjugate(const MetricGroup& g) {
    const std::size_t k = g.rank();
    std::vector<Rational> q(k);
    RationalMatrix b(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        q[i] = -g.q_generator(i);
        for (std::size_t j = 0; j < k; ++j) b(i, j) = -g.b_generator(i, j);
    }
    return MetricGroup::from_generators(g.invariant_factors(), q, b);
}

bool is_nondegenerate(const MetricGroup& g) {
    // x -> b(x, .) lands in (+) Z_{n_j}; it is injective exactly when it is onto,
    // i.e. when the pairing columns together with the relations span Z^k.
    const std::size_t k = g.rank();
    if (k == 0) return true;
    IntegerMatrix X(k, 2 * k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::int64_t n = g.invariant_factors()[j];
        for (std::size_t i = 0; i < k; ++i) {
            Rational t = g.b_generator(i, j) * n;
            if (t.get_den() != 1) return false;
            X(j, i) = t.get_num();
        }
        X(j, k + j) = static_cast<long>(n);
    }
    for (const auto& d : smith_normal_form(X).diagonal())
        if (d != 1) return false;
    return true;
}

int central_charge_closed(const PrimeFamilySpec& spec) {
    validate(spec);
    const bool even = spec.r % 2 == 0;
    if (spec.p != 2 && (spec.family == Family::A || spec.family == Family::B)) {
        if (even) return 0;
        const std::int64_t res = spec.p % 8;
        if (spec.family == Family::A) return res == 1 ? 0 : res == 7 ? 2 : res == 5 ? 4 : 6;
        return res == 1 ? 4 : res == 7 ? 6 : res == 5 ? 0 : 2;
    }
    switch (spec.family) {
        case Family::A: return 1;
        case Family::B: return 7;
        case Family::C: return even ? 5 : 1;
        case Family::D: return even ? 3 : 7;
        case Family::E: return 0;
        case Family::F: return even ? 0 : 4;
    }
    throw InvalidArgument("unknown family");
}

int central_charge_gauss(const MetricGroup& g, std::int64_t budget) {
    if (g.order() > budget)
        throw BudgetExceeded("Gauss sum over " + std::to_string(g.order()) + " elements exceeds budget " +
                             std::to_string(budget));
    const std::int64_t L = g.level();
    std::vector<std::int64_t> hist(static_cast<std::size_t>(L), 0);
    if (g.has_table()) {
        for (auto v : g.q_table()) ++hist[static_cast<std::size_t>(v)];
    } else {
        g.for_each([&](const Element&, std::int64_t v) { ++hist[static_cast<std::size_t>(v)]; });
    }
    long double re = 0, im = 0;
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    for (std::int64_t k = 0; k < L; ++k) {
        if (hist[k] == 0) continue;
        const long double angle = two_pi * static_cast<long double>(k) / static_cast<long double>(L);
        re += static_cast<long double>(hist[k]) * std::cos(angle);
        im += static_cast<long double>(hist[k]) * std::sin(angle);
    }
    const long double norm = std::sqrt(static_cast<long double>(g.order()));
    re /= norm;
    im /= norm;
    for (int c = 0; c < 8; ++c) {
        const long double phase = std::numbers::pi_v<long double> * c / 4;
        if (std::hypot(re - std::cos(phase), im - std::sin(phase)) < 1e-9L) return c;
    }
    throw VerificationFailure("Gauss sum does not match any eighth root of unity (degenerate form?)");
}

Element Isometry::apply(const MetricGroup& target, const Element& x) const {
    Element y(target.rank(), 0);
    for (std::size_t i = 0; i < images.size(); ++i)
        if (x[i] != 0) y = target.add(y, target.scale(x[i], images[i]));
    return y;
}

void enumerate_isometries(const MetricGroup& g1, const MetricGroup& g2, std::int64_t budget,
                          const std::function<bool(const Isometry&)>& visit) {
    if (g1.invariant_factors() != g2.invariant_factors() || g1.level() != g2.level()) return;
    if (g2.order() > budget)
        throw BudgetExceeded("isometry search over " + std::to_string(g2.order()) + " elements exceeds budget " +
                             std::to_string(budget));
    const std::size_t k = g1.rank();
    if (k == 0) {
        visit(Isometry{});
        return;
    }

    std::vector<std::vector<Element>> candidates(k);
    std::vector<std::int64_t> gen_q(k);
    for (std::size_t i = 0; i < k; ++i) gen_q[i] = g1.q_num(g1.generator(i));
    g2.for_each([&](const Element& y, std::int64_t qy) {
        const std::int64_t o = g2.element_order(y);
        for (std::size_t i = 0; i < k; ++i)
            if (o == g1.invariant_factors()[i] && qy == gen_q[i]) candidates[i].push_back(y);
    });

    std::vector<bool> seen(static_cast<std::size_t>(g2.order()));
    auto injective = [&](const Isometry& phi) {
        std::fill(seen.begin(), seen.end(), false);
        bool ok = true;
        g1.for_each([&](const Element& x, std::int64_t) {
            if (!ok) return;
            auto idx = static_cast<std::size_t>(g2.index(phi.apply(g2, x)));
            if (seen[idx]) ok = false;
            seen[idx] = true;
        });
        return ok;
    };

    Isometry phi;
    phi.images.resize(k);
    bool stop = false;
    std::function<void(std::size_t)> extend = [&](std::size_t i) {
        if (stop) return;
        if (i == k) {
            if (injective(phi) && !visit(phi)) stop = true;
            return;
        }
        for (const auto& y : candidates[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = g2.b_num(y, phi.images[j]) == g1.b_num(g1.generator(i), g1.generator(j));
            if (!ok) continue;
            phi.images[i] = y;
            extend(i + 1);
            if (stop) return;
        }
    };
    extend(0);
}

std::optional<Isometry> is_isomorphic(const MetricGroup& g1, const MetricGroup& g2, std::int64_t budget) {
    std::optional<Isometry> found;
    enumerate_isometries(g1, g2, budget, [&](const Isometry& phi) {
        found = phi;
        return false;
    });
    return found;
}

Integer gauged_center_fpdim(const PrimeFamilySpec& spec) {
    validate(spec);
    Integer aut = static_cast<long>(aut_order_closed(spec).order);
    Integer order = static_cast<long>(spec.modulus());
    if (spec.family == Family::E || spec.family == Family::F) order *= order;
    Integer aut4;
    mpz_pow_ui(aut4.get_mpz_t(), aut.get_mpz_t(), 4);
    return aut4 * order * order;
}

// ---------------------------------------------------------------------------
// spec grammar

namespace {

class SpecParser {
public:
    explicit SpecParser(const std::string& text) : s_(text) {}

    std::vector<PrimeFamilySpec> parse() {
        std::vector<PrimeFamilySpec> out;
        skip_space();
        if (pos_ == s_.size()) throw ParseError("empty model spec", pos_);
        for (;;) {
            out.push_back(factor());
            skip_space();
            if (pos_ == s_.size()) break;
            if (s_[pos_] != '*') throw ParseError("expected '*' between factors", pos_);
            ++pos_;
            skip_space();
        }
        return out;
    }

private:
    PrimeFamilySpec factor() {
        PrimeFamilySpec spec;
        const std::size_t start = pos_;
        if (pos_ >= s_.size() || std::string("ABCDEF").find(s_[pos_]) == std::string::npos)
            throw ParseError("expected a family letter A-F", pos_);
        spec.family = static_cast<Family>(s_[pos_++]);
        expect('[');
        const std::size_t num_pos = pos_;
        std::int64_t n = number();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            const std::size_t exp_pos = pos_;
            std::int64_t r = number();
            if (!is_prime64(n)) throw ParseError("base of p^r must be prime", num_pos);
            if (r < 1 || r > 62) throw ParseError("exponent out of range", exp_pos);
            spec.p = n;
            spec.r = static_cast<unsigned>(r);
        } else {
            auto [p, r] = prime_power_decomposition(n);
            if (p == 0) throw ParseError("order must be a prime power", num_pos);
            spec.p = p;
            spec.r = r;
        }
        expect(']');
        try {
            validate(spec);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), start);
        }
        return spec;
    }

    std::int64_t number() {
        const std::size_t start = pos_;
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (pos_ - start >= 18) throw ParseError("number too large", start);
            v = v * 10 + (s_[pos_++] - '0');
        }
        if (pos_ == start) throw ParseError("expected a number", pos_);
        return v;
    }

    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<PrimeFamilySpec> parse_model_spec(const std::string& text) { return SpecParser(text).parse(); }

std::string to_string(const std::vector<PrimeFamilySpec>& specs) {
    std::string s;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (i) s += "*";
        s += specs[i].to_string();
    }
    return s;
}

MetricGroup build_model(const std::vector<PrimeFamilySpec>& specs) {
    MetricGroup g;
    for (const auto& s : specs) g = direct_sum(g, build_prime(s));
    return g;
}

}  // namespace anyon
