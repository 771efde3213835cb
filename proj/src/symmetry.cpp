#include "anyon/symmetry.hpp"

namespace anyon {

namespace {

using Census = std::map<std::int64_t, std::int64_t>;

// Element-order census of Z2 x Z_{2^m}.
Census census_z2_times_cyclic(unsigned m) {
    Census c;
    const std::int64_t n = std::int64_t{1} << m;
    for (std::int64_t a = 0; a < 2; ++a)
        for (std::int64_t b = 0; b < n; ++b) {
            const std::int64_t ob = n / gcd64(b, n);
            ++c[lcm64(a == 0 ? 1 : 2, ob)];
        }
    return c;
}

std::string semidirect_name(unsigned m) {
    return "(Z2×Z" + std::to_string(std::int64_t{1} << m) + ")⋊Z2";
}

}  // namespace

Automorphism identity_automorphism(const MetricGroup& g) {
    Automorphism id;
    for (std::size_t i = 0; i < g.rank(); ++i) id.images.push_back(g.generator(i));
    return id;
}

Automorphism compose(const MetricGroup& g, const Automorphism& outer, const Automorphism& inner) {
    Automorphism out;
    for (const auto& img : inner.images) out.images.push_back(outer.apply(g, img));
    return out;
}

IntegerMatrix automorphism_matrix(const MetricGroup& g, const Automorphism& a) {
    IntegerMatrix m(g.rank(), g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i)
        for (std::size_t j = 0; j < g.rank(); ++j) m(j, i) = static_cast<long>(a.images[i][j]);
    return m;
}

std::optional<std::string> identify_structure(std::int64_t order, bool abelian, const Census& census) {
    if (order == 1) return "1";
    if (order == 2) return "Z2";
    if (order == 4 && abelian && census == Census{{1, 1}, {2, 3}}) return "Z2×Z2";
    if (order == 6 && !abelian && census == Census{{1, 1}, {2, 3}, {3, 2}}) return "D3";
    if (order == 12 && !abelian && census == Census{{1, 1}, {2, 7}, {3, 2}, {6, 2}}) return "D6";
    if (order == 24 && !abelian && census == Census{{1, 1}, {2, 15}, {3, 2}, {6, 6}}) return "D6⋊Z2";
    // (Z2 x Z_{2^m}) x| Z2 with the extra factor inverting the cyclic part: the
    // coset of the complement consists of 2^{m+1} involutions.
    for (unsigned m = 1; m < 62 && (std::int64_t{4} << m) <= order; ++m) {
        if ((std::int64_t{4} << m) != order) continue;
        Census expect = census_z2_times_cyclic(m);
        expect[2] += std::int64_t{2} << m;
        if (census == expect && abelian == (m == 1)) return semidirect_name(m);
    }
    return std::nullopt;
}

AutGroup aut_bruteforce(const MetricGroup& g, std::int64_t budget) {
    AutGroup out;
    enumerate_isometries(g, g, budget, [&](const Isometry& phi) {
        out.elements.push_back(phi);
        return true;
    });
    out.order = static_cast<std::int64_t>(out.elements.size());

    // Every element must preserve q on the whole group, not only on generators.
    for (const auto& phi : out.elements)
        g.for_each([&](const Element& x, std::int64_t qx) {
            if (g.q_num(phi.apply(g, x)) != qx) throw VerificationFailure("automorphism does not preserve q");
        });

    const Automorphism id = identity_automorphism(g);
    for (std::size_t i = 0; i < out.elements.size() && out.abelian; ++i)
        for (std::size_t j = i + 1; j < out.elements.size(); ++j)
            if (compose(g, out.elements[i], out.elements[j]) != compose(g, out.elements[j], out.elements[i])) {
                out.abelian = false;
                break;
            }
    for (const auto& phi : out.elements) {
        std::int64_t o = 1;
        Automorphism power = phi;
        while (power != id) {
            power = compose(g, phi, power);
            ++o;
        }
        ++out.order_census[o];
    }
    out.structure_name = identify_structure(out.order, out.abelian, out.order_census);
    return out;
}

AutSummary aut_order_closed(const PrimeFamilySpec& spec) {
    validate(spec);
    const unsigned r = spec.r;
    switch (spec.family) {
        case Family::A:
        case Family::B:
            if (spec.p == 2 && r == 1) return {1, "1"};
            return {2, "Z2"};
        case Family::C:
        case Family::D:
            return {2, "Z2"};
        case Family::E:
            if (r == 1) return {2, "Z2"};
            if (r == 2) return {4, "Z2×Z2"};
            return {std::int64_t{1} << r, semidirect_name(r - 2)};
        case Family::F:
            if (r == 1) return {6, "D3"};
            if (r == 2) return {12, "D6"};
            if (r == 3) return {24, "D6⋊Z2"};
            return {3 * (std::int64_t{1} << r), std::nullopt};
    }
    throw InvalidArgument("unknown family");
}

}  // namespace anyon
