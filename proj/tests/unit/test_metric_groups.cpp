#include <random>
#include <set>

#include "anyon/metric_groups.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace anyon;

namespace {

std::multiset<Rational> q_values(const MetricGroup& g) {
    std::multiset<Rational> out;
    g.for_each([&](const Element&, std::int64_t num) { out.insert(make_rational(num, g.level())); });
    return out;
}

const MetricGroup semion = build_prime({Family::A, 2, 1, 0});

}  // namespace

TEST_CASE("prime family examples") {
    const MetricGroup b3 = build_prime({Family::B, 3, 1, 0});
    CHECK(b3.invariant_factors() == std::vector<std::int64_t>{3});
    CHECK(b3.q({1}) == Rational(1, 3));

    const MetricGroup e2 = build_prime({Family::E, 2, 1, 0});
    CHECK(e2.invariant_factors() == std::vector<std::int64_t>{2, 2});
    CHECK(q_values(e2) == std::multiset<Rational>{0, 0, 0, Rational(1, 2)});

    CHECK(semion.q({1}) == Rational(1, 4));
    CHECK(q_values(build_prime({Family::F, 2, 1, 0})) ==
          std::multiset<Rational>{0, Rational(1, 2), Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(build_prime({Family::C, 2, 1, 0}), InvalidArgument);
    CHECK_THROWS_AS(build_prime({Family::E, 3, 1, 0}), InvalidArgument);
    CHECK_THROWS_AS(build_prime({Family::A, 9, 1, 0}), InvalidArgument);
    CHECK_THROWS_AS(build_prime({Family::A, 3, 1, 1}), InvalidArgument);  // (2/3) = -1 belongs to B
    CHECK_NOTHROW(build_prime({Family::B, 3, 1, 1}));
}

TEST_CASE("form axioms hold on every family") {
    for (const auto& s : support::acceptance_specs()) {
        if (s.modulus() > 64) continue;
        const MetricGroup g = build_prime(s);
        CAPTURE(s.to_string());
        CHECK(g.q_num(g.element(0)) == 0);
        CHECK(is_nondegenerate(g));
        for (std::int64_t i = 0; i < g.order(); ++i) {
            const Element x = g.element(i);
            CHECK(g.q(x) == g.q(g.negate(x)));
            for (std::size_t a = 0; a < g.rank(); ++a)
                for (std::size_t b = 0; b < g.rank(); ++b) {
                    // bi-additivity on generator pairs against x
                    const Element ga = g.generator(a), gb = g.generator(b);
                    CHECK(g.b_num(g.add(ga, gb), x) % g.level() ==
                          (g.b_num(ga, x) + g.b_num(gb, x)) % g.level());
                }
        }
    }
}

TEST_CASE("direct sums and conjugates") {
    CHECK(q_values(direct_sum(semion, MetricGroup())) == q_values(semion));
    CHECK(q_values(direct_sum(semion, semion)) ==
          std::multiset<Rational>{0, Rational(1, 4), Rational(1, 4), Rational(1, 2)});
    CHECK(conjugate(semion).q({1}) == Rational(3, 4));
    const MetricGroup b5 = build_prime({Family::B, 5, 2, 0});
    CHECK(is_isomorphic(conjugate(conjugate(b5)), b5));
    const MetricGroup e2 = build_prime({Family::E, 2, 1, 0});
    CHECK(is_isomorphic(conjugate(e2), e2));
}

TEST_CASE("non-degeneracy") {
    CHECK(is_nondegenerate(semion));
    CHECK_FALSE(is_nondegenerate(MetricGroup::from_generators({2}, {Rational(0)}, RationalMatrix(1, 1))));
    CHECK(is_nondegenerate(build_prime({Family::F, 2, 1, 0})));
}

TEST_CASE("central charges") {
    CHECK(central_charge_closed({Family::B, 3, 1, 0}) == 2);
    CHECK(central_charge_closed({Family::F, 2, 1, 0}) == 4);
    CHECK(central_charge_closed({Family::A, 7, 2, 0}) == 0);
    CHECK(central_charge_gauss(MetricGroup()) == 0);
    CHECK(central_charge_gauss(build_prime({Family::B, 3, 1, 0})) == 2);
    CHECK(central_charge_gauss(build_prime({Family::F, 2, 1, 0})) == 4);
    CHECK_THROWS_AS(central_charge_gauss(build_prime({Family::A, 7, 3, 0}), 100), BudgetExceeded);

    for (const auto& s : support::acceptance_specs()) {
        CAPTURE(s.to_string());
        const MetricGroup g = build_prime(s);
        CHECK(central_charge_closed(s) == central_charge_gauss(g));
        CHECK(oracle::gauss_central_charge(g).c == central_charge_gauss(g));
        if (s.family != Family::E && s.family != Family::F) CHECK((central_charge_closed(s) + g.order()) % 2 == 1);
    }
}

TEST_CASE("isomorphism tests") {
    const MetricGroup a9 = build_prime({Family::A, 3, 2, 0});
    const auto id = is_isomorphic(a9, a9);
    REQUIRE(id);
    CHECK(id->images == std::vector<Element>{Element{1}});
    CHECK_FALSE(is_isomorphic(semion, conjugate(semion)));
    CHECK_FALSE(is_isomorphic(build_prime({Family::E, 2, 1, 0}), build_prime({Family::F, 2, 1, 0})));
    // different parameters of the same family give isometric forms
    CHECK(is_isomorphic(build_prime({Family::A, 7, 1, 1}), build_prime({Family::A, 7, 1, 2})));
    // central charges 3 + 7 and 0 differ
    CHECK_FALSE(is_isomorphic(direct_sum(build_prime({Family::D, 2, 2, 0}), build_prime({Family::B, 2, 2, 0})),
                              build_prime({Family::E, 2, 2, 0})));
    // the double semion and the toric code share c = 0
    CHECK_FALSE(is_isomorphic(direct_sum(semion, conjugate(semion)), build_prime({Family::E, 2, 1, 0})));
}

TEST_CASE("gauged center dimensions") {
    CHECK(gauged_center_fpdim({Family::A, 3, 1, 0}) == 144);
    CHECK(gauged_center_fpdim({Family::A, 2, 1, 0}) == 4);
    CHECK(gauged_center_fpdim({Family::F, 2, 1, 0}) == 20736);
    CHECK(gauged_center_fpdim({Family::C, 2, 3, 0}) == 1024);
}

TEST_CASE("model spec grammar") {
    const auto specs = parse_model_spec("B[3]*E[4] * A[5^3]");
    REQUIRE(specs.size() == 3);
    CHECK(specs[0] == PrimeFamilySpec{Family::B, 3, 1, 0});
    CHECK(specs[1] == PrimeFamilySpec{Family::E, 2, 2, 0});
    CHECK(specs[2] == PrimeFamilySpec{Family::A, 5, 3, 0});
    CHECK(to_string(specs) == "B[3]*E[2^2]*A[5^3]");
    CHECK(to_string(parse_model_spec(to_string(specs))) == to_string(specs));

    const MetricGroup g = build_model(parse_model_spec("E[2]*A[2]"));
    CHECK(g.order() == 8);
    CHECK(central_charge_gauss(g) == 1);

    for (const char* bad : {"", "B[3", "Q[3]", "B[6]", "B[3]*", "B[3]+A[2]", "C[2]"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(build_model(parse_model_spec(bad)), Error);
    }
    try {
        parse_model_spec("B[3]*X[2]");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
}
