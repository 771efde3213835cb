#include <set>

#include "anyon/symmetry.hpp"
#include "doctest.h"

using namespace anyon;

namespace {

void check_group_axioms(const MetricGroup& g, const AutGroup& aut) {
    std::set<std::vector<Element>> members;
    for (const auto& a : aut.elements) members.insert(a.images);
    CHECK(members.count(identity_automorphism(g).images) == 1);
    for (const auto& a : aut.elements) {
        for (std::int64_t i = 0; i < g.order(); ++i) {
            const Element x = g.element(i);
            CHECK(g.q_num(a.apply(g, x)) == g.q_num(x));
        }
        for (const auto& b : aut.elements) CHECK(members.count(compose(g, a, b).images) == 1);
    }
}

}  // namespace

TEST_CASE("small symmetry groups") {
    const AutGroup a2 = aut_bruteforce(build_prime({Family::A, 2, 1, 0}));
    CHECK(a2.order == 1);
    CHECK(a2.structure_name == "1");

    const MetricGroup f2 = build_prime({Family::F, 2, 1, 0});
    const AutGroup f = aut_bruteforce(f2);
    CHECK(f.order == 6);
    CHECK_FALSE(f.abelian);
    CHECK(f.structure_name == "D3");
    check_group_axioms(f2, f);

    const MetricGroup e4 = build_prime({Family::E, 2, 2, 0});
    const AutGroup e = aut_bruteforce(e4);
    CHECK(e.order == 4);
    CHECK(e.structure_name == "Z2×Z2");
    check_group_axioms(e4, e);
}

TEST_CASE("closed-form orders") {
    const AutSummary a = aut_order_closed({Family::A, 7, 3, 0});
    CHECK(a.order == 2);
    CHECK(a.structure_name == "Z2");
    const AutSummary f = aut_order_closed({Family::F, 2, 4, 0});
    CHECK(f.order == 48);
    CHECK_FALSE(f.structure_name);
    const AutSummary e = aut_order_closed({Family::E, 2, 3, 0});
    CHECK(e.order == 8);
    CHECK(e.structure_name == "(Z2×Z2)⋊Z2");
    CHECK(aut_order_closed({Family::B, 2, 1, 0}).order == 1);
    CHECK_THROWS_AS(aut_order_closed({Family::D, 3, 1, 0}), InvalidArgument);
}

TEST_CASE("brute force agrees with the closed forms on the 2-families") {
    for (unsigned r = 1; r <= 5; ++r)
        for (Family fam : {Family::A, Family::B, Family::C, Family::D, Family::E, Family::F}) {
            const PrimeFamilySpec s{fam, 2, r, 0};
            if ((fam == Family::C || fam == Family::D) && r < 2) continue;
            const MetricGroup g = build_prime(s);
            if (g.order() > 4096) continue;
            CAPTURE(s.to_string());
            const AutGroup brute = aut_bruteforce(g);
            CHECK(brute.order == aut_order_closed(s).order);
            if (g.order() <= 64) check_group_axioms(g, brute);
        }
}

TEST_CASE("E family symmetry becomes non-abelian from r = 4") {
    for (unsigned r = 3; r <= 5; ++r) {
        const AutGroup g = aut_bruteforce(build_prime({Family::E, 2, r, 0}));
        CAPTURE(r);
        CHECK(g.abelian == (r == 3));
        CHECK(g.structure_name == aut_order_closed({Family::E, 2, r, 0}).structure_name);
    }
}

TEST_CASE("automorphism matrices and budget") {
    const MetricGroup f2 = build_prime({Family::F, 2, 2, 0});
    const AutGroup aut = aut_bruteforce(f2);
    CHECK(aut.order == 12);
    CHECK(aut.structure_name == "D6");
    CHECK(automorphism_matrix(f2, identity_automorphism(f2)) == IntegerMatrix::identity(f2.rank()));
    CHECK_THROWS_AS(aut_bruteforce(build_prime({Family::A, 8191, 1, 0})), BudgetExceeded);
}

TEST_CASE("structure catalog only names certified matches") {
    CHECK(identify_structure(6, false, {{1, 1}, {2, 3}, {3, 2}}) == "D3");
    CHECK_FALSE(identify_structure(6, true, {{1, 1}, {2, 1}, {3, 2}, {6, 2}}));
    CHECK_FALSE(identify_structure(48, false, {{1, 1}, {2, 47}}));
}
