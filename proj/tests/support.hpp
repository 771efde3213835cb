#ifndef ANYON_TESTS_SUPPORT_HPP
#define ANYON_TESTS_SUPPORT_HPP

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "anyon/lattice_realization.hpp"
#include "anyon/metric_groups.hpp"
#include "anyon/wall_synthesis.hpp"
#include "oracles.hpp"

namespace support {

using namespace anyon;

// Every prime model in the acceptance range: odd p <= 23 with r <= 3, and p = 2 with r <= 6.
inline std::vector<PrimeFamilySpec> acceptance_specs() {
    std::vector<PrimeFamilySpec> out;
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23})
        for (unsigned r = 1; r <= 3; ++r)
            for (Family f : {Family::A, Family::B}) out.push_back({f, p, r, 0});
    for (unsigned r = 1; r <= 6; ++r)
        for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::E, Family::F}) {
            PrimeFamilySpec s{f, 2, r, 0};
            try {
                validate(s);
            } catch (const InvalidArgument&) {
                continue;
            }
            out.push_back(s);
        }
    return out;
}

inline bool routed_elsewhere(const PrimeFamilySpec& s) {
    return (s.family == Family::A && s.p == 3 && s.r == 1) || (s.family == Family::B && s.p == 2 && s.r <= 2) ||
           (s.family == Family::C && s.p == 2 && s.r == 2);
}

struct Outcome {
    bool ok = true;
    std::string why;

    void fail(const std::string& reason) {
        if (ok) why = reason;
        else why += "; " + reason;
        ok = false;
    }
};

// Library verification backed by the independent oracles: determinant,
// inertia, and the q2 value multiset of the discriminant group.
inline Outcome verify_with_oracles(const IntegerMatrix& k, const MetricGroup& target, bool use_bfs = true) {
    Outcome out;
    if (!k.is_symmetric()) {
        out.fail("not symmetric");
        return out;
    }
    const VerificationReport rep = verify_realization(k, target);
    for (const auto& c : rep.checks)
        if (!c.passed) out.fail(c.name + ": " + c.detail);
    if (!out.ok) return out;

    const Integer d = oracle::det(k);
    if (abs(d) != target.order()) out.fail("oracle |det| = " + Integer(abs(d)).get_str());
    const Inertia in = oracle::inertia(k);
    if (!(in == rep.inertia)) out.fail("oracle inertia differs");
    const int c = central_charge_gauss(target);
    if (((in.signature() - c) % 8 + 8) % 8 != 0) out.fail("oracle signature not congruent to c");
    if (use_bfs && target.order() <= 20000) {
        if (oracle::discriminant_q2(k) != oracle::q2_multiset(target)) out.fail("oracle q2 multiset differs");
    }
    return out;
}

inline std::string describe_failure(const VerificationReport& rep) {
    std::ostringstream os;
    for (const auto& c : rep.checks)
        if (!c.passed) os << c.name << " (" << c.detail << ") ";
    return os.str();
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace support

#endif
