#ifndef ANYON_WALL_SYNTHESIS_HPP
#define ANYON_WALL_SYNTHESIS_HPP

#include <cstdint>
#include <vector>

#include "anyon/exact_linalg.hpp"
#include "anyon/metric_groups.hpp"

namespace anyon {

// The even-remainder continued fraction of n / p^r.
//   1 = n d_1 - p^r d_2,   d_{i-1} = a_{i-1} d_i - d_{i+1},   d_{k+2} = 0,
// with every a_i even and epsilon = d_{k+1} = +-1.
struct WallSequence {
    std::int64_t n = 0;
    std::int64_t modulus = 0;
    std::int64_t p = 0;
    std::vector<Integer> d;  // d_1 .. d_{k+1}
    std::vector<Integer> a;  // a_1 .. a_k
    int epsilon = 1;

    std::size_t k() const { return a.size(); }
};

// Thrown by choose_c_for_family for the models the construction hands to the
// lattice tables instead (A_3, B_2, B_4, C_4).
class SpecialCaseRouting : public InvalidArgument {
public:
    SpecialCaseRouting(const PrimeFamilySpec& spec, const std::string& route)
        : InvalidArgument(spec.to_string() + " is realized by " + route + ", not by the Wall algorithm"),
          spec_(spec) {}
    const PrimeFamilySpec& spec() const { return spec_; }

private:
    PrimeFamilySpec spec_;
};

WallSequence wall_sequence(std::int64_t n, std::int64_t modulus);
RationalMatrix assemble_W(const WallSequence& seq);
// Tridiagonal matrix with (0,0) entry `first`, diagonal continuing with `diag`
// and ones next to the diagonal.
RationalMatrix tridiagonal_W(const Rational& first, const std::vector<Rational>& diag);
// Inverse of the Wall matrix, checked to be even, integral, with cokernel Z_{modulus}.
IntegerMatrix k_from_wall(std::int64_t n, std::int64_t modulus);
std::int64_t choose_c_for_family(const PrimeFamilySpec& spec);
IntegerMatrix direct_EF_k(Family family, unsigned r);

}  // namespace anyon

#endif
