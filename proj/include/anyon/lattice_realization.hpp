#ifndef ANYON_LATTICE_REALIZATION_HPP
#define ANYON_LATTICE_REALIZATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anyon/exact_linalg.hpp"
#include "anyon/metric_groups.hpp"

namespace anyon {

// An integral lattice given by its Gram matrix. Lattices produced by gluing
// also remember their basis inside a fixed reference space (ambient_basis rows,
// with ambient_gram the Gram matrix of that space), so that sublattices and
// complements can be computed exactly.
struct Lattice {
    IntegerMatrix gram;
    std::optional<RationalMatrix> ambient_basis;
    IntegerMatrix ambient_gram;

    // Throws InvalidArgument unless gram is square, symmetric and nonsingular.
    static Lattice from_gram(IntegerMatrix gram);

    std::size_t rank() const { return gram.rows(); }
    bool is_even() const;
    bool is_positive_definite() const;
};

struct DiscriminantData {
    std::vector<std::int64_t> invariant_factors;
    // Integer vectors w; the dual vector is gram^{-1} w.
    std::vector<std::vector<Integer>> generator_reps;
    std::vector<Rational> q2_values;  // on generators, in [0, 2)
    RationalMatrix bilinear_values;   // b on generator pairs, in [0, 1)

    std::int64_t order() const;
    // (A, q) with q = q2 / 2 mod 1.
    MetricGroup to_metric_group() const;
};

// Coordinates of the coset of the integer vector w with respect to the
// generators of DiscriminantData (the i-th coordinate is taken mod n_i).
class CosetMap {
public:
    explicit CosetMap(const IntegerMatrix& gram);
    Element operator()(const std::vector<Integer>& w) const;
    const std::vector<std::int64_t>& invariant_factors() const { return factors_; }

private:
    IntegerMatrix rows_;  // nontrivial rows of the left SNF transform
    std::vector<std::int64_t> factors_;
};

DiscriminantData discriminant_form(const IntegerMatrix& gram);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<Check> checks;
    Inertia inertia;
    int target_central_charge = 0;
    std::optional<MetricGroup> discriminant;

    bool passed() const;
    const Check* find(const std::string& name) const;
};

VerificationReport verify_realization(const IntegerMatrix& gram, const MetricGroup& target,
                                      std::int64_t budget = 1'000'000);

Lattice cartan_A(std::size_t n);
Lattice cartan_D(std::size_t n);  // n >= 3
Lattice cartan_E(std::size_t n);  // n in {6, 7, 8}

// The (p'+1)-dimensional lattice for Z_{p^r}, p = 1 mod 4. `s` = +1 gives A, -1 gives B.
struct DoublePrimeResult {
    Lattice lattice;
    std::int64_t auxiliary_prime = 0;
    std::int64_t root = 0;  // t with t^2 = 2 p^r mod p'
};
DoublePrimeResult k_double_prime(std::int64_t p, unsigned r, int s, std::int64_t search_bound = 100'000);

Lattice k_e(unsigned r);  // r even, r >= 2
Lattice k_o(unsigned r);  // r odd, r >= 3

struct GlueGroup {
    RationalMatrix generators;  // rows: dual vectors of base^{+8} in basis coordinates
    Integer order;
};

// Even unimodular overlattice of base^{+8} containing the first summand primitively.
struct SelfDualGluing {
    Lattice lambda;  // ambient coordinates are those of base^{+8}
    GlueGroup glue;
    RationalMatrix embedded_copy;  // rows: first summand basis in ambient coordinates
    std::size_t base_rank = 0;
};

constexpr std::size_t kDefaultGlueRankLimit = 400;

SelfDualGluing glue_selfdual_8(const Lattice& base, std::size_t rank_limit = kDefaultGlueRankLimit);
bool is_totally_isotropic(const GlueGroup& glue, const IntegerMatrix& ambient_gram);

// {x in ambient : x . sub = 0}; sub rows are given in ambient coordinates.
Lattice orthogonal_complement(const Lattice& ambient, const RationalMatrix& sub);
// Complement of the base inside its eight-copy gluing.
Lattice complement_in_gluing(const Lattice& base, std::size_t rank_limit = kDefaultGlueRankLimit);

// Without an input lattice the defaults are (2^r)^perp for E and, for F,
// [[2]] (r = 1), the D_5 Cartan matrix (r = 2), or the C_{2^r} lattice otherwise.
Lattice build_EF_positive(Family family, unsigned r, const std::optional<Lattice>& input = std::nullopt);

struct Realization {
    Lattice lattice;
    std::string route;
};
// Even positive-definite lattice for one prime model.
Realization positive_definite_realization(const PrimeFamilySpec& spec,
                                          std::size_t rank_limit = kDefaultGlueRankLimit);

struct CosetWeight {
    Element coset;
    Rational h;
};
// Minimal conformal weight of every dual coset, ordered by coset coordinates.
std::vector<CosetWeight> coset_minima(const IntegerMatrix& gram, std::int64_t budget = 4096);
Rational extremality_score(const IntegerMatrix& gram, std::int64_t budget = 4096);

}  // namespace anyon

#endif
