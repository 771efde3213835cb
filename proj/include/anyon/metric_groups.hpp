#ifndef ANYON_METRIC_GROUPS_HPP
#define ANYON_METRIC_GROUPS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anyon/exact_linalg.hpp"

namespace anyon {

// Coordinates of a group element with respect to the invariant-factor
// generators, each reduced into [0, n_i).
using Element = std::vector<std::int64_t>;

// A finite abelian group A = Z_{n_1} + ... + Z_{n_k} (n_1 | n_2 | ..., all n_i > 1)
// with a quadratic form q: A -> Q/Z.
//
// Values of q and of the associated bilinear form b(x,y) = q(x+y) - q(x) - q(y)
// all lie in (1/L)Z/Z for the level L; they are stored as numerators mod L.
class MetricGroup {
public:
    // The trivial group.
    MetricGroup();

    // Builds the form from arbitrary generators of orders `orders` (entries >= 1),
    // generator values q_gen[i] = q(g_i) and pairings bilinear(i, j) = b(g_i, g_j)
    // for i != j (the diagonal is ignored). The result is re-expressed on the
    // canonical invariant-factor generators. Throws InvalidArgument when the data
    // do not define a quadratic form on the group.
    static MetricGroup from_generators(const std::vector<std::int64_t>& orders,
                                       const std::vector<Rational>& q_gen,
                                       const RationalMatrix& bilinear);

    const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    std::int64_t order() const { return order_; }
    std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }
    std::int64_t level() const { return level_; }

    std::int64_t q_num(const Element& x) const;
    std::int64_t b_num(const Element& x, const Element& y) const;
    Rational q(const Element& x) const { return make_rational(q_num(x), level_); }
    Rational b(const Element& x, const Element& y) const { return make_rational(b_num(x, y), level_); }
    Rational q_generator(std::size_t i) const { return make_rational(q_gen_[i], level_); }
    Rational b_generator(std::size_t i, std::size_t j) const { return make_rational(b_gen_[i * rank() + j], level_); }

    // Mixed-radix enumeration: index 0 is the identity and the last coordinate varies fastest.
    Element element(std::int64_t index) const;
    std::int64_t index(const Element& x) const;
    Element add(const Element& x, const Element& y) const;
    Element negate(const Element& x) const;
    Element scale(std::int64_t k, const Element& x) const;
    Element generator(std::size_t i) const;
    std::int64_t element_order(const Element& x) const;

    // Dense table of q numerators in enumeration order; present when |A| <= 2^16.
    bool has_table() const { return static_cast<bool>(table_); }
    const std::vector<std::int64_t>& q_table() const;

    // Calls f(x, q_num(x)) for every element in enumeration order.
    void for_each(const std::function<void(const Element&, std::int64_t)>& f) const;

    static constexpr std::int64_t kDenseTableLimit = 1 << 16;

private:
    std::vector<std::int64_t> factors_;
    std::int64_t order_ = 1;
    std::int64_t level_ = 1;
    std::vector<std::int64_t> q_gen_;  // numerators over level_
    std::vector<std::int64_t> b_gen_;  // rank x rank, diagonal holds 2 q_gen
    std::shared_ptr<const std::vector<std::int64_t>> table_;
};

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F' };

// One of the eight prime families. `parameter` is m for A_{p^r} and n for
// B_{p^r} with odd p; zero selects the canonical (smallest admissible) value.
struct PrimeFamilySpec {
    Family family = Family::A;
    std::int64_t p = 2;
    unsigned r = 1;
    std::int64_t parameter = 0;

    std::int64_t modulus() const { return ipow64(p, r); }
    std::string to_string() const;
    friend bool operator==(const PrimeFamilySpec&, const PrimeFamilySpec&) = default;
};

// Throws InvalidArgument on a combination outside the classification.
void validate(const PrimeFamilySpec& spec);
// The m (A) or n (B) actually used for odd p: the given one or the smallest admissible.
std::int64_t family_parameter(const PrimeFamilySpec& spec);

MetricGroup build_prime(const PrimeFamilySpec& spec);
MetricGroup direct_sum(const MetricGroup& g1, const MetricGroup& g2);
MetricGroup conjugate(const MetricGroup& g);
bool is_nondegenerate(const MetricGroup& g);

int central_charge_closed(const PrimeFamilySpec& spec);
int central_charge_gauss(const MetricGroup& g, std::int64_t budget = 1'000'000);

// An isometry phi: g1 -> g2 given by generator images: images[i] = phi(e_i).
struct Isometry {
    std::vector<Element> images;
    Element apply(const MetricGroup& target, const Element& x) const;
    friend bool operator==(const Isometry&, const Isometry&) = default;
};

// Enumerates isometries g1 -> g2 in lexicographic order of generator images,
// calling visit for each; enumeration stops early when visit returns false.
void enumerate_isometries(const MetricGroup& g1, const MetricGroup& g2, std::int64_t budget,
                          const std::function<bool(const Isometry&)>& visit);

std::optional<Isometry> is_isomorphic(const MetricGroup& g1, const MetricGroup& g2,
                                      std::int64_t budget = 4096);

Integer gauged_center_fpdim(const PrimeFamilySpec& spec);

// Model spec grammar: factor ('*' factor)*, factor = LETTER '[' N ('^' R)? ']'.
std::vector<PrimeFamilySpec> parse_model_spec(const std::string& text);
std::string to_string(const std::vector<PrimeFamilySpec>& specs);
MetricGroup build_model(const std::vector<PrimeFamilySpec>& specs);

}  // namespace anyon

#endif
