#ifndef ANYON_SYMMETRY_HPP
#define ANYON_SYMMETRY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anyon/metric_groups.hpp"

namespace anyon {

// An automorphism of (A, q), stored by the images of the canonical generators.
using Automorphism = Isometry;

struct AutGroup {
    std::vector<Automorphism> elements;  // sorted lexicographically by generator images
    std::int64_t order = 0;
    bool abelian = true;
    std::map<std::int64_t, std::int64_t> order_census;  // element order -> count
    std::optional<std::string> structure_name;
};

struct AutSummary {
    std::int64_t order = 0;
    std::optional<std::string> structure_name;
};

AutGroup aut_bruteforce(const MetricGroup& g, std::int64_t budget = 4096);
AutSummary aut_order_closed(const PrimeFamilySpec& spec);

// Column i holds the image of generator i, entries reduced mod the generator orders.
IntegerMatrix automorphism_matrix(const MetricGroup& g, const Automorphism& a);
Automorphism compose(const MetricGroup& g, const Automorphism& outer, const Automorphism& inner);
Automorphism identity_automorphism(const MetricGroup& g);

// Name from the certified catalog matching order, abelianness and element-order
// census, if any.
std::optional<std::string> identify_structure(std::int64_t order, bool abelian,
                                              const std::map<std::int64_t, std::int64_t>& census);

}  // namespace anyon

#endif
