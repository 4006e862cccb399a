#pragma once

#include <optional>
#include <vector>

#include "ssg/element.hpp"

namespace ssg {

// The nucleus candidate: the closure of the inverse-closed generator set
// under states of pairwise products, with coincidences between words detected
// by the word problem.  Succeeds at a fixed point; returns nullopt when the
// candidate set exceeds `bound` (not a proof of non-contraction).
std::optional<std::vector<Element>> nucleus(const MachinePtr& m, int bound,
                                            size_t node_budget = 1u << 20);

// True iff the set contains the identity, is inverse-closed, and contains
// every state of every pairwise product.  This is the fixed-point property
// the nucleus computation certifies; also used by minimality tests.
bool is_state_product_closed(const std::vector<Element>& set, size_t node_budget = 1u << 20);

} // namespace ssg
