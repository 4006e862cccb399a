#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssg/element.hpp"

namespace ssg {

// True iff the generated group acts transitively on words of length n
// (breadth-first orbit of 0^n).
bool check_level_transitive(const MachinePtr& m, int n, int point_budget = 4096);

struct RecurrenceWitness {
    int generator;  // state index g
    Vertex vertex;  // v
    Word witness;   // h with h(v) = v and h@v = g
};

struct RecurrenceReport {
    bool certified = false;
    std::vector<RecurrenceWitness> witnesses; // one per (generator, vertex) when certified
    std::optional<std::pair<int, Vertex>> first_failure; // (generator, vertex) with no witness found
};

// Searches words h of length <= search_len over the generator letters with
// h(v) = v and h@v = g, for every generator g and vertex v with |v| <= depth.
// A failed bounded search proves nothing, so the negative outcome is
// "unknown" (certified = false).
RecurrenceReport check_recurrent(const MachinePtr& m, int depth, int search_len,
                                 size_t node_budget = 1u << 20);

} // namespace ssg
