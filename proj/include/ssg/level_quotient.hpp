#pragma once

#include <gmpxx.h>

#include "ssg/element.hpp"
#include "ssg/permgroup.hpp"

namespace ssg {

// The image G_n of the generated group in the symmetric group on the d^n
// words of length n (lexicographic indexing).
struct LevelQuotient {
    int level = 0;
    int points = 1;
    std::vector<Perm> gen_perms; // one per generator letter
    PermGroup group;

    mpz_class order() const { return level == 0 ? mpz_class(1) : group.order(); }
    bool contains(const Perm& p) const { return level == 0 ? p.degree() == 1 : group.contains(p); }
};

LevelQuotient level_quotient(const MachinePtr& m, int n, int point_budget = 4096);

// d^n as size_t, guarded by the budget.
size_t level_point_count(int d, int n, int point_budget);

} // namespace ssg
