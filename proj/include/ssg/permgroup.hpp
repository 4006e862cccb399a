#pragma once

#include <gmpxx.h>

#include <vector>

#include "ssg/perm.hpp"

namespace ssg {

// A finite permutation group with a stabilizer chain, supporting exact order
// and membership queries.  Deterministic: base points are chosen as the
// smallest moved points, generators are processed in the order given.
class PermGroup {
public:
    PermGroup() = default;
    PermGroup(int points, std::vector<Perm> generators);

    int points() const { return points_; }
    const std::vector<Perm>& generators() const { return gens_; }

    mpz_class order() const;
    bool contains(const Perm& p) const;

    // Elements enumerated as products of transversal representatives
    // (deterministic order).  Throws budget_exceeded past the cap.
    std::vector<Perm> elements(size_t cap = 1u << 16) const;

    bool is_trivial_group() const { return levels_.empty(); }

private:
    struct Level {
        int base = 0;
        std::vector<Perm> gens;
        // orbit[pt] >= 0 iff pt is in the orbit of base; transversal[pt]
        // maps base to pt.
        std::vector<int> orbit_index;
        std::vector<Perm> transversal;
    };

    int points_ = 0;
    std::vector<Perm> gens_;
    std::vector<Level> levels_;

    void rebuild_orbit(Level& lv) const;
    // Returns (residue, stall level); residue is identity iff p is a member.
    std::pair<Perm, size_t> sift(const Perm& p) const;
    void add_generator(const Perm& p, size_t level);
    void close();
};

// Exact normal closure of <seeds> under conjugation by <conjugators>, inside
// the symmetric group on `points` points.  Saturates; exact because the
// ambient group is finite.
PermGroup normal_closure(int points, const std::vector<Perm>& seeds,
                         const std::vector<Perm>& conjugators);

} // namespace ssg
