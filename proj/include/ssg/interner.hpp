#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssg/element.hpp"

namespace ssg {

// Interns group elements of one machine: every id stands for one element of
// the group (words equal as isometries share an id).  Children links turn the
// table into the lazily-built automaton of the group's wreath recursion,
// which backs the nucleus computation, portrait-acceptance fixpoints and run
// decoding.
//
// Equality of candidate words is decided by a level-k action signature
// (collisions possible) followed by an exact word-problem check, so interning
// never identifies distinct elements.
class ElementTable {
public:
    explicit ElementTable(const Machine& m);

    int identity_id() const { return 0; }

    // Id of the element represented by `w` (any word; canonicalized here).
    int intern(const Word& w, size_t budget = 1u << 20);

    // Children ids (states at the d letters), computed on demand.
    const std::vector<int>& children(int id, size_t budget = 1u << 20);

    const Perm& root_perm(int id) const;
    const Word& word_of(int id) const;
    int inverse(int id, size_t budget = 1u << 20);

    int size() const { return static_cast<int>(entries_.size()); }

    // Grows the ball of elements of word length <= radius over the generator
    // letters, with children computed, and indexes every element by its
    // decomposition (root perm, children ids).
    void ensure_ball(int radius, size_t element_budget = 200000);
    int ball_radius() const { return ball_radius_; }

    // The unique element with the given decomposition, if it has been seen.
    std::optional<int> find_by_decomposition(const Perm& root, const std::vector<int>& child_ids) const;

    // Same, but grows the ball until found or budgets run out.
    std::optional<int> find_lift(const Perm& root, const std::vector<int>& child_ids,
                                 int max_radius = 12, size_t element_budget = 200000);

private:
    struct Entry {
        Word word;                // canonical representative
        Perm root;                // sigma of the element
        std::string signature;    // level-k action, for bucketing
        std::vector<int> child_ids; // empty until computed
        int inv_id = -1;
    };

    const Machine& m_;
    int sig_depth_;
    std::vector<Entry> entries_;
    std::unordered_map<std::string, std::vector<int>> buckets_; // signature -> ids
    std::unordered_map<std::string, int> word_cache_;           // packed word -> id
    std::unordered_map<std::string, int> decomposition_index_;  // packed (root, children) -> id
    int ball_radius_ = -1;
    std::vector<int> ball_frontier_;
    mutable std::recursive_mutex mutex_;

    int intern_locked(const Word& w, size_t budget);
    const std::vector<int>& children_locked(int id, size_t budget);
    std::string signature_of(const Word& w) const;
    static std::string pack_word(const Word& w);
    std::string pack_decomposition(const Perm& root, const std::vector<int>& child_ids) const;
    void index_decomposition(int id);
};

} // namespace ssg
