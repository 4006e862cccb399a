#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssg/perm.hpp"

namespace ssg {

class ElementTable;

// Branch data declared in a group file: `branch m=<level> K=<words>`.
struct BranchDecl {
    int level = 0;
    std::vector<std::string> kgen_words;
};

// A wreath-recursion presentation of a self-similar group: finitely many
// states, each with an output permutation of the alphabet and one transition
// per letter.  State 0 is always the identity state, named "1".
//
// At load time the state set is closed under formal inverses and then reduced
// by partition refinement, so that states equal as tree isometries share one
// index and every state q has an inverse state inv(q).  Group elements are
// then plain words over state indices.
class Machine : public std::enable_shared_from_this<Machine> {
public:
    // Parses the group-definition text format:
    //   alphabet <d>
    //   state <name> perm=(<image list>) to=[<state per letter>]
    //   ...
    //   generators <name list>
    //   [branch m=<level> K=<comma-separated words>]
    static std::shared_ptr<const Machine> parse(const std::string& text);
    static std::shared_ptr<const Machine> load_file(const std::string& path);

    // Builds a machine directly from tables (used by tests and by callers
    // assembling finitary isometries).  `names[0]` must be "1".
    static std::shared_ptr<const Machine> from_tables(int d,
                                                      std::vector<std::string> names,
                                                      std::vector<Perm> sigma,
                                                      std::vector<std::vector<int>> trans,
                                                      std::vector<int> generators);

    int alphabet_size() const { return d_; }
    int state_count() const { return static_cast<int>(names_.size()); }

    const std::string& state_name(int q) const { return names_[static_cast<size_t>(q)]; }
    const Perm& sigma(int q) const { return sigma_[static_cast<size_t>(q)]; }
    int transition(int q, int letter) const { return trans_[static_cast<size_t>(q)][static_cast<size_t>(letter)]; }
    int inverse_state(int q) const { return inv_[static_cast<size_t>(q)]; }

    // Declared generators (state indices, identity excluded, deduplicated).
    const std::vector<int>& generators() const { return gens_; }
    // Generators closed under inverses; the letter alphabet of group words.
    const std::vector<int>& generator_letters() const { return gen_letters_; }

    std::optional<int> state_by_name(const std::string& name) const;

    const std::optional<BranchDecl>& branch_decl() const { return branch_decl_; }

    // Lazy per-machine caches (word-problem memo, element interner).  Shared
    // between operations; behaves as a write-once cache with deterministic
    // contents.
    ElementTable& table() const;

    ~Machine();

private:
    Machine() = default;

    int d_ = 0;
    std::vector<std::string> names_;
    std::vector<Perm> sigma_;
    std::vector<std::vector<int>> trans_;
    std::vector<int> inv_;
    std::vector<int> gens_;
    std::vector<int> gen_letters_;
    std::optional<BranchDecl> branch_decl_;
    std::unordered_map<std::string, int> name_lookup_; // declared names + quotient names

    mutable std::mutex table_mutex_;
    mutable std::unique_ptr<ElementTable> table_;

    static std::shared_ptr<const Machine> build(int d,
                                                std::vector<std::string> names,
                                                std::vector<Perm> sigma,
                                                std::vector<std::vector<int>> trans,
                                                std::vector<int> generators,
                                                std::optional<BranchDecl> branch_decl);
};

using MachinePtr = std::shared_ptr<const Machine>;

} // namespace ssg
