#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssg/branch.hpp"
#include "ssg/element.hpp"

namespace ssg {

// Acceptance classes with decision procedures.  AllSubsets is the safety
// condition (every locally consistent run accepts); SubsetsOf(N) requires
// every ray's recurring states to lie inside N, which for an N-transition-
// closed automaton means every ray eventually enters N and stays.
enum class Acceptance { AllSubsets, SubsetsOf };

struct TreeTransition {
    int from = 0;
    Perm label;
    std::vector<int> to; // one state per letter

    friend bool operator==(const TreeTransition&, const TreeTransition&) = default;
    friend auto operator<=>(const TreeTransition&, const TreeTransition&) = default;
};

// A nondeterministic Muller automaton over Sym(X)-labelled d-ary trees.
class TreeAutomaton {
public:
    int d = 2;
    std::vector<std::string> state_names;
    std::vector<TreeTransition> transitions; // sorted lexicographically
    std::vector<int> initial;                // sorted
    Acceptance acceptance = Acceptance::AllSubsets;
    std::vector<int> residual; // N, sorted; empty unless SubsetsOf

    // For automata with nucleus states: the group element each N-state
    // stands for.  Needed by run decoding.
    MachinePtr mach;
    std::map<int, Word> state_elements;

    int state_count() const { return static_cast<int>(state_names.size()); }
    bool is_residual(int q) const;

    // Checks internal references and, for SubsetsOf, that N is
    // transition-closed; sorts transitions and initial states.
    void finalize();

    const std::vector<int>& transitions_from(int q, const Perm& label) const;
    const std::vector<int>& transitions_from(int q) const;

    // States from which some accepted continuation exists.
    std::vector<bool> live_states() const;

private:
    std::map<std::pair<int, std::string>, std::vector<int>> by_state_label_;
    std::map<int, std::vector<int>> by_state_;
};

// The quotient automaton of a branch structure: states Q, one transition per
// element of Q1, safety acceptance.  Recognizes the portraits of the closure
// of the group.
TreeAutomaton build_closed_automaton(const BranchStructure& b);

// The extension with nucleus states: states Q + N, the quotient transitions,
// one transition per nucleus element, and bridge transitions from Q into
// N-tuples.  Accepting runs land in N on every ray, so the automaton
// recognizes exactly the portraits of the (discrete) group.
TreeAutomaton build_contracting_automaton(const BranchStructure& b,
                                          const std::vector<Element>& nucleus);

// A finite truncation of a run: states for every vertex of depth <= depth
// (breadth-first order), the chosen transition for every internal vertex.
struct RunSlice {
    int depth = 0;
    std::vector<int> states;      // vertices of depth <= depth, BFS order
    std::vector<int> transitions; // transition index per vertex of depth < depth
};

// Number of vertices of a d-ary tree of depth < k (internal vertices of a
// depth-k slice).
size_t tree_vertex_count(int d, int k);

struct AcceptReport {
    bool accepted = false;
    std::optional<RunSlice> witness;
};

// Decides whether the automaton accepts the portrait of g, by a greatest
// fixpoint (safety) or a safety-then-reachability fixpoint (SubsetsOf) on
// the finite product of g's state closure with the automaton.  The element
// may come from any machine over the same alphabet.
AcceptReport accepts_portrait(const TreeAutomaton& a, const Element& g, bool want_witness = false,
                              int witness_depth = 3, size_t budget = 200000);

// Structural check of the slice against the automaton and the portrait of g.
// For SubsetsOf slices this replays without any new search: the frontier
// states must name exactly the frontier elements of g.
bool verify_run_slice(const TreeAutomaton& a, const Element& g, const RunSlice& slice,
                      size_t budget = 200000);

// Rebuilds the group element a SubsetsOf run slice denotes: frontier states
// name nucleus elements, internal vertices are resolved by decomposition
// lookup (the lift is unique).
Element decode_run(const TreeAutomaton& a, const RunSlice& slice, size_t budget = 200000);

struct CountReport {
    int depth = 0;
    std::optional<mpz_class> exact;  // distinct extendable depth-n value trees
    mpz_class run_count = 0;         // recursion over runs from initial states
    bool unambiguous = false;        // exact == run_count at every checked depth
};

// Counts distinct depth-n value trees extendable to accepted tree words
// (exact, by hashing annotated trees) and the run-count recursion; the
// recursion only counts value trees when the automaton is unambiguous, which
// the report certifies or refutes.
CountReport count_depth_n(const TreeAutomaton& a, int n, size_t budget = 2000000);

struct SubgroupReport {
    bool included = false;
    std::vector<std::pair<std::string, bool>> generator_verdicts;
    std::map<std::string, RunSlice> witnesses; // for accepted generators, when requested
};

// G <= H (H given by its automaton): true iff every generator's portrait is
// accepted.  Exact for contracting automata; decides inclusion in the
// closure for safety automata.
SubgroupReport decide_subgroup(const std::vector<Element>& gens, const TreeAutomaton& h,
                               bool want_witnesses = false, size_t budget = 200000);

} // namespace ssg
