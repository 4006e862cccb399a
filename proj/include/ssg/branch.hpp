#pragma once

#include <map>
#include <optional>

#include "ssg/element.hpp"
#include "ssg/finite_group.hpp"
#include "ssg/level_quotient.hpp"

namespace ssg {

// Branch structure of a self-similar group: the finite quotient Q = G_m / K_m
// (K_m the normal closure of the K-generators at level m), the subgroup
// Q1 <= Q wr X generated by the wreath images of the machine generators, and
// the epimorphisms pi: G -> Q and phi: Q1 -> Q.
//
// phi is obtained by closing the generator pairs (wreath image, pi-image)
// under multiplication; if the closure is not the graph of a function the
// construction fails, which certifies psi^-1(K^X) is not contained in K at
// this level.
class BranchStructure {
public:
    static BranchStructure build(const MachinePtr& m, const std::vector<Element>& kgens, int level,
                                 int point_budget = 4096, size_t coset_budget = 65536);

    // Builds from the machine's declared `branch` block.
    static BranchStructure from_declared(const MachinePtr& m, int point_budget = 4096,
                                         size_t coset_budget = 65536);

    const MachinePtr& machine() const { return mach_; }
    int level() const { return level_; }
    const std::vector<Element>& kgens() const { return kgens_; }

    const FiniteGroup& Q() const { return q_; }
    int q_order() const { return q_.size; }

    const std::vector<WreathElem>& Q1() const { return q1_; }
    int phi(int q1_index) const { return phi_[static_cast<size_t>(q1_index)]; }
    std::optional<int> q1_index(const WreathElem& w) const;

    // pi(g): the coset of g's level-m permutation.
    int pi(const Element& g) const;
    // The wreath image ((pi(g@x))_x, sigma_g).
    WreathElem wreath_image(const Element& g) const;

    // A group word mapping onto the given Q1 element (recorded during the
    // generation of Q1).
    Element q1_witness(int q1_index) const;

private:
    MachinePtr mach_;
    int level_ = 0;
    std::vector<Element> kgens_;
    FiniteGroup q_;
    std::vector<Perm> coset_reps_;              // level-m permutation per Q element
    std::vector<Perm> k_level_elements_;        // all elements of K_m
    std::map<Perm, int> coset_of_key_;          // lex-least coset member -> Q index
    std::vector<WreathElem> q1_;
    std::map<WreathElem, int> q1_index_;
    std::vector<int> phi_;
    std::vector<Word> q1_witness_;

    Perm coset_key(const Perm& p) const;
};

struct BranchTest {
    std::string kgen;
    int letter = 0;
    int level = 0;
    bool member = false;
};

struct BranchCertificate {
    bool certified = false;
    std::vector<BranchTest> tests; // all executed tests, in order
};

// Tests, for every K-generator k, letter x and level l <= max_level, that the
// isometry acting as k on the subtree xX* and trivially elsewhere lies in the
// level-l image of the normal closure of K.  A failure refutes K^X <= psi(K);
// success is a finite-level certificate.
BranchCertificate certify_regular_branching(const BranchStructure& b, int max_level,
                                            int point_budget = 4096);

// The level-l permutation of the isometry acting as k on the subtree below
// letter x and trivially elsewhere.
Perm embedded_level_perm(const Element& k, int letter, int level);

} // namespace ssg
