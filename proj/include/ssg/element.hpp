#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ssg/machine.hpp"

namespace ssg {

using Word = std::vector<int>;     // state indices of a machine
using Vertex = std::vector<uint8_t>; // a vertex of the tree: word over the alphabet

// Free reduction plus identity-state deletion.  Cancels adjacent pairs
// q, inv(q); this is sound because inverse states are genuine inverses as
// tree isometries.
Word canonical_word(const Machine& m, const Word& w);

// A group element given as a word over machine states.  Words are kept in
// canonical form; the empty word is the identity.
class Element {
public:
    Element() = default;
    Element(MachinePtr m, Word w);

    static Element identity(MachinePtr m) { return Element(std::move(m), {}); }
    static Element letter(MachinePtr m, int q) { return Element(std::move(m), {q}); }

    // Parses a word over state names with optional integer exponents, e.g.
    // "a^-1*b^-1*a*b" or "abab" or "1".  '*' and whitespace are optional
    // separators; names are matched greedily (longest first).
    static Element parse(MachinePtr m, const std::string& text);

    const MachinePtr& machine() const { return mach_; }
    const Word& word() const { return word_; }
    bool is_identity_word() const { return word_.empty(); }
    int length() const { return static_cast<int>(word_.size()); }

    Element operator*(const Element& rhs) const;
    Element inverse() const;

    std::string str() const;

    friend bool operator==(const Element& a, const Element& b) {
        return a.mach_ == b.mach_ && a.word_ == b.word_;
    }

private:
    MachinePtr mach_;
    Word word_;
};

struct WreathDecomposition {
    Perm root;
    std::vector<Element> children; // one per letter
};

// psi(g): the root permutation together with the states at the children.
WreathDecomposition decompose(const Element& g);

// g@v.  Satisfies g@eps = g and g@(uv) = (g@u)@v.
Element state_at(const Element& g, const Vertex& v);

// The image g(u); preserves length and prefixes.
Vertex act(const Element& g, const Vertex& u);

// The induced permutation of the d^n words of length n, indexed
// lexicographically.
Perm level_perm(const Element& g, int n);

// Portrait truncated to depth n: a permutation label for every vertex of
// depth < n.
struct PortraitTree {
    int depth = 0;
    std::map<Vertex, Perm> labels;

    friend bool operator==(const PortraitTree&, const PortraitTree&) = default;
};

PortraitTree portrait(const Element& g, int n);

// Word-problem outcomes.  A budget overrun throws budget_exceeded.
bool is_trivial(const Element& g, size_t node_budget = 1u << 20);
bool elements_equal(const Element& g, const Element& h, size_t node_budget = 1u << 20);

// Vertex/word helpers shared by the CLI and the JSON formats.  Vertices are
// written as digit strings for d <= 10 ("011"), dot-separated otherwise.
Vertex parse_vertex(const std::string& s, int d);
std::string vertex_to_string(const Vertex& v, int d);

} // namespace ssg
