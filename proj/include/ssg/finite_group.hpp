#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssg/perm.hpp"

namespace ssg {

// A finite group as an explicit multiplication table.  Element 0 is the
// identity.
struct FiniteGroup {
    int size = 1;
    std::vector<std::vector<int>> mul; // mul[i][j] = i * j
    std::vector<int> inv;
    std::vector<std::string> names;

    int multiply(int i, int j) const { return mul[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int inverse(int i) const { return inv[static_cast<size_t>(i)]; }
};

// An element of Q wr X: a tuple of Q-elements and a root permutation.
// Multiplication follows the composition convention of the tree action:
// ((a_x), s) * ((b_x), t) = ((a_{t(x)} b_x), s t).
struct WreathElem {
    std::vector<int> comps;
    Perm root;

    friend bool operator==(const WreathElem&, const WreathElem&) = default;
    friend auto operator<=>(const WreathElem&, const WreathElem&) = default;
};

inline WreathElem wreath_mul(const FiniteGroup& q, const WreathElem& a, const WreathElem& b) {
    WreathElem r;
    r.root = compose(a.root, b.root);
    r.comps.resize(a.comps.size());
    for (size_t x = 0; x < a.comps.size(); ++x)
        r.comps[x] = q.multiply(a.comps[static_cast<size_t>(b.root(static_cast<int>(x)))], b.comps[x]);
    return r;
}

inline WreathElem wreath_identity(int d) {
    WreathElem w;
    w.comps.assign(static_cast<size_t>(d), 0);
    w.root = Perm::identity(d);
    return w;
}

} // namespace ssg
