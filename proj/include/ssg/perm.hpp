#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ssg/errors.hpp"

namespace ssg {

// A permutation of {0, ..., n-1}, stored as its image list.
// Composition convention throughout the library: (f*g)(x) = f(g(x)),
// i.e. the right factor acts first.
struct Perm {
    std::vector<int> img;

    Perm() = default;
    explicit Perm(std::vector<int> images) : img(std::move(images)) {}

    static Perm identity(int n) {
        Perm p;
        p.img.resize(n);
        for (int i = 0; i < n; ++i) p.img[i] = i;
        return p;
    }

    int degree() const { return static_cast<int>(img.size()); }

    int operator()(int x) const { return img[static_cast<size_t>(x)]; }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (img[static_cast<size_t>(i)] != i) return false;
        return true;
    }

    Perm inverse() const {
        Perm r;
        r.img.resize(img.size());
        for (int i = 0; i < degree(); ++i) r.img[static_cast<size_t>(img[static_cast<size_t>(i)])] = i;
        return r;
    }

    // Smallest point moved, or -1 for the identity.
    int first_moved() const {
        for (int i = 0; i < degree(); ++i)
            if (img[static_cast<size_t>(i)] != i) return i;
        return -1;
    }

    bool valid() const {
        std::vector<char> seen(img.size(), 0);
        for (int x : img) {
            if (x < 0 || x >= degree() || seen[static_cast<size_t>(x)]) return false;
            seen[static_cast<size_t>(x)] = 1;
        }
        return true;
    }

    friend bool operator==(const Perm& a, const Perm& b) = default;
    friend auto operator<=>(const Perm& a, const Perm& b) = default;
};

// (f*g)(x) = f(g(x)); both must have equal degree.
inline Perm compose(const Perm& f, const Perm& g) {
    Perm r;
    r.img.resize(g.img.size());
    for (size_t x = 0; x < g.img.size(); ++x) r.img[x] = f.img[static_cast<size_t>(g.img[x])];
    return r;
}

inline std::string perm_to_string(const Perm& p) {
    std::string s = "(";
    for (int i = 0; i < p.degree(); ++i) {
        if (i) s += ' ';
        s += std::to_string(p(i));
    }
    s += ')';
    return s;
}

// Enumerate all permutations of {0..n-1} in lexicographic order of image lists.
std::vector<Perm> all_perms(int n);

} // namespace ssg
