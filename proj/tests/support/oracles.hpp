#pragma once

// Independent brute-force routes used to pin expected values.  Everything
// here works from `act` and plain breadth-first search only, so it shares no
// code path with the stabilizer chains, interner or automata it checks.

#include <deque>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ssg/element.hpp"

namespace oracles {

using namespace ssg;

// All level-n permutations of the generated group, by closure under
// composition.  Exponential; keep n small.
inline std::set<Perm> enumerate_level_group(const MachinePtr& m, int n) {
    std::vector<Perm> gens;
    for (int g : m->generator_letters()) gens.push_back(level_perm(Element::letter(m, g), n));
    size_t points = 1;
    for (int i = 0; i < n; ++i) points *= static_cast<size_t>(m->alphabet_size());
    std::set<Perm> seen{Perm::identity(static_cast<int>(points))};
    std::deque<Perm> queue{Perm::identity(static_cast<int>(points))};
    while (!queue.empty()) {
        Perm p = std::move(queue.front());
        queue.pop_front();
        for (const Perm& g : gens) {
            Perm q = compose(p, g);
            if (seen.insert(q).second) queue.push_back(std::move(q));
        }
    }
    return seen;
}

// Portrait label read off from the action alone: the label at v sends x to
// the letter at position |v| of g(vx).
inline Perm portrait_label_via_act(const Element& g, const Vertex& v) {
    const int d = g.machine()->alphabet_size();
    std::vector<int> img(static_cast<size_t>(d));
    for (int x = 0; x < d; ++x) {
        Vertex vx = v;
        vx.push_back(static_cast<uint8_t>(x));
        img[static_cast<size_t>(x)] = act(g, vx)[v.size()];
    }
    return Perm(std::move(img));
}

// Triviality checked by acting on every word up to the given length.
inline bool acts_trivially_up_to(const Element& g, int max_len) {
    const int d = g.machine()->alphabet_size();
    std::deque<Vertex> queue{Vertex{}};
    while (!queue.empty()) {
        Vertex v = std::move(queue.front());
        queue.pop_front();
        if (act(g, v) != v) return false;
        if (static_cast<int>(v.size()) < max_len) {
            for (int x = 0; x < d; ++x) {
                Vertex w = v;
                w.push_back(static_cast<uint8_t>(x));
                queue.push_back(std::move(w));
            }
        }
    }
    return true;
}

// Orbit of a length-n word under the generated group, via act-BFS.
inline std::set<Vertex> orbit_of(const MachinePtr& m, const Vertex& start) {
    std::vector<Element> gens;
    for (int g : m->generator_letters()) gens.push_back(Element::letter(m, g));
    std::set<Vertex> seen{start};
    std::deque<Vertex> queue{start};
    while (!queue.empty()) {
        Vertex v = std::move(queue.front());
        queue.pop_front();
        for (const Element& g : gens) {
            Vertex w = act(g, v);
            if (seen.insert(w).second) queue.push_back(std::move(w));
        }
    }
    return seen;
}

// Deterministic random words over the generator letters.
inline Element random_word(const MachinePtr& m, int max_len, std::mt19937& rng) {
    const auto& letters = m->generator_letters();
    std::uniform_int_distribution<int> len_dist(0, max_len);
    std::uniform_int_distribution<size_t> letter_dist(0, letters.size() - 1);
    Word w;
    int len = len_dist(rng);
    for (int i = 0; i < len; ++i) w.push_back(letters[letter_dist(rng)]);
    return Element(m, std::move(w));
}

} // namespace oracles
