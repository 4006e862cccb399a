#include "ssg/permgroup.hpp"

#include <algorithm>
#include <deque>

#include "ssg/errors.hpp"

namespace ssg {

PermGroup::PermGroup(int points, std::vector<Perm> generators) : points_(points) {
    for (const Perm& g : generators) {
        if (g.degree() != points) throw invalid_input("generator degree mismatch");
        if (!g.is_identity()) gens_.push_back(g);
    }
    for (const Perm& g : gens_) {
        auto [res, lvl] = sift(g);
        if (!res.is_identity()) add_generator(res, lvl);
    }
    close();
}

void PermGroup::rebuild_orbit(Level& lv) const {
    lv.orbit_index.assign(static_cast<size_t>(points_), -1);
    lv.transversal.assign(static_cast<size_t>(points_), Perm());
    std::deque<int> queue;
    lv.orbit_index[static_cast<size_t>(lv.base)] = 0;
    lv.transversal[static_cast<size_t>(lv.base)] = Perm::identity(points_);
    queue.push_back(lv.base);
    int count = 1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (const Perm& g : lv.gens) {
            int y = g(x);
            if (lv.orbit_index[static_cast<size_t>(y)] < 0) {
                lv.orbit_index[static_cast<size_t>(y)] = count++;
                lv.transversal[static_cast<size_t>(y)] = compose(g, lv.transversal[static_cast<size_t>(x)]);
                queue.push_back(y);
            }
        }
    }
}

std::pair<Perm, size_t> PermGroup::sift(const Perm& p) const {
    Perm h = p;
    for (size_t i = 0; i < levels_.size(); ++i) {
        const Level& lv = levels_[i];
        int image = h(lv.base);
        if (lv.orbit_index[static_cast<size_t>(image)] < 0) return {h, i};
        h = compose(lv.transversal[static_cast<size_t>(image)].inverse(), h);
    }
    return {h, levels_.size()};
}

void PermGroup::add_generator(const Perm& p, size_t level) {
    if (level == levels_.size()) {
        Level lv;
        lv.base = p.first_moved();
        levels_.push_back(std::move(lv));
    }
    // p fixes the bases above `level`, but can still extend their orbits
    // through non-base points, so it joins every level up to its stall.
    for (size_t k = 0; k <= level; ++k) {
        levels_[k].gens.push_back(p);
        rebuild_orbit(levels_[k]);
    }
}

void PermGroup::close() {
    // Process Schreier generators until every one sifts to the identity.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < levels_.size() && !changed; ++i) {
            Level& lv = levels_[i];
            for (int x = 0; x < points_ && !changed; ++x) {
                if (lv.orbit_index[static_cast<size_t>(x)] < 0) continue;
                for (const Perm& s : lv.gens) {
                    int y = s(x);
                    Perm schreier = compose(lv.transversal[static_cast<size_t>(y)].inverse(),
                                            compose(s, lv.transversal[static_cast<size_t>(x)]));
                    if (schreier.is_identity()) continue;
                    Perm h = schreier;
                    size_t j = i + 1;
                    for (; j < levels_.size(); ++j) {
                        int image = h(levels_[j].base);
                        if (levels_[j].orbit_index[static_cast<size_t>(image)] < 0) break;
                        h = compose(levels_[j].transversal[static_cast<size_t>(image)].inverse(), h);
                    }
                    if (!h.is_identity()) {
                        add_generator(h, j);
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
}

mpz_class PermGroup::order() const {
    mpz_class o = 1;
    for (const Level& lv : levels_) {
        int sz = 0;
        for (int v : lv.orbit_index)
            if (v >= 0) ++sz;
        o *= sz;
    }
    return o;
}

bool PermGroup::contains(const Perm& p) const {
    if (p.degree() != points_) return false;
    auto [res, lvl] = sift(p);
    (void)lvl;
    return res.is_identity();
}

std::vector<Perm> PermGroup::elements(size_t cap) const {
    mpz_class o = order();
    if (o > static_cast<unsigned long>(cap)) throw budget_exceeded("group too large to enumerate");
    std::vector<Perm> out{Perm::identity(points_)};
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
        std::vector<Perm> next;
        next.reserve(out.size() * 4);
        for (int x = 0; x < points_; ++x) {
            if (it->orbit_index[static_cast<size_t>(x)] < 0) continue;
            for (const Perm& e : out) next.push_back(compose(it->transversal[static_cast<size_t>(x)], e));
        }
        out = std::move(next);
    }
    return out;
}

PermGroup normal_closure(int points, const std::vector<Perm>& seeds,
                         const std::vector<Perm>& conjugators) {
    std::vector<Perm> gens;
    for (const Perm& s : seeds)
        if (!s.is_identity()) gens.push_back(s);
    PermGroup grp(points, gens);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Perm> add;
        for (const Perm& k : gens) {
            for (const Perm& c : conjugators) {
                Perm conj = compose(c, compose(k, c.inverse()));
                if (!grp.contains(conj)) add.push_back(conj);
            }
        }
        if (!add.empty()) {
            for (Perm& p : add) gens.push_back(std::move(p));
            grp = PermGroup(points, gens);
            grew = true;
        }
    }
    return grp;
}

} // namespace ssg
