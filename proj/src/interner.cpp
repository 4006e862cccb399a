#include "ssg/interner.hpp"

#include <algorithm>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

// Depth of the action signature used for bucketing: deep enough to separate
// most elements cheaply, shallow enough to stay under ~256 points.
int pick_signature_depth(int d) {
    int k = 1;
    long points = d;
    while (points < 48 && points * d <= 256) {
        points *= d;
        ++k;
    }
    return k;
}

} // namespace

ElementTable::ElementTable(const Machine& m) : m_(m), sig_depth_(pick_signature_depth(m.alphabet_size())) {
    Entry id_entry;
    id_entry.word = {};
    id_entry.root = Perm::identity(m.alphabet_size());
    id_entry.signature = signature_of({});
    id_entry.inv_id = 0;
    entries_.push_back(std::move(id_entry));
    buckets_[entries_[0].signature].push_back(0);
    word_cache_[pack_word({})] = 0;
}

std::string ElementTable::pack_word(const Word& w) {
    std::string s;
    s.reserve(w.size() * sizeof(int));
    for (int q : w) s.append(reinterpret_cast<const char*>(&q), sizeof(int));
    return s;
}

std::string ElementTable::signature_of(const Word& w) const {
    const int d = m_.alphabet_size();
    std::string sig;
    Vertex u(static_cast<size_t>(sig_depth_), 0);
    size_t points = 1;
    for (int i = 0; i < sig_depth_; ++i) points *= static_cast<size_t>(d);
    sig.reserve(points * static_cast<size_t>(sig_depth_));
    Element e(m_.shared_from_this(), w);
    for (size_t ix = 0; ix < points; ++ix) {
        size_t rem = ix;
        for (int i = sig_depth_ - 1; i >= 0; --i) {
            u[static_cast<size_t>(i)] = static_cast<uint8_t>(rem % static_cast<size_t>(d));
            rem /= static_cast<size_t>(d);
        }
        Vertex v = act(e, u);
        sig.append(reinterpret_cast<const char*>(v.data()), v.size());
    }
    return sig;
}

int ElementTable::intern(const Word& w, size_t budget) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return intern_locked(w, budget);
}

int ElementTable::intern_locked(const Word& w, size_t budget) {
    Word cw = canonical_word(m_, w);
    std::string key = pack_word(cw);
    if (auto it = word_cache_.find(key); it != word_cache_.end()) return it->second;

    std::string sig = signature_of(cw);
    auto mach = m_.shared_from_this();
    if (auto bit = buckets_.find(sig); bit != buckets_.end()) {
        for (int cand : bit->second) {
            Word test = cw;
            const Word& cword = entries_[static_cast<size_t>(cand)].word;
            for (auto it = cword.rbegin(); it != cword.rend(); ++it) test.push_back(m_.inverse_state(*it));
            if (is_trivial(Element(mach, std::move(test)), budget)) {
                word_cache_[key] = cand;
                return cand;
            }
        }
    }

    Entry e;
    e.word = cw;
    e.root = decompose(Element(mach, cw)).root;
    e.signature = sig;
    int id = static_cast<int>(entries_.size());
    entries_.push_back(std::move(e));
    buckets_[sig].push_back(id);
    word_cache_[key] = id;
    return id;
}

const std::vector<int>& ElementTable::children(int id, size_t budget) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return children_locked(id, budget);
}

const std::vector<int>& ElementTable::children_locked(int id, size_t budget) {
    Entry& e = entries_[static_cast<size_t>(id)];
    if (!e.child_ids.empty() || m_.alphabet_size() == 0) return e.child_ids;
    auto mach = m_.shared_from_this();
    WreathDecomposition dec = decompose(Element(mach, e.word));
    std::vector<int> ids;
    ids.reserve(dec.children.size());
    for (const Element& c : dec.children) ids.push_back(intern_locked(c.word(), budget));
    entries_[static_cast<size_t>(id)].child_ids = std::move(ids);
    index_decomposition(id);
    return entries_[static_cast<size_t>(id)].child_ids;
}

const Perm& ElementTable::root_perm(int id) const {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return entries_[static_cast<size_t>(id)].root;
}

const Word& ElementTable::word_of(int id) const {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return entries_[static_cast<size_t>(id)].word;
}

int ElementTable::inverse(int id, size_t budget) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    Entry& e = entries_[static_cast<size_t>(id)];
    if (e.inv_id >= 0) return e.inv_id;
    Word w;
    for (auto it = e.word.rbegin(); it != e.word.rend(); ++it) w.push_back(m_.inverse_state(*it));
    int inv = intern_locked(w, budget);
    entries_[static_cast<size_t>(id)].inv_id = inv;
    entries_[static_cast<size_t>(inv)].inv_id = id;
    return inv;
}

std::string ElementTable::pack_decomposition(const Perm& root, const std::vector<int>& child_ids) const {
    std::string s;
    for (int x : root.img) s.append(reinterpret_cast<const char*>(&x), sizeof(int));
    for (int c : child_ids) s.append(reinterpret_cast<const char*>(&c), sizeof(int));
    return s;
}

void ElementTable::index_decomposition(int id) {
    const Entry& e = entries_[static_cast<size_t>(id)];
    decomposition_index_.try_emplace(pack_decomposition(e.root, e.child_ids), id);
}

std::optional<int> ElementTable::find_by_decomposition(const Perm& root, const std::vector<int>& child_ids) const {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    auto it = decomposition_index_.find(pack_decomposition(root, child_ids));
    if (it == decomposition_index_.end()) return std::nullopt;
    return it->second;
}

void ElementTable::ensure_ball(int radius, size_t element_budget) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    if (ball_radius_ < 0) {
        children_locked(0, element_budget);
        ball_frontier_ = {0};
        ball_radius_ = 0;
    }
    const auto& letters = m_.generator_letters();
    while (ball_radius_ < radius) {
        std::vector<int> next;
        for (int id : ball_frontier_) {
            Word base = entries_[static_cast<size_t>(id)].word;
            for (int g : letters) {
                Word w = base;
                w.push_back(g);
                size_t before = entries_.size();
                int nid = intern_locked(w, element_budget);
                if (entries_.size() > before) next.push_back(nid);
                if (entries_.size() > element_budget)
                    throw budget_exceeded("element table exceeded ball budget");
            }
        }
        // Computing children indexes each new element's decomposition so
        // lift lookups can find it.
        for (int id : next) children_locked(id, element_budget);
        ball_frontier_ = std::move(next);
        ++ball_radius_;
    }
}

std::optional<int> ElementTable::find_lift(const Perm& root, const std::vector<int>& child_ids,
                                           int max_radius, size_t element_budget) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    for (;;) {
        if (auto hit = find_by_decomposition(root, child_ids)) return hit;
        if (ball_radius_ >= max_radius) return std::nullopt;
        try {
            ensure_ball(ball_radius_ + 1, element_budget);
        } catch (const budget_exceeded&) {
            return std::nullopt;
        }
    }
}

} // namespace ssg
