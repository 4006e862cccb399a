#include "ssg/nucleus.hpp"

#include <algorithm>
#include <set>

#include "ssg/interner.hpp"

namespace ssg {

std::optional<std::vector<Element>> nucleus(const MachinePtr& m, int bound, size_t node_budget) {
    ElementTable& tab = m->table();

    std::vector<int> members{tab.identity_id()};
    auto add = [&](int id) -> bool {
        if (std::find(members.begin(), members.end(), id) != members.end()) return false;
        members.push_back(id);
        return true;
    };
    for (int g : m->generator_letters()) add(tab.intern({g}, node_budget));

    // Fixed point: states of pairwise products all land back in the set.
    std::set<std::pair<int, int>> done;
    for (;;) {
        bool grew = false;
        std::vector<int> snapshot = members;
        for (int a : snapshot) {
            for (int b : snapshot) {
                if (!done.insert({a, b}).second) continue;
                Word w = tab.word_of(a);
                const Word& wb = tab.word_of(b);
                w.insert(w.end(), wb.begin(), wb.end());
                int p = tab.intern(w, node_budget);
                for (int c : tab.children(p, node_budget)) {
                    if (add(c)) {
                        add(tab.inverse(c, node_budget));
                        grew = true;
                    }
                }
                if (static_cast<int>(members.size()) > bound) return std::nullopt;
            }
        }
        if (!grew) break;
    }

    std::vector<Element> out;
    for (int id : members) out.emplace_back(m, tab.word_of(id));
    std::sort(out.begin(), out.end(), [](const Element& x, const Element& y) {
        if (x.length() != y.length()) return x.length() < y.length();
        return x.word() < y.word();
    });
    return out;
}

bool is_state_product_closed(const std::vector<Element>& set, size_t node_budget) {
    if (set.empty()) return false;
    const MachinePtr& m = set.front().machine();
    ElementTable& tab = m->table();

    std::set<int> ids;
    for (const Element& e : set) ids.insert(tab.intern(e.word(), node_budget));
    if (!ids.count(tab.identity_id())) return false;
    for (int id : ids)
        if (!ids.count(tab.inverse(id, node_budget))) return false;
    for (int a : ids) {
        for (int b : ids) {
            Word w = tab.word_of(a);
            const Word& wb = tab.word_of(b);
            w.insert(w.end(), wb.begin(), wb.end());
            int p = tab.intern(w, node_budget);
            for (int c : tab.children(p, node_budget))
                if (!ids.count(c)) return false;
        }
    }
    return true;
}

} // namespace ssg
