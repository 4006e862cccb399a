#include "ssg/tree_automaton.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

#include "ssg/errors.hpp"
#include "ssg/interner.hpp"

namespace ssg {

namespace {

std::string pack_perm(const Perm& p) {
    std::string s;
    for (int x : p.img) s.append(reinterpret_cast<const char*>(&x), sizeof(int));
    return s;
}

const std::vector<int>& empty_vec() {
    static const std::vector<int> e;
    return e;
}

} // namespace

size_t tree_vertex_count(int d, int k) {
    size_t total = 0, level = 1;
    for (int i = 0; i < k; ++i) {
        total += level;
        level *= static_cast<size_t>(d);
    }
    return total;
}

bool TreeAutomaton::is_residual(int q) const {
    return std::binary_search(residual.begin(), residual.end(), q);
}

void TreeAutomaton::finalize() {
    const int n = state_count();
    auto check_state = [&](int q) {
        if (q < 0 || q >= n) throw invalid_input("automaton references an undeclared state");
    };
    for (int q : initial) check_state(q);
    for (int q : residual) check_state(q);
    for (const auto& t : transitions) {
        check_state(t.from);
        if (t.label.degree() != d || !t.label.valid()) throw invalid_input("bad transition label");
        if (static_cast<int>(t.to.size()) != d) throw invalid_input("bad transition arity");
        for (int q : t.to) check_state(q);
    }
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    std::sort(residual.begin(), residual.end());
    residual.erase(std::unique(residual.begin(), residual.end()), residual.end());

    if (acceptance == Acceptance::SubsetsOf) {
        if (residual.empty()) throw invalid_input("SubsetsOf acceptance needs residual states");
        for (const auto& t : transitions) {
            if (!is_residual(t.from)) continue;
            for (int q : t.to)
                if (!is_residual(q))
                    throw invalid_input("residual states must be transition-closed");
        }
    }

    by_state_label_.clear();
    by_state_.clear();
    for (int i = 0; i < static_cast<int>(transitions.size()); ++i) {
        by_state_label_[{transitions[static_cast<size_t>(i)].from, pack_perm(transitions[static_cast<size_t>(i)].label)}].push_back(i);
        by_state_[transitions[static_cast<size_t>(i)].from].push_back(i);
    }
}

const std::vector<int>& TreeAutomaton::transitions_from(int q, const Perm& label) const {
    auto it = by_state_label_.find({q, pack_perm(label)});
    return it == by_state_label_.end() ? empty_vec() : it->second;
}

const std::vector<int>& TreeAutomaton::transitions_from(int q) const {
    auto it = by_state_.find(q);
    return it == by_state_.end() ? empty_vec() : it->second;
}

std::vector<bool> TreeAutomaton::live_states() const {
    const int n = state_count();
    std::vector<bool> live(static_cast<size_t>(n), false);
    if (acceptance == Acceptance::AllSubsets) {
        live.assign(static_cast<size_t>(n), true);
        for (bool changed = true; changed;) {
            changed = false;
            for (int q = 0; q < n; ++q) {
                if (!live[static_cast<size_t>(q)]) continue;
                bool ok = false;
                for (int ti : transitions_from(q)) {
                    const auto& t = transitions[static_cast<size_t>(ti)];
                    bool all = true;
                    for (int c : t.to) all = all && live[static_cast<size_t>(c)];
                    if (all) { ok = true; break; }
                }
                if (!ok) { live[static_cast<size_t>(q)] = false; changed = true; }
            }
        }
        return live;
    }

    // SubsetsOf: safety inside N first, then reachability of the safe core.
    std::vector<bool> nsafe(static_cast<size_t>(n), false);
    for (int q : residual) nsafe[static_cast<size_t>(q)] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (int q : residual) {
            if (!nsafe[static_cast<size_t>(q)]) continue;
            bool ok = false;
            for (int ti : transitions_from(q)) {
                const auto& t = transitions[static_cast<size_t>(ti)];
                bool all = true;
                for (int c : t.to) all = all && nsafe[static_cast<size_t>(c)];
                if (all) { ok = true; break; }
            }
            if (!ok) { nsafe[static_cast<size_t>(q)] = false; changed = true; }
        }
    }
    live = nsafe;
    for (bool changed = true; changed;) {
        changed = false;
        for (int q = 0; q < n; ++q) {
            if (live[static_cast<size_t>(q)]) continue;
            for (int ti : transitions_from(q)) {
                const auto& t = transitions[static_cast<size_t>(ti)];
                bool all = true;
                for (int c : t.to) all = all && live[static_cast<size_t>(c)];
                if (all) { live[static_cast<size_t>(q)] = true; changed = true; break; }
            }
        }
    }
    return live;
}

TreeAutomaton build_closed_automaton(const BranchStructure& b) {
    TreeAutomaton a;
    a.d = b.machine()->alphabet_size();
    a.state_names = b.Q().names;
    a.acceptance = Acceptance::AllSubsets;
    a.mach = b.machine();
    for (int q = 0; q < b.q_order(); ++q) a.initial.push_back(q);
    for (size_t i = 0; i < b.Q1().size(); ++i) {
        const WreathElem& w = b.Q1()[i];
        a.transitions.push_back({b.phi(static_cast<int>(i)), w.root, w.comps});
    }
    a.finalize();
    return a;
}

TreeAutomaton build_contracting_automaton(const BranchStructure& b,
                                          const std::vector<Element>& nucleus) {
    TreeAutomaton a = build_closed_automaton(b);
    a.acceptance = Acceptance::SubsetsOf;

    const MachinePtr& m = b.machine();
    const int d = a.d;
    ElementTable& tab = m->table();

    const int base = static_cast<int>(a.state_names.size());
    std::unordered_map<int, int> state_of_elem; // interned id -> automaton state
    std::vector<int> elem_ids;
    for (const Element& nel : nucleus) {
        if (nel.machine() != m) throw invalid_input("nucleus element over a different machine");
        int id = tab.intern(nel.word());
        if (state_of_elem.count(id)) continue;
        int st = base + static_cast<int>(elem_ids.size());
        state_of_elem[id] = st;
        elem_ids.push_back(id);
        a.state_names.push_back("n[" + nel.str() + "]");
        a.state_elements[st] = nel.word();
        a.residual.push_back(st);
        a.initial.push_back(st);
    }

    // One transition per nucleus element; its children must stay in the
    // nucleus, otherwise the given set is not state-closed.
    for (int id : elem_ids) {
        TreeTransition t;
        t.from = state_of_elem.at(id);
        t.label = tab.root_perm(id);
        for (int c : tab.children(id)) {
            auto it = state_of_elem.find(c);
            if (it == state_of_elem.end()) throw invalid_input("nucleus is not state-closed");
            t.to.push_back(it->second);
        }
        a.transitions.push_back(std::move(t));
    }

    // Bridge transitions: every tuple of nucleus elements that lifts to a Q1
    // element gives the transition (phi(q1), label, tuple).  Enumerating the
    // finitely many tuples replaces the quantification over all group
    // elements with nucleus-valued states.
    std::vector<Perm> labels = all_perms(d);
    std::vector<size_t> idx(static_cast<size_t>(d), 0);
    const size_t nn = elem_ids.size();
    for (;;) {
        WreathElem w;
        w.comps.resize(static_cast<size_t>(d));
        std::vector<int> to(static_cast<size_t>(d));
        for (int x = 0; x < d; ++x) {
            int id = elem_ids[idx[static_cast<size_t>(x)]];
            w.comps[static_cast<size_t>(x)] = b.pi(Element(m, tab.word_of(id)));
            to[static_cast<size_t>(x)] = state_of_elem.at(id);
        }
        for (const Perm& label : labels) {
            w.root = label;
            if (auto q1 = b.q1_index(w)) {
                TreeTransition t;
                t.from = b.phi(*q1);
                t.label = label;
                t.to = to;
                a.transitions.push_back(std::move(t));
            }
        }
        int x = 0;
        for (; x < d; ++x) {
            if (++idx[static_cast<size_t>(x)] < nn) break;
            idx[static_cast<size_t>(x)] = 0;
        }
        if (x == d) break;
    }

    a.finalize();
    return a;
}

namespace {

struct ProductFixpoint {
    const TreeAutomaton& a;
    ElementTable& tab;
    size_t budget;

    std::unordered_map<int64_t, int> pair_id;
    std::vector<std::pair<int, int>> pairs; // (element id, state)
    std::vector<std::vector<int>> matching; // transition indices per pair

    int64_t key(int e, int q) const { return static_cast<int64_t>(e) * a.state_count() + q; }

    int add(int e, int q, std::deque<int>* queue) {
        int64_t k = key(e, q);
        auto it = pair_id.find(k);
        if (it != pair_id.end()) return it->second;
        int id = static_cast<int>(pairs.size());
        if (pairs.size() >= budget) throw budget_exceeded("portrait-acceptance product exceeded budget");
        pair_id[k] = id;
        pairs.push_back({e, q});
        matching.push_back({});
        if (queue) queue->push_back(id);
        return id;
    }

    // Explores every pair reachable from the given roots.
    void explore(const std::vector<int>& root_pairs) {
        std::deque<int> queue(root_pairs.begin(), root_pairs.end());
        while (!queue.empty()) {
            int p = queue.front();
            queue.pop_front();
            auto [e, q] = pairs[static_cast<size_t>(p)];
            const auto& ts = a.transitions_from(q, tab.root_perm(e));
            matching[static_cast<size_t>(p)] = ts;
            const auto& kids = tab.children(e, budget);
            for (int ti : ts) {
                const auto& t = a.transitions[static_cast<size_t>(ti)];
                for (int x = 0; x < a.d; ++x) add(kids[static_cast<size_t>(x)], t.to[static_cast<size_t>(x)], &queue);
            }
        }
    }

    int child_pair(int p, int ti, int x) const {
        auto [e, q] = pairs[static_cast<size_t>(p)];
        (void)q;
        const auto& t = a.transitions[static_cast<size_t>(ti)];
        return pair_id.at(static_cast<int64_t>(tab.children(e).at(static_cast<size_t>(x))) * a.state_count() +
                          t.to[static_cast<size_t>(x)]);
    }
};

constexpr int kInfRank = std::numeric_limits<int>::max();

// Ranks: 0 on the safe core, otherwise 1 + min over transitions of the max
// child rank.  Infinite rank = not accepted.
std::vector<int> subsets_of_ranks(ProductFixpoint& fix) {
    const TreeAutomaton& a = fix.a;
    std::vector<int> rank(fix.pairs.size(), kInfRank);

    // Safe core: pairs whose state sits in N and which can run forever
    // inside N along the element's portrait.
    std::vector<bool> nsafe(fix.pairs.size(), false);
    for (size_t p = 0; p < fix.pairs.size(); ++p) nsafe[p] = a.is_residual(fix.pairs[p].second);
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t p = 0; p < fix.pairs.size(); ++p) {
            if (!nsafe[p]) continue;
            bool ok = false;
            for (int ti : fix.matching[p]) {
                bool all = true;
                for (int x = 0; x < a.d && all; ++x) all = nsafe[static_cast<size_t>(fix.child_pair(static_cast<int>(p), ti, x))];
                if (all) { ok = true; break; }
            }
            if (!ok) { nsafe[p] = false; changed = true; }
        }
    }
    for (size_t p = 0; p < fix.pairs.size(); ++p)
        if (nsafe[p]) rank[p] = 0;

    for (bool changed = true; changed;) {
        changed = false;
        for (size_t p = 0; p < fix.pairs.size(); ++p) {
            if (rank[p] == 0) continue;
            int best = kInfRank;
            for (int ti : fix.matching[p]) {
                int worst = 0;
                for (int x = 0; x < a.d && worst != kInfRank; ++x)
                    worst = std::max(worst, rank[static_cast<size_t>(fix.child_pair(static_cast<int>(p), ti, x))]);
                if (worst != kInfRank) best = std::min(best, worst + 1);
            }
            if (best < rank[p]) { rank[p] = best; changed = true; }
        }
    }
    return rank;
}

std::vector<bool> all_subsets_alive(ProductFixpoint& fix) {
    const TreeAutomaton& a = fix.a;
    std::vector<bool> alive(fix.pairs.size(), true);
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t p = 0; p < fix.pairs.size(); ++p) {
            if (!alive[p]) continue;
            bool ok = false;
            for (int ti : fix.matching[p]) {
                bool all = true;
                for (int x = 0; x < a.d && all; ++x) all = alive[static_cast<size_t>(fix.child_pair(static_cast<int>(p), ti, x))];
                if (all) { ok = true; break; }
            }
            if (!ok) { alive[p] = false; changed = true; }
        }
    }
    return alive;
}

// Expands a run slice of the given depth by following per-pair transition
// choices (breadth-first vertex order).
RunSlice expand_witness(ProductFixpoint& fix, int root_pair, int depth,
                        const std::vector<int>& choice) {
    const TreeAutomaton& a = fix.a;
    RunSlice slice;
    slice.depth = depth;
    std::vector<int> vertex_pairs{root_pair};
    slice.states.push_back(fix.pairs[static_cast<size_t>(root_pair)].second);
    size_t internal = tree_vertex_count(a.d, depth);
    for (size_t i = 0; i < internal; ++i) {
        int p = vertex_pairs[i];
        int ti = choice[static_cast<size_t>(p)];
        slice.transitions.push_back(ti);
        for (int x = 0; x < a.d; ++x) {
            int cp = fix.child_pair(p, ti, x);
            vertex_pairs.push_back(cp);
            slice.states.push_back(fix.pairs[static_cast<size_t>(cp)].second);
        }
    }
    return slice;
}

} // namespace

AcceptReport accepts_portrait(const TreeAutomaton& a, const Element& g, bool want_witness,
                              int witness_depth, size_t budget) {
    if (g.machine()->alphabet_size() != a.d) throw invalid_input("alphabet size mismatch");
    ElementTable& tab = g.machine()->table();
    int root = tab.intern(g.word(), budget);

    ProductFixpoint fix{a, tab, budget, {}, {}, {}};
    std::vector<int> root_pairs;
    for (int qi : a.initial) root_pairs.push_back(fix.add(root, qi, nullptr));
    fix.explore(root_pairs);

    AcceptReport out;
    if (a.acceptance == Acceptance::AllSubsets) {
        auto alive = all_subsets_alive(fix);
        int chosen = -1;
        for (int rp : root_pairs)
            if (alive[static_cast<size_t>(rp)]) { chosen = rp; break; }
        out.accepted = chosen >= 0;
        if (out.accepted && want_witness) {
            std::vector<int> choice(fix.pairs.size(), -1);
            for (size_t p = 0; p < fix.pairs.size(); ++p) {
                if (!alive[p]) continue;
                for (int ti : fix.matching[p]) {
                    bool all = true;
                    for (int x = 0; x < a.d && all; ++x) all = alive[static_cast<size_t>(fix.child_pair(static_cast<int>(p), ti, x))];
                    if (all) { choice[p] = ti; break; }
                }
            }
            out.witness = expand_witness(fix, chosen, witness_depth, choice);
        }
        return out;
    }

    auto rank = subsets_of_ranks(fix);
    int chosen = -1;
    for (int rp : root_pairs)
        if (rank[static_cast<size_t>(rp)] != kInfRank && (chosen < 0 || rank[static_cast<size_t>(rp)] < rank[static_cast<size_t>(chosen)]))
            chosen = rp;
    out.accepted = chosen >= 0;
    if (out.accepted && want_witness) {
        std::vector<int> choice(fix.pairs.size(), -1);
        for (size_t p = 0; p < fix.pairs.size(); ++p) {
            if (rank[p] == kInfRank) continue;
            int best_ti = -1, best_worst = kInfRank;
            for (int ti : fix.matching[p]) {
                int worst = 0;
                for (int x = 0; x < a.d && worst != kInfRank; ++x)
                    worst = std::max(worst, rank[static_cast<size_t>(fix.child_pair(static_cast<int>(p), ti, x))]);
                if (rank[p] == 0) {
                    // stay inside the safe core while padding the slice
                    bool all_safe = worst == 0;
                    if (all_safe) { best_ti = ti; break; }
                } else if (worst != kInfRank && worst + 1 == rank[p] && worst < best_worst) {
                    best_ti = ti;
                    best_worst = worst;
                }
            }
            choice[p] = best_ti;
        }
        out.witness = expand_witness(fix, chosen, rank[static_cast<size_t>(chosen)], choice);
    }
    return out;
}

namespace {

bool accepts_from_state(const TreeAutomaton& a, const Element& g, int q, size_t budget) {
    TreeAutomaton copy = a;
    copy.initial = {q};
    copy.finalize();
    return accepts_portrait(copy, g, false, 0, budget).accepted;
}

} // namespace

bool verify_run_slice(const TreeAutomaton& a, const Element& g, const RunSlice& slice,
                      size_t budget) {
    if (slice.depth < 0) return false;
    if (slice.states.size() != tree_vertex_count(a.d, slice.depth + 1)) return false;
    if (slice.transitions.size() != tree_vertex_count(a.d, slice.depth)) return false;
    if (slice.states.empty()) return false;
    if (!std::binary_search(a.initial.begin(), a.initial.end(), slice.states[0])) return false;

    PortraitTree p = portrait(g, slice.depth);

    // Vertices in breadth-first order, depth by depth.
    std::vector<Vertex> verts{Vertex{}};
    for (size_t i = 0; i < slice.transitions.size(); ++i) {
        for (int x = 0; x < a.d; ++x) {
            Vertex v = verts[i];
            v.push_back(static_cast<uint8_t>(x));
            verts.push_back(std::move(v));
        }
    }

    for (size_t i = 0; i < slice.transitions.size(); ++i) {
        int ti = slice.transitions[i];
        if (ti < 0 || ti >= static_cast<int>(a.transitions.size())) return false;
        const auto& t = a.transitions[static_cast<size_t>(ti)];
        if (t.from != slice.states[i]) return false;
        if (!(t.label == p.labels.at(verts[i]))) return false;
        size_t child_base = i * static_cast<size_t>(a.d) + 1;
        for (int x = 0; x < a.d; ++x)
            if (slice.states[child_base + static_cast<size_t>(x)] != t.to[static_cast<size_t>(x)]) return false;
    }

    // Frontier: for the nucleus shape, states must name the frontier
    // elements exactly; for safety automata, acceptance must continue from
    // each frontier pair.
    size_t frontier_begin = tree_vertex_count(a.d, slice.depth);
    for (size_t i = frontier_begin; i < slice.states.size(); ++i) {
        int q = slice.states[i];
        Element sub = state_at(g, verts[i]);
        if (a.acceptance == Acceptance::SubsetsOf) {
            if (!a.is_residual(q)) return false;
            auto it = a.state_elements.find(q);
            if (it == a.state_elements.end() || !a.mach) return false;
            if (!elements_equal(sub, Element(a.mach, it->second), budget)) return false;
        } else {
            if (!accepts_from_state(a, sub, q, budget)) return false;
        }
    }
    return true;
}

Element decode_run(const TreeAutomaton& a, const RunSlice& slice, size_t budget) {
    if (a.acceptance != Acceptance::SubsetsOf || !a.mach)
        throw invalid_input("run decoding needs a nucleus-shaped automaton");
    if (slice.states.size() != tree_vertex_count(a.d, slice.depth + 1) ||
        slice.transitions.size() != tree_vertex_count(a.d, slice.depth))
        throw invalid_input("malformed run slice");

    ElementTable& tab = a.mach->table();
    std::vector<int> elem(slice.states.size(), -1);

    // Frontier vertices carry nucleus elements.
    for (size_t i = tree_vertex_count(a.d, slice.depth); i < slice.states.size(); ++i) {
        auto it = a.state_elements.find(slice.states[i]);
        if (it == a.state_elements.end())
            throw invalid_input("run slice frontier is not inside the nucleus");
        elem[i] = tab.intern(it->second, budget);
    }

    // Internal vertices bottom-up: each is the unique element with the
    // transition's label and the children's elements as states.
    for (size_t i = slice.transitions.size(); i-- > 0;) {
        int ti = slice.transitions[i];
        if (ti < 0 || ti >= static_cast<int>(a.transitions.size()))
            throw invalid_input("run slice references a missing transition");
        const auto& t = a.transitions[static_cast<size_t>(ti)];
        if (t.from != slice.states[i]) throw invalid_input("run slice states mismatch");
        std::vector<int> kids(static_cast<size_t>(a.d));
        for (int x = 0; x < a.d; ++x) kids[static_cast<size_t>(x)] = elem[i * static_cast<size_t>(a.d) + 1 + static_cast<size_t>(x)];
        auto lift = tab.find_lift(t.label, kids, 14, budget);
        if (!lift)
            throw internal_inconsistency("no group element realizes a run vertex (lift not found)");
        elem[i] = *lift;
    }
    return Element(a.mach, tab.word_of(elem[0]));
}

CountReport count_depth_n(const TreeAutomaton& a, int n, size_t budget) {
    if (n < 0) throw invalid_input("depth must be >= 0");
    CountReport report;
    report.depth = n;

    auto live = a.live_states();

    // Run-count recursion from each state.
    std::vector<mpz_class> r(static_cast<size_t>(a.state_count()));
    for (int q = 0; q < a.state_count(); ++q) r[static_cast<size_t>(q)] = live[static_cast<size_t>(q)] ? 1 : 0;
    std::vector<std::vector<mpz_class>> run_levels{r};
    for (int k = 1; k <= n; ++k) {
        std::vector<mpz_class> next(static_cast<size_t>(a.state_count()), 0);
        for (const auto& t : a.transitions) {
            mpz_class prod = 1;
            for (int c : t.to) prod *= run_levels.back()[static_cast<size_t>(c)];
            next[static_cast<size_t>(t.from)] += prod;
        }
        run_levels.push_back(std::move(next));
    }
    for (int qi : a.initial) report.run_count += run_levels.back()[static_cast<size_t>(qi)];

    // Exact count: distinct value trees annotated with the set of states
    // admitting them.  Trees are interned per depth; the state set is exact,
    // so distinct trees are counted once no matter how many runs they have.
    using Mask = std::vector<uint64_t>;
    const size_t words = (static_cast<size_t>(a.state_count()) + 63) / 64;
    auto mask_any = [&](const Mask& m, const std::vector<int>& states) {
        for (int q : states)
            if (m[static_cast<size_t>(q) / 64] & (1ull << (q % 64))) return true;
        return false;
    };

    std::map<Perm, std::vector<int>> by_label;
    for (int i = 0; i < static_cast<int>(a.transitions.size()); ++i)
        by_label[a.transitions[static_cast<size_t>(i)].label].push_back(i);

    Mask live_mask(words, 0);
    for (int q = 0; q < a.state_count(); ++q)
        if (live[static_cast<size_t>(q)]) live_mask[static_cast<size_t>(q) / 64] |= 1ull << (q % 64);

    std::vector<Mask> classes{live_mask};
    bool exact_ok = true;
    std::vector<mpz_class> exact_counts; // per depth
    {
        mpz_class c0 = mask_any(live_mask, a.initial) ? 1 : 0;
        exact_counts.push_back(c0);
    }
    for (int k = 1; k <= n && exact_ok; ++k) {
        size_t combos = by_label.size();
        for (int x = 0; x < a.d; ++x) {
            combos *= classes.size();
            if (combos > budget) { exact_ok = false; break; }
        }
        if (!exact_ok) break;

        std::map<std::vector<int>, int> tree_ids; // (label idx, child classes) -> id
        std::vector<Mask> next;
        std::vector<size_t> idx(static_cast<size_t>(a.d), 0);
        for (;;) {
            int label_ix = 0;
            for (const auto& [label, ts] : by_label) {
                Mask m(words, 0);
                bool nonempty = false;
                for (int ti : ts) {
                    const auto& t = a.transitions[static_cast<size_t>(ti)];
                    bool all = true;
                    for (int x = 0; x < a.d && all; ++x) {
                        int c = t.to[static_cast<size_t>(x)];
                        all = (classes[idx[static_cast<size_t>(x)]][static_cast<size_t>(c) / 64] >> (c % 64)) & 1;
                    }
                    if (all) {
                        m[static_cast<size_t>(t.from) / 64] |= 1ull << (t.from % 64);
                        nonempty = true;
                    }
                }
                if (nonempty) {
                    std::vector<int> key{label_ix};
                    for (int x = 0; x < a.d; ++x) key.push_back(static_cast<int>(idx[static_cast<size_t>(x)]));
                    next.push_back(std::move(m));
                    tree_ids.emplace(std::move(key), static_cast<int>(next.size()) - 1);
                }
                ++label_ix;
            }
            int x = 0;
            for (; x < a.d; ++x) {
                if (++idx[static_cast<size_t>(x)] < classes.size()) break;
                idx[static_cast<size_t>(x)] = 0;
            }
            if (x == a.d) break;
        }
        classes = std::move(next);
        mpz_class cnt = 0;
        for (const Mask& m : classes)
            if (mask_any(m, a.initial)) cnt += 1;
        exact_counts.push_back(cnt);
    }

    if (exact_ok) {
        report.exact = exact_counts.back();
        report.unambiguous = true;
        for (int k = 0; k <= n; ++k) {
            mpz_class runs = 0;
            for (int qi : a.initial) runs += run_levels[static_cast<size_t>(k)][static_cast<size_t>(qi)];
            if (runs != exact_counts[static_cast<size_t>(k)]) { report.unambiguous = false; break; }
        }
    }
    return report;
}

SubgroupReport decide_subgroup(const std::vector<Element>& gens, const TreeAutomaton& h,
                               bool want_witnesses, size_t budget) {
    SubgroupReport report;
    report.included = true;
    for (const Element& g : gens) {
        auto res = accepts_portrait(h, g, want_witnesses, 3, budget);
        report.generator_verdicts.push_back({g.str(), res.accepted});
        if (res.accepted && res.witness) report.witnesses[g.str()] = *res.witness;
        if (!res.accepted) report.included = false;
    }
    return report;
}

} // namespace ssg
