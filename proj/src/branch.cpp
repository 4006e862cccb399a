#include "ssg/branch.hpp"

#include <algorithm>
#include <deque>

#include "ssg/errors.hpp"
#include "ssg/permgroup.hpp"

namespace ssg {

Perm BranchStructure::coset_key(const Perm& p) const {
    // Lex-least member of the right coset K_m * p; deterministic across runs.
    Perm best = compose(k_level_elements_.front(), p);
    for (size_t i = 1; i < k_level_elements_.size(); ++i) {
        Perm cand = compose(k_level_elements_[i], p);
        if (cand < best) best = cand;
    }
    return best;
}

BranchStructure BranchStructure::from_declared(const MachinePtr& m, int point_budget,
                                               size_t coset_budget) {
    const auto& decl = m->branch_decl();
    if (!decl) throw invalid_input("group file declares no branch block");
    std::vector<Element> kgens;
    for (const auto& w : decl->kgen_words) kgens.push_back(Element::parse(m, w));
    return build(m, kgens, decl->level, point_budget, coset_budget);
}

BranchStructure BranchStructure::build(const MachinePtr& m, const std::vector<Element>& kgens,
                                       int level, int point_budget, size_t coset_budget) {
    if (level < 0) throw invalid_input("branch level must be >= 0");
    for (const auto& k : kgens)
        if (k.machine() != m) throw invalid_input("K generator over a different machine");

    BranchStructure b;
    b.mach_ = m;
    b.level_ = level;
    b.kgens_ = kgens;

    const int d = m->alphabet_size();
    const int points = static_cast<int>(level_point_count(d, level, point_budget));

    // K_m: exact normal closure of the K-generator images inside the ambient
    // finite symmetric group, conjugating by the machine generators.
    std::vector<Perm> seeds;
    for (const auto& k : kgens) {
        Perm p = level_perm(k, level);
        seeds.push_back(p);
        seeds.push_back(p.inverse());
    }
    std::vector<Perm> conj;
    for (int g : m->generator_letters()) conj.push_back(level_perm(Element::letter(m, g), level));
    PermGroup km = normal_closure(points, seeds, conj);
    b.k_level_elements_ = km.elements(coset_budget);
    std::sort(b.k_level_elements_.begin(), b.k_level_elements_.end());

    // Enumerate the cosets of K_m in G_m breadth-first; representatives are
    // keyed by the lex-least coset member.
    std::vector<Perm> frontier;
    {
        Perm id = Perm::identity(points);
        Perm key = b.coset_key(id);
        b.coset_of_key_[key] = 0;
        b.coset_reps_.push_back(key);
        frontier.push_back(key);
    }
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const Perm& r : frontier) {
            for (const Perm& g : conj) {
                Perm key = b.coset_key(compose(r, g));
                if (!b.coset_of_key_.count(key)) {
                    if (b.coset_reps_.size() >= coset_budget)
                        throw budget_exceeded("quotient index exceeds the coset budget");
                    b.coset_of_key_[key] = static_cast<int>(b.coset_reps_.size());
                    b.coset_reps_.push_back(key);
                    next.push_back(key);
                }
            }
        }
        frontier = std::move(next);
    }

    const int n = static_cast<int>(b.coset_reps_.size());
    b.q_.size = n;
    b.q_.mul.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    b.q_.inv.assign(static_cast<size_t>(n), 0);
    b.q_.names.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        b.q_.names[static_cast<size_t>(i)] = "q" + std::to_string(i);
        for (int j = 0; j < n; ++j) {
            Perm key = b.coset_key(compose(b.coset_reps_[static_cast<size_t>(i)], b.coset_reps_[static_cast<size_t>(j)]));
            b.q_.mul[static_cast<size_t>(i)][static_cast<size_t>(j)] = b.coset_of_key_.at(key);
        }
        b.q_.inv[static_cast<size_t>(i)] = b.coset_of_key_.at(b.coset_key(b.coset_reps_[static_cast<size_t>(i)].inverse()));
    }

    // Q1 = <wreath images of the generators>, with a witness word per element.
    // phi's graph is generated alongside; a conflict means two group words
    // with the same wreath image but different pi-images, i.e. phi is not a
    // function and the promised branching fails at this level.
    std::deque<int> queue;
    b.q1_.push_back(wreath_identity(d));
    b.q1_index_[b.q1_.front()] = 0;
    b.phi_.push_back(0);
    b.q1_witness_.push_back({});
    queue.push_back(0);

    std::vector<std::pair<WreathElem, std::pair<int, int>>> genimgs; // (image, (pi(g), letter g))
    for (int g : m->generator_letters()) {
        Element ge = Element::letter(m, g);
        genimgs.push_back({b.wreath_image(ge), {b.pi(ge), g}});
    }

    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (const auto& [img, tag] : genimgs) {
            WreathElem nxt = wreath_mul(b.q_, b.q1_[static_cast<size_t>(cur)], img);
            int nxt_pi = b.q_.multiply(b.phi_[static_cast<size_t>(cur)], tag.first);
            auto it = b.q1_index_.find(nxt);
            if (it == b.q1_index_.end()) {
                int id = static_cast<int>(b.q1_.size());
                b.q1_.push_back(nxt);
                b.q1_index_[nxt] = id;
                b.phi_.push_back(nxt_pi);
                Word w = b.q1_witness_[static_cast<size_t>(cur)];
                w.push_back(tag.second);
                b.q1_witness_.push_back(std::move(w));
                queue.push_back(id);
            } else if (b.phi_[static_cast<size_t>(it->second)] != nxt_pi) {
                throw invalid_input(
                    "phi not well-defined at level " + std::to_string(level) +
                    ": psi^-1(K^X) is not contained in K (witnessed by wreath image of '" +
                    Element(m, b.q1_witness_[static_cast<size_t>(it->second)]).str() + "' vs '" +
                    (Element(m, b.q1_witness_[static_cast<size_t>(cur)]) * Element::letter(m, tag.second)).str() + "')");
            }
        }
    }

    return b;
}

std::optional<int> BranchStructure::q1_index(const WreathElem& w) const {
    auto it = q1_index_.find(w);
    if (it == q1_index_.end()) return std::nullopt;
    return it->second;
}

int BranchStructure::pi(const Element& g) const {
    if (g.machine() != mach_) throw invalid_input("element over a different machine");
    Perm key = coset_key(level_perm(g, level_));
    auto it = coset_of_key_.find(key);
    if (it == coset_of_key_.end()) throw internal_inconsistency("pi: element outside the level group");
    return it->second;
}

WreathElem BranchStructure::wreath_image(const Element& g) const {
    WreathDecomposition dec = decompose(g);
    WreathElem w;
    w.root = dec.root;
    w.comps.reserve(dec.children.size());
    for (const Element& c : dec.children) w.comps.push_back(pi(c));
    return w;
}

Element BranchStructure::q1_witness(int idx) const {
    return Element(mach_, q1_witness_[static_cast<size_t>(idx)]);
}

Perm embedded_level_perm(const Element& k, int letter, int level) {
    const int d = k.machine()->alphabet_size();
    size_t points = 1;
    for (int i = 0; i < level; ++i) points *= static_cast<size_t>(d);
    size_t block = points / static_cast<size_t>(d);
    Perm inner = level_perm(k, level - 1);
    Perm out = Perm::identity(static_cast<int>(points));
    for (size_t off = 0; off < block; ++off) {
        size_t ix = static_cast<size_t>(letter) * block + off;
        out.img[ix] = letter * static_cast<int>(block) + inner(static_cast<int>(off));
    }
    return out;
}

BranchCertificate certify_regular_branching(const BranchStructure& b, int max_level,
                                            int point_budget) {
    if (max_level < b.level() + 1)
        throw invalid_input("certification level must exceed the branch level");
    const MachinePtr& m = b.machine();
    const int d = m->alphabet_size();
    BranchCertificate cert;

    for (int lvl = 1; lvl <= max_level; ++lvl) {
        int points = static_cast<int>(level_point_count(d, lvl, point_budget));
        std::vector<Perm> seeds;
        for (const auto& k : b.kgens()) {
            Perm p = level_perm(k, lvl);
            seeds.push_back(p);
            seeds.push_back(p.inverse());
        }
        std::vector<Perm> conj;
        for (int g : m->generator_letters()) conj.push_back(level_perm(Element::letter(m, g), lvl));
        PermGroup kl = normal_closure(points, seeds, conj);

        for (const auto& k : b.kgens()) {
            for (int x = 0; x < d; ++x) {
                BranchTest t;
                t.kgen = k.str();
                t.letter = x;
                t.level = lvl;
                t.member = kl.contains(embedded_level_perm(k, x, lvl));
                cert.tests.push_back(t);
                if (!t.member) return cert; // refutation of K^X <= psi(K)
            }
        }
    }
    cert.certified = true;
    return cert;
}

} // namespace ssg
