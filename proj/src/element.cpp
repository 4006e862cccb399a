#include "ssg/element.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "ssg/errors.hpp"

namespace ssg {

Word canonical_word(const Machine& m, const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int q : w) {
        if (q == 0) continue;
        if (!out.empty() && out.back() == m.inverse_state(q))
            out.pop_back();
        else
            out.push_back(q);
    }
    return out;
}

Element::Element(MachinePtr m, Word w) : mach_(std::move(m)) {
    if (!mach_) throw invalid_input("element without machine");
    for (int q : w)
        if (q < 0 || q >= mach_->state_count()) throw invalid_input("state index out of range");
    word_ = canonical_word(*mach_, w);
}

Element Element::operator*(const Element& rhs) const {
    if (mach_ != rhs.mach_) throw invalid_input("elements of different machines");
    Word w = word_;
    w.insert(w.end(), rhs.word_.begin(), rhs.word_.end());
    return Element(mach_, std::move(w));
}

Element Element::inverse() const {
    Word w;
    w.reserve(word_.size());
    for (auto it = word_.rbegin(); it != word_.rend(); ++it) w.push_back(mach_->inverse_state(*it));
    return Element(mach_, std::move(w));
}

std::string Element::str() const {
    if (word_.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < word_.size(); ++i) {
        if (i) s += '*';
        s += mach_->state_name(word_[i]);
    }
    return s;
}

Element Element::parse(MachinePtr m, const std::string& text) {
    Word w;
    size_t i = 0;
    const std::string& s = text;
    size_t max_len = 1;
    for (int q = 0; q < m->state_count(); ++q) max_len = std::max(max_len, m->state_name(q).size());

    while (i < s.size()) {
        char c = s[i];
        if (c == ' ' || c == '\t' || c == '*' || c == '.') { ++i; continue; }
        if (c == '1') { ++i; continue; } // identity letter
        int state = -1;
        size_t used = 0;
        for (size_t len = std::min(max_len, s.size() - i); len >= 1; --len) {
            if (auto q = m->state_by_name(s.substr(i, len))) {
                state = *q;
                used = len;
                break;
            }
        }
        if (state < 0) throw parse_error("cannot parse word at '" + s.substr(i) + "'");
        i += used;
        long exp = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            bool neg = false;
            if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = (s[i] == '-'), ++i;
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) throw parse_error("exponent expected after '^'");
            exp = std::stol(s.substr(i, j - i));
            if (neg) exp = -exp;
            i = j;
        }
        int letter = exp >= 0 ? state : m->inverse_state(state);
        for (long k = 0; k < std::labs(exp); ++k) w.push_back(letter);
    }
    return Element(std::move(m), std::move(w));
}

namespace {

// One right-to-left scan yields both the state word w@x and the image
// sigma_w(x):  w = u t implies w@x = u@(sigma_t x) * (t@x).
std::pair<Word, int> state_and_image(const Machine& m, const Word& w, int x) {
    Word r(w.size());
    int y = x;
    for (size_t i = w.size(); i > 0; --i) {
        int t = w[i - 1];
        r[i - 1] = m.transition(t, y);
        y = m.sigma(t)(y);
    }
    return {canonical_word(m, r), y};
}

Perm word_sigma(const Machine& m, const Word& w) {
    Perm p = Perm::identity(m.alphabet_size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) p = compose(m.sigma(*it), p);
    return p;
}

} // namespace

WreathDecomposition decompose(const Element& g) {
    const Machine& m = *g.machine();
    WreathDecomposition dec;
    dec.root = word_sigma(m, g.word());
    dec.children.reserve(static_cast<size_t>(m.alphabet_size()));
    for (int x = 0; x < m.alphabet_size(); ++x)
        dec.children.push_back(Element(g.machine(), state_and_image(m, g.word(), x).first));
    return dec;
}

Element state_at(const Element& g, const Vertex& v) {
    const Machine& m = *g.machine();
    Word w = g.word();
    for (uint8_t x : v) {
        if (x >= m.alphabet_size()) throw invalid_input("vertex letter out of alphabet range");
        w = state_and_image(m, w, x).first;
    }
    return Element(g.machine(), std::move(w));
}

Vertex act(const Element& g, const Vertex& u) {
    const Machine& m = *g.machine();
    Word w = g.word();
    Vertex out;
    out.reserve(u.size());
    for (uint8_t x : u) {
        if (x >= m.alphabet_size()) throw invalid_input("vertex letter out of alphabet range");
        auto [next, y] = state_and_image(m, w, x);
        out.push_back(static_cast<uint8_t>(y));
        w = std::move(next);
    }
    return out;
}

Perm level_perm(const Element& g, int n) {
    const int d = g.machine()->alphabet_size();
    size_t points = 1;
    for (int i = 0; i < n; ++i) points *= static_cast<size_t>(d);
    std::vector<int> img(points);
    Vertex u(static_cast<size_t>(n), 0);
    for (size_t ix = 0; ix < points; ++ix) {
        size_t rem = ix;
        for (int i = n - 1; i >= 0; --i) {
            u[static_cast<size_t>(i)] = static_cast<uint8_t>(rem % static_cast<size_t>(d));
            rem /= static_cast<size_t>(d);
        }
        Vertex v = act(g, u);
        size_t jx = 0;
        for (uint8_t c : v) jx = jx * static_cast<size_t>(d) + c;
        img[ix] = static_cast<int>(jx);
    }
    return Perm(std::move(img));
}

namespace {

void portrait_rec(const Element& g, int depth, Vertex& at, PortraitTree& out) {
    if (depth <= 0) return;
    WreathDecomposition dec = decompose(g);
    out.labels.emplace(at, dec.root);
    for (int x = 0; x < g.machine()->alphabet_size(); ++x) {
        at.push_back(static_cast<uint8_t>(x));
        portrait_rec(dec.children[static_cast<size_t>(x)], depth - 1, at, out);
        at.pop_back();
    }
}

} // namespace

PortraitTree portrait(const Element& g, int n) {
    if (n < 0) throw invalid_input("portrait depth must be >= 0");
    PortraitTree t;
    t.depth = n;
    Vertex at;
    portrait_rec(g, n, at, t);
    return t;
}

bool is_trivial(const Element& g, size_t node_budget) {
    const Machine& m = *g.machine();
    if (g.word().empty()) return true;

    auto pack = [](const Word& w) {
        std::string s;
        s.reserve(w.size() * sizeof(int));
        for (int q : w) s.append(reinterpret_cast<const char*>(&q), sizeof(int));
        return s;
    };

    // Breadth-first closure over the states of g.  State words never grow,
    // so the closure is finite; g is trivial iff every reached state has the
    // identity root permutation.
    std::unordered_set<std::string> visited;
    std::deque<Word> queue;
    queue.push_back(g.word());
    visited.insert(pack(g.word()));
    size_t nodes = 0;
    while (!queue.empty()) {
        Word w = std::move(queue.front());
        queue.pop_front();
        if (++nodes > node_budget) throw budget_exceeded("word-problem closure exceeded node budget");
        if (!word_sigma(m, w).is_identity()) return false;
        for (int x = 0; x < m.alphabet_size(); ++x) {
            Word c = state_and_image(m, w, x).first;
            if (c.empty()) continue;
            std::string key = pack(c);
            if (visited.insert(std::move(key)).second) queue.push_back(std::move(c));
        }
    }
    return true;
}

bool elements_equal(const Element& g, const Element& h, size_t node_budget) {
    return is_trivial(g * h.inverse(), node_budget);
}

Vertex parse_vertex(const std::string& s, int d) {
    Vertex v;
    if (s.empty() || s == "e") return v;
    if (s.find('.') != std::string::npos) {
        std::string cur;
        for (char c : s + ".") {
            if (c == '.') {
                if (cur.empty()) throw parse_error("empty vertex component");
                int x = std::stoi(cur);
                if (x < 0 || x >= d) throw parse_error("vertex letter out of range: " + cur);
                v.push_back(static_cast<uint8_t>(x));
                cur.clear();
            } else {
                cur += c;
            }
        }
        return v;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw parse_error("bad vertex character");
        int x = c - '0';
        if (x >= d) throw parse_error(std::string("vertex letter out of range: ") + c);
        v.push_back(static_cast<uint8_t>(x));
    }
    return v;
}

std::string vertex_to_string(const Vertex& v, int d) {
    std::string s;
    if (d <= 10) {
        for (uint8_t c : v) s += static_cast<char>('0' + c);
    } else {
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(static_cast<int>(v[i]));
        }
    }
    return s;
}

} // namespace ssg
