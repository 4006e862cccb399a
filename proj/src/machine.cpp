#include "ssg/machine.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ssg/errors.hpp"
#include "ssg/interner.hpp"

namespace ssg {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

struct RawState {
    std::string name;
    Perm sigma;
    std::vector<std::string> to;
};

} // namespace

Machine::~Machine() = default;

ElementTable& Machine::table() const {
    std::lock_guard<std::mutex> lock(table_mutex_);
    if (!table_) table_ = std::make_unique<ElementTable>(*this);
    return *table_;
}

std::optional<int> Machine::state_by_name(const std::string& name) const {
    auto it = name_lookup_.find(name);
    if (it == name_lookup_.end()) return std::nullopt;
    return it->second;
}

std::shared_ptr<const Machine> Machine::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open group file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::shared_ptr<const Machine> Machine::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    int d = -1;
    std::vector<RawState> raw;
    std::vector<std::string> gen_names;
    bool saw_generators = false;
    std::optional<BranchDecl> branch;

    auto fail = [&](const std::string& msg) -> void {
        throw parse_error("line " + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = trim(line);
        if (line.empty()) continue;

        std::istringstream ls(line);
        std::string kw;
        ls >> kw;

        if (kw == "alphabet") {
            if (d != -1) fail("duplicate alphabet line");
            if (!(ls >> d)) fail("alphabet expects an integer");
            if (d < 2) fail("alphabet size must be at least 2");
        } else if (kw == "state") {
            if (d == -1) fail("state before alphabet");
            RawState st;
            if (!(ls >> st.name)) fail("state expects a name");
            if (st.name == "1") fail("state name '1' is reserved for the identity");
            if (!valid_name(st.name)) fail("bad state name '" + st.name + "'");
            std::string rest;
            std::getline(ls, rest);
            rest = trim(rest);
            size_t pp = rest.find("perm=(");
            size_t tp = rest.find("to=[");
            if (pp == std::string::npos || tp == std::string::npos)
                fail("state line needs perm=(...) and to=[...]");
            size_t pe = rest.find(')', pp);
            size_t te = rest.find(']', tp);
            if (pe == std::string::npos || te == std::string::npos) fail("unbalanced perm/to brackets");
            {
                std::istringstream ps(rest.substr(pp + 6, pe - pp - 6));
                int x;
                std::vector<int> img;
                while (ps >> x) img.push_back(x);
                st.sigma = Perm(std::move(img));
                if (st.sigma.degree() != d) fail("perm must list " + std::to_string(d) + " images");
                if (!st.sigma.valid()) fail("perm image list is not a bijection");
            }
            {
                std::istringstream ts(rest.substr(tp + 4, te - tp - 4));
                std::string nm;
                while (ts >> nm) st.to.push_back(nm);
                if (static_cast<int>(st.to.size()) != d)
                    fail("to=[...] must list " + std::to_string(d) + " states");
            }
            raw.push_back(std::move(st));
        } else if (kw == "generators") {
            if (saw_generators) fail("duplicate generators line");
            saw_generators = true;
            std::string nm;
            while (ls >> nm) gen_names.push_back(nm);
        } else if (kw == "branch") {
            std::string rest;
            std::getline(ls, rest);
            rest = trim(rest);
            BranchDecl bd;
            size_t mp = rest.find("m=");
            size_t kp = rest.find("K=");
            if (mp == std::string::npos || kp == std::string::npos)
                fail("branch line needs m=<level> and K=<words>");
            bd.level = std::stoi(rest.substr(mp + 2));
            std::string words = trim(rest.substr(kp + 2));
            std::string cur;
            for (char c : words + ",") {
                if (c == ',') {
                    cur = trim(cur);
                    if (!cur.empty()) bd.kgen_words.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            if (bd.level < 0) fail("branch level must be >= 0");
            branch = std::move(bd);
        } else {
            fail("unknown directive '" + kw + "'");
        }
    }

    if (d == -1) throw parse_error("missing alphabet line");
    if (!saw_generators) throw parse_error("missing generators line");

    // Assemble tables with the implicit identity at index 0.
    std::vector<std::string> names{"1"};
    std::vector<Perm> sigma{Perm::identity(d)};
    std::vector<std::vector<int>> trans{std::vector<int>(static_cast<size_t>(d), 0)};
    std::map<std::string, int> index{{"1", 0}};
    for (const auto& st : raw) {
        if (index.count(st.name)) throw parse_error("duplicate state '" + st.name + "'");
        index[st.name] = static_cast<int>(names.size());
        names.push_back(st.name);
        sigma.push_back(st.sigma);
        trans.emplace_back();
    }
    for (size_t i = 0; i < raw.size(); ++i) {
        for (const auto& nm : raw[i].to) {
            auto it = index.find(nm);
            if (it == index.end())
                throw parse_error("state '" + raw[i].name + "' references undeclared state '" + nm + "'");
            trans[i + 1].push_back(it->second);
        }
    }
    std::vector<int> gens;
    for (const auto& nm : gen_names) {
        auto it = index.find(nm);
        if (it == index.end()) throw parse_error("generator '" + nm + "' is not a declared state");
        gens.push_back(it->second);
    }

    return build(d, std::move(names), std::move(sigma), std::move(trans), std::move(gens),
                 std::move(branch));
}

std::shared_ptr<const Machine> Machine::from_tables(int d, std::vector<std::string> names,
                                                    std::vector<Perm> sigma,
                                                    std::vector<std::vector<int>> trans,
                                                    std::vector<int> generators) {
    if (d < 2) throw invalid_input("alphabet size must be at least 2");
    if (names.empty() || names[0] != "1") throw invalid_input("state 0 must be the identity named '1'");
    if (names.size() != sigma.size() || names.size() != trans.size())
        throw invalid_input("table sizes disagree");
    if (!sigma[0].is_identity()) throw invalid_input("identity state must have identity permutation");
    for (int x = 0; x < d; ++x)
        if (trans[0][static_cast<size_t>(x)] != 0) throw invalid_input("identity state must self-loop");
    for (size_t q = 0; q < names.size(); ++q) {
        if (sigma[q].degree() != d || !sigma[q].valid()) throw invalid_input("bad permutation");
        if (static_cast<int>(trans[q].size()) != d) throw invalid_input("bad transition row");
        for (int t : trans[q])
            if (t < 0 || t >= static_cast<int>(names.size())) throw invalid_input("transition out of range");
    }
    return build(d, std::move(names), std::move(sigma), std::move(trans), std::move(generators),
                 std::nullopt);
}

std::shared_ptr<const Machine> Machine::build(int d, std::vector<std::string> names,
                                              std::vector<Perm> sigma,
                                              std::vector<std::vector<int>> trans,
                                              std::vector<int> generators,
                                              std::optional<BranchDecl> branch_decl) {
    const int n = static_cast<int>(names.size());

    // Close under formal inverses: state n-1+q is the inverse of q.
    auto inv_of = [&](int p) { return p == 0 ? 0 : (p < n ? n - 1 + p : p - (n - 1)); };
    const int total = 2 * n - 1;
    std::vector<Perm> fsigma(static_cast<size_t>(total));
    std::vector<std::vector<int>> ftrans(static_cast<size_t>(total));
    for (int q = 0; q < n; ++q) {
        fsigma[static_cast<size_t>(q)] = sigma[static_cast<size_t>(q)];
        ftrans[static_cast<size_t>(q)] = trans[static_cast<size_t>(q)];
    }
    for (int q = 1; q < n; ++q) {
        Perm si = sigma[static_cast<size_t>(q)].inverse();
        std::vector<int> row(static_cast<size_t>(d));
        // (q^-1)@x = (q@(sigma_q^-1 x))^-1
        for (int x = 0; x < d; ++x) row[static_cast<size_t>(x)] = inv_of(trans[static_cast<size_t>(q)][static_cast<size_t>(si(x))]);
        fsigma[static_cast<size_t>(inv_of(q))] = std::move(si);
        ftrans[static_cast<size_t>(inv_of(q))] = std::move(row);
    }

    // Partition refinement: states equal as tree isometries end in one class.
    std::vector<int> cls(static_cast<size_t>(total));
    {
        std::map<Perm, int> by_sigma;
        for (int q = 0; q < total; ++q) {
            auto [it, _] = by_sigma.try_emplace(fsigma[static_cast<size_t>(q)], static_cast<int>(by_sigma.size()));
            cls[static_cast<size_t>(q)] = it->second;
        }
        for (;;) {
            std::map<std::vector<int>, int> next;
            std::vector<int> ncls(static_cast<size_t>(total));
            for (int q = 0; q < total; ++q) {
                std::vector<int> key{cls[static_cast<size_t>(q)]};
                for (int x = 0; x < d; ++x) key.push_back(cls[static_cast<size_t>(ftrans[static_cast<size_t>(q)][static_cast<size_t>(x)])]);
                auto [it, _] = next.try_emplace(std::move(key), static_cast<int>(next.size()));
                ncls[static_cast<size_t>(q)] = it->second;
            }
            bool stable = true;
            for (int q = 0; q < total; ++q)
                if (ncls[static_cast<size_t>(q)] != cls[static_cast<size_t>(q)]) { stable = false; break; }
            cls = std::move(ncls);
            if (stable) break;
        }
    }

    // Renumber classes by smallest member, so originals win representation
    // and the identity class is 0.
    std::vector<int> rep_of_class;
    std::vector<int> renum(static_cast<size_t>(total), -1);
    std::vector<int> state_class(static_cast<size_t>(total));
    {
        std::map<int, int> first_member;
        for (int q = 0; q < total; ++q) first_member.try_emplace(cls[static_cast<size_t>(q)], q);
        std::vector<std::pair<int, int>> order; // (smallest member, class)
        for (auto& [c, q] : first_member) order.emplace_back(q, c);
        std::sort(order.begin(), order.end());
        for (auto& [q, c] : order) {
            renum[static_cast<size_t>(c)] = static_cast<int>(rep_of_class.size());
            rep_of_class.push_back(q);
        }
        for (int q = 0; q < total; ++q) state_class[static_cast<size_t>(q)] = renum[static_cast<size_t>(cls[static_cast<size_t>(q)])];
    }

    auto mach = std::shared_ptr<Machine>(new Machine());
    mach->d_ = d;
    mach->branch_decl_ = std::move(branch_decl);
    const int k = static_cast<int>(rep_of_class.size());
    mach->names_.resize(static_cast<size_t>(k));
    mach->sigma_.resize(static_cast<size_t>(k));
    mach->trans_.resize(static_cast<size_t>(k));
    mach->inv_.resize(static_cast<size_t>(k));
    for (int c = 0; c < k; ++c) {
        int r = rep_of_class[static_cast<size_t>(c)];
        mach->names_[static_cast<size_t>(c)] = r < n ? names[static_cast<size_t>(r)] : names[static_cast<size_t>(r - (n - 1))] + "^-1";
        mach->sigma_[static_cast<size_t>(c)] = fsigma[static_cast<size_t>(r)];
        std::vector<int> row(static_cast<size_t>(d));
        for (int x = 0; x < d; ++x) row[static_cast<size_t>(x)] = state_class[static_cast<size_t>(ftrans[static_cast<size_t>(r)][static_cast<size_t>(x)])];
        mach->trans_[static_cast<size_t>(c)] = std::move(row);
        mach->inv_[static_cast<size_t>(c)] = state_class[static_cast<size_t>(inv_of(r))];
    }

    for (int q = 0; q < n; ++q) mach->name_lookup_.try_emplace(names[static_cast<size_t>(q)], state_class[static_cast<size_t>(q)]);
    for (int c = 0; c < k; ++c) mach->name_lookup_.try_emplace(mach->names_[static_cast<size_t>(c)], c);

    for (int g : generators) {
        int c = state_class[static_cast<size_t>(g)];
        if (c == 0) continue; // generator equal to the identity adds nothing
        if (std::find(mach->gens_.begin(), mach->gens_.end(), c) == mach->gens_.end())
            mach->gens_.push_back(c);
    }
    for (int g : mach->gens_) {
        if (std::find(mach->gen_letters_.begin(), mach->gen_letters_.end(), g) == mach->gen_letters_.end())
            mach->gen_letters_.push_back(g);
        int gi = mach->inv_[static_cast<size_t>(g)];
        if (std::find(mach->gen_letters_.begin(), mach->gen_letters_.end(), gi) == mach->gen_letters_.end())
            mach->gen_letters_.push_back(gi);
    }

    return mach;
}

} // namespace ssg
