#include "ssg/checks.hpp"

#include <deque>
#include <set>

#include "ssg/errors.hpp"
#include "ssg/level_quotient.hpp"

namespace ssg {

bool check_level_transitive(const MachinePtr& m, int n, int point_budget) {
    if (n < 0) throw invalid_input("level must be >= 0");
    size_t points = level_point_count(m->alphabet_size(), n, point_budget);
    if (n == 0) return true;

    std::vector<Element> gens;
    for (int g : m->generator_letters()) gens.push_back(Element::letter(m, g));

    Vertex start(static_cast<size_t>(n), 0);
    std::set<Vertex> seen{start};
    std::deque<Vertex> queue{start};
    while (!queue.empty() && seen.size() < points) {
        Vertex v = std::move(queue.front());
        queue.pop_front();
        for (const Element& g : gens) {
            Vertex w = act(g, v);
            if (seen.insert(w).second) queue.push_back(std::move(w));
        }
    }
    return seen.size() == points;
}

RecurrenceReport check_recurrent(const MachinePtr& m, int depth, int search_len, size_t node_budget) {
    if (depth < 1 || search_len < 1) throw invalid_input("depth and search_len must be >= 1");
    RecurrenceReport report;
    const auto& letters = m->generator_letters();

    std::vector<Vertex> vertices;
    {
        std::deque<Vertex> queue{Vertex{}};
        while (!queue.empty()) {
            Vertex v = std::move(queue.front());
            queue.pop_front();
            vertices.push_back(v);
            if (static_cast<int>(v.size()) < depth) {
                for (int x = 0; x < m->alphabet_size(); ++x) {
                    Vertex w = v;
                    w.push_back(static_cast<uint8_t>(x));
                    queue.push_back(std::move(w));
                }
            }
        }
    }

    for (int g : m->generators()) {
        Element ginv = Element::letter(m, g).inverse();
        for (const Vertex& v : vertices) {
            bool found = false;
            // Breadth-first over words h by length.
            std::deque<Word> queue{Word{}};
            while (!queue.empty() && !found) {
                Word h = std::move(queue.front());
                queue.pop_front();
                Element he(m, h);
                if (act(he, v) == v && is_trivial(state_at(he, v) * ginv, node_budget)) {
                    report.witnesses.push_back({g, v, he.word()});
                    found = true;
                    break;
                }
                if (static_cast<int>(h.size()) < search_len) {
                    for (int letter : letters) {
                        Word w = h;
                        w.push_back(letter);
                        queue.push_back(std::move(w));
                    }
                }
            }
            if (!found) {
                report.first_failure = {g, v};
                return report;
            }
        }
    }
    report.certified = true;
    return report;
}

} // namespace ssg
