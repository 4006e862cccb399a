#include "ssg/level_quotient.hpp"

#include "ssg/errors.hpp"

namespace ssg {

size_t level_point_count(int d, int n, int point_budget) {
    size_t points = 1;
    for (int i = 0; i < n; ++i) {
        points *= static_cast<size_t>(d);
        if (points > static_cast<size_t>(point_budget))
            throw budget_exceeded("level " + std::to_string(n) + " exceeds the point budget");
    }
    return points;
}

LevelQuotient level_quotient(const MachinePtr& m, int n, int point_budget) {
    if (n < 0) throw invalid_input("level must be >= 0");
    LevelQuotient q;
    q.level = n;
    q.points = static_cast<int>(level_point_count(m->alphabet_size(), n, point_budget));
    for (int g : m->generator_letters())
        q.gen_perms.push_back(level_perm(Element::letter(m, g), n));
    q.group = PermGroup(q.points, q.gen_perms);
    return q;
}

} // namespace ssg
