#pragma once

#include <string>

#include "ssg/machine.hpp"

namespace fixtures {

inline std::string path(const std::string& name) {
    return std::string(SSG_FIXTURE_DIR) + "/" + name;
}

inline ssg::MachinePtr grigorchuk() { return ssg::Machine::load_file(path("grigorchuk.grp")); }
inline ssg::MachinePtr adding() { return ssg::Machine::load_file(path("adding.grp")); }
inline ssg::MachinePtr gupta_sidki() { return ssg::Machine::load_file(path("gupta_sidki.grp")); }
inline ssg::MachinePtr identity_machine() { return ssg::Machine::load_file(path("identity.grp")); }
inline ssg::MachinePtr full6() { return ssg::Machine::load_file(path("full6.grp")); }

// The finitary isometry swapping the two subtrees below the given binary
// vertex and nothing else, as a one-generator machine.
inline ssg::MachinePtr single_swap_machine(const std::string& vertex) {
    using namespace ssg;
    const int depth = static_cast<int>(vertex.size());
    std::vector<std::string> names{"1"};
    std::vector<Perm> sigma{Perm::identity(2)};
    std::vector<std::vector<int>> trans{{0, 0}};
    for (int i = 0; i <= depth; ++i) {
        names.push_back("s" + std::to_string(i));
        sigma.push_back(i == depth ? Perm({1, 0}) : Perm::identity(2));
        trans.push_back({0, 0});
    }
    for (int i = 0; i < depth; ++i) trans[static_cast<size_t>(1 + i)][static_cast<size_t>(vertex[static_cast<size_t>(i)] - '0')] = 2 + i;
    return Machine::from_tables(2, names, sigma, trans, {1});
}

} // namespace fixtures
