#include "ssg/perm.hpp"

#include <algorithm>

namespace ssg {

std::vector<Perm> all_perms(int n) {
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
    std::vector<Perm> out;
    do {
        out.push_back(Perm(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

} // namespace ssg
