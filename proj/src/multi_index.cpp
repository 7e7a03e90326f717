#include "msos/multi_index.hpp"

#include <algorithm>

namespace msos {

namespace {

void enumerate(int size, int remaining, MultiIndex& cur, int pos,
               std::vector<MultiIndex>& out, bool exact) {
    if (pos == size) {
        if (!exact || remaining == 0) out.push_back(cur);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur[static_cast<std::size_t>(pos)] = e;
        enumerate(size, remaining - e, cur, pos + 1, out, exact);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
}

}  // namespace

std::vector<MultiIndex> indices_up_to(int size, int bound) {
    std::vector<MultiIndex> out;
    if (bound < 0) return out;
    MultiIndex cur(static_cast<std::size_t>(size), 0);
    enumerate(size, bound, cur, 0, out, false);
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

std::vector<MultiIndex> indices_of_degree(int size, int deg) {
    std::vector<MultiIndex> out;
    if (deg < 0) return out;
    MultiIndex cur(static_cast<std::size_t>(size), 0);
    // enumerate with exact total
    struct Rec {
        int size;
        std::vector<MultiIndex>& out;
        void go(MultiIndex& cur, int pos, int remaining) {
            if (pos == size - 1) {
                cur[static_cast<std::size_t>(pos)] = remaining;
                out.push_back(cur);
                cur[static_cast<std::size_t>(pos)] = 0;
                return;
            }
            for (int e = 0; e <= remaining; ++e) {
                cur[static_cast<std::size_t>(pos)] = e;
                go(cur, pos + 1, remaining - e);
            }
            cur[static_cast<std::size_t>(pos)] = 0;
        }
    } rec{size, out};
    if (size == 0) return out;
    rec.go(cur, 0, deg);
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

}  // namespace msos
