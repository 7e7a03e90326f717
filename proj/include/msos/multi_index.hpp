#pragma once

#include <numeric>
#include <vector>

namespace msos {

// Exponent vector of a monomial. The entry count is fixed by the owning
// polynomial's variable layout.
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}

inline MultiIndex unit_index(int size, int slot) {
    MultiIndex e(static_cast<std::size_t>(size), 0);
    e[static_cast<std::size_t>(slot)] = 1;
    return e;
}

inline MultiIndex index_sum(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex c(a);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

// Global monomial order: total degree first; ties broken so that the
// monomial with the larger leftmost differing exponent comes first.
// Ascending iteration then reads 1, t1, t2, ..., t1^2, t1*t2, ...
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        int ta = total_degree(a), tb = total_degree(b);
        if (ta != tb) return ta < tb;
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            if (a[i] != b[i]) return a[i] > b[i];
        }
        return a.size() > b.size();
    }
};

// All multi-indices of the given size with total degree <= bound, ascending.
std::vector<MultiIndex> indices_up_to(int size, int bound);

// All multi-indices of the given size with total degree == deg, ascending.
std::vector<MultiIndex> indices_of_degree(int size, int deg);

}  // namespace msos
