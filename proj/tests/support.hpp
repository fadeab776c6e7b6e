#pragma once

#include "awcobar/simplicial.hpp"

#include <vector>

namespace awcobar::testing {

/// Every simplex (degenerate or not) of dimension n, by brute force over
/// generators and degeneracy position sets.
inline std::vector<Simplex> all_simplices(const SimplicialSet& K, int n)
{
    std::vector<Simplex> out;
    for (int p = 0; p <= std::min(n, K.top_dimension()); ++p) {
        std::vector<std::vector<int>> sets;
        detail::subsets_of_size(n, n - p, sets);
        for (const auto& c : K.cells(p))
            for (const auto& A : sets) out.push_back(degenerate_at(c, A));
    }
    return out;
}

inline long long binom(int n, int k)
{
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace awcobar::testing
