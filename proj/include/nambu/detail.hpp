#pragma once

#include <vector>

namespace nambu::detail {

/// Determinant by cofactor expansion along the first column. Fine for the
/// small (n <= 6) symbolic matrices this library works with.
template <class T>
T determinant(const std::vector<std::vector<T>>& m, const T& zero) {
    const size_t n = m.size();
    if (n == 0) return zero;
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    T acc = zero;
    std::vector<std::vector<T>> minor;
    minor.reserve(n - 1);
    for (size_t r = 0; r < n; ++r) {
        minor.clear();
        for (size_t i = 0; i < n; ++i) {
            if (i == r) continue;
            std::vector<T> row;
            row.reserve(n - 1);
            for (size_t j = 1; j < n; ++j) row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        T term = m[r][0] * determinant(minor, zero);
        if (r % 2 == 0)
            acc = acc + term;
        else
            acc = acc - term;
    }
    return acc;
}

/// Sign of the permutation sorting `idx` ascending: +1 / -1, or 0 when a
/// repeated entry makes the antisymmetric object vanish. Sorts in place.
int sort_sign(std::vector<int>& idx);

/// All strictly increasing k-tuples drawn from {1, ..., n}.
std::vector<std::vector<int>> increasing_tuples(int n, int k);

} // namespace nambu::detail
