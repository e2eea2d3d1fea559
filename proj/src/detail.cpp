#include "nambu/detail.hpp"

namespace nambu::detail {

int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    // insertion sort, counting swaps
    for (size_t i = 1; i < idx.size(); ++i) {
        for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

std::vector<std::vector<int>> increasing_tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<size_t>(i)] = i + 1;
    while (true) {
        out.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[static_cast<size_t>(pos)] == n - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++cur[static_cast<size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            cur[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)] + 1;
    }
    return out;
}

} // namespace nambu::detail
