#pragma once

#include "nambu/laurent.hpp"
#include "nambu/poly.hpp"

#include <random>

namespace testutil {

using namespace nambu;

inline Rational random_rational(std::mt19937_64& rng, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Rational(d(rng));
}

/// Random polynomial with total degree <= max_degree and small integer
/// coefficients, so all identity checks stay exact.
inline MultiPoly random_poly(const TablePtr& table, std::mt19937_64& rng, int max_degree,
                             int max_terms, int coeff_range = 5) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> coef(-coeff_range, coeff_range);
    std::uniform_int_distribution<int> expo(0, max_degree);
    MultiPoly p(table);
    const int n = table->size();
    const int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
        std::vector<int> e(static_cast<size_t>(n), 0);
        int budget = max_degree;
        for (int v = 0; v < n; ++v) {
            const int k = std::min(budget, expo(rng) % (budget + 1));
            e[static_cast<size_t>(v)] = k;
            budget -= k;
        }
        p += MultiPoly::monomial(table, e, Rational(coef(rng)));
    }
    return p;
}

inline bool laurent_eq(const Laurent& a, const Laurent& b) {
    if (a.lo() != b.lo() || a.hi() != b.hi()) return false;
    if (a.coeffs().size() != b.coeffs().size()) return false;
    for (const auto& [k, p] : a.coeffs()) {
        auto it = b.coeffs().find(k);
        if (it == b.coeffs().end() || !(it->second == p)) return false;
    }
    return true;
}

} // namespace testutil
