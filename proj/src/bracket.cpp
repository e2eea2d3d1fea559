#include "nambu/bracket.hpp"

#include "nambu/detail.hpp"
#include "nambu/errors.hpp"

#include <set>

namespace nambu {

BracketSpace::BracketSpace(TablePtr table, std::vector<std::string> coords)
    : table_(std::move(table)), names_(std::move(coords)) {
    if (names_.empty()) throw DomainError("BracketSpace: empty coordinate list");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!seen.insert(n).second)
            throw DomainError("BracketSpace: repeated coordinate '" + n + "'");
        coord_idx_.push_back(table_->index(n));
    }
}

MultiPoly nambu_bracket(const std::vector<MultiPoly>& fs, const BracketSpace& space) {
    const int n = space.order();
    if (static_cast<int>(fs.size()) != n)
        throw ArityError("nambu_bracket: expected " + std::to_string(n) + " arguments, got " +
                         std::to_string(fs.size()));
    for (const auto& f : fs) require_same_table(space.table(), f.table(), "nambu_bracket");

    std::vector<std::vector<MultiPoly>> jac;
    jac.reserve(static_cast<size_t>(n));
    for (const auto& f : fs) {
        std::vector<MultiPoly> row;
        row.reserve(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) row.push_back(f.partial(space.coordinate_indices()[static_cast<size_t>(j)]));
        jac.push_back(std::move(row));
    }
    return detail::determinant(jac, MultiPoly::zero(space.table()));
}

MultiPoly fundamental_identity_residual(const std::vector<MultiPoly>& fs,
                                        const BracketSpace& space) {
    const int n = space.order();
    if (static_cast<int>(fs.size()) != 2 * n - 1)
        throw ArityError("fundamental_identity_residual: expected " + std::to_string(2 * n - 1) +
                         " arguments, got " + std::to_string(fs.size()));

    auto bracket = [&](const std::vector<MultiPoly>& args) { return nambu_bracket(args, space); };

    // head = (f_1, ..., f_{n-1}), inner slot runs over f_n, ..., f_{2n-1}
    std::vector<MultiPoly> head(fs.begin(), fs.begin() + (n - 1));

    MultiPoly lhs = MultiPoly::zero(space.table());
    for (int k = 0; k < n; ++k) {
        std::vector<MultiPoly> inner = head;
        inner.push_back(fs[static_cast<size_t>(n - 1 + k)]);
        const MultiPoly nested = bracket(inner);

        std::vector<MultiPoly> outer;
        for (int s = 0; s < n; ++s) {
            if (s == k)
                outer.push_back(nested);
            else
                outer.push_back(fs[static_cast<size_t>(n - 1 + s)]);
        }
        lhs += bracket(outer);
    }

    std::vector<MultiPoly> tail(fs.begin() + (n - 1), fs.end());
    std::vector<MultiPoly> rhs_args = head;
    rhs_args.push_back(bracket(tail));
    return lhs - bracket(rhs_args);
}

} // namespace nambu
