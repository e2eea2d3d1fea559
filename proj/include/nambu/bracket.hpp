#pragma once

#include "nambu/poly.hpp"

namespace nambu {

/// The Jacobian n-bracket: an ordered list of n distinct coordinates
/// defining {f_1, ..., f_n} = det(df_i/dx_j).
class BracketSpace {
public:
    BracketSpace(TablePtr table, std::vector<std::string> coords);

    const TablePtr& table() const { return table_; }
    int order() const { return static_cast<int>(coord_idx_.size()); }
    const std::vector<int>& coordinate_indices() const { return coord_idx_; }
    const std::vector<std::string>& coordinate_names() const { return names_; }

private:
    TablePtr table_;
    std::vector<std::string> names_;
    std::vector<int> coord_idx_;
};

/// {f_1, ..., f_n} as the exact n x n Jacobian determinant.
MultiPoly nambu_bracket(const std::vector<MultiPoly>& fs, const BracketSpace& space);

/// Left minus right side of the order-n fundamental identity on 2n-1
/// functions. Identically zero for the Jacobian bracket.
MultiPoly fundamental_identity_residual(const std::vector<MultiPoly>& fs,
                                        const BracketSpace& space);

} // namespace nambu
