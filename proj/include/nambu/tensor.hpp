#pragma once

#include "nambu/poly.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace nambu {

/// Totally antisymmetric order-n tensor on an N-dimensional coordinate
/// space, N = table size. Entries are stored on strictly increasing index
/// tuples (1-based); the rest of the tensor follows by sign.
class NambuTensor {
public:
    using Index = std::vector<int>;

    NambuTensor(TablePtr table, int order);

    /// Basis polyvector e_{i1} ^ ... ^ e_{in} (coefficient 1).
    static NambuTensor basis_wedge(TablePtr table, const Index& idx);
    /// Top-degree Levi-Civita tensor (n = N, entry 1 on (1, ..., N)).
    static NambuTensor levi_civita(TablePtr table);

    int order() const { return order_; }
    int dim() const { return table_->size(); }
    const TablePtr& table() const { return table_; }
    const std::map<Index, MultiPoly>& entries() const { return entries_; }

    /// Sets the entry on a strictly increasing tuple.
    void set_entry(const Index& idx, const MultiPoly& value);
    /// Adds value on an arbitrary tuple (sorted internally with sign).
    void add_entry(const Index& idx, const MultiPoly& value);

    /// Fully antisymmetric entry at an arbitrary tuple (signed; zero on
    /// repeated indices).
    MultiPoly entry(const Index& idx) const;

    bool all_constant() const;
    /// Constant-entry access; only meaningful when all_constant().
    Rational entry_const(const Index& idx) const;

    NambuTensor operator+(const NambuTensor& o) const;
    NambuTensor scaled(const Rational& c) const;
    bool is_zero() const { return entries_.empty(); }

private:
    int order_;
    TablePtr table_;
    std::map<Index, MultiPoly> entries_;
};

/// {f_1, ..., f_n} = eta(df_1, ..., df_n), the full antisymmetric
/// contraction. Agrees with nambu_bracket when eta is Levi-Civita.
MultiPoly tensor_bracket(const NambuTensor& eta, const std::vector<MultiPoly>& fs);

/// Key type of the constraint residual maps: the pair of multi-indices.
using IndexPair = std::pair<NambuTensor::Index, NambuTensor::Index>;

/// The symmetrized quadratic constraint S_ij + P(S)_ij for all index pairs
/// (P swaps i1 and j1). Only nonzero residual entries are returned; an
/// empty map certifies the constraint.
std::map<IndexPair, MultiPoly> algebraic_constraint_residual(const NambuTensor& eta);

/// Short-circuit variant: the first index pair whose residual is nonzero.
std::optional<IndexPair> algebraic_constraint_first_violation(const NambuTensor& eta);

/// Left-minus-right of the differential constraint for all index tuples
/// (i2..in, j1..jn), concatenated as the key. Nonzero entries only.
std::map<NambuTensor::Index, MultiPoly> differential_constraint_residual(const NambuTensor& eta);

/// Classical Plucker criterion for constant tensors: eta is decomposable
/// iff (i_w eta) ^ eta = 0 for every (n-1)-fold basis interior product w.
/// Throws DomainError on non-constant entries. Independent of the
/// S-constraint code path.
bool is_decomposable_oracle(const NambuTensor& eta);

} // namespace nambu
