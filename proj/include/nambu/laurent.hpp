#pragma once

#include "nambu/poly.hpp"

#include <functional>
#include <limits>
#include <map>

namespace nambu {

/// Finite Laurent expansion in the distinguished variable lambda with
/// MultiPoly coefficients. The window [lo, hi] is a validity statement:
/// coefficients are exact for exponents in [lo, hi], exactly zero above hi,
/// and unknown (truncated away) below lo. lo == kNoTail means there is no
/// truncated tail — the object is exact everywhere.
///
/// Window propagation through arithmetic is computed, never assumed, so a
/// reported coefficient is always the exact coefficient of the untruncated
/// object. Lambda itself is not part of the coefficient variable table.
class Laurent {
public:
    static constexpr int kNoTail = std::numeric_limits<int>::min() / 4;

    Laurent(TablePtr table, int lo, int hi);

    /// Exact zero with no tail.
    static Laurent zero(TablePtr table);
    /// A lambda-free exact object: p * lambda^exp.
    static Laurent from_poly(const MultiPoly& p, int exp = 0);
    static Laurent one(TablePtr table);
    /// lambda^exp with coefficient 1.
    static Laurent lambda_power(TablePtr table, int exp);

    const TablePtr& table() const { return table_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool has_tail() const { return lo_ != kNoTail; }
    const std::map<int, MultiPoly>& coeffs() const { return c_; }

    /// True when every coefficient inside the window vanishes. A tail may
    /// still hide nonzero content below lo — callers decide what that means.
    bool is_zero_on_window() const { return c_.empty(); }

    /// Coefficient at exponent k. Zero above hi; throws WindowError below lo.
    MultiPoly coeff(int k) const;
    void set_coeff(int k, const MultiPoly& p);

    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent operator-() const;
    Laurent scaled(const Rational& c) const;
    /// Multiplication by a lambda-free polynomial (window unchanged).
    Laurent scaled(const MultiPoly& p) const;
    /// k >= 0.
    Laurent pow(int k) const;
    /// Multiplies by lambda^s.
    Laurent shifted(int s) const;

    /// d/d lambda.
    Laurent d_lambda() const;
    /// Applies fn to every coefficient; window unchanged.
    Laurent map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& fn) const;
    /// Coefficientwise formal partial along a table variable.
    Laurent partial(int var) const;
    Laurent partial(const std::string& name) const;
    /// Coefficientwise total x-derivative (jet ring).
    Laurent total_x_derivative() const;

    /// Keeps exactly the lambda-exponents >= 0 (lambda^0 included).
    Laurent project_nonneg() const;

    /// Forgets knowledge below new_lo (shrinks the validity window).
    Laurent truncated_below(int new_lo) const;

    /// Multiplicative inverse; requires an invertible leading term
    /// (nonzero constant coefficient at the top exponent). Exact inputs
    /// other than monomials must be truncated first.
    Laurent inverse() const;

    /// Largest exponent with a stored nonzero coefficient; kNoTail when the
    /// object is identically zero everywhere, lo-1 when it vanishes on the
    /// window but has a tail.
    int support_hi() const;

    std::string str() const;

private:
    void prune();

    TablePtr table_;
    std::map<int, MultiPoly> c_;
    int lo_;
    int hi_;
};

} // namespace nambu
