#pragma once

#include "nambu/rational.hpp"
#include "nambu/variables.hpp"

#include <map>
#include <optional>
#include <vector>

namespace nambu {

/// Exact multivariate polynomial: sparse map from exponent vectors (one
/// non-negative entry per table variable) to nonzero rational coefficients.
/// Values are immutable in practice — every operation returns a new poly.
class MultiPoly {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rational>;

    explicit MultiPoly(TablePtr table);

    static MultiPoly zero(TablePtr table) { return MultiPoly(std::move(table)); }
    static MultiPoly constant(TablePtr table, const Rational& c);
    static MultiPoly variable(TablePtr table, const std::string& name);
    static MultiPoly variable(TablePtr table, int index);
    static MultiPoly monomial(TablePtr table, Exponents exps, const Rational& c);

    const TablePtr& table() const { return table_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The coefficient of the constant term (0 when absent).
    Rational constant_term() const;
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    int degree_in(int var) const;
    bool depends_on(int var) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly scaled(const Rational& c) const;
    MultiPoly pow(int k) const;
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Formal partial derivative; jet variables are independent symbols.
    MultiPoly partial(int var) const;
    MultiPoly partial(const std::string& name) const;

    /// Total x-derivative on the jet ring: x -> 1, base^(j) -> base^(j+1),
    /// coordinates/times -> 0, extended by the Leibniz rule. Throws
    /// JetOrderError when a needed jet order is not in the table.
    MultiPoly total_x_derivative() const;
    /// k-fold total x-derivative.
    MultiPoly total_x_derivative(int k) const;

    /// Substitutes `value` (same table) for variable `var`.
    MultiPoly substitute(int var, const MultiPoly& value) const;
    /// Evaluates the given variables at rational points, keeping the table.
    MultiPoly bind(const std::map<int, Rational>& values) const;
    /// Exact division by a single variable; throws DomainError when any
    /// term lacks the variable.
    MultiPoly div_exact_var(int var) const;

    /// Full evaluation at a rational point (one value per table variable).
    Rational eval(const std::vector<Rational>& point) const;

    /// Human-readable rendering, canonical term order.
    std::string str() const;

private:
    void add_term(const Exponents& e, const Rational& c);

    TablePtr table_;
    TermMap terms_;
};

MultiPoly operator*(const Rational& c, const MultiPoly& p);

} // namespace nambu
