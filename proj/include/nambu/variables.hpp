#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace nambu {

enum class VarKind { Coordinate, Time, Jet };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Coordinate;
    std::string base; // jet variables only: family name, e.g. "u2"
    int order = 0;    // jet variables only: x-derivative order
};

/// Ordered, immutable list of named variables. Every MultiPoly exponent
/// vector has one slot per table entry, in table order. Tables are shared
/// by shared_ptr; values built over different (non-equal) tables do not mix.
class VariableTable {
public:
    class Builder;

    int size() const { return static_cast<int>(vars_.size()); }
    const Variable& at(int i) const { return vars_[static_cast<size_t>(i)]; }

    /// Index of `name`, or -1.
    int find(const std::string& name) const;
    /// Index of `name`; throws UnknownVariableError.
    int index(const std::string& name) const;

    /// Index of the jet variable base^(order), or -1.
    int jet(const std::string& base, int order) const;
    /// Largest registered order of a jet family, or -1 if no such family.
    int max_jet_order(const std::string& base) const;
    /// Distinct jet family bases, in first-appearance order.
    std::vector<std::string> jet_bases() const;

    bool operator==(const VariableTable& o) const;

    /// Convenience: a table of plain coordinates.
    static std::shared_ptr<const VariableTable> coordinates(const std::vector<std::string>& names);

private:
    friend class Builder;
    std::vector<Variable> vars_;
    std::map<std::string, int> by_name_;
    std::map<std::pair<std::string, int>, int> jets_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

class VariableTable::Builder {
public:
    Builder& coordinate(const std::string& name);
    Builder& coordinates(const std::vector<std::string>& names);
    Builder& time(const std::string& name);
    /// Registers base^(0) .. base^(max_order) as jet variables.
    Builder& jet_family(const std::string& base, int max_order);
    /// Registers a single jet variable (deserialization path).
    Builder& jet_variable(const std::string& base, int order);
    TablePtr build();

private:
    void add(Variable v);
    VariableTable t_;
};

/// True when a and b are the same table (pointer or content equality).
bool same_table(const TablePtr& a, const TablePtr& b);

/// Throws VariableMismatchError unless same_table(a, b).
void require_same_table(const TablePtr& a, const TablePtr& b, const char* where);

/// Display name of a jet variable: "u2" for order 0, "u2^(3)" for order 3.
std::string jet_name(const std::string& base, int order);

} // namespace nambu
