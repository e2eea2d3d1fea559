#include "nambu/variables.hpp"

#include "nambu/errors.hpp"

#include <algorithm>

namespace nambu {

int VariableTable::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

int VariableTable::index(const std::string& name) const {
    const int i = find(name);
    if (i < 0) throw UnknownVariableError("unknown variable '" + name + "'");
    return i;
}

int VariableTable::jet(const std::string& base, int order) const {
    auto it = jets_.find({base, order});
    return it == jets_.end() ? -1 : it->second;
}

int VariableTable::max_jet_order(const std::string& base) const {
    int best = -1;
    for (const auto& [key, idx] : jets_) {
        (void)idx;
        if (key.first == base) best = std::max(best, key.second);
    }
    return best;
}

std::vector<std::string> VariableTable::jet_bases() const {
    std::vector<std::string> out;
    for (const auto& v : vars_) {
        if (v.kind != VarKind::Jet || v.order != 0) continue;
        out.push_back(v.base);
    }
    return out;
}

bool VariableTable::operator==(const VariableTable& o) const {
    if (vars_.size() != o.vars_.size()) return false;
    for (size_t i = 0; i < vars_.size(); ++i) {
        const Variable& a = vars_[i];
        const Variable& b = o.vars_[i];
        if (a.name != b.name || a.kind != b.kind || a.base != b.base || a.order != b.order)
            return false;
    }
    return true;
}

TablePtr VariableTable::coordinates(const std::vector<std::string>& names) {
    Builder b;
    b.coordinates(names);
    return b.build();
}

void VariableTable::Builder::add(Variable v) {
    if (t_.by_name_.count(v.name))
        throw DomainError("duplicate variable '" + v.name + "'");
    const int idx = static_cast<int>(t_.vars_.size());
    t_.by_name_[v.name] = idx;
    if (v.kind == VarKind::Jet) t_.jets_[{v.base, v.order}] = idx;
    t_.vars_.push_back(std::move(v));
}

VariableTable::Builder& VariableTable::Builder::coordinate(const std::string& name) {
    add(Variable{name, VarKind::Coordinate, "", 0});
    return *this;
}

VariableTable::Builder& VariableTable::Builder::coordinates(const std::vector<std::string>& names) {
    for (const auto& n : names) coordinate(n);
    return *this;
}

VariableTable::Builder& VariableTable::Builder::time(const std::string& name) {
    add(Variable{name, VarKind::Time, "", 0});
    return *this;
}

VariableTable::Builder& VariableTable::Builder::jet_family(const std::string& base, int max_order) {
    if (max_order < 0) throw DomainError("jet_family: max_order < 0");
    for (int j = 0; j <= max_order; ++j)
        add(Variable{jet_name(base, j), VarKind::Jet, base, j});
    return *this;
}

VariableTable::Builder& VariableTable::Builder::jet_variable(const std::string& base, int order) {
    if (order < 0) throw DomainError("jet_variable: order < 0");
    add(Variable{jet_name(base, order), VarKind::Jet, base, order});
    return *this;
}

TablePtr VariableTable::Builder::build() {
    return std::make_shared<VariableTable>(std::move(t_));
}

bool same_table(const TablePtr& a, const TablePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

void require_same_table(const TablePtr& a, const TablePtr& b, const char* where) {
    if (!same_table(a, b))
        throw VariableMismatchError(std::string(where) + ": variable-table mismatch");
}

std::string jet_name(const std::string& base, int order) {
    if (order == 0) return base;
    return base + "^(" + std::to_string(order) + ")";
}

} // namespace nambu
