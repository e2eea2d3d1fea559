#include "nambu/poly.hpp"

#include "nambu/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nambu {

MultiPoly::MultiPoly(TablePtr table) : table_(std::move(table)) {
    if (!table_) throw DomainError("MultiPoly: null variable table");
}

MultiPoly MultiPoly::constant(TablePtr table, const Rational& c) {
    MultiPoly p(std::move(table));
    if (c != 0) p.terms_.emplace(Exponents(static_cast<size_t>(p.table_->size()), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(TablePtr table, const std::string& name) {
    const int idx = table->index(name);
    return variable(std::move(table), idx);
}

MultiPoly MultiPoly::variable(TablePtr table, int index) {
    MultiPoly p(std::move(table));
    if (index < 0 || index >= p.table_->size())
        throw UnknownVariableError("variable index out of range");
    Exponents e(static_cast<size_t>(p.table_->size()), 0);
    e[static_cast<size_t>(index)] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

MultiPoly MultiPoly::monomial(TablePtr table, Exponents exps, const Rational& c) {
    MultiPoly p(std::move(table));
    if (static_cast<int>(exps.size()) != p.table_->size())
        throw DomainError("monomial: exponent vector length mismatch");
    for (int e : exps)
        if (e < 0) throw DomainError("monomial: negative exponent");
    if (c != 0) p.terms_.emplace(std::move(exps), c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational MultiPoly::constant_term() const {
    Exponents zero(static_cast<size_t>(table_->size()), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        (void)c;
        int t = 0;
        for (int x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        (void)c;
        d = std::max(d, e[static_cast<size_t>(var)]);
    }
    return d;
}

bool MultiPoly::depends_on(int var) const {
    for (const auto& [e, c] : terms_) {
        (void)c;
        if (e[static_cast<size_t>(var)] != 0) return true;
    }
    return false;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    require_same_table(table_, o.table_, "poly add");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    require_same_table(table_, o.table_, "poly sub");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    r += o;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    r -= o;
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(table_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    require_same_table(table_, o.table_, "poly mul");
    MultiPoly r(table_);
    const size_t n = static_cast<size_t>(table_->size());
    Exponents key(n, 0);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (size_t i = 0; i < n; ++i) key[i] = ea[i] + eb[i];
            r.add_term(key, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    MultiPoly r(table_);
    if (c == 0) return r;
    for (const auto& [e, coef] : terms_) r.terms_.emplace(e, coef * c);
    return r;
}

MultiPoly operator*(const Rational& c, const MultiPoly& p) {
    return p.scaled(c);
}

MultiPoly MultiPoly::pow(int k) const {
    if (k < 0) throw DomainError("poly pow: negative exponent");
    MultiPoly acc = constant(table_, Rational(1));
    MultiPoly base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (!same_table(table_, o.table_)) return false;
    return terms_ == o.terms_;
}

MultiPoly MultiPoly::partial(int var) const {
    if (var < 0 || var >= table_->size())
        throw UnknownVariableError("partial: variable index out of range");
    MultiPoly r(table_);
    const size_t v = static_cast<size_t>(var);
    for (const auto& [e, c] : terms_) {
        const int k = e[v];
        if (k == 0) continue;
        Exponents d = e;
        d[v] = k - 1;
        r.add_term(d, c * k);
    }
    return r;
}

MultiPoly MultiPoly::partial(const std::string& name) const {
    return partial(table_->index(name));
}

MultiPoly MultiPoly::total_x_derivative() const {
    MultiPoly r(table_);
    const int xi = table_->find("x");
    for (const auto& [e, c] : terms_) {
        for (int v = 0; v < table_->size(); ++v) {
            const int k = e[static_cast<size_t>(v)];
            if (k == 0) continue;
            const Variable& var = table_->at(v);
            if (v == xi) {
                // D_x x = 1
                Exponents d = e;
                d[static_cast<size_t>(v)] = k - 1;
                r.add_term(d, c * k);
            } else if (var.kind == VarKind::Jet) {
                const int next = table_->jet(var.base, var.order + 1);
                if (next < 0)
                    throw JetOrderError("total_x_derivative: jet order " +
                                        std::to_string(var.order + 1) + " of '" + var.base +
                                        "' exceeds the configured maximum");
                Exponents d = e;
                d[static_cast<size_t>(v)] = k - 1;
                d[static_cast<size_t>(next)] += 1;
                r.add_term(d, c * k);
            }
            // coordinates and times are x-independent
        }
    }
    return r;
}

MultiPoly MultiPoly::total_x_derivative(int k) const {
    MultiPoly r = *this;
    for (int i = 0; i < k; ++i) r = r.total_x_derivative();
    return r;
}

MultiPoly MultiPoly::substitute(int var, const MultiPoly& value) const {
    require_same_table(table_, value.table_, "substitute");
    const size_t v = static_cast<size_t>(var);
    // powers of the replacement, computed once
    std::vector<MultiPoly> powers{constant(table_, Rational(1))};
    MultiPoly r(table_);
    for (const auto& [e, c] : terms_) {
        const int k = e[v];
        while (static_cast<int>(powers.size()) <= k)
            powers.push_back(powers.back() * value);
        Exponents base = e;
        base[v] = 0;
        MultiPoly term = monomial(table_, base, c) * powers[static_cast<size_t>(k)];
        r += term;
    }
    return r;
}

MultiPoly MultiPoly::bind(const std::map<int, Rational>& values) const {
    MultiPoly r(table_);
    for (const auto& [e, c] : terms_) {
        Rational coef = c;
        Exponents d = e;
        for (const auto& [var, val] : values) {
            const int k = e[static_cast<size_t>(var)];
            if (k == 0) continue;
            coef *= rational_pow(val, k);
            d[static_cast<size_t>(var)] = 0;
        }
        r.add_term(d, coef);
    }
    return r;
}

MultiPoly MultiPoly::div_exact_var(int var) const {
    MultiPoly r(table_);
    const size_t v = static_cast<size_t>(var);
    for (const auto& [e, c] : terms_) {
        if (e[v] < 1)
            throw DomainError("div_exact_var: term not divisible by '" +
                              table_->at(var).name + "'");
        Exponents d = e;
        d[v] -= 1;
        r.terms_.emplace(std::move(d), c);
    }
    return r;
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != table_->size())
        throw DomainError("eval: point dimension mismatch");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= rational_pow(point[i], e[i]);
        acc += t;
    }
    return acc;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool printed = false;
        if (c != 1 || std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) {
            if (denominator(c) == 1)
                os << numerator(c).str();
            else
                os << "(" << rational_to_string(c) << ")";
            printed = true;
        }
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (printed) os << "*";
            os << table_->at(static_cast<int>(i)).name;
            if (e[i] != 1) os << "^" << e[i];
            printed = true;
        }
    }
    return os.str();
}

} // namespace nambu
