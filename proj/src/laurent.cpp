#include "nambu/laurent.hpp"

#include "nambu/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nambu {

namespace {

// Saturating add where either operand may be the -infinity sentinel.
int lo_add(int a, int b) {
    if (a == Laurent::kNoTail || b == Laurent::kNoTail) return Laurent::kNoTail;
    return a + b;
}

} // namespace

Laurent::Laurent(TablePtr table, int lo, int hi) : table_(std::move(table)), lo_(lo), hi_(hi) {
    if (!table_) throw DomainError("Laurent: null variable table");
    if (lo_ != kNoTail && lo_ > hi_) throw WindowError("Laurent: empty window");
}

Laurent Laurent::zero(TablePtr table) {
    return Laurent(std::move(table), kNoTail, 0);
}

Laurent Laurent::from_poly(const MultiPoly& p, int exp) {
    Laurent r(p.table(), kNoTail, exp);
    if (!p.is_zero()) r.c_.emplace(exp, p);
    return r;
}

Laurent Laurent::one(TablePtr table) {
    return from_poly(MultiPoly::constant(std::move(table), Rational(1)), 0);
}

Laurent Laurent::lambda_power(TablePtr table, int exp) {
    return from_poly(MultiPoly::constant(std::move(table), Rational(1)), exp);
}

void Laurent::prune() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero() || (lo_ != kNoTail && it->first < lo_) || it->first > hi_)
            it = c_.erase(it);
        else
            ++it;
    }
}

MultiPoly Laurent::coeff(int k) const {
    if (k > hi_) return MultiPoly::zero(table_);
    if (lo_ != kNoTail && k < lo_)
        throw WindowError("Laurent::coeff: exponent " + std::to_string(k) +
                          " below validity window (lo = " + std::to_string(lo_) + ")");
    auto it = c_.find(k);
    return it == c_.end() ? MultiPoly::zero(table_) : it->second;
}

void Laurent::set_coeff(int k, const MultiPoly& p) {
    require_same_table(table_, p.table(), "Laurent::set_coeff");
    if (k > hi_ || (lo_ != kNoTail && k < lo_))
        throw WindowError("Laurent::set_coeff: exponent outside window");
    if (p.is_zero())
        c_.erase(k);
    else
        c_.insert_or_assign(k, p);
}

int Laurent::support_hi() const {
    if (!c_.empty()) return c_.rbegin()->first;
    return lo_ == kNoTail ? kNoTail : lo_ - 1;
}

Laurent Laurent::operator+(const Laurent& o) const {
    require_same_table(table_, o.table_, "laurent add");
    Laurent r(table_, std::max(lo_, o.lo_), std::max(hi_, o.hi_));
    r.c_ = c_;
    for (const auto& [k, p] : o.c_) {
        auto it = r.c_.find(k);
        if (it == r.c_.end())
            r.c_.emplace(k, p);
        else
            it->second += p;
    }
    r.prune();
    return r;
}

Laurent Laurent::operator-() const {
    Laurent r(table_, lo_, hi_);
    for (const auto& [k, p] : c_) r.c_.emplace(k, -p);
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
    return *this + (-o);
}

Laurent Laurent::operator*(const Laurent& o) const {
    require_same_table(table_, o.table_, "laurent mul");
    const int sa = support_hi();
    const int sb = o.support_hi();
    // identically-zero factor: result is the exact zero
    if (sa == kNoTail || sb == kNoTail) return zero(table_);

    // Unknown-tail contributions reach up to (lo-1) + support of the other
    // side; the result is exact strictly above all of them.
    int lo = kNoTail;
    if (lo_ != kNoTail) lo = std::max(lo, lo_add(lo_ - 1, sb) + 1);
    if (o.lo_ != kNoTail) lo = std::max(lo, lo_add(o.lo_ - 1, sa) + 1);
    int hi = sa + sb;
    // lo > hi means the product is known-zero on [lo, inf)
    if (lo != kNoTail && lo > hi) hi = lo;

    Laurent r(table_, lo, hi);
    for (const auto& [ka, pa] : c_) {
        for (const auto& [kb, pb] : o.c_) {
            const int k = ka + kb;
            if (k > hi || (lo != kNoTail && k < lo)) continue;
            MultiPoly prod = pa * pb;
            auto it = r.c_.find(k);
            if (it == r.c_.end())
                r.c_.emplace(k, std::move(prod));
            else
                it->second += prod;
        }
    }
    r.prune();
    return r;
}

Laurent Laurent::scaled(const Rational& c) const {
    Laurent r(table_, lo_, hi_);
    if (c == 0) return r;
    for (const auto& [k, p] : c_) r.c_.emplace(k, p.scaled(c));
    return r;
}

Laurent Laurent::scaled(const MultiPoly& p) const {
    require_same_table(table_, p.table(), "laurent scaled");
    Laurent r(table_, lo_, hi_);
    if (p.is_zero()) return r;
    for (const auto& [k, q] : c_) r.c_.emplace(k, q * p);
    r.prune();
    return r;
}

Laurent Laurent::pow(int k) const {
    if (k < 0) throw DomainError("laurent pow: negative exponent");
    Laurent acc = one(table_);
    for (int i = 0; i < k; ++i) acc = acc * *this;
    return acc;
}

Laurent Laurent::shifted(int s) const {
    Laurent r(table_, lo_add(lo_, s), hi_ + s);
    for (const auto& [k, p] : c_) r.c_.emplace(k + s, p);
    return r;
}

Laurent Laurent::d_lambda() const {
    Laurent r(table_, lo_ == kNoTail ? kNoTail : lo_ - 1, hi_ - 1);
    for (const auto& [k, p] : c_) {
        if (k == 0) continue;
        r.c_.emplace(k - 1, p.scaled(Rational(k)));
    }
    r.prune();
    return r;
}

Laurent Laurent::map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& fn) const {
    Laurent r(table_, lo_, hi_);
    for (const auto& [k, p] : c_) {
        MultiPoly q = fn(p);
        if (!q.is_zero()) r.c_.emplace(k, std::move(q));
    }
    return r;
}

Laurent Laurent::partial(int var) const {
    return map_coeffs([var](const MultiPoly& p) { return p.partial(var); });
}

Laurent Laurent::partial(const std::string& name) const {
    return partial(table_->index(name));
}

Laurent Laurent::total_x_derivative() const {
    return map_coeffs([](const MultiPoly& p) { return p.total_x_derivative(); });
}

Laurent Laurent::project_nonneg() const {
    if (lo_ == kNoTail || lo_ <= 0) {
        // everything below lambda^0 is known (or known-zero): projection exact
        Laurent r(table_, kNoTail, std::max(hi_, 0));
        for (const auto& [k, p] : c_)
            if (k >= 0) r.c_.emplace(k, p);
        return r;
    }
    // window starts above 0: the dropped part was already unknown
    Laurent r(table_, lo_, hi_);
    r.c_ = c_;
    return r;
}

Laurent Laurent::truncated_below(int new_lo) const {
    if (new_lo <= lo_) return *this;
    Laurent r(table_, new_lo, std::max(hi_, new_lo));
    for (const auto& [k, p] : c_)
        if (k >= new_lo) r.c_.emplace(k, p);
    return r;
}

Laurent Laurent::inverse() const {
    const int d = support_hi();
    if (d == kNoTail) throw DomainError("laurent inverse: zero object");
    const MultiPoly lead = coeff(d);
    if (!lead.is_constant())
        throw DomainError("laurent inverse: leading coefficient must be constant");
    const Rational c = lead.constant_term();
    // a = c*lambda^d * (1 + R), R strictly below lambda^0
    Laurent ratio = shifted(-d).scaled(Rational(1) / c);
    Laurent rem = ratio - one(table_);
    const int rs = rem.support_hi();
    if (rs != kNoTail && rs >= 0)
        throw DomainError("laurent inverse: non-unit remainder");
    if (rs != kNoTail && !rem.has_tail())
        throw DomainError("laurent inverse: inverse of an exact series is an infinite "
                          "object; apply truncated_below() first");
    // geometric series; terms whose support drops below the window stop mattering
    Laurent acc = one(table_);
    Laurent term = one(table_);
    while (true) {
        term = term * (-rem);
        if (term.support_hi() == kNoTail) break;
        if (term.support_hi() < rem.lo()) break;
        acc = acc + term;
    }
    return acc.shifted(-d).scaled(Rational(1) / c);
}

std::string Laurent::str() const {
    std::ostringstream os;
    if (c_.empty()) os << "0";
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.str() << ")";
        if (it->first != 0) os << "*L^" << it->first;
    }
    os << "  [window " << (lo_ == kNoTail ? std::string("-inf") : std::to_string(lo_)) << ".."
       << hi_ << "]";
    return os.str();
}

} // namespace nambu
