#include "nambu/tensor.hpp"

#include "nambu/detail.hpp"
#include "nambu/errors.hpp"

#include <algorithm>

namespace nambu {

namespace {

void check_increasing(const NambuTensor::Index& idx, int order, int dim) {
    if (static_cast<int>(idx.size()) != order)
        throw DomainError("tensor index tuple has wrong length");
    for (size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] < 1 || idx[k] > dim) throw DomainError("tensor index out of range");
        if (k > 0 && idx[k] <= idx[k - 1])
            throw DomainError("tensor index tuple not strictly increasing");
    }
}

// Iterates over all tuples in [1, N]^len, calling fn(tuple).
template <class Fn>
void for_all_tuples(int dim, int len, Fn&& fn) {
    std::vector<int> t(static_cast<size_t>(len), 1);
    while (true) {
        fn(const_cast<const std::vector<int>&>(t));
        int pos = len - 1;
        while (pos >= 0 && t[static_cast<size_t>(pos)] == dim) {
            t[static_cast<size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++t[static_cast<size_t>(pos)];
    }
}

} // namespace

NambuTensor::NambuTensor(TablePtr table, int order) : order_(order), table_(std::move(table)) {
    if (!table_) throw DomainError("NambuTensor: null table");
    if (order_ < 1 || order_ > table_->size())
        throw DomainError("NambuTensor: order must satisfy 1 <= n <= N");
}

NambuTensor NambuTensor::basis_wedge(TablePtr table, const Index& idx) {
    NambuTensor t(table, static_cast<int>(idx.size()));
    t.set_entry(idx, MultiPoly::constant(t.table_, Rational(1)));
    return t;
}

NambuTensor NambuTensor::levi_civita(TablePtr table) {
    const int n = table->size();
    Index all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i + 1;
    return basis_wedge(std::move(table), all);
}

void NambuTensor::set_entry(const Index& idx, const MultiPoly& value) {
    check_increasing(idx, order_, dim());
    require_same_table(table_, value.table(), "NambuTensor::set_entry");
    if (value.is_zero())
        entries_.erase(idx);
    else
        entries_.insert_or_assign(idx, value);
}

void NambuTensor::add_entry(const Index& idx, const MultiPoly& value) {
    Index sorted = idx;
    const int sign = detail::sort_sign(sorted);
    if (sign == 0) return;
    check_increasing(sorted, order_, dim());
    MultiPoly v = sign > 0 ? value : -value;
    auto it = entries_.find(sorted);
    if (it == entries_.end()) {
        if (!v.is_zero()) entries_.emplace(std::move(sorted), std::move(v));
    } else {
        it->second += v;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

MultiPoly NambuTensor::entry(const Index& idx) const {
    Index sorted = idx;
    const int sign = detail::sort_sign(sorted);
    if (sign == 0) return MultiPoly::zero(table_);
    auto it = entries_.find(sorted);
    if (it == entries_.end()) return MultiPoly::zero(table_);
    return sign > 0 ? it->second : -it->second;
}

bool NambuTensor::all_constant() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const auto& kv) { return kv.second.is_constant(); });
}

Rational NambuTensor::entry_const(const Index& idx) const {
    Index sorted = idx;
    const int sign = detail::sort_sign(sorted);
    if (sign == 0) return Rational(0);
    auto it = entries_.find(sorted);
    if (it == entries_.end()) return Rational(0);
    const Rational c = it->second.constant_term();
    return sign > 0 ? c : -c;
}

NambuTensor NambuTensor::operator+(const NambuTensor& o) const {
    require_same_table(table_, o.table_, "tensor add");
    if (order_ != o.order_) throw DomainError("tensor add: order mismatch");
    NambuTensor r = *this;
    for (const auto& [idx, v] : o.entries_) r.add_entry(idx, v);
    return r;
}

NambuTensor NambuTensor::scaled(const Rational& c) const {
    NambuTensor r(table_, order_);
    if (c == 0) return r;
    for (const auto& [idx, v] : entries_) r.entries_.emplace(idx, v.scaled(c));
    return r;
}

MultiPoly tensor_bracket(const NambuTensor& eta, const std::vector<MultiPoly>& fs) {
    const int n = eta.order();
    if (static_cast<int>(fs.size()) != n)
        throw ArityError("tensor_bracket: expected " + std::to_string(n) + " functions");
    for (const auto& f : fs) require_same_table(eta.table(), f.table(), "tensor_bracket");

    // gradient components once per function
    const int N = eta.dim();
    std::vector<std::vector<MultiPoly>> grad;
    grad.reserve(fs.size());
    for (const auto& f : fs) {
        std::vector<MultiPoly> g;
        g.reserve(static_cast<size_t>(N));
        for (int a = 0; a < N; ++a) g.push_back(f.partial(a));
        grad.push_back(std::move(g));
    }

    MultiPoly acc = MultiPoly::zero(eta.table());
    for (const auto& [idx, coeff] : eta.entries()) {
        // det over the support of this increasing tuple
        std::vector<std::vector<MultiPoly>> m;
        m.reserve(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) {
            std::vector<MultiPoly> row;
            row.reserve(static_cast<size_t>(n));
            for (int l = 0; l < n; ++l)
                row.push_back(grad[static_cast<size_t>(k)][static_cast<size_t>(idx[static_cast<size_t>(l)] - 1)]);
            m.push_back(std::move(row));
        }
        acc += coeff * detail::determinant(m, MultiPoly::zero(eta.table()));
    }
    return acc;
}

namespace {

// S_ij of the quadratic constraint, written once for any entry ring:
//   S_ij = eta_i * eta_j
//        + sum_{k=2..n} eta_{(j_n, i2..in with i_k -> i1)} * eta_{(j1..j_{n-1}, i_k)}
//        - eta_{(j_n, i2..in)} * eta_{(j1..j_{n-1}, i1)}
// The n = 3 case is unit-pinned against a hand expansion in the tests.
template <class Ring, class Entry>
Ring s_quadratic(const std::vector<int>& i, const std::vector<int>& j, const Entry& entry,
                 const Ring& zero) {
    const int n = static_cast<int>(i.size());
    Ring acc = zero + entry(i) * entry(j);

    std::vector<int> a(static_cast<size_t>(n));
    std::vector<int> b(j.begin(), j.end());
    for (int k = 1; k < n; ++k) {
        // a = (j_n, i_2, ..., i_n) with slot k replaced by i_1
        a[0] = j[static_cast<size_t>(n - 1)];
        for (int s = 1; s < n; ++s) a[static_cast<size_t>(s)] = i[static_cast<size_t>(s)];
        a[static_cast<size_t>(k)] = i[0];
        b[static_cast<size_t>(n - 1)] = i[static_cast<size_t>(k)];
        acc = acc + entry(a) * entry(b);
    }
    // trailing term: a = (j_n, i_2, ..., i_n), b = (j_1..j_{n-1}, i_1)
    a[0] = j[static_cast<size_t>(n - 1)];
    for (int s = 1; s < n; ++s) a[static_cast<size_t>(s)] = i[static_cast<size_t>(s)];
    b[static_cast<size_t>(n - 1)] = i[0];
    acc = acc - entry(a) * entry(b);
    return acc;
}

template <class Ring, class Entry>
Ring s_plus_ps(const std::vector<int>& i, const std::vector<int>& j, const Entry& entry,
               const Ring& zero) {
    Ring s = s_quadratic(i, j, entry, zero);
    std::vector<int> is = i;
    std::vector<int> js = j;
    std::swap(is[0], js[0]);
    return s + s_quadratic(is, js, entry, zero);
}

} // namespace

std::map<IndexPair, MultiPoly> algebraic_constraint_residual(const NambuTensor& eta) {
    std::map<IndexPair, MultiPoly> out;
    const int n = eta.order();
    const int N = eta.dim();
    const MultiPoly zero = MultiPoly::zero(eta.table());
    auto entry = [&](const std::vector<int>& idx) { return eta.entry(idx); };
    for_all_tuples(N, n, [&](const std::vector<int>& i) {
        for_all_tuples(N, n, [&](const std::vector<int>& j) {
            MultiPoly r = s_plus_ps(i, j, entry, zero);
            if (!r.is_zero()) out.emplace(IndexPair{i, j}, std::move(r));
        });
    });
    return out;
}

std::optional<IndexPair> algebraic_constraint_first_violation(const NambuTensor& eta) {
    const int n = eta.order();
    const int N = eta.dim();
    std::optional<IndexPair> hit;
    if (eta.all_constant()) {
        auto entry = [&](const std::vector<int>& idx) { return eta.entry_const(idx); };
        const Rational zero(0);
        for_all_tuples(N, n, [&](const std::vector<int>& i) {
            if (hit) return;
            for_all_tuples(N, n, [&](const std::vector<int>& j) {
                if (hit) return;
                if (s_plus_ps(i, j, entry, zero) != 0) hit = IndexPair{i, j};
            });
        });
        return hit;
    }
    const MultiPoly zero = MultiPoly::zero(eta.table());
    auto entry = [&](const std::vector<int>& idx) { return eta.entry(idx); };
    for_all_tuples(N, n, [&](const std::vector<int>& i) {
        if (hit) return;
        for_all_tuples(N, n, [&](const std::vector<int>& j) {
            if (hit) return;
            if (!s_plus_ps(i, j, entry, zero).is_zero()) hit = IndexPair{i, j};
        });
    });
    return hit;
}

std::map<NambuTensor::Index, MultiPoly> differential_constraint_residual(const NambuTensor& eta) {
    std::map<NambuTensor::Index, MultiPoly> out;
    const int n = eta.order();
    const int N = eta.dim();
    const MultiPoly zero = MultiPoly::zero(eta.table());

    // precompute partials of every stored entry on demand through entry();
    // tuples are small, so assemble the sum directly
    for_all_tuples(N, n - 1, [&](const std::vector<int>& i_tail) { // (i2, ..., i_n)
        for_all_tuples(N, n, [&](const std::vector<int>& j) {
            MultiPoly acc = zero;
            std::vector<int> a(static_cast<size_t>(n));
            std::vector<int> b(j.begin(), j.end());
            for (int l = 1; l <= N; ++l) {
                // eta_{(l, i2..in)} d_l eta_j
                a[0] = l;
                for (int s = 1; s < n; ++s) a[static_cast<size_t>(s)] = i_tail[static_cast<size_t>(s - 1)];
                acc += eta.entry(a) * eta.entry(j).partial(l - 1);

                // middle terms: slot k of (j_n, i2..in) replaced by l
                for (int k = 1; k < n; ++k) {
                    a[0] = j[static_cast<size_t>(n - 1)];
                    for (int s = 1; s < n; ++s)
                        a[static_cast<size_t>(s)] = i_tail[static_cast<size_t>(s - 1)];
                    a[static_cast<size_t>(k)] = l;
                    b[static_cast<size_t>(n - 1)] = i_tail[static_cast<size_t>(k - 1)];
                    acc += eta.entry(a) * eta.entry(b).partial(l - 1);
                }

                // right side: eta_{(j1..j_{n-1}, l)} d_l eta_{(j_n, i2..in)}
                a[0] = j[static_cast<size_t>(n - 1)];
                for (int s = 1; s < n; ++s) a[static_cast<size_t>(s)] = i_tail[static_cast<size_t>(s - 1)];
                b[static_cast<size_t>(n - 1)] = l;
                acc -= eta.entry(b) * eta.entry(a).partial(l - 1);
            }
            if (!acc.is_zero()) {
                NambuTensor::Index key = i_tail;
                key.insert(key.end(), j.begin(), j.end());
                out.emplace(std::move(key), std::move(acc));
            }
        });
    });
    return out;
}

bool is_decomposable_oracle(const NambuTensor& eta) {
    if (!eta.all_constant())
        throw DomainError("is_decomposable_oracle: requires constant entries");
    const int n = eta.order();
    const int N = eta.dim();
    if (eta.is_zero()) return true;
    if (n == N || n == N - 1 || n == 1) return true; // always decomposable

    // v = i_w eta over every basis (n-1)-covector w; then test v ^ eta = 0.
    for (const auto& contraction : detail::increasing_tuples(N, n - 1)) {
        std::vector<Rational> v(static_cast<size_t>(N));
        std::vector<int> idx(contraction.begin(), contraction.end());
        idx.push_back(0);
        for (int a = 1; a <= N; ++a) {
            idx.back() = a;
            v[static_cast<size_t>(a - 1)] = eta.entry_const(idx);
        }
        // (v ^ eta)_{B} = sum_m (-1)^m v_{B_m} eta_{B minus B_m}
        for (const auto& b : detail::increasing_tuples(N, n + 1)) {
            Rational acc(0);
            std::vector<int> rest(static_cast<size_t>(n));
            for (int m = 0; m <= n; ++m) {
                size_t w = 0;
                for (int s = 0; s <= n; ++s)
                    if (s != m) rest[w++] = b[static_cast<size_t>(s)];
                const Rational term = v[static_cast<size_t>(b[static_cast<size_t>(m)] - 1)] *
                                      eta.entry_const(rest);
                acc += (m % 2 == 0) ? term : -term;
            }
            if (acc != 0) return false;
        }
    }
    return true;
}

} // namespace nambu
