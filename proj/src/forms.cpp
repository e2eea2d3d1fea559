#include "nambu/forms.hpp"

#include "nambu/detail.hpp"
#include "nambu/errors.hpp"
#include "nambu/flows.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nambu {

DifferentialForm::DifferentialForm(TablePtr table, int degree)
    : table_(std::move(table)), degree_(degree) {
    if (!table_) throw DomainError("DifferentialForm: null table");
    if (degree_ < 0) throw DomainError("DifferentialForm: negative degree");
}

DifferentialForm DifferentialForm::scalar(const MultiPoly& p) {
    DifferentialForm f(p.table(), 0);
    if (!p.is_zero()) f.terms_.emplace(Index{}, p);
    return f;
}

DifferentialForm DifferentialForm::d_coordinate(TablePtr table, int idx) {
    DifferentialForm f(table, 1);
    if (idx < 0 || idx >= f.table_->size())
        throw UnknownVariableError("d_coordinate: index out of range");
    f.terms_.emplace(Index{idx}, MultiPoly::constant(f.table_, Rational(1)));
    return f;
}

void DifferentialForm::add_term(const Index& idx, const MultiPoly& value) {
    if (static_cast<int>(idx.size()) != degree_)
        throw DomainError("DifferentialForm::add_term: tuple length != degree");
    require_same_table(table_, value.table(), "DifferentialForm::add_term");
    if (value.is_zero()) return;
    Index sorted = idx;
    const int sign = detail::sort_sign(sorted);
    if (sign == 0) return;
    for (int c : sorted)
        if (c < 0 || c >= table_->size())
            throw DomainError("DifferentialForm::add_term: coordinate index out of range");
    MultiPoly v = sign > 0 ? value : -value;
    auto it = terms_.find(sorted);
    if (it == terms_.end()) {
        terms_.emplace(std::move(sorted), std::move(v));
    } else {
        it->second += v;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly DifferentialForm::coeff(const Index& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? MultiPoly::zero(table_) : it->second;
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& o) const {
    require_same_table(table_, o.table_, "form add");
    if (degree_ != o.degree_) throw DomainError("form add: degree mismatch");
    DifferentialForm r = *this;
    for (const auto& [idx, v] : o.terms_) r.add_term(idx, v);
    return r;
}

DifferentialForm DifferentialForm::operator-() const {
    DifferentialForm r(table_, degree_);
    for (const auto& [idx, v] : terms_) r.terms_.emplace(idx, -v);
    return r;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& o) const {
    return *this + (-o);
}

DifferentialForm DifferentialForm::scaled(const MultiPoly& p) const {
    DifferentialForm r(table_, degree_);
    if (p.is_zero()) return r;
    for (const auto& [idx, v] : terms_) {
        MultiPoly prod = v * p;
        if (!prod.is_zero()) r.terms_.emplace(idx, std::move(prod));
    }
    return r;
}

DifferentialForm DifferentialForm::scaled(const Rational& c) const {
    DifferentialForm r(table_, degree_);
    if (c == 0) return r;
    for (const auto& [idx, v] : terms_) r.terms_.emplace(idx, v.scaled(c));
    return r;
}

bool DifferentialForm::operator==(const DifferentialForm& o) const {
    return same_table(table_, o.table_) && degree_ == o.degree_ && terms_ == o.terms_;
}

std::string DifferentialForm::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, v] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.str() << ")";
        for (int c : idx) os << " d" << table_->at(c).name;
    }
    return os.str();
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    require_same_table(a.table(), b.table(), "wedge");
    const int deg = a.degree() + b.degree();
    DifferentialForm r(a.table(), deg);
    if (deg > a.table()->size()) return r; // zero form, by grading
    DifferentialForm::Index idx;
    for (const auto& [ia, va] : a.terms()) {
        for (const auto& [ib, vb] : b.terms()) {
            idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            r.add_term(idx, va * vb);
        }
    }
    return r;
}

DifferentialForm ext_d(const DifferentialForm& a) {
    DifferentialForm r(a.table(), a.degree() + 1);
    if (a.degree() + 1 > a.table()->size()) return r;
    for (const auto& [idx, v] : a.terms()) {
        for (int c = 0; c < a.table()->size(); ++c) {
            MultiPoly dv = v.partial(c);
            if (dv.is_zero()) continue;
            DifferentialForm::Index ext{c};
            ext.insert(ext.end(), idx.begin(), idx.end());
            r.add_term(ext, dv);
        }
    }
    return r;
}

DifferentialForm d_scalar(const MultiPoly& f) {
    return ext_d(DifferentialForm::scalar(f));
}

// ---------- pencils ----------

FormPencil::FormPencil(TablePtr table, int degree, int tau_arity)
    : table_(std::move(table)), degree_(degree), tau_arity_(tau_arity) {
    if (tau_arity_ < 1) throw DomainError("FormPencil: tau arity must be >= 1");
}

bool FormPencil::is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
}

void FormPencil::add(const std::vector<int>& tau, const DifferentialForm& form) {
    if (static_cast<int>(tau.size()) != tau_arity_)
        throw DomainError("FormPencil::add: tau exponent arity mismatch");
    if (form.degree() != degree_) throw DomainError("FormPencil::add: degree mismatch");
    require_same_table(table_, form.table(), "FormPencil::add");
    if (form.is_zero()) return;
    auto it = terms_.find(tau);
    if (it == terms_.end()) {
        terms_.emplace(tau, form);
    } else {
        it->second = it->second + form;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FormPencil FormPencil::operator+(const FormPencil& o) const {
    if (degree_ != o.degree_ || tau_arity_ != o.tau_arity_)
        throw DomainError("pencil add: shape mismatch");
    FormPencil r = *this;
    for (const auto& [tau, f] : o.terms_) r.add(tau, f);
    return r;
}

std::string FormPencil::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [tau, f] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "tau^(";
        for (size_t i = 0; i < tau.size(); ++i) os << (i ? "," : "") << tau[i];
        os << ") * [" << f.str() << "]";
    }
    return first ? "0" : os.str();
}

FormPencil wedge(const FormPencil& a, const FormPencil& b) {
    if (a.tau_arity() != b.tau_arity()) throw DomainError("pencil wedge: tau arity mismatch");
    FormPencil r(a.table(), a.degree() + b.degree(), a.tau_arity());
    for (const auto& [ta, fa] : a.terms()) {
        for (const auto& [tb, fb] : b.terms()) {
            std::vector<int> tau(ta.size());
            for (size_t i = 0; i < ta.size(); ++i) tau[i] = ta[i] + tb[i];
            r.add(tau, wedge(fa, fb));
        }
    }
    return r;
}

FormPencil ext_d(const FormPencil& a) {
    FormPencil r(a.table(), a.degree() + 1, a.tau_arity());
    for (const auto& [tau, f] : a.terms()) r.add(tau, ext_d(f));
    return r;
}

FormPencil wedge_power(const FormPencil& a, int k) {
    if (k < 1) throw DomainError("wedge_power: k >= 1 required");
    FormPencil acc = a;
    for (int i = 1; i < k; ++i) acc = wedge(acc, a);
    return acc;
}

std::optional<FormWitness> first_nonzero(const FormPencil& p) {
    for (const auto& [tau, f] : p.terms()) {
        for (const auto& [idx, v] : f.terms()) {
            if (!v.is_zero()) return FormWitness{tau, idx, v};
        }
    }
    return std::nullopt;
}

// ---------- hierarchy forms ----------

namespace {

struct VpFormContext {
    TablePtr form_table;
    int lambda_idx = 0;
    std::vector<int> remap; // vp-table variable -> form-table index, -1 = t1
};

VpFormContext make_vp_form_context(const VpTriple& triple) {
    VpFormContext ctx;
    VariableTable::Builder b;
    b.coordinate("lambda").coordinate("p").coordinate("q");
    for (int n = 2; n <= triple.K; ++n) b.coordinate("t" + std::to_string(n));
    ctx.form_table = b.build();
    ctx.lambda_idx = 0;
    const TablePtr& vp = triple.table;
    ctx.remap.assign(static_cast<size_t>(vp->size()), -1);
    for (int i = 0; i < vp->size(); ++i) {
        const std::string& name = vp->at(i).name;
        if (name == "t1") continue; // evaluated at 0
        ctx.remap[static_cast<size_t>(i)] = ctx.form_table->index(name);
    }
    return ctx;
}

/// Laurent (polynomial in lambda, no tail) -> scalar over the form table.
MultiPoly to_form_scalar(const Laurent& a, const VpFormContext& ctx) {
    if (a.has_tail())
        throw WindowError("omega3/krichever: triple must be exact (no Laurent tail)");
    MultiPoly out(ctx.form_table);
    for (const auto& [k, poly] : a.coeffs()) {
        if (k < 0)
            throw WindowError("omega3/krichever: negative lambda powers are not "
                              "polynomial in the form coordinates");
        for (const auto& [exps, coef] : poly.terms()) {
            std::vector<int> e(static_cast<size_t>(ctx.form_table->size()), 0);
            bool kill = false;
            for (size_t v = 0; v < exps.size(); ++v) {
                if (exps[v] == 0) continue;
                const int target = ctx.remap[v];
                if (target < 0) { // t1 -> 0 kills the term
                    kill = true;
                    break;
                }
                e[static_cast<size_t>(target)] = exps[v];
            }
            if (kill) continue;
            e[static_cast<size_t>(ctx.lambda_idx)] = k;
            out += MultiPoly::monomial(ctx.form_table, e, coef);
        }
    }
    return out;
}

} // namespace

bool Omega3Report::all_zero() const {
    return closedness.is_zero() && wedge_square.is_zero() && theorem31.is_zero();
}

Omega3Report omega3_check(const VpTriple& triple) {
    const VpFormContext ctx = make_vp_form_context(triple);
    const TablePtr& ft = ctx.form_table;

    auto dq = DifferentialForm::d_coordinate(ft, ft->index("q"));

    auto projected_pair = [&](int n) {
        auto [B1, B2] = vp_projections(triple, n);
        return std::pair{to_form_scalar(B1, ctx), to_form_scalar(B2, ctx)};
    };

    // Omega = dB_11 ^ dB_21 ^ dq + sum_{n>=2} dB_1n ^ dB_2n ^ dt_n
    auto [b11, b21] = projected_pair(1);
    DifferentialForm omega = wedge(wedge(d_scalar(b11), d_scalar(b21)), dq);
    for (int n = 2; n <= triple.K; ++n) {
        auto [b1, b2] = projected_pair(n);
        auto dtn = DifferentialForm::d_coordinate(ft, ft->index("t" + std::to_string(n)));
        omega = omega + wedge(wedge(d_scalar(b1), d_scalar(b2)), dtn);
    }

    const MultiPoly l = to_form_scalar(triple.L, ctx);
    const MultiPoly m = to_form_scalar(triple.M, ctx);
    const MultiPoly nn = to_form_scalar(triple.N, ctx);
    DifferentialForm dLMN = wedge(wedge(d_scalar(l), d_scalar(m)), d_scalar(nn));

    Omega3Report rep{ext_d(omega), wedge(omega, omega), omega - dLMN};
    return rep;
}

DifferentialForm krichever_closedness(const VpTriple& triple) {
    const VpFormContext ctx = make_vp_form_context(triple);
    const TablePtr& ft = ctx.form_table;

    const MultiPoly l = to_form_scalar(triple.L, ctx);
    const MultiPoly m = to_form_scalar(triple.M, ctx);
    const MultiPoly nn = to_form_scalar(triple.N, ctx);

    // Theta = M dL ^ dN + B_11 dB_21 ^ dq + sum_{n>=2} B_1n dB_2n ^ dt_n
    DifferentialForm theta = wedge(d_scalar(l), d_scalar(nn)).scaled(m);
    auto [B11, B21] = vp_projections(triple, 1);
    auto dq = DifferentialForm::d_coordinate(ft, ft->index("q"));
    theta = theta +
            wedge(d_scalar(to_form_scalar(B21, ctx)), dq).scaled(to_form_scalar(B11, ctx));
    for (int n = 2; n <= triple.K; ++n) {
        auto [B1, B2] = vp_projections(triple, n);
        auto dtn = DifferentialForm::d_coordinate(ft, ft->index("t" + std::to_string(n)));
        theta = theta +
                wedge(d_scalar(to_form_scalar(B2, ctx)), dtn).scaled(to_form_scalar(B1, ctx));
    }
    return ext_d(theta);
}

// ---------- heavenly ----------

TablePtr plebanski_table() {
    return VariableTable::coordinates({"x", "y", "xt", "yt"});
}

MultiPoly plebanski_residual(const MultiPoly& omega) {
    const TablePtr& t = omega.table();
    const int x = t->index("x"), y = t->index("y"), xt = t->index("xt"), yt = t->index("yt");
    MultiPoly oxxt = omega.partial(x).partial(xt);
    MultiPoly oyyt = omega.partial(y).partial(yt);
    MultiPoly oxyt = omega.partial(x).partial(yt);
    MultiPoly oyxt = omega.partial(y).partial(xt);
    return oxxt * oyyt - oxyt * oyxt - MultiPoly::constant(t, Rational(1));
}

FormPencil plebanski_pencil(const MultiPoly& omega) {
    const TablePtr& t = omega.table();
    const int x = t->index("x"), y = t->index("y"), xt = t->index("xt"), yt = t->index("yt");
    auto dx = DifferentialForm::d_coordinate(t, x);
    auto dy = DifferentialForm::d_coordinate(t, y);
    auto dxt = DifferentialForm::d_coordinate(t, xt);
    auto dyt = DifferentialForm::d_coordinate(t, yt);

    FormPencil pencil(t, 2, 1);
    pencil.add({0}, wedge(dx, dy));
    DifferentialForm mid = wedge(dx, dxt).scaled(omega.partial(x).partial(xt)) +
                           wedge(dx, dyt).scaled(omega.partial(x).partial(yt)) +
                           wedge(dy, dxt).scaled(omega.partial(y).partial(xt)) +
                           wedge(dy, dyt).scaled(omega.partial(y).partial(yt));
    pencil.add({1}, mid);
    pencil.add({2}, wedge(dxt, dyt));
    return pencil;
}

bool GindikinReport::passes() const {
    return power_l_plus_1.is_zero() && power_l_nonzero.has_value() && closedness.is_zero();
}

GindikinReport gindikin_check(const FormPencil& pencil, int l) {
    if (pencil.degree() != 2) throw DomainError("gindikin_check: pencil degree must be 2");
    if (l < 1) throw DomainError("gindikin_check: l >= 1 required");
    FormPencil pl = wedge_power(pencil, l);
    FormPencil plp1 = wedge(pl, pencil);
    return GindikinReport{std::move(plp1), first_nonzero(pl), ext_d(pencil)};
}

// ---------- determinant metric ----------

SymTensor3 det_metric3(const std::array<std::array<DifferentialForm, 3>, 3>& frame) {
    const TablePtr table = frame[0][0].table();
    for (const auto& row : frame)
        for (const auto& e : row) {
            require_same_table(table, e.table(), "det_metric3");
            if (e.degree() != 1) throw DomainError("det_metric3: frame entries must be 1-forms");
        }

    // permutations of columns (sigma(0), sigma(1), sigma(2)) with signs
    static const std::array<std::pair<std::array<int, 3>, int>, 6> perms{{
        {{0, 1, 2}, +1},
        {{0, 2, 1}, -1},
        {{1, 0, 2}, -1},
        {{1, 2, 0}, +1},
        {{2, 0, 1}, +1},
        {{2, 1, 0}, -1},
    }};

    SymTensor3 g;
    for (const auto& [sigma, sign] : perms) {
        const DifferentialForm& e1 = frame[0][static_cast<size_t>(sigma[0])];
        const DifferentialForm& e2 = frame[1][static_cast<size_t>(sigma[1])];
        const DifferentialForm& e3 = frame[2][static_cast<size_t>(sigma[2])];
        for (const auto& [i1, v1] : e1.terms()) {
            for (const auto& [i2, v2] : e2.terms()) {
                for (const auto& [i3, v3] : e3.terms()) {
                    std::array<int, 3> key{i1[0], i2[0], i3[0]};
                    std::sort(key.begin(), key.end());
                    MultiPoly prod = v1 * v2 * v3;
                    if (sign < 0) prod = -prod;
                    auto it = g.find(key);
                    if (it == g.end()) {
                        if (!prod.is_zero()) g.emplace(key, std::move(prod));
                    } else {
                        it->second += prod;
                        if (it->second.is_zero()) g.erase(it);
                    }
                }
            }
        }
    }
    return g;
}

// ---------- hydrodynamic compatibility ----------

namespace {

void check_square(const PolyMatrix& A, const PolyMatrix& B) {
    const size_t n = A.size();
    if (n == 0 || B.size() != n) throw DomainError("hydro: matrices must be square, same size");
    for (const auto& row : A)
        if (row.size() != n) throw DomainError("hydro: A is not square");
    for (const auto& row : B)
        if (row.size() != n) throw DomainError("hydro: B is not square");
}

} // namespace

bool HydroSymbolicResult::all_zero() const {
    auto zero = [](const PolyMatrix& m) {
        for (const auto& row : m)
            for (const auto& p : row)
                if (!p.is_zero()) return false;
        return true;
    };
    return zero(evolution) && zero(commutator);
}

HydroSymbolicResult hydro_compat_symbolic(const PolyMatrix& A, const PolyMatrix& B,
                                          const std::vector<MultiPoly>& u_of_xt) {
    check_square(A, B);
    const size_t n = A.size();
    if (u_of_xt.empty()) throw DomainError("hydro: no solution components");
    const TablePtr ut = A[0][0].table();   // u1..uN
    const TablePtr xt = u_of_xt[0].table(); // x, t
    const int xi = xt->index("x");
    const int ti = xt->index("t");
    const size_t nu = u_of_xt.size();

    // substitute u_k(x, t) into a polynomial over the u table
    auto along = [&](const MultiPoly& p) {
        MultiPoly acc(xt);
        for (const auto& [e, c] : p.terms()) {
            MultiPoly term = MultiPoly::constant(xt, c);
            for (size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                if (k >= nu) throw DomainError("hydro: matrix uses more u components than given");
                term = term * u_of_xt[k].pow(e[k]);
            }
            acc += term;
        }
        return acc;
    };

    HydroSymbolicResult res;
    res.evolution.assign(n, std::vector<MultiPoly>(n, MultiPoly::zero(xt)));
    res.commutator.assign(n, std::vector<MultiPoly>(n, MultiPoly::zero(xt)));

    std::vector<MultiPoly> du_dt, du_dx;
    for (const auto& u : u_of_xt) {
        du_dt.push_back(u.partial(ti));
        du_dx.push_back(u.partial(xi));
    }

    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            MultiPoly at(xt), bx(xt);
            for (size_t k = 0; k < nu; ++k) {
                const int uk = static_cast<int>(k);
                if (uk >= ut->size()) break;
                at += along(A[i][j].partial(uk)) * du_dt[k];
                bx += along(B[i][j].partial(uk)) * du_dx[k];
            }
            res.evolution[i][j] = at - bx;
        }
    }

    // commutator along the solution
    std::vector<std::vector<MultiPoly>> As(n, std::vector<MultiPoly>(n, MultiPoly::zero(xt)));
    std::vector<std::vector<MultiPoly>> Bs = As;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            As[i][j] = along(A[i][j]);
            Bs[i][j] = along(B[i][j]);
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            MultiPoly acc(xt);
            for (size_t k = 0; k < n; ++k) acc += As[i][k] * Bs[k][j] - Bs[i][k] * As[k][j];
            res.commutator[i][j] = acc;
        }
    return res;
}

HydroGridResult hydro_compat_grid(const PolyMatrix& A, const PolyMatrix& B,
                                  const std::vector<std::vector<std::vector<double>>>& u_grid,
                                  const std::vector<double>& xs, const std::vector<double>& ts) {
    check_square(A, B);
    const size_t n = A.size();
    const size_t nu = u_grid.size();
    if (nu == 0) throw DomainError("hydro grid: empty solution");
    const size_t nx = xs.size(), nt = ts.size();
    if (nx < 3 || nt < 3) throw DomainError("hydro grid: need at least 3 points per axis");
    for (const auto& comp : u_grid)
        if (comp.size() != nx || comp[0].size() != nt)
            throw DomainError("hydro grid: u grid shape mismatch");
    const double dx = xs[1] - xs[0];
    const double dt = ts[1] - ts[0];

    const TablePtr ut = A[0][0].table();
    std::vector<int> uidx(static_cast<size_t>(ut->size()));
    for (int i = 0; i < ut->size(); ++i) uidx[static_cast<size_t>(i)] = i;
    std::vector<CompiledPoly> ca, cb;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            ca.emplace_back(A[i][j], uidx, std::map<int, Rational>{});
            cb.emplace_back(B[i][j], uidx, std::map<int, Rational>{});
        }

    auto uvec = [&](size_t ix, size_t it) {
        std::vector<double> u(static_cast<size_t>(ut->size()), 0.0);
        for (size_t k = 0; k < nu && k < u.size(); ++k) u[k] = u_grid[k][ix][it];
        return u;
    };

    HydroGridResult res;
    std::vector<double> Avals(n * n), Bvals(n * n);
    for (size_t ix = 1; ix + 1 < nx; ++ix) {
        for (size_t it = 1; it + 1 < nt; ++it) {
            const auto u0 = uvec(ix, it);
            const auto u_tp = uvec(ix, it + 1);
            const auto u_tm = uvec(ix, it - 1);
            const auto u_xp = uvec(ix + 1, it);
            const auto u_xm = uvec(ix - 1, it);
            for (size_t e = 0; e < n * n; ++e) {
                const double a_t = (ca[e].eval(u_tp) - ca[e].eval(u_tm)) / (2.0 * dt);
                const double b_x = (cb[e].eval(u_xp) - cb[e].eval(u_xm)) / (2.0 * dx);
                res.max_evolution_residual =
                    std::max(res.max_evolution_residual, std::fabs(a_t - b_x));
                Avals[e] = ca[e].eval(u0);
                Bvals[e] = cb[e].eval(u0);
            }
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    double acc = 0.0;
                    for (size_t k = 0; k < n; ++k)
                        acc += Avals[i * n + k] * Bvals[k * n + j] -
                               Bvals[i * n + k] * Avals[k * n + j];
                    res.max_commutator_residual =
                        std::max(res.max_commutator_residual, std::fabs(acc));
                }
        }
    }
    return res;
}

} // namespace nambu
