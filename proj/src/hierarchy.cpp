#include "nambu/hierarchy.hpp"

#include "nambu/detail.hpp"
#include "nambu/errors.hpp"

#include <cstdlib>

namespace nambu {

int default_max_jet_order() {
    if (const char* env = std::getenv("NAMBU_MAX_JET")) {
        const int v = std::atoi(env);
        if (v >= 1 && v <= 64) return v;
    }
    return 12;
}

TablePtr dkp_table(int K, int max_jet_order) {
    if (K < 1) throw DomainError("dkp_table: K >= 1 required");
    VariableTable::Builder b;
    b.coordinate("x");
    for (int n = 1; n <= K; ++n) b.time("t" + std::to_string(n));
    for (int m = 2; m <= K + 1; ++m) b.jet_family("u" + std::to_string(m), max_jet_order);
    return b.build();
}

DkpState dkp_state(int K, int max_jet_order) {
    TablePtr table = dkp_table(K, max_jet_order);
    Laurent L(table, -K, 1);
    L.set_coeff(1, MultiPoly::constant(table, Rational(1)));
    for (int n = 1; n <= K; ++n)
        L.set_coeff(-n, MultiPoly::variable(table, "u" + std::to_string(n + 1)));
    return DkpState{K, table, std::move(L)};
}

DkpState dkp_vacuum_state(int K, int max_jet_order) {
    TablePtr table = dkp_table(K, max_jet_order);
    return DkpState{K, table, Laurent::lambda_power(table, 1)};
}

Laurent poisson2(const Laurent& f, const Laurent& g) {
    require_same_table(f.table(), g.table(), "poisson2");
    return f.d_lambda() * g.total_x_derivative() - f.total_x_derivative() * g.d_lambda();
}

DkpFlow dkp_flow(const DkpState& state, int n) {
    if (n < 1) throw DomainError("dkp_flow: flow index must be >= 1");
    Laurent Ln = state.L.pow(n);
    if (Ln.has_tail() && Ln.lo() > 0)
        throw WindowError("dkp_flow: truncation depth " + std::to_string(state.K) +
                          " too shallow for flow " + std::to_string(n));
    Laurent Bn = Ln.project_nonneg();
    Laurent pb = poisson2(Bn, state.L);

    DkpFlow fl;
    fl.n = n;
    fl.window_lo = pb.lo();
    for (int m = 2; m <= state.K + 1; ++m) {
        const int e = -(m - 1);
        if (pb.has_tail() && e < pb.lo()) continue; // not representable at this K
        fl.du_dt.emplace("u" + std::to_string(m), pb.coeff(e));
    }
    return fl;
}

MultiPoly time_derivative(const MultiPoly& p, const DkpFlow& flow) {
    const TablePtr& table = p.table();
    MultiPoly acc = MultiPoly::zero(table);
    const std::string tname = "t" + std::to_string(flow.n);
    for (int v = 0; v < table->size(); ++v) {
        if (!p.depends_on(v)) continue;
        const Variable& var = table->at(v);
        if (var.kind == VarKind::Jet) {
            auto it = flow.du_dt.find(var.base);
            if (it == flow.du_dt.end())
                throw WindowError("time_derivative: flow of '" + var.base +
                                  "' not representable at this truncation");
            acc += p.partial(v) * it->second.total_x_derivative(var.order);
        } else if (var.kind == VarKind::Time && var.name == tname) {
            acc += p.partial(v);
        }
        // x and plain coordinates carry no explicit t_n dependence
    }
    return acc;
}

Laurent time_derivative(const Laurent& a, const DkpFlow& flow) {
    return a.map_coeffs([&flow](const MultiPoly& p) { return time_derivative(p, flow); });
}

Laurent zero_curvature_residual(const DkpState& state, int n, int m) {
    const Laurent Bn = state.L.pow(n).project_nonneg();
    const Laurent Bm = state.L.pow(m).project_nonneg();
    const DkpFlow fn = dkp_flow(state, n);
    const DkpFlow fm = dkp_flow(state, m);
    return time_derivative(Bn, fm) - time_derivative(Bm, fn) + poisson2(Bn, Bm);
}

Laurent orlov_m(const DkpState& state, const OrlovData& data) {
    const TablePtr& table = state.table;
    Laurent acc = Laurent::from_poly(MultiPoly::variable(table, "x"));
    Laurent lpow = Laurent::one(table); // L^{n-1}
    for (int n = 1; n <= state.K; ++n) {
        if (n >= 2) lpow = lpow * state.L;
        MultiPoly coeff =
            MultiPoly::variable(table, "t" + std::to_string(n)).scaled(Rational(n));
        acc = acc + lpow.scaled(coeff);
    }
    if (!data.v.empty()) {
        const Laurent linv = state.L.inverse();
        Laurent cur = linv * linv; // L^{-2}
        for (size_t i = 0; i < data.v.size(); ++i) {
            acc = acc + cur.scaled(data.v[i]);
            cur = cur * linv;
        }
    }
    return acc;
}

// ---------- volume-preserving hierarchy ----------

VpTriple vacuum_solution(int K) {
    if (K < 1) throw DomainError("vacuum_solution: K >= 1 required");
    VariableTable::Builder b;
    b.coordinate("p").coordinate("q");
    for (int n = 1; n <= K; ++n) b.time("t" + std::to_string(n));
    TablePtr table = b.build();

    Laurent N(table, Laurent::kNoTail, std::max(K - 1, 0));
    N.set_coeff(0, MultiPoly::variable(table, "q") + MultiPoly::variable(table, "t1"));
    for (int n = 2; n <= K; ++n) {
        MultiPoly coeff = MultiPoly::variable(table, "t" + std::to_string(n))
                              .scaled(Rational(n) * Rational(n));
        MultiPoly p_pow = MultiPoly::variable(table, "p").pow(n - 1);
        N.set_coeff(n - 1, coeff * p_pow);
    }
    return VpTriple{K, table, Laurent::lambda_power(table, 1),
                    Laurent::from_poly(MultiPoly::variable(table, "p")), std::move(N)};
}

Laurent nambu3(const Laurent& f, const Laurent& g, const Laurent& h) {
    require_same_table(f.table(), g.table(), "nambu3");
    require_same_table(f.table(), h.table(), "nambu3");
    const TablePtr& table = f.table();
    const int p = table->index("p");
    const int q = table->index("q");
    std::vector<std::vector<Laurent>> jac{
        {f.d_lambda(), f.partial(p), f.partial(q)},
        {g.d_lambda(), g.partial(p), g.partial(q)},
        {h.d_lambda(), h.partial(p), h.partial(q)},
    };
    return detail::determinant(jac, Laurent::zero(table));
}

bool VpResidual::all_zero_on_window() const {
    return L.is_zero_on_window() && M.is_zero_on_window() && N.is_zero_on_window();
}

std::pair<Laurent, Laurent> vp_projections(const VpTriple& triple, int n) {
    if (n < 1) throw DomainError("vp_projections: flow index must be >= 1");
    Laurent Ln = triple.L.pow(n);
    Laurent Mn = triple.M.pow(n);
    if ((Ln.has_tail() && Ln.lo() > 0) || (Mn.has_tail() && Mn.lo() > 0))
        throw WindowError("vp_projections: window too shallow for flow " + std::to_string(n));
    return {Ln.project_nonneg(), Mn.project_nonneg()};
}

VpResidual vp_flow_residual(const VpTriple& triple, int n) {
    const int tn = triple.table->find("t" + std::to_string(n));
    if (tn < 0)
        throw DomainError("vp_flow_residual: triple carries no t" + std::to_string(n) +
                          " dependence");
    auto [B1, B2] = vp_projections(triple, n);
    auto residual = [&](const Laurent& X) { return X.partial(tn) - nambu3(B1, B2, X); };
    return VpResidual{residual(triple.L), residual(triple.M), residual(triple.N)};
}

Laurent volume_constraint_residual(const VpTriple& triple) {
    return nambu3(triple.L, triple.M, triple.N) - Laurent::one(triple.table);
}

VpResidual cross_flow_residual(const VpTriple& triple, int n, int m) {
    const int tn = triple.table->index("t" + std::to_string(n));
    const int tm = triple.table->index("t" + std::to_string(m));
    auto [B1n, B2n] = vp_projections(triple, n);
    auto [B1m, B2m] = vp_projections(triple, m);
    auto residual = [&](const Laurent& X) {
        return nambu3(B1n, B2n, X).partial(tm) - nambu3(B1m, B2m, X).partial(tn);
    };
    return VpResidual{residual(triple.L), residual(triple.M), residual(triple.N)};
}

} // namespace nambu
