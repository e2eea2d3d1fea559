#pragma once

#include "nambu/laurent.hpp"

#include <map>
#include <string>
#include <vector>

namespace nambu {

/// Jet-order cap: NAMBU_MAX_JET from the environment, else 12.
int default_max_jet_order();

/// Variable table for the dKP jet ring: x, times t1..tK, and jet families
/// u2..u(K+1) up to max_jet_order x-derivatives.
TablePtr dkp_table(int K, int max_jet_order = default_max_jet_order());

/// Truncated dKP symbol L = lambda + sum_{n=1}^{K} u_{n+1} lambda^{-n}
/// with exact window [-K, 1].
struct DkpState {
    int K = 0;
    TablePtr table;
    Laurent L;
};

DkpState dkp_state(int K, int max_jet_order = default_max_jet_order());
/// All u = 0 (L = lambda), kept exact.
DkpState dkp_vacuum_state(int K, int max_jet_order = default_max_jet_order());

/// 2D phase-space Poisson bracket with respect to (lambda, x):
/// {f, g} = df/dlambda . D_x g - D_x f . dg/dlambda.
Laurent poisson2(const Laurent& f, const Laurent& g);

/// The t_n-flow of every representable coefficient: u_m -> du_m/dt_n as a
/// differential polynomial, read off {B_n, L} with B_n = (L^n)_{>=0}.
struct DkpFlow {
    int n = 0;
    std::map<std::string, MultiPoly> du_dt; // jet base ("u2", ...) -> flow
    int window_lo = 0;                      // floor of the {B_n, L} window
};

DkpFlow dkp_flow(const DkpState& state, int n);

/// d/dt_n of a jet polynomial via the chain rule: jets follow their flows
/// (prolonged by D_x), explicit times differentiate directly, x and plain
/// coordinates are t_n-independent. Throws WindowError when a needed flow
/// is not representable at this truncation.
MultiPoly time_derivative(const MultiPoly& p, const DkpFlow& flow);
Laurent time_derivative(const Laurent& a, const DkpFlow& flow);

/// dB_n/dt_m - dB_m/dt_n + {B_n, B_m}; zero on every representable
/// coefficient certifies consistency of the flows.
Laurent zero_curvature_residual(const DkpState& state, int n, int m);

/// Orlov companion series M = sum n t_n L^{n-1} + x + sum v_i L^{-i-1}.
/// Times stay symbolic unless bound in time_values (name -> value).
struct OrlovData {
    std::vector<Rational> v;                    // correction coefficients
    std::map<std::string, Rational> time_values; // optional t_n bindings
};

Laurent orlov_m(const DkpState& state, const OrlovData& data);

// ---------- volume-preserving three-flow hierarchy ----------

/// Laurent triple over coordinates (p, q) and times t1..tK; lambda lives
/// in the Laurent structure.
struct VpTriple {
    int K = 0;
    TablePtr table;
    Laurent L, M, N;
};

/// Exact solution L = lambda, M = p,
/// N = q + t1 + sum_{n=2}^{K} n^2 t_n lambda^{n-1} p^{n-1}.
VpTriple vacuum_solution(int K);

/// 3D Jacobian bracket in (lambda, p, q).
Laurent nambu3(const Laurent& f, const Laurent& g, const Laurent& h);

struct VpResidual {
    Laurent L, M, N;
    bool all_zero_on_window() const;
};

/// dX/dt_n - {B_1n, B_2n, X} for X in {L, M, N},
/// B_1n = (L^n)_{>=0}, B_2n = (M^n)_{>=0}.
VpResidual vp_flow_residual(const VpTriple& triple, int n);

/// {L, M, N} - 1.
Laurent volume_constraint_residual(const VpTriple& triple);

/// Commutativity of flows as equality of mixed derivatives, with each
/// first derivative replaced by its flow bracket F_n(X) = {B_1n, B_2n, X}:
/// residual_X = d(F_n X)/dt_m - d(F_m X)/dt_n.
VpResidual cross_flow_residual(const VpTriple& triple, int n, int m);

/// B_in pair for a triple (used by the forms-side checks as well).
std::pair<Laurent, Laurent> vp_projections(const VpTriple& triple, int n);

} // namespace nambu
