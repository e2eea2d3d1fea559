#pragma once

#include "nambu/hierarchy.hpp"
#include "nambu/poly.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace nambu {

/// Graded exterior form over a named coordinate list (times and lambda are
/// ordinary coordinates here). Terms are stored on strictly increasing
/// 0-based coordinate tuples of length == degree.
class DifferentialForm {
public:
    using Index = std::vector<int>;

    DifferentialForm(TablePtr table, int degree);

    static DifferentialForm scalar(const MultiPoly& p); // degree 0
    /// dx_i.
    static DifferentialForm d_coordinate(TablePtr table, int idx);

    const TablePtr& table() const { return table_; }
    int degree() const { return degree_; }
    const std::map<Index, MultiPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds value on an arbitrary tuple (sorted with sign; repeated -> 0).
    void add_term(const Index& idx, const MultiPoly& value);
    MultiPoly coeff(const Index& increasing_idx) const;

    DifferentialForm operator+(const DifferentialForm& o) const;
    DifferentialForm operator-(const DifferentialForm& o) const;
    DifferentialForm operator-() const;
    DifferentialForm scaled(const MultiPoly& p) const;
    DifferentialForm scaled(const Rational& c) const;
    bool operator==(const DifferentialForm& o) const;

    std::string str() const;

private:
    TablePtr table_;
    int degree_;
    std::map<Index, MultiPoly> terms_;
};

/// Graded-antisymmetric product; degree adds (zero form past the
/// coordinate count, which is not an error).
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

/// Exterior derivative over every table variable; d(d(a)) == 0.
DifferentialForm ext_d(const DifferentialForm& a);

/// df of a scalar.
DifferentialForm d_scalar(const MultiPoly& f);

/// Form-valued polynomial in pencil parameters tau: tau-monomial -> form.
/// All member forms share degree and table.
class FormPencil {
public:
    FormPencil(TablePtr table, int degree, int tau_arity);

    const TablePtr& table() const { return table_; }
    int degree() const { return degree_; }
    int tau_arity() const { return tau_arity_; }
    const std::map<std::vector<int>, DifferentialForm>& terms() const { return terms_; }
    bool is_zero() const;

    void add(const std::vector<int>& tau, const DifferentialForm& form);
    FormPencil operator+(const FormPencil& o) const;

    std::string str() const;

private:
    TablePtr table_;
    int degree_;
    int tau_arity_;
    std::map<std::vector<int>, DifferentialForm> terms_;
};

FormPencil wedge(const FormPencil& a, const FormPencil& b);
FormPencil ext_d(const FormPencil& a);
/// k-fold wedge power.
FormPencil wedge_power(const FormPencil& a, int k);

/// An explicit nonzero coefficient: tau-monomial, coordinate tuple, value.
struct FormWitness {
    std::vector<int> tau;
    std::vector<int> coords; // increasing, 0-based
    MultiPoly coeff;
};

std::optional<FormWitness> first_nonzero(const FormPencil& p);

// ---------- hierarchy forms ----------

struct Omega3Report {
    DifferentialForm closedness;   // d Omega
    DifferentialForm wedge_square; // Omega ^ Omega
    DifferentialForm theorem31;    // Omega - dL ^ dM ^ dN
    bool all_zero() const;
};

/// Builds Omega = dB_11 ^ dB_21 ^ dq + sum_{n>=2} dB_1n ^ dB_2n ^ dt_n over
/// coordinates (lambda, p, q, t2..tK); the t1 slot of the triple is
/// evaluated at 0 (the n = 1 flow is q-translation, so t1 only shifts q).
/// The triple must be polynomial in lambda (no tails, no negative powers).
Omega3Report omega3_check(const VpTriple& triple);

/// d( M dL ^ dN + B_11 dB_21 ^ dq + sum_{n>=2} B_1n dB_2n ^ dt_n );
/// zero certifies local existence of the potential one-form.
DifferentialForm krichever_closedness(const VpTriple& triple);

// ---------- heavenly equation ----------

/// Coordinate table (x, y, xt, yt) used by the Plebanski checks.
TablePtr plebanski_table();

/// O_xxt O_yyt - O_xyt O_yxt - 1.
MultiPoly plebanski_residual(const MultiPoly& omega);

/// The lambda-pencil dx^dy + lambda(O_xxt dx^dxt + O_xyt dx^dyt
/// + O_yxt dy^dxt + O_yyt dy^dyt) + lambda^2 dxt^dyt, graded by lambda.
FormPencil plebanski_pencil(const MultiPoly& omega);

struct GindikinReport {
    FormPencil power_l_plus_1;               // must vanish
    std::optional<FormWitness> power_l_nonzero; // must exist
    FormPencil closedness;                   // d of the pencil, must vanish
    bool passes() const;
};

GindikinReport gindikin_check(const FormPencil& pencil, int l);

// ---------- determinant metric ----------

/// Symmetric rank-3 tensor: sorted (non-decreasing) 0-based coordinate
/// triple -> coefficient.
using SymTensor3 = std::map<std::array<int, 3>, MultiPoly>;

/// det of a 3x3 frame of 1-forms with symmetric products:
/// g = e11 e22 e33 - e11 e32 e23 + e12 e31 e23 - e12 e21 e33
///   + e13 e21 e32 - e13 e31 e22.
SymTensor3 det_metric3(const std::array<std::array<DifferentialForm, 3>, 3>& frame);

// ---------- hydrodynamic Lax compatibility ----------

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

struct HydroSymbolicResult {
    PolyMatrix evolution; // A_t - B_x along the solution, entries over (x, t)
    PolyMatrix commutator; // AB - BA along the solution
    bool all_zero() const;
};

/// A, B square matrices over u-variables; u_of_xt gives each u component
/// as a polynomial in (x, t). Exact chain-rule evaluation.
HydroSymbolicResult hydro_compat_symbolic(const PolyMatrix& A, const PolyMatrix& B,
                                          const std::vector<MultiPoly>& u_of_xt);

struct HydroGridResult {
    double max_evolution_residual = 0.0;
    double max_commutator_residual = 0.0;
};

/// Grid route: u sampled on a uniform (x, t) grid, second-order central
/// differences, boundary rows excluded.
HydroGridResult hydro_compat_grid(const PolyMatrix& A, const PolyMatrix& B,
                                  const std::vector<std::vector<std::vector<double>>>& u_grid,
                                  const std::vector<double>& xs, const std::vector<double>& ts);

} // namespace nambu
