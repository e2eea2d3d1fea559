#pragma once

#include "nambu/bracket.hpp"
#include "nambu/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nambu {

/// A Nambu-Hamiltonian system: n phase coordinates, n-1 Hamiltonians.
/// `constants` binds symbolic constants to rationals for numeric runs.
/// When `divisor` is set, the last Hamiltonian is understood as
/// hamiltonians.back() / divisor with the divisor a nonvanishing constant
/// symbol; vector_field divides the bracket exactly (the bracket is linear
/// in constants, so this reproduces the un-cleared Hamiltonian's flow).
struct NambuSystem {
    TablePtr table;
    std::vector<std::string> phase;
    std::vector<MultiPoly> hamiltonians;
    std::map<std::string, Rational> constants;
    std::optional<std::string> divisor;

    BracketSpace space() const { return BracketSpace(table, phase); }
};

/// Validates counts and dependencies, returns the system.
NambuSystem make_system(TablePtr table, std::vector<std::string> phase,
                        std::vector<MultiPoly> hamiltonians,
                        std::map<std::string, Rational> constants = {},
                        std::optional<std::string> divisor = {});

/// Rigid body with feedback torque u = -k m1 m2 about the major axis,
/// symbolic constants a1, a2, a3, k. Phase space (m1, m2, m3).
NambuSystem rigid_body_symbolic();

/// Same system with rational constants a_i; requires a1 != 0.
NambuSystem system_from_a(const Rational& a1, const Rational& a2, const Rational& a3,
                          const Rational& k);

/// a_i from the inertia tensor: a1 = 1/I2 - 1/I3, a2 = 1/I3 - 1/I1,
/// a3 = 1/I1 - 1/I2. The degenerate case I2 == I3 (a1 = 0) is rejected.
NambuSystem rigid_body_from_inertia(const Rational& I1, const Rational& I2, const Rational& I3,
                                    const Rational& k);

/// Scalar Euler-top reduction: a1 = a2 = a3 = 1, k = 0.
NambuSystem euler_top();

/// Component i is {H_1, ..., H_{n-1}, x_i} (for n = 3 this equals the
/// {x_i, H_1, H_2} convention by cyclic antisymmetry).
std::vector<MultiPoly> vector_field(const NambuSystem& sys);

/// Sum of d(field_i)/d(phase_i) over the system's phase coordinates.
MultiPoly divergence(const std::vector<MultiPoly>& field, const BracketSpace& space);

/// Polynomial compiled to doubles over the phase coordinates for fast
/// evaluation inside the integrator.
class CompiledPoly {
public:
    CompiledPoly() = default;
    /// Binds `constants`, then requires the remainder to depend only on
    /// the phase coordinates.
    CompiledPoly(const MultiPoly& p, const std::vector<int>& phase_idx,
                 const std::map<int, Rational>& constants);
    double eval(const std::vector<double>& x) const;

private:
    struct Term {
        double c;
        std::vector<std::pair<int, int>> powers; // (phase slot, exponent)
    };
    std::vector<Term> terms_;
};

struct Trajectory {
    std::vector<std::string> names; // phase coordinate names
    std::vector<double> times;      // strictly increasing
    std::vector<std::vector<double>> states;
    std::string method = "rk4";
    double dt = 0.0;
};

/// Classical fixed-step fourth-order Runge-Kutta. Throws NonFiniteError
/// (with the offending time) when the state leaves the finite range.
Trajectory integrate(const NambuSystem& sys, const std::vector<double>& initial, double t_end,
                     double dt);

/// Per-integral max over samples of |F(state) - F(initial)| / max(1, |F(initial)|).
std::vector<double> conserved_drift(const Trajectory& traj, const std::vector<MultiPoly>& integrals,
                                    const NambuSystem& sys);

/// CSV with header "t,<name1>,...,<nameN>", 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);

} // namespace nambu
