#include "nambu/flows.hpp"

#include "nambu/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace nambu {

NambuSystem make_system(TablePtr table, std::vector<std::string> phase,
                        std::vector<MultiPoly> hamiltonians,
                        std::map<std::string, Rational> constants,
                        std::optional<std::string> divisor) {
    if (phase.size() < 2) throw DomainError("NambuSystem: need at least 2 phase coordinates");
    if (hamiltonians.size() + 1 != phase.size())
        throw DomainError("NambuSystem: need exactly n-1 Hamiltonians");
    for (const auto& h : hamiltonians) require_same_table(table, h.table(), "make_system");
    NambuSystem sys{std::move(table), std::move(phase), std::move(hamiltonians),
                    std::move(constants), std::move(divisor)};
    (void)sys.space(); // validates phase coordinates exist and are distinct
    if (sys.divisor) sys.table->index(*sys.divisor);
    return sys;
}

namespace {

MultiPoly half(const MultiPoly& p) {
    return p.scaled(Rational(1, 2));
}

} // namespace

NambuSystem rigid_body_symbolic() {
    auto table = VariableTable::coordinates({"m1", "m2", "m3", "a1", "a2", "a3", "k"});
    auto v = [&](const char* n) { return MultiPoly::variable(table, n); };
    const MultiPoly m1 = v("m1"), m2 = v("m2"), m3 = v("m3");
    const MultiPoly a1 = v("a1"), a2 = v("a2"), a3 = v("a3"), k = v("k");
    MultiPoly h1 = half(a2 * m1 * m1 - a1 * m2 * m2);
    // cleared-denominator form of (1/2)((a3-k)/a1 m1^2 - m3^2)
    MultiPoly h2_scaled = half((a3 - k) * m1 * m1 - a1 * m3 * m3);
    return make_system(table, {"m1", "m2", "m3"}, {h1, h2_scaled}, {}, std::string("a1"));
}

NambuSystem system_from_a(const Rational& a1, const Rational& a2, const Rational& a3,
                          const Rational& k) {
    if (a1 == 0)
        throw DomainError("system_from_a: a1 = 0 (I2 = I3) is degenerate; the Hamiltonian "
                          "pair requires a1 != 0");
    auto table = VariableTable::coordinates({"m1", "m2", "m3"});
    auto v = [&](const char* n) { return MultiPoly::variable(table, n); };
    const MultiPoly m1 = v("m1"), m2 = v("m2"), m3 = v("m3");
    MultiPoly h1 = half((m1 * m1).scaled(a2) - (m2 * m2).scaled(a1));
    MultiPoly h2 = half((m1 * m1).scaled((a3 - k) / a1) - m3 * m3);
    return make_system(table, {"m1", "m2", "m3"}, {h1, h2});
}

NambuSystem rigid_body_from_inertia(const Rational& I1, const Rational& I2, const Rational& I3,
                                    const Rational& k) {
    if (I1 == 0 || I2 == 0 || I3 == 0) throw DomainError("inertia moments must be nonzero");
    const Rational a1 = Rational(1) / I2 - Rational(1) / I3;
    const Rational a2 = Rational(1) / I3 - Rational(1) / I1;
    const Rational a3 = Rational(1) / I1 - Rational(1) / I2;
    return system_from_a(a1, a2, a3, k);
}

NambuSystem euler_top() {
    return system_from_a(Rational(1), Rational(1), Rational(1), Rational(0));
}

std::vector<MultiPoly> vector_field(const NambuSystem& sys) {
    const BracketSpace space = sys.space();
    std::vector<MultiPoly> field;
    field.reserve(sys.phase.size());
    for (const auto& name : sys.phase) {
        std::vector<MultiPoly> args = sys.hamiltonians;
        args.push_back(MultiPoly::variable(sys.table, name));
        MultiPoly comp = nambu_bracket(args, space);
        if (sys.divisor) comp = comp.div_exact_var(sys.table->index(*sys.divisor));
        field.push_back(std::move(comp));
    }
    return field;
}

MultiPoly divergence(const std::vector<MultiPoly>& field, const BracketSpace& space) {
    if (field.size() != static_cast<size_t>(space.order()))
        throw ArityError("divergence: field size does not match bracket order");
    MultiPoly acc = MultiPoly::zero(space.table());
    for (size_t i = 0; i < field.size(); ++i)
        acc += field[i].partial(space.coordinate_indices()[i]);
    return acc;
}

CompiledPoly::CompiledPoly(const MultiPoly& p, const std::vector<int>& phase_idx,
                           const std::map<int, Rational>& constants) {
    MultiPoly bound = p.bind(constants);
    for (const auto& [e, c] : bound.terms()) {
        Term t;
        t.c = rational_to_double(c);
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            int slot = -1;
            for (size_t s = 0; s < phase_idx.size(); ++s)
                if (phase_idx[s] == static_cast<int>(v)) slot = static_cast<int>(s);
            if (slot < 0)
                throw DomainError("CompiledPoly: unbound non-phase variable '" +
                                  bound.table()->at(static_cast<int>(v)).name + "'");
            t.powers.emplace_back(slot, e[v]);
        }
        terms_.push_back(std::move(t));
    }
}

double CompiledPoly::eval(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const auto& t : terms_) {
        double m = t.c;
        for (const auto& [slot, exp] : t.powers) {
            double b = x[static_cast<size_t>(slot)];
            for (int i = 0; i < exp; ++i) m *= b;
        }
        acc += m;
    }
    return acc;
}

Trajectory integrate(const NambuSystem& sys, const std::vector<double>& initial, double t_end,
                     double dt) {
    if (dt <= 0) throw DomainError("integrate: dt must be positive");
    if (initial.size() != sys.phase.size())
        throw DomainError("integrate: initial state dimension mismatch");

    std::vector<int> phase_idx;
    std::map<int, Rational> bound;
    for (const auto& name : sys.phase) phase_idx.push_back(sys.table->index(name));
    for (const auto& [name, value] : sys.constants) bound.emplace(sys.table->index(name), value);

    std::vector<CompiledPoly> field;
    for (const auto& comp : vector_field(sys)) field.emplace_back(comp, phase_idx, bound);

    const size_t n = initial.size();
    const auto deriv = [&](const std::vector<double>& y, std::vector<double>& dy) {
        for (size_t i = 0; i < n; ++i) dy[i] = field[i].eval(y);
    };

    Trajectory traj;
    traj.names = sys.phase;
    traj.dt = dt;
    const long steps = std::lround(t_end / dt);
    traj.times.reserve(static_cast<size_t>(steps) + 1);
    traj.states.reserve(static_cast<size_t>(steps) + 1);

    std::vector<double> y = initial;
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    traj.times.push_back(0.0);
    traj.states.push_back(y);
    for (long s = 0; s < steps; ++s) {
        deriv(y, k1);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        deriv(tmp, k2);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        deriv(tmp, k3);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
        deriv(tmp, k4);
        for (size_t i = 0; i < n; ++i)
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        const double t = static_cast<double>(s + 1) * dt;
        for (double v : y)
            if (!std::isfinite(v))
                throw NonFiniteError("integrate: non-finite state at t = " + std::to_string(t), t);
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    return traj;
}

std::vector<double> conserved_drift(const Trajectory& traj, const std::vector<MultiPoly>& integrals,
                                    const NambuSystem& sys) {
    std::vector<int> phase_idx;
    std::map<int, Rational> bound;
    for (const auto& name : sys.phase) phase_idx.push_back(sys.table->index(name));
    for (const auto& [name, value] : sys.constants) bound.emplace(sys.table->index(name), value);

    std::vector<double> out;
    for (const auto& f : integrals) {
        CompiledPoly cp(f, phase_idx, bound);
        const double f0 = cp.eval(traj.states.front());
        const double scale = std::max(1.0, std::fabs(f0));
        double worst = 0.0;
        for (const auto& s : traj.states)
            worst = std::max(worst, std::fabs(cp.eval(s) - f0) / scale);
        out.push_back(worst);
    }
    return out;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << "t";
    for (const auto& n : traj.names) os << "," << n;
    os << "\n";
    char buf[64];
    for (size_t i = 0; i < traj.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[i]);
        os << buf;
        for (double v : traj.states[i]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << "," << buf;
        }
        os << "\n";
    }
    return os.str();
}

} // namespace nambu
