#include "core/optimizer_nc.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

namespace ris::nc {

using numerics::wrap_to_pi;

namespace {

constexpr double kReactanceClamp = 1e9;
constexpr double kResonanceEps = 1e-9;

double angle_or_zero(Complex z) {
    return z == Complex(0.0) ? 0.0 : std::arg(z);
}

}  // namespace

double NcProblem::r0() const {
    return x_abs - z_ss_diag.real();
}

double NcProblem::upper_bound() const {
    double s = std::abs(b);
    for (const Complex& ai : a) s += std::abs(ai);
    return s;
}

NcProblem build_nc_problem(const ImpedanceNetwork& net, double r0) {
    const std::size_t n = net.z_ss.rows();
    if (n == 0) throw InvalidArgument("build_nc_problem: empty network");

    const Complex z_ss_diag = net.z_ss(0, 0);
    const double x = r0 + z_ss_diag.real();
    if (!(x > 0.0)) {
        throw InvalidResistance("build_nc_problem: R0 + X_SS must be positive");
    }

    NcProblem p;
    p.z_ss_diag = z_ss_diag;
    p.x_abs = std::abs(x);
    p.a.resize(n);
    Complex a_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        p.a[i] = net.z_st[i] * net.z_rs[i] / (2.0 * p.x_abs);
        a_sum += p.a[i];
    }
    p.b = net.z_rt - a_sum;
    return p;
}

std::vector<double> optimal_phases(const NcProblem& p) {
    const double ang_b = angle_or_zero(p.b);
    std::vector<double> phases(p.a.size());
    for (std::size_t i = 0; i < p.a.size(); ++i) {
        phases[i] = p.a[i] == Complex(0.0)
                        ? 0.0
                        : wrap_to_pi(ang_b - std::arg(p.a[i]) + std::numbers::pi);
    }
    return phases;
}

channel::RisLoad phases_to_loads(const std::vector<double>& phases, const NcProblem& p) {
    if (phases.size() != p.a.size()) {
        throw InvalidArgument("phases_to_loads: phase count mismatch");
    }
    channel::RisLoad load;
    load.r0 = p.r0();
    load.reactances.resize(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i) {
        const Complex den = 1.0 + std::exp(Complex(0.0, phases[i]));
        if (std::abs(den) <= kResonanceEps) {
            throw ResonantPhase("phases_to_loads: phase at +-pi maps to an open circuit");
        }
        const Complex z = 2.0 * p.x_abs / den - p.z_ss_diag;
        double x = z.imag();
        if (std::abs(x) > kReactanceClamp) {
            std::cerr << "warning: clamping reactance " << x << " Ohm at element " << i << "\n";
            x = std::copysign(kReactanceClamp, x);
        }
        load.reactances[i] = x;
    }
    return load;
}

std::vector<double> stationarity_residual(const std::vector<double>& phases, const NcProblem& p) {
    const std::size_t n = p.a.size();
    const double ang_b = angle_or_zero(p.b);
    const double abs_b = std::abs(p.b);

    std::vector<double> chi(n), abs_a(n);
    for (std::size_t i = 0; i < n; ++i) {
        chi[i] = ang_b - angle_or_zero(p.a[i]) - phases[i];
        abs_a[i] = std::abs(p.a[i]);
    }

    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        double r = abs_b * abs_a[i] * std::sin(chi[i]);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            r -= abs_a[i] * abs_a[k] * std::sin(chi[i] - chi[k]);
        }
        residual[i] = r;
    }
    return residual;
}

BruteForceResult brute_force_phases(const NcProblem& p, int grid_points) {
    const std::size_t n = p.a.size();
    if (n > 4) throw ProblemTooLarge("brute_force_phases: more than 4 elements");
    if (grid_points < 8) throw InvalidArgument("brute_force_phases: need at least 8 grid points");

    const double step = 2.0 * std::numbers::pi / static_cast<double>(grid_points);
    auto grid_phase = [&](int idx) { return -std::numbers::pi + step * static_cast<double>(idx); };

    // Per-axis tables of a_i exp(j phi).
    std::vector<std::vector<Complex>> table(n, std::vector<Complex>(grid_points));
    for (std::size_t i = 0; i < n; ++i) {
        for (int g = 0; g < grid_points; ++g) {
            table[i][g] = p.a[i] * std::exp(Complex(0.0, grid_phase(g)));
        }
    }

    // Depth-first scan with the prefix sum hoisted out of the inner loop;
    // lexicographic order plus strict improvement keeps the lowest maximizer
    // on ties. Squared magnitudes avoid the sqrt in the hot loop.
    std::vector<int> idx(n, 0);
    std::vector<int> best_idx(n, 0);
    double best_norm = -1.0;
    auto scan = [&](auto&& self, std::size_t level, Complex prefix) -> void {
        const std::vector<Complex>& t = table[level];
        if (level + 1 == n) {
            for (int g = 0; g < grid_points; ++g) {
                const double m = std::norm(prefix - t[g]);
                if (m > best_norm) {
                    best_norm = m;
                    idx[level] = g;
                    best_idx = idx;
                }
            }
            return;
        }
        for (int g = 0; g < grid_points; ++g) {
            idx[level] = g;
            self(self, level + 1, prefix - t[g]);
        }
    };
    scan(scan, 0, p.b);

    BruteForceResult best;
    best.objective = std::sqrt(best_norm);
    best.phases.resize(n);
    for (std::size_t i = 0; i < n; ++i) best.phases[i] = grid_phase(best_idx[i]);
    return best;
}

NcSolution solve(const ImpedanceNetwork& net, double r0) {
    const NcProblem p = build_nc_problem(net, r0);
    NcSolution sol;
    sol.phases = optimal_phases(p);
    sol.loads = phases_to_loads(sol.phases, p);
    sol.predicted_gain = p.upper_bound();
    return sol;
}

}  // namespace ris::nc
