#pragma once

#include <vector>

#include "core/channel.hpp"

namespace ris::nc {

using em::Complex;
using em::ComplexVector;
using em::ImpedanceNetwork;

/// Coefficients of the no-coupling objective |b - sum_i a_i exp(j phi_i)|.
struct NcProblem {
    ComplexVector a;      // Ohm
    Complex b{};          // Ohm
    double x_abs = 0.0;   // |R0 + X_SS|, Ohm
    Complex z_ss_diag{};  // Ohm

    double r0() const;
    double upper_bound() const;  // |b| + sum |a_i|
};

struct NcSolution {
    std::vector<double> phases;  // phi_i = 2 theta_i, each in [-pi, pi)
    channel::RisLoad loads;
    double predicted_gain = 0.0;  // |b| + sum |a_i|, Ohm
};

/// Builds the problem from the diagonal of Z_SS. Throws InvalidResistance
/// when R0 + X_SS <= 0; the closed-form load expression is only valid on the
/// positive branch.
NcProblem build_nc_problem(const ImpedanceNetwork& net, double r0);

/// Globally optimal phases phi_i = wrap(angle(b) - angle(a_i) + pi).
/// Conventions: angle(0) := 0 for b, and phi_i := 0 when a_i = 0.
std::vector<double> optimal_phases(const NcProblem& p);

/// Recovers loads via Z* = 2|R0 + X_SS| / (1 + exp(j phi)) - Z_SS(i,i).
/// Reactances are clamped to +-1e9 Ohm; |1 + exp(j phi)| <= 1e-9 throws
/// ResonantPhase.
channel::RisLoad phases_to_loads(const std::vector<double>& phases, const NcProblem& p);

/// Left-hand side of the stationarity system, one entry per element:
/// |b a_i| sin(chi_i) - sum_{k != i} |a_i a_k| sin(chi_i - chi_k)
/// with chi_i = angle(b) - angle(a_i) - phi_i.
std::vector<double> stationarity_residual(const std::vector<double>& phases, const NcProblem& p);

struct BruteForceResult {
    std::vector<double> phases;
    double objective = 0.0;
};

/// Exhaustive maximization over a uniform phase grid; validation oracle only.
/// Throws ProblemTooLarge for more than 4 elements. Ties break toward the
/// lexicographically lowest phase tuple.
BruteForceResult brute_force_phases(const NcProblem& p, int grid_points);

/// Convenience: problem build + optimal phases + load recovery.
NcSolution solve(const ImpedanceNetwork& net, double r0);

}  // namespace ris::nc
