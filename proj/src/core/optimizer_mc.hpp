#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "core/channel.hpp"
#include "core/optimizer_nc.hpp"

namespace ris::mc {

using em::Complex;
using em::ComplexVector;
using em::ImpedanceNetwork;

struct DeltaPolicy {
    enum class Kind { fixed, adaptive };
    Kind kind = Kind::adaptive;
    double value = 0.1;  // fixed: delta in Ohm; adaptive: eps_delta in (0, 1)

    static DeltaPolicy fixed(double delta) { return {Kind::fixed, delta}; }
    static DeltaPolicy adaptive(double eps) { return {Kind::adaptive, eps}; }
};

struct McConfig {
    int max_iters = 500;
    DeltaPolicy delta{};
    double conv_tol = 1e-8;
    int conv_window = 10;
    double monotonicity_tol = 1e-6;
};

/// Iteration state: the current load together with the exact channel
/// quantities b, p, q and the spectral norm of the inverted system matrix.
struct McState {
    int k = 1;
    channel::RisLoad load;
    Complex b{};        // Ohm
    ComplexVector p;    // dimensionless
    ComplexVector q;    // dimensionless
    double g_inv_norm = 0.0;  // 1/Ohm
};

struct McTrace {
    std::vector<double> objective;   // exact |b| after each update, Ohm
    std::vector<double> delta_used;  // Ohm
    std::vector<double> norm_bound;  // delta * ||G^{-1}||
    std::vector<int> violation;      // per-step monotonicity flag
    int monotonicity_violations = 0;
};

struct Bpq {
    Complex b{};
    ComplexVector p;
    ComplexVector q;
    double g_inv_norm = 0.0;
};

/// Exact b, p, q for the current load: q solves G q = z_ST, p solves the
/// transposed system, and the explicit inverse is formed only for the
/// spectral norm feeding the delta rule.
Bpq compute_bpq(const ImpedanceNetwork& net, const channel::RisLoad& load);

/// Starts from the no-coupling closed form applied to the diagonal of Z_SS.
McState init_state(const ImpedanceNetwork& net, double r0);

/// Diagonal of the optimal perturbation: entries delta * exp(j wrap(angle(b)
/// - angle(p_i) - angle(q_i))); phase 0 when p_i q_i = 0.
ComplexVector optimal_perturbation(Complex b, const ComplexVector& p, const ComplexVector& q,
                                   double delta);

/// Linearized objective argument b + sum_i p(i) zd(i) q(i) of the two-term
/// Neumann truncation.
Complex neumann_apply(const ComplexVector& q, const ComplexVector& p,
                      const ComplexVector& zd_diag, Complex b);

/// Fixed policy clamps to 0.5 / ||G^{-1}|| with a warning; adaptive returns
/// eps_delta / ||G^{-1}||.
double select_delta(double g_inv_norm, const DeltaPolicy& policy);

/// One iteration: perturb the reactances by the imaginary part of the optimal
/// perturbation, then recompute b, p, q exactly.
McState step(const McState& state, const ImpedanceNetwork& net, const McConfig& cfg);

/// Full run with the convergence-window early stop. The trace records the
/// exact objective, never the linearized one.
std::pair<channel::RisLoad, McTrace> run(const ImpedanceNetwork& net, double r0,
                                         const McConfig& cfg);

/// CSV columns: k, objective_ohm, objective_db, delta, delta_times_ginvnorm,
/// violation_flag.
void write_trace_csv(const McTrace& trace, std::ostream& out);

}  // namespace ris::mc
