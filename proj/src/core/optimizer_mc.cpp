#include "core/optimizer_mc.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

namespace ris::mc {

using numerics::ComplexMatrix;
using numerics::wrap_to_pi;

namespace {

ComplexMatrix system_matrix(const ImpedanceNetwork& net, const channel::RisLoad& load) {
    ComplexMatrix g = net.z_ss;
    for (std::size_t i = 0; i < load.size(); ++i) g(i, i) += load.entry(i);
    return g;
}

}  // namespace

Bpq compute_bpq(const ImpedanceNetwork& net, const channel::RisLoad& load) {
    const std::size_t n = load.size();
    const ComplexMatrix g = system_matrix(net, load);

    Bpq out;
    out.q = numerics::lu_solve(g, net.z_st);

    // p = z_RS G^{-1}  <=>  G^T p^T = z_RS^T
    ComplexMatrix gt(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) gt(i, j) = g(j, i);
    }
    out.p = numerics::lu_solve(gt, net.z_rs);

    Complex scattered = 0.0;
    for (std::size_t i = 0; i < n; ++i) scattered += net.z_rs[i] * out.q[i];
    out.b = net.z_rt - scattered;

    out.g_inv_norm = numerics::spectral_norm(numerics::invert(g));
    return out;
}

McState init_state(const ImpedanceNetwork& net, double r0) {
    McState state;
    state.k = 1;
    state.load = nc::solve(em::diagonal_only(net), r0).loads;
    Bpq bpq = compute_bpq(net, state.load);
    state.b = bpq.b;
    state.p = std::move(bpq.p);
    state.q = std::move(bpq.q);
    state.g_inv_norm = bpq.g_inv_norm;
    return state;
}

ComplexVector optimal_perturbation(Complex b, const ComplexVector& p, const ComplexVector& q,
                                   double delta) {
    if (p.size() != q.size()) throw InvalidArgument("optimal_perturbation: size mismatch");
    const double ang_b = b == Complex(0.0) ? 0.0 : std::arg(b);
    ComplexVector zd(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        double phase = 0.0;
        if (p[i] != Complex(0.0) && q[i] != Complex(0.0)) {
            phase = wrap_to_pi(ang_b - std::arg(p[i]) - std::arg(q[i]));
        }
        zd[i] = delta * std::exp(Complex(0.0, phase));
    }
    return zd;
}

Complex neumann_apply(const ComplexVector& q, const ComplexVector& p,
                      const ComplexVector& zd_diag, Complex b) {
    Complex s = b;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * zd_diag[i] * q[i];
    return s;
}

double select_delta(double g_inv_norm, const DeltaPolicy& policy) {
    if (!(g_inv_norm > 0.0)) throw InvalidArgument("select_delta: norm must be positive");
    constexpr double kEpsDeltaMax = 0.5;
    if (policy.kind == DeltaPolicy::Kind::adaptive) {
        return policy.value / g_inv_norm;
    }
    const double cap = kEpsDeltaMax / g_inv_norm;
    if (policy.value > cap) {
        std::cerr << "warning: fixed delta " << policy.value << " Ohm clamped to " << cap
                  << " Ohm to stay inside the series convergence region\n";
        return cap;
    }
    return policy.value;
}

McState step(const McState& state, const ImpedanceNetwork& net, const McConfig& cfg) {
    const double delta = select_delta(state.g_inv_norm, cfg.delta);
    const ComplexVector zd = optimal_perturbation(state.b, state.p, state.q, delta);

    McState next;
    next.k = state.k + 1;
    next.load = state.load;
    for (std::size_t i = 0; i < zd.size(); ++i) next.load.reactances[i] += zd[i].imag();

    Bpq bpq = compute_bpq(net, next.load);
    next.b = bpq.b;
    next.p = std::move(bpq.p);
    next.q = std::move(bpq.q);
    next.g_inv_norm = bpq.g_inv_norm;
    return next;
}

std::pair<channel::RisLoad, McTrace> run(const ImpedanceNetwork& net, double r0,
                                         const McConfig& cfg) {
    if (cfg.max_iters < 1) throw InvalidArgument("run: max_iters must be >= 1");

    McState state = init_state(net, r0);
    McTrace trace;
    trace.objective.reserve(cfg.max_iters);

    double prev_obj = std::abs(state.b);
    int stall = 0;
    for (int k = 1; k <= cfg.max_iters; ++k) {
        const double delta = select_delta(state.g_inv_norm, cfg.delta);
        const double bound = delta * state.g_inv_norm;

        McState next;
        try {
            next = step(state, net, cfg);
        } catch (const SingularMatrix&) {
            // Keep the trace collected so far for post-mortem.
            trace.monotonicity_violations =
                static_cast<int>(std::count(trace.violation.begin(), trace.violation.end(), 1));
            throw;
        }

        const double obj = std::abs(next.b);
        const int violated = obj < prev_obj * (1.0 - cfg.monotonicity_tol) ? 1 : 0;
        trace.objective.push_back(obj);
        trace.delta_used.push_back(delta);
        trace.norm_bound.push_back(bound);
        trace.violation.push_back(violated);

        const double rel_improvement = (obj - prev_obj) / std::max(prev_obj, 1e-300);
        stall = rel_improvement < cfg.conv_tol ? stall + 1 : 0;

        prev_obj = obj;
        state = std::move(next);
        if (stall >= cfg.conv_window) break;
    }

    trace.monotonicity_violations =
        static_cast<int>(std::count(trace.violation.begin(), trace.violation.end(), 1));
    return {state.load, trace};
}

void write_trace_csv(const McTrace& trace, std::ostream& out) {
    out << "k,objective_ohm,objective_db,delta,delta_times_ginvnorm,violation_flag\n";
    char buf[160];
    for (std::size_t i = 0; i < trace.objective.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.12g,%.12g,%.12g,%d\n", i + 1,
                      trace.objective[i], 20.0 * std::log10(trace.objective[i]),
                      trace.delta_used[i], trace.norm_bound[i], trace.violation[i]);
        out << buf;
    }
}

}  // namespace ris::mc
