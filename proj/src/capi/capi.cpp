#include "ris/ris.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <string>

#include "core/harness.hpp"

namespace {

thread_local std::string g_last_error;

template <typename Fn>
ris_status guarded(Fn&& fn) {
    try {
        fn();
        return RIS_OK;
    } catch (const ris::SingularMatrix& e) {
        g_last_error = e.what();
        return RIS_ERR_SINGULAR_MATRIX;
    } catch (const ris::DegenerateGeometry& e) {
        g_last_error = e.what();
        return RIS_ERR_DEGENERATE_GEOMETRY;
    } catch (const ris::InvalidResistance& e) {
        g_last_error = e.what();
        return RIS_ERR_INVALID_RESISTANCE;
    } catch (const ris::ResonantPhase& e) {
        g_last_error = e.what();
        return RIS_ERR_RESONANT_PHASE;
    } catch (const ris::ProblemTooLarge& e) {
        g_last_error = e.what();
        return RIS_ERR_PROBLEM_TOO_LARGE;
    } catch (const ris::DivisionByZero& e) {
        g_last_error = e.what();
        return RIS_ERR_DIVISION_BY_ZERO;
    } catch (const ris::NonConvergence& e) {
        g_last_error = e.what();
        return RIS_ERR_NON_CONVERGENCE;
    } catch (const ris::IoError& e) {
        g_last_error = e.what();
        return RIS_ERR_IO;
    } catch (const ris::InvalidArgument& e) {
        g_last_error = e.what();
        return RIS_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RIS_ERR_INTERNAL;
    }
}

ris_status fail_invalid(const char* msg) {
    g_last_error = msg;
    return RIS_ERR_INVALID_ARGUMENT;
}

std::ofstream open_out(const char* path) {
    std::ofstream out(path);
    if (!out) throw ris::IoError(std::string("cannot open output file: ") + path);
    return out;
}

ris::mc::McConfig mc_config(int max_iters, double eps_delta = 0.1) {
    ris::mc::McConfig cfg;
    if (max_iters > 0) cfg.max_iters = max_iters;
    cfg.delta = ris::mc::DeltaPolicy::adaptive(eps_delta);
    return cfg;
}

}  // namespace

struct ris_scenario {
    ris::em::Scenario s;
};

struct ris_network {
    ris::em::ImpedanceNetwork net;
    ris::em::Scenario scenario;  // frequency / Y0 / R0 context
};

extern "C" {

const char* ris_status_name(ris_status status) {
    switch (status) {
        case RIS_OK: return "ok";
        case RIS_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case RIS_ERR_SINGULAR_MATRIX: return "singular_matrix";
        case RIS_ERR_DEGENERATE_GEOMETRY: return "degenerate_geometry";
        case RIS_ERR_INVALID_RESISTANCE: return "invalid_resistance";
        case RIS_ERR_RESONANT_PHASE: return "resonant_phase";
        case RIS_ERR_PROBLEM_TOO_LARGE: return "problem_too_large";
        case RIS_ERR_DIVISION_BY_ZERO: return "division_by_zero";
        case RIS_ERR_NON_CONVERGENCE: return "non_convergence";
        case RIS_ERR_IO: return "io_error";
        case RIS_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* ris_last_error(void) {
    return g_last_error.c_str();
}

ris_status ris_scenario_create_preset(const char* name, ris_scenario** out) {
    if (!name || !out) return fail_invalid("null argument");
    return guarded([&] { *out = new ris_scenario{ris::harness::preset(name)}; });
}

ris_status ris_scenario_load_file(const char* path, ris_scenario** out) {
    if (!path || !out) return fail_invalid("null argument");
    return guarded([&] { *out = new ris_scenario{ris::em::load_scenario(path)}; });
}

ris_status ris_scenario_set_grid(ris_scenario* s, int m, double d_over_lambda) {
    if (!s) return fail_invalid("null scenario");
    if (m < 1 || !(d_over_lambda > 0.0)) return fail_invalid("bad grid parameters");
    s->s.grid_side = m;
    s->s.spacing_m = d_over_lambda * s->s.wavelength();
    return RIS_OK;
}

ris_status ris_scenario_get_wavelength(const ris_scenario* s, double* out_m) {
    if (!s || !out_m) return fail_invalid("null argument");
    *out_m = s->s.wavelength();
    return RIS_OK;
}

ris_status ris_scenario_get_n_ris(const ris_scenario* s, int* out_n) {
    if (!s || !out_n) return fail_invalid("null argument");
    *out_n = s->s.n_ris();
    return RIS_OK;
}

void ris_scenario_free(ris_scenario* s) {
    delete s;
}

ris_status ris_network_assemble(const ris_scenario* s, ris_network** out) {
    if (!s || !out) return fail_invalid("null argument");
    return guarded([&] { *out = new ris_network{ris::em::assemble_network(s->s), s->s}; });
}

ris_status ris_network_size(const ris_network* net, int* out_n) {
    if (!net || !out_n) return fail_invalid("null argument");
    *out_n = static_cast<int>(net->net.z_ss.rows());
    return RIS_OK;
}

void ris_network_free(ris_network* net) {
    delete net;
}

ris_status ris_optimize_no_coupling(const ris_network* net, double r0_ohm,
                                    double* reactances_out, double* predicted_gain_db_out) {
    if (!net) return fail_invalid("null network");
    return guarded([&] {
        const auto sol = ris::nc::solve(ris::em::diagonal_only(net->net), r0_ohm);
        if (reactances_out) {
            std::memcpy(reactances_out, sol.loads.reactances.data(),
                        sol.loads.reactances.size() * sizeof(double));
        }
        if (predicted_gain_db_out) {
            *predicted_gain_db_out =
                20.0 * std::log10(std::abs(net->scenario.y0) * sol.predicted_gain);
        }
    });
}

ris_status ris_optimize_coupling_aware(const ris_network* net, double r0_ohm, int max_iters,
                                       double eps_delta, const char* trace_csv_path,
                                       double* reactances_out, double* gain_db_out,
                                       int* monotonicity_violations_out) {
    if (!net) return fail_invalid("null network");
    if (!(eps_delta > 0.0) || eps_delta >= 1.0) return fail_invalid("eps_delta must be in (0,1)");
    return guarded([&] {
        const auto [load, trace] = ris::mc::run(net->net, r0_ohm, mc_config(max_iters, eps_delta));
        if (trace_csv_path) {
            auto out = open_out(trace_csv_path);
            ris::mc::write_trace_csv(trace, out);
        }
        if (reactances_out) {
            std::memcpy(reactances_out, load.reactances.data(),
                        load.reactances.size() * sizeof(double));
        }
        if (gain_db_out) {
            *gain_db_out =
                ris::channel::end_to_end_channel(net->net, load, net->scenario.y0).gain_db;
        }
        if (monotonicity_violations_out) {
            *monotonicity_violations_out = trace.monotonicity_violations;
        }
    });
}

ris_status ris_channel_gain_db(const ris_network* net, const double* reactances, int n,
                               double r0_ohm, double* gain_db_out) {
    if (!net || !reactances || !gain_db_out) return fail_invalid("null argument");
    if (n != static_cast<int>(net->net.z_ss.rows())) return fail_invalid("reactance count mismatch");
    return guarded([&] {
        ris::channel::RisLoad load;
        load.r0 = r0_ohm;
        load.reactances.assign(reactances, reactances + n);
        *gain_db_out =
            ris::channel::end_to_end_channel(net->net, load, net->scenario.y0).gain_db;
    });
}

ris_status ris_run_convergence(const ris_scenario* s, const int* n_ris, int n_count,
                               const double* d_over_lambda, int d_count, int max_iters,
                               const char* out_csv_path) {
    if (!s || !n_ris || !d_over_lambda || !out_csv_path) return fail_invalid("null argument");
    if (n_count < 1 || d_count < 1) return fail_invalid("empty sweep");
    return guarded([&] {
        auto out = open_out(out_csv_path);
        ris::harness::run_convergence(s->s, {n_ris, n_ris + n_count},
                                      {d_over_lambda, d_over_lambda + d_count},
                                      mc_config(max_iters), out);
    });
}

ris_status ris_run_distance_sweep(const ris_scenario* s, const double* d_over_lambda,
                                  int d_count, const char* strategies, int max_iters,
                                  const char* out_csv_path) {
    if (!s || !d_over_lambda || !strategies || !out_csv_path) return fail_invalid("null argument");
    if (d_count < 1) return fail_invalid("empty sweep");
    return guarded([&] {
        auto out = open_out(out_csv_path);
        ris::harness::run_distance_sweep(s->s, {d_over_lambda, d_over_lambda + d_count},
                                         ris::harness::parse_strategies(strategies),
                                         mc_config(max_iters), out);
    });
}

ris_status ris_run_area_sweep(const ris_scenario* s, const int* n_ris, int n_count,
                              double area_over_lambda2, const char* strategies, int max_iters,
                              const char* out_csv_path) {
    if (!s || !n_ris || !strategies || !out_csv_path) return fail_invalid("null argument");
    if (n_count < 1) return fail_invalid("empty sweep");
    return guarded([&] {
        auto out = open_out(out_csv_path);
        ris::harness::run_constant_area_sweep(s->s, {n_ris, n_ris + n_count}, area_over_lambda2,
                                              ris::harness::parse_strategies(strategies),
                                              mc_config(max_iters), out);
    });
}

ris_status ris_run_validate(const char* report_path, int* failed_out) {
    return guarded([&] {
        const auto checks = ris::harness::run_validate();
        int failed = 0;
        if (report_path) {
            auto out = open_out(report_path);
            failed = ris::harness::write_validation_report(checks, out);
        } else {
            failed = ris::harness::write_validation_report(checks, std::cout);
        }
        if (failed_out) *failed_out = failed;
    });
}

}  // extern "C"
