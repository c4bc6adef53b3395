#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "core/optimizer_mc.hpp"

namespace ris::harness {

using em::Scenario;

enum class Strategy {
    no_coupling_ideal,  // closed-form loads on a diagonal-only network
    coupling_unaware,   // closed-form loads evaluated on the full network
    coupling_aware,     // iterative optimizer on the full network
};

const char* strategy_name(Strategy s);

/// Parses a comma-separated strategy list; throws InvalidArgument on unknown
/// names or an empty list.
std::vector<Strategy> parse_strategies(const std::string& csv);

/// Named scenario presets; currently only "paper-28ghz".
Scenario preset(const std::string& name);

/// Per-point gains in dB for the requested strategies, full determinism.
struct GainRow {
    int n_ris = 0;
    double d_over_lambda = 0.0;
    std::vector<double> gain_db;  // one per requested strategy, input order
};

GainRow evaluate_point(const Scenario& scenario, const std::vector<Strategy>& strategies,
                       const mc::McConfig& cfg);

/// One optimizer trace per (N_RIS, d) pair. CSV columns: n_ris,
/// d_over_lambda, k, objective_ohm, objective_db.
void run_convergence(const Scenario& base, const std::vector<int>& n_ris_values,
                     const std::vector<double>& d_over_lambda_values, const mc::McConfig& cfg,
                     std::ostream& out);

/// Fixed N_RIS (from base.grid_side), swept element spacing. CSV columns:
/// d_over_lambda, gain_db_<strategy>...
void run_distance_sweep(const Scenario& base, const std::vector<double>& d_over_lambda_values,
                        const std::vector<Strategy>& strategies, const mc::McConfig& cfg,
                        std::ostream& out);

/// Fixed RIS area: d = sqrt(area / N_RIS). CSV columns: n_ris,
/// d_over_lambda, gain_db_<strategy>...
void run_constant_area_sweep(const Scenario& base, const std::vector<int>& n_ris_values,
                             double area_over_lambda2, const std::vector<Strategy>& strategies,
                             const mc::McConfig& cfg, std::ostream& out);

struct ValidationCheck {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// Built-in validation suite: dipole reference impedances, brute-force
/// optimality, diagonal equivalence, Neumann error bound, reciprocity.
/// `impedance_perturbation` is a fault-injection hook that scales the
/// computed dipole impedances in the reference checks.
std::vector<ValidationCheck> run_validate(double impedance_perturbation = 0.0);

/// One line per check: name, measured, bound, pass flag. Returns the number
/// of failed checks.
int write_validation_report(const std::vector<ValidationCheck>& checks, std::ostream& out);

}  // namespace ris::harness
