#include "core/harness.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ris::harness {

using em::Complex;
using em::ImpedanceNetwork;

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Scenario with_grid(const Scenario& base, int m, double d_over_lambda) {
    Scenario s = base;
    s.grid_side = m;
    s.spacing_m = d_over_lambda * base.wavelength();
    return s;
}

int side_from_n(int n_ris) {
    const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_ris))));
    if (m * m != n_ris) {
        throw InvalidArgument("N_RIS = " + std::to_string(n_ris) + " is not a square");
    }
    return m;
}

}  // namespace

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::no_coupling_ideal: return "no_coupling_ideal";
        case Strategy::coupling_unaware: return "coupling_unaware";
        case Strategy::coupling_aware: return "coupling_aware";
    }
    return "?";
}

std::vector<Strategy> parse_strategies(const std::string& csv) {
    std::vector<Strategy> out;
    std::istringstream is(csv);
    std::string token;
    while (std::getline(is, token, ',')) {
        if (token.empty()) continue;
        if (token == "no_coupling_ideal") {
            out.push_back(Strategy::no_coupling_ideal);
        } else if (token == "coupling_unaware") {
            out.push_back(Strategy::coupling_unaware);
        } else if (token == "coupling_aware") {
            out.push_back(Strategy::coupling_aware);
        } else {
            throw InvalidArgument("unknown strategy '" + token + "'");
        }
    }
    if (out.empty()) throw InvalidArgument("empty strategy list");
    return out;
}

Scenario preset(const std::string& name) {
    if (name != "paper-28ghz") throw InvalidArgument("unknown preset '" + name + "'");

    Scenario s;
    s.frequency_hz = 28e9;
    const double lambda = s.wavelength();
    s.tx.position = {5.0, -5.0, 3.0};
    s.rx.position = {5.0, 5.0, 1.0};
    s.ris_center = {0.0, 0.0, 0.0};
    s.element_length_m = lambda / 32.0;
    s.element_radius_m = lambda / 500.0;
    s.tx.length = s.rx.length = s.element_length_m;
    s.tx.radius = s.rx.radius = s.element_radius_m;
    s.grid_side = 8;
    s.spacing_m = lambda / 4.0;
    s.r0_ohm = 0.2;
    s.y0 = Complex(1.0, 0.0);
    s.direct_link = false;  // blocked direct path
    return s;
}

GainRow evaluate_point(const Scenario& scenario, const std::vector<Strategy>& strategies,
                       const mc::McConfig& cfg) {
    const ImpedanceNetwork net = em::assemble_network(scenario);
    const ImpedanceNetwork diag = em::diagonal_only(net);

    GainRow row;
    row.n_ris = scenario.n_ris();
    row.d_over_lambda = scenario.spacing_m / scenario.wavelength();

    for (const Strategy strategy : strategies) {
        double gain_db = 0.0;
        switch (strategy) {
            case Strategy::no_coupling_ideal: {
                const nc::NcSolution sol = nc::solve(diag, scenario.r0_ohm);
                gain_db = channel::channel_no_coupling(diag, sol.loads, scenario.y0).gain_db;
                break;
            }
            case Strategy::coupling_unaware: {
                const nc::NcSolution sol = nc::solve(diag, scenario.r0_ohm);
                gain_db = channel::end_to_end_channel(net, sol.loads, scenario.y0).gain_db;
                break;
            }
            case Strategy::coupling_aware: {
                const auto [load, trace] = mc::run(net, scenario.r0_ohm, cfg);
                gain_db = channel::end_to_end_channel(net, load, scenario.y0).gain_db;
                break;
            }
        }
        row.gain_db.push_back(gain_db);
    }
    return row;
}

void run_convergence(const Scenario& base, const std::vector<int>& n_ris_values,
                     const std::vector<double>& d_over_lambda_values, const mc::McConfig& cfg,
                     std::ostream& out) {
    out << "n_ris,d_over_lambda,k,objective_ohm,objective_db\n";
    for (const int n_ris : n_ris_values) {
        const int m = side_from_n(n_ris);
        for (const double dl : d_over_lambda_values) {
            const Scenario s = with_grid(base, m, dl);
            const ImpedanceNetwork net = em::assemble_network(s);
            const auto [load, trace] = mc::run(net, s.r0_ohm, cfg);
            for (std::size_t k = 0; k < trace.objective.size(); ++k) {
                out << n_ris << ',' << fmt(dl) << ',' << (k + 1) << ','
                    << fmt(trace.objective[k]) << ','
                    << fmt(20.0 * std::log10(trace.objective[k])) << '\n';
            }
        }
    }
}

void run_distance_sweep(const Scenario& base, const std::vector<double>& d_over_lambda_values,
                        const std::vector<Strategy>& strategies, const mc::McConfig& cfg,
                        std::ostream& out) {
    out << "d_over_lambda";
    for (const Strategy s : strategies) out << ",gain_db_" << strategy_name(s);
    out << '\n';
    for (const double dl : d_over_lambda_values) {
        const GainRow row = evaluate_point(with_grid(base, base.grid_side, dl), strategies, cfg);
        out << fmt(dl);
        for (const double g : row.gain_db) out << ',' << fmt(g);
        out << '\n';
    }
}

void run_constant_area_sweep(const Scenario& base, const std::vector<int>& n_ris_values,
                             double area_over_lambda2, const std::vector<Strategy>& strategies,
                             const mc::McConfig& cfg, std::ostream& out) {
    if (!(area_over_lambda2 > 0.0)) throw InvalidArgument("area must be positive");
    out << "n_ris,d_over_lambda";
    for (const Strategy s : strategies) out << ",gain_db_" << strategy_name(s);
    out << '\n';
    for (const int n_ris : n_ris_values) {
        const int m = side_from_n(n_ris);
        const double dl = std::sqrt(area_over_lambda2 / static_cast<double>(n_ris));
        const GainRow row = evaluate_point(with_grid(base, m, dl), strategies, cfg);
        out << n_ris << ',' << fmt(dl);
        for (const double g : row.gain_db) out << ',' << fmt(g);
        out << '\n';
    }
}

std::vector<ValidationCheck> run_validate(double impedance_perturbation) {
    std::vector<ValidationCheck> checks;
    const double scale = 1.0 + impedance_perturbation;

    // Reference impedances of the classical half-wave dipole, frozen from the
    // induced-EMF closed form with sine/cosine integrals.
    {
        const double lambda = 1.0;
        const double k0 = 2.0 * std::numbers::pi / lambda;
        em::WireElement w;
        w.position = {0.0, 0.0, 0.0};
        w.length = lambda / 2.0;
        w.radius = lambda / 2000.0;
        const Complex ref(73.0788623406, 42.3267967435);
        const Complex z = scale * em::self_impedance(w, k0);
        ValidationCheck c;
        c.name = "dipole_self_halfwave";
        c.measured = std::abs(z - ref) / std::abs(ref);
        c.bound = 0.02;
        c.pass = c.measured <= c.bound;
        checks.push_back(c);

        em::WireElement w2 = w;
        w2.position = {lambda / 2.0, 0.0, 0.0};
        const Complex ref21(-12.5234074525, -29.9079359347);
        const Complex z21 = scale * em::mutual_impedance(w, w2, k0);
        ValidationCheck c2;
        c2.name = "dipole_mutual_halfwave_halfwave_spacing";
        c2.measured = std::abs(z21 - ref21) / std::abs(ref21);
        c2.bound = 0.02;
        c2.pass = c2.measured <= c2.bound;
        checks.push_back(c2);
    }

    // Closed-form phases against the exhaustive grid on a fixed instance.
    {
        nc::NcProblem p;
        p.a = {Complex(1.0, 0.5), Complex(-0.3, 0.8), Complex(0.6, -0.2)};
        p.b = Complex(0.8, -0.4);
        p.x_abs = 1.0;
        p.z_ss_diag = Complex(0.5, 1.0);
        const double closed = p.upper_bound();
        const nc::BruteForceResult grid = nc::brute_force_phases(p, 720);
        double sum_abs_a = 0.0;
        for (const auto& ai : p.a) sum_abs_a += std::abs(ai);
        const double grid_bound = 2.0 * sum_abs_a * (2.0 * std::numbers::pi / 720.0);
        ValidationCheck c;
        c.name = "brute_force_phase_optimality";
        c.measured = grid.objective - closed;
        c.bound = grid_bound;
        c.pass = c.measured <= c.bound;
        checks.push_back(c);
    }

    // Exact channel against the summation form on a diagonal network.
    {
        Scenario s = with_grid(preset("paper-28ghz"), 3, 0.25);
        const ImpedanceNetwork diag = em::diagonal_only(em::assemble_network(s));
        channel::RisLoad load;
        load.r0 = s.r0_ohm;
        for (int i = 0; i < s.n_ris(); ++i) {
            load.reactances.push_back(100.0 * std::sin(1.0 + static_cast<double>(i)));
        }
        const Complex h1 = channel::end_to_end_channel(diag, load, s.y0).h;
        const Complex h2 = channel::channel_no_coupling(diag, load, s.y0).h;
        ValidationCheck c;
        c.name = "diagonal_equivalence";
        c.measured = std::abs(h1 - h2) / std::abs(h2);
        c.bound = 1e-10;
        c.pass = c.measured <= c.bound;
        checks.push_back(c);
    }

    // Neumann truncation error against the exact re-solve over a short run.
    {
        Scenario s = with_grid(preset("paper-28ghz"), 2, 0.125);
        const ImpedanceNetwork net = em::assemble_network(s);
        mc::McState state = mc::init_state(net, s.r0_ohm);
        mc::McConfig cfg;
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            const double delta = mc::select_delta(state.g_inv_norm, cfg.delta);
            const auto zd = mc::optimal_perturbation(state.b, state.p, state.q, delta);
            em::ComplexVector applied(zd.size());
            for (std::size_t i = 0; i < zd.size(); ++i) applied[i] = Complex(0.0, zd[i].imag());
            const double linearized = std::abs(mc::neumann_apply(state.q, state.p, applied, state.b));
            const double ratio = delta * state.g_inv_norm;
            state = mc::step(state, net, cfg);
            const double exact = std::abs(state.b);
            const double err = std::abs(linearized - exact) / exact;
            worst = std::max(worst, err / (2.0 * ratio * ratio));
        }
        ValidationCheck c;
        c.name = "neumann_error_bound";
        c.measured = worst;
        c.bound = 1.0;
        c.pass = c.measured <= c.bound;
        checks.push_back(c);
    }

    // Reciprocity of the assembled coupling matrix.
    {
        Scenario s = with_grid(preset("paper-28ghz"), 3, 0.125);
        const ImpedanceNetwork net = em::assemble_network(s);
        double worst = 0.0;
        for (std::size_t i = 0; i < net.z_ss.rows(); ++i) {
            for (std::size_t j = 0; j < net.z_ss.cols(); ++j) {
                const double denom = std::abs(net.z_ss(i, j));
                if (denom == 0.0) continue;
                worst = std::max(worst, std::abs(net.z_ss(i, j) - net.z_ss(j, i)) / denom);
            }
        }
        ValidationCheck c;
        c.name = "z_ss_reciprocity";
        c.measured = worst;
        c.bound = 1e-9;
        c.pass = c.measured <= c.bound;
        checks.push_back(c);
    }

    return checks;
}

int write_validation_report(const std::vector<ValidationCheck>& checks, std::ostream& out) {
    int failed = 0;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS" : "FAIL") << ' ' << c.name << " measured=" << fmt(c.measured)
            << " bound=" << fmt(c.bound) << '\n';
        if (!c.pass) ++failed;
    }
    return failed;
}

}  // namespace ris::harness
