#include "core/em_model.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

namespace ris::em {

namespace {

using numerics::QuadratureRule;
using numerics::gauss_legendre;

constexpr double kPi = std::numbers::pi;

double sinusoidal_current(double z, double half_length, double k0, double inv_sin_kl2) {
    return std::sin(k0 * (half_length - std::abs(z))) * inv_sin_kl2;
}

/// Gauss-Legendre nodes over [lo, hi] split at interior breakpoints, n points
/// per smooth piece. The sinusoidal profile has a slope discontinuity at the
/// wire center, so every wire integral is split there.
QuadratureRule split_rule(int n, double lo, double hi, std::initializer_list<double> breaks) {
    std::vector<double> edges{lo};
    for (double b : breaks) {
        if (b > lo && b < hi) edges.push_back(b);
    }
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());

    QuadratureRule out;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i] < edges[i + 1])) continue;
        QuadratureRule piece = gauss_legendre(static_cast<std::size_t>(n), edges[i], edges[i + 1]);
        out.nodes.insert(out.nodes.end(), piece.nodes.begin(), piece.nodes.end());
        out.weights.insert(out.weights.end(), piece.weights.begin(), piece.weights.end());
    }
    return out;
}

double transverse_separation(const WireElement& p, const WireElement& q) {
    return std::hypot(p.position[0] - q.position[0], p.position[1] - q.position[1]);
}

/// Double integral of the EMF kernel against both current profiles for the
/// general (well separated) pair geometry.
Complex pair_integral(double rho, double dc, double lp, double lq, double k0, int order) {
    const double inv_sp = 1.0 / std::sin(k0 * lp / 2.0);
    const double inv_sq = 1.0 / std::sin(k0 * lq / 2.0);
    const int half = std::max(order / 2, 2);
    const QuadratureRule rq = split_rule(half, -lq / 2.0, lq / 2.0, {0.0});
    const QuadratureRule rp = split_rule(half, -lp / 2.0, lp / 2.0, {0.0});

    Complex z = 0.0;
    for (std::size_t iq = 0; iq < rq.nodes.size(); ++iq) {
        const double zq = rq.nodes[iq];
        Complex ez = 0.0;
        for (std::size_t ip = 0; ip < rp.nodes.size(); ++ip) {
            const double zp = rp.nodes[ip];
            ez += sinusoidal_current(zp, lp / 2.0, k0, inv_sp) *
                  dipole_ez_kernel(rho, dc + zq - zp, k0) * rp.weights[ip];
        }
        z -= sinusoidal_current(zq, lq / 2.0, k0, inv_sq) * ez * rq.weights[iq];
    }
    return z;
}

/// Self-term evaluation. The kernel is quasi-singular along z = z' when the
/// transverse separation is the wire radius, so the double integral is folded
/// into a 1-D correlation integral over u = z - z' and the u axis is resolved
/// with the substitution u = a sinh(t).
Complex self_integral(double a, double l, double k0, const QuadratureSpec& quad) {
    const double inv_s = 1.0 / std::sin(k0 * l / 2.0);
    const double t_max = std::asinh(l / a);
    const QuadratureRule rt =
        gauss_legendre(static_cast<std::size_t>(quad.radial_order), 0.0, t_max);
    const int half = std::max(quad.wire_order / 2, 2);

    Complex z = 0.0;
    for (std::size_t it = 0; it < rt.nodes.size(); ++it) {
        const double u = a * std::sinh(rt.nodes[it]);
        const double du = a * std::cosh(rt.nodes[it]) * rt.weights[it];
        // Overlap integral of the two shifted current profiles; kinks at 0 and u.
        const QuadratureRule rz = split_rule(half, -l / 2.0 + u, l / 2.0, {0.0, u});
        double corr = 0.0;
        for (std::size_t iz = 0; iz < rz.nodes.size(); ++iz) {
            const double zz = rz.nodes[iz];
            corr += sinusoidal_current(zz, l / 2.0, k0, inv_s) *
                    sinusoidal_current(zz - u, l / 2.0, k0, inv_s) * rz.weights[iz];
        }
        // The integrand is even in u.
        z -= 2.0 * dipole_ez_kernel(a, u, k0) * corr * du;
    }
    return z;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::array<double, 3> parse_vec3(const std::string& value, const std::string& key) {
    std::string cleaned = value;
    for (auto& c : cleaned) {
        if (c == ',' || c == '(' || c == ')') c = ' ';
    }
    std::istringstream is(cleaned);
    std::array<double, 3> out{};
    if (!(is >> out[0] >> out[1] >> out[2])) {
        throw InvalidArgument("scenario key '" + key + "': expected three numbers");
    }
    return out;
}

}  // namespace

void validate(const WireElement& w) {
    if (!(w.length > 0.0)) throw InvalidArgument("wire length must be positive");
    if (!(w.radius > 0.0)) throw InvalidArgument("wire radius must be positive");
    if (!(w.radius < w.length / 10.0)) {
        throw InvalidArgument("wire outside the thin-wire regime (radius >= length/10)");
    }
}

double Scenario::wavenumber() const {
    return 2.0 * kPi / wavelength();
}

std::vector<WireElement> build_ris_grid(int m, double d, const std::array<double, 3>& center,
                                        double length, double radius) {
    if (m < 1) throw InvalidArgument("grid side must be >= 1");
    if (!(d > 0.0)) throw InvalidArgument("grid spacing must be positive");

    std::vector<WireElement> elements;
    elements.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    const double offset = 0.5 * static_cast<double>(m - 1);
    for (int iz = 0; iz < m; ++iz) {
        for (int ix = 0; ix < m; ++ix) {
            WireElement w;
            w.position = {center[0] + (static_cast<double>(ix) - offset) * d, center[1],
                          center[2] + (static_cast<double>(iz) - offset) * d};
            w.length = length;
            w.radius = radius;
            elements.push_back(w);
        }
    }
    return elements;
}

Complex dipole_ez_kernel(double delta_rho, double delta_z, double k0) {
    const double r = std::hypot(delta_rho, delta_z);
    if (r == 0.0) throw DegenerateGeometry("dipole_ez_kernel: zero separation");

    const double ct = delta_z / r;
    const double st = delta_rho / r;
    const Complex jkr(0.0, k0 * r);
    const Complex inv_jkr = 1.0 / jkr;
    const double inv_kr2 = 1.0 / ((k0 * r) * (k0 * r));

    const Complex near_term = 2.0 * ct * ct / (r * r) * (1.0 + inv_jkr);
    const Complex rad_term =
        Complex(0.0, -k0) * st * st / r * (1.0 + inv_jkr - inv_kr2);
    return kEta0 * std::exp(Complex(0.0, -k0 * r)) / (4.0 * kPi) * (near_term + rad_term);
}

Complex mutual_impedance(const WireElement& p, const WireElement& q, double k0,
                         const QuadratureSpec& quad) {
    const double rho = transverse_separation(p, q);
    const double dc = q.position[2] - p.position[2];
    if (rho < 1e-12 && std::abs(dc) < (p.length + q.length) / 2.0) {
        throw DegenerateGeometry("mutual_impedance: overlapping wire segments");
    }
    return pair_integral(rho, dc, p.length, q.length, k0, quad.wire_order);
}

Complex self_impedance(const WireElement& p, double k0, const QuadratureSpec& quad) {
    if (!(p.radius > 0.0)) throw DegenerateGeometry("self_impedance: zero wire radius");
    return self_integral(p.radius, p.length, k0, quad);
}

ImpedanceNetwork assemble_network(const Scenario& s, const QuadratureSpec& quad) {
    if (!(s.frequency_hz > 0.0)) throw InvalidArgument("frequency must be positive");
    if (!(s.r0_ohm >= 0.0)) throw InvalidArgument("R0 must be non-negative");
    validate(s.tx);
    validate(s.rx);

    const double k0 = s.wavenumber();
    const double lambda = s.wavelength();
    const auto elements =
        build_ris_grid(s.grid_side, s.spacing_m, s.ris_center, s.element_length_m,
                       s.element_radius_m);
    for (const auto& e : elements) validate(e);
    const std::size_t n = elements.size();

    // Far-field sanity check (the model assumes it; a violation is only a warning).
    const double extent = static_cast<double>(s.grid_side - 1) * s.spacing_m;
    const double aperture = std::sqrt(2.0) * extent;
    const double ff = 2.0 * aperture * aperture / lambda;
    for (const WireElement* t : {&s.tx, &s.rx}) {
        const double dist = std::hypot(t->position[0] - s.ris_center[0],
                                       std::hypot(t->position[1] - s.ris_center[1],
                                                  t->position[2] - s.ris_center[2]));
        if (aperture > 0.0 && dist <= ff) {
            std::cerr << "warning: terminal at distance " << dist
                      << " m is inside the far-field boundary " << ff << " m of the RIS\n";
        }
    }

    ImpedanceNetwork net;
    net.z_ss = ComplexMatrix(n, n);
    net.z_st.resize(n);
    net.z_rs.resize(n);

    // Identical wires on a regular grid: the mutual impedance depends only on
    // the relative displacement, so pairs are memoized by distance class.
    // This also makes equal distances yield bit-identical entries.
    std::map<std::pair<std::int64_t, std::int64_t>, Complex> cache;
    const double key_scale = 1e12 / lambda;
    auto grid_mutual = [&](const WireElement& a, const WireElement& b) {
        const double rho = transverse_separation(a, b);
        const double dc = std::abs(b.position[2] - a.position[2]);
        const auto key = std::make_pair(std::llround(rho * key_scale),
                                        std::llround(dc * key_scale));
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const Complex z = mutual_impedance(a, b, k0, quad);
        cache.emplace(key, z);
        return z;
    };

    const Complex z_self = self_impedance(elements[0], k0, quad);
    for (std::size_t i = 0; i < n; ++i) {
        net.z_ss(i, i) = z_self;
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex z = grid_mutual(elements[i], elements[j]);
            net.z_ss(i, j) = z;
            net.z_ss(j, i) = z;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        net.z_st[i] = mutual_impedance(elements[i], s.tx, k0, quad);
        net.z_rs[i] = mutual_impedance(s.rx, elements[i], k0, quad);
    }
    net.z_rt = s.direct_link ? mutual_impedance(s.rx, s.tx, k0, quad) : Complex(0.0);
    return net;
}

ImpedanceNetwork diagonal_only(const ImpedanceNetwork& net) {
    ImpedanceNetwork out = net;
    const std::size_t n = out.z_ss.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) out.z_ss(i, j) = 0.0;
        }
    }
    return out;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file: " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument("scenario file: expected key = value, got '" + line + "'");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    auto require = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw InvalidArgument("scenario file: missing key '" + key + "'");
        return it->second;
    };
    auto get_double = [&](const std::string& key) { return std::stod(require(key)); };
    auto get_double_or = [&](const std::string& key, double fallback) {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : std::stod(it->second);
    };

    Scenario s;
    s.frequency_hz = get_double("frequency_hz");
    if (!(s.frequency_hz > 0.0)) throw InvalidArgument("frequency_hz must be positive");
    const double lambda = s.wavelength();

    s.grid_side = static_cast<int>(std::stol(require("M")));
    if (kv.count("d_m")) {
        s.spacing_m = get_double("d_m");
    } else {
        s.spacing_m = get_double("d_over_lambda") * lambda;
    }
    s.ris_center = kv.count("ris_center") ? parse_vec3(kv["ris_center"], "ris_center")
                                          : std::array<double, 3>{0.0, 0.0, 0.0};
    s.element_length_m = get_double("wire_length_over_lambda") * lambda;
    s.element_radius_m = get_double("wire_radius_over_lambda") * lambda;

    s.tx.position = parse_vec3(require("tx_pos"), "tx_pos");
    s.rx.position = parse_vec3(require("rx_pos"), "rx_pos");
    s.tx.length = s.rx.length = s.element_length_m;
    s.tx.radius = s.rx.radius = s.element_radius_m;

    s.r0_ohm = get_double("R0_ohm");
    s.y0 = Complex(get_double_or("Y0_re", 1.0), get_double_or("Y0_im", 0.0));
    if (kv.count("direct_link")) {
        const std::string& v = kv["direct_link"];
        s.direct_link = (v == "1" || v == "true" || v == "on" || v == "yes");
    }
    return s;
}

}  // namespace ris::em
