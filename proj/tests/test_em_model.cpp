#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "core/em_model.hpp"
#include "core/harness.hpp"
#include "oracle/emf_reference.hpp"
#include "test_util.hpp"

using namespace ris::em;
using test_util::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

WireElement wire_at(double x, double y, double z, double length, double radius) {
    return WireElement{{x, y, z}, length, radius};
}

Scenario small_paper_scenario(int m, double d_over_lambda) {
    Scenario s = ris::harness::preset("paper-28ghz");
    s.grid_side = m;
    s.spacing_m = d_over_lambda * s.wavelength();
    return s;
}

}  // namespace

TEST_CASE("build_ris_grid: single element sits at the center") {
    auto grid = build_ris_grid(1, 0.01, {1.0, 2.0, 3.0}, 0.005, 0.0001);
    REQUIRE(grid.size() == 1);
    CHECK(grid[0].position[0] == 1.0);
    CHECK(grid[0].position[1] == 2.0);
    CHECK(grid[0].position[2] == 3.0);
}

TEST_CASE("build_ris_grid: 2x2 symmetric positions in the x-z plane") {
    auto grid = build_ris_grid(2, 0.005, {0.0, 0.0, 0.0}, 0.002, 0.00001);
    REQUIRE(grid.size() == 4);
    for (const auto& w : grid) {
        CHECK(std::abs(std::abs(w.position[0]) - 0.0025) < 1e-15);
        CHECK(w.position[1] == 0.0);
        CHECK(std::abs(std::abs(w.position[2]) - 0.0025) < 1e-15);
    }
}

TEST_CASE("build_ris_grid: centroid equals the requested center") {
    const std::array<double, 3> center{0.4, -1.2, 2.5};
    auto grid = build_ris_grid(3, 0.007, center, 0.002, 0.00001);
    std::array<double, 3> mean{};
    for (const auto& w : grid) {
        for (int c = 0; c < 3; ++c) mean[c] += w.position[c] / 9.0;
    }
    for (int c = 0; c < 3; ++c) CHECK(std::abs(mean[c] - center[c]) < 1e-12);
}

TEST_CASE("wire validation enforces the thin-wire regime") {
    CHECK_THROWS_AS(validate(wire_at(0, 0, 0, 0.01, 0.0)), ris::InvalidArgument);
    CHECK_THROWS_AS(validate(wire_at(0, 0, 0, 0.01, 0.002)), ris::InvalidArgument);
    CHECK_NOTHROW(validate(wire_at(0, 0, 0, 0.01, 0.0005)));
}

TEST_CASE("dipole_ez_kernel: broadside far field decays as 1/r") {
    const double k0 = 2.0 * kPi;
    const double r = 50.0;  // k0 r ~ 314
    const double ratio = std::abs(dipole_ez_kernel(r, 0.0, k0)) /
                         std::abs(dipole_ez_kernel(2.0 * r, 0.0, k0));
    CHECK(ratio == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("dipole_ez_kernel: on-axis field keeps only the longitudinal term") {
    const double k0 = 2.0 * kPi;
    const double r = 0.37;
    const Complex jkr(0.0, k0 * r);
    const Complex expected = emf_reference::kEta0 * std::exp(-jkr) / (4.0 * kPi) * 2.0 /
                             (r * r) * (1.0 + 1.0 / jkr);
    CHECK(rel_err(dipole_ez_kernel(0.0, r, k0), expected) < 1e-14);
    CHECK(rel_err(dipole_ez_kernel(0.0, -r, k0), expected) < 1e-14);
}

TEST_CASE("dipole_ez_kernel: matches the spherical-components oracle") {
    const double k0 = 2.0 * kPi / 0.0107;
    for (auto [rho, z] : {std::pair{0.01, 0.002}, {0.3, -0.7}, {2.0, 0.0}, {1e-4, 5e-5}}) {
        CHECK(rel_err(dipole_ez_kernel(rho, z, k0),
                      emf_reference::dipole_ez_spherical(rho, z, k0)) < 1e-10);
    }
}

TEST_CASE("dipole_ez_kernel: zero separation is degenerate") {
    CHECK_THROWS_AS(dipole_ez_kernel(0.0, 0.0, 1.0), ris::DegenerateGeometry);
}

TEST_CASE("mutual_impedance: half-wave pair at half-wave spacing vs closed form") {
    const double lambda = 1.0;
    const double k0 = 2.0 * kPi;
    const auto a = wire_at(0, 0, 0, lambda / 2.0, lambda / 5000.0);
    const auto b = wire_at(lambda / 2.0, 0, 0, lambda / 2.0, lambda / 5000.0);
    const Complex got = mutual_impedance(a, b, k0);
    const Complex want = emf_reference::mutual_halfwave_sidebyside(lambda / 2.0, lambda);
    CHECK(rel_err(got, want) < 1e-8);
    // classical tabulated value
    CHECK(std::abs(got - Complex(-12.5, -29.9)) < 0.1);
}

TEST_CASE("mutual_impedance: reciprocity under argument swap") {
    const double k0 = 2.0 * kPi / 0.0107;
    const auto a = wire_at(0.0, 0.0, 0.0, 0.0003, 0.00002);
    const auto b = wire_at(0.002, 0.0005, 0.0011, 0.0003, 0.00002);
    CHECK(rel_err(mutual_impedance(a, b, k0), mutual_impedance(b, a, k0)) < 1e-12);
}

TEST_CASE("mutual_impedance: 1/distance far-field decay") {
    const double lambda = 1.0;
    const double k0 = 2.0 * kPi;
    const auto a = wire_at(0, 0, 0, lambda / 2.0, lambda / 5000.0);
    const auto b20 = wire_at(20.0 * lambda, 0, 0, lambda / 2.0, lambda / 5000.0);
    const auto b40 = wire_at(40.0 * lambda, 0, 0, lambda / 2.0, lambda / 5000.0);
    const double ratio =
        std::abs(mutual_impedance(a, b20, k0)) / std::abs(mutual_impedance(a, b40, k0));
    CHECK(std::abs(ratio - 2.0) < 0.1);
}

TEST_CASE("mutual_impedance: overlapping collinear segments are degenerate") {
    const double k0 = 2.0 * kPi;
    const auto a = wire_at(0, 0, 0, 0.5, 0.001);
    const auto b = wire_at(0, 0, 0.2, 0.5, 0.001);
    CHECK_THROWS_AS(mutual_impedance(a, b, k0), ris::DegenerateGeometry);
    // separated along the axis is fine
    const auto c = wire_at(0, 0, 0.8, 0.5, 0.001);
    CHECK_NOTHROW(mutual_impedance(a, c, k0));
}

TEST_CASE("self_impedance: half-wave dipole vs induced-EMF closed form") {
    const double lambda = 1.0;
    const double k0 = 2.0 * kPi;
    const auto w = wire_at(0, 0, 0, lambda / 2.0, lambda / 2000.0);
    const Complex got = self_impedance(w, k0);
    const Complex want = emf_reference::self_halfwave(lambda / 2000.0, lambda);
    CHECK(rel_err(got, want) < 1e-6);
    CHECK(std::abs(got - Complex(73.1, 42.5)) / std::abs(want) < 0.02);
}

TEST_CASE("self_impedance: short dipole is lossy-capacitive") {
    const double lambda = 0.0107;
    const double k0 = 2.0 * kPi / lambda;
    const auto w = wire_at(0, 0, 0, lambda / 32.0, lambda / 500.0);
    const Complex z = self_impedance(w, k0);
    CHECK(z.real() > 0.0);
    CHECK(z.imag() < 0.0);
    // small-dipole theory: the sinusoidal profile degenerates to the
    // triangular one for k0 l << 1, so R ~ 20 pi^2 (l/lambda)^2 up to O((k0 l)^2)
    // corrections.
    const double short_dipole_rr = 20.0 * kPi * kPi / (32.0 * 32.0);
    CHECK(z.real() < 1.05 * short_dipole_rr);
    CHECK(z.real() > 0.95 * short_dipole_rr);
}

TEST_CASE("self_impedance: positive radiation resistance across geometries") {
    const double k0 = 2.0 * kPi;
    for (double l : {0.5, 0.25, 0.03125}) {
        for (double a_over_l : {1e-2, 1e-3}) {
            CHECK(self_impedance(wire_at(0, 0, 0, l, a_over_l * l), k0).real() > 0.0);
        }
    }
    CHECK_THROWS_AS(self_impedance(wire_at(0, 0, 0, 0.5, 0.0), k0), ris::DegenerateGeometry);
}

TEST_CASE("assemble_network: single element network is the self impedance") {
    Scenario s = small_paper_scenario(1, 0.25);
    const ImpedanceNetwork net = assemble_network(s);
    REQUIRE(net.z_ss.rows() == 1);
    const auto elements = build_ris_grid(1, s.spacing_m, s.ris_center, s.element_length_m,
                                         s.element_radius_m);
    CHECK(net.z_ss(0, 0) == self_impedance(elements[0], s.wavenumber()));
    CHECK(net.z_rt == Complex(0.0));  // direct link disabled in the preset
}

TEST_CASE("assemble_network: 2x2 grid has at most three coupling classes") {
    Scenario s = small_paper_scenario(2, 0.25);
    const ImpedanceNetwork net = assemble_network(s);
    std::vector<double> mags;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            if (i == j) continue;
            const double m = std::abs(net.z_ss(i, j));
            bool found = false;
            for (double e : mags) found |= std::abs(e - m) < 1e-12 * m;
            if (!found) mags.push_back(m);
        }
    }
    CHECK(mags.size() <= 3);
}

TEST_CASE("assemble_network: paper scenario satisfies the network invariants") {
    Scenario s = small_paper_scenario(3, 0.125);
    const ImpedanceNetwork net = assemble_network(s);
    const std::size_t n = net.z_ss.rows();
    REQUIRE(n == 9);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(net.z_ss(i, i).real() > 0.0);
        CHECK(rel_err(net.z_ss(i, i), net.z_ss(0, 0)) < 1e-9);
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(rel_err(net.z_ss(i, j), net.z_ss(j, i)) < 1e-9);
        }
    }
}

TEST_CASE("assemble_network: equal distances give identical couplings") {
    Scenario s = small_paper_scenario(3, 0.2);
    const ImpedanceNetwork net = assemble_network(s);
    // (0,1) and (1,2) are both one spacing apart along x; (0,3) and (3,6)
    // along z; rho/dz swap between them, so only translation classes match.
    CHECK(std::abs(net.z_ss(0, 1) - net.z_ss(1, 2)) == 0.0);
    CHECK(std::abs(net.z_ss(0, 3) - net.z_ss(3, 6)) == 0.0);
    CHECK(std::abs(net.z_ss(0, 4) - net.z_ss(4, 8)) == 0.0);
}

TEST_CASE("assemble_network: quadrature order doubling is inert at defaults") {
    Scenario s = small_paper_scenario(2, 0.125);
    const ImpedanceNetwork base = assemble_network(s);
    QuadratureSpec doubled;
    doubled.wire_order = 48;
    doubled.radial_order = 96;
    const ImpedanceNetwork fine = assemble_network(s, doubled);
    for (std::size_t i = 0; i < base.z_ss.rows(); ++i) {
        CHECK(rel_err(base.z_st[i], fine.z_st[i]) < 1e-6);
        CHECK(rel_err(base.z_rs[i], fine.z_rs[i]) < 1e-6);
        for (std::size_t j = 0; j < base.z_ss.cols(); ++j) {
            CHECK(rel_err(base.z_ss(i, j), fine.z_ss(i, j)) < 1e-6);
        }
    }
}

TEST_CASE("assemble_network: coupling decays along a grid row beyond lambda/2") {
    Scenario s = small_paper_scenario(4, 0.5);
    const ImpedanceNetwork net = assemble_network(s);
    // first grid row is elements 0..3
    double prev = std::abs(net.z_ss(0, 1));
    for (std::size_t j = 2; j < 4; ++j) {
        const double cur = std::abs(net.z_ss(0, j));
        CHECK(cur <= prev);
        prev = cur;
    }
}

TEST_CASE("diagonal_only zeroes exactly the off-diagonal entries") {
    Scenario s = small_paper_scenario(2, 0.25);
    const ImpedanceNetwork net = assemble_network(s);
    const ImpedanceNetwork diag = diagonal_only(net);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(diag.z_ss(i, j) == (i == j ? net.z_ss(i, j) : Complex(0.0)));
        }
    }
    CHECK(diag.z_st == net.z_st);
    CHECK(diag.z_rs == net.z_rs);
}

TEST_CASE("load_scenario: parses the documented key set") {
    const char* path = "test_scenario.cfg";
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "frequency_hz = 28e9\n"
            << "tx_pos = 5, -5, 3\n"
            << "rx_pos = 5, 5, 1\n"
            << "ris_center = 0, 0, 0\n"
            << "M = 4\n"
            << "d_over_lambda = 0.25\n"
            << "wire_length_over_lambda = 0.03125\n"
            << "wire_radius_over_lambda = 0.002\n"
            << "R0_ohm = 0.2\n"
            << "Y0_re = 1.0\n"
            << "Y0_im = 0.0\n"
            << "direct_link = off\n";
    }
    const Scenario s = load_scenario(path);
    std::remove(path);

    CHECK(s.frequency_hz == 28e9);
    CHECK(s.grid_side == 4);
    CHECK(s.spacing_m == doctest::Approx(0.25 * s.wavelength()));
    CHECK(s.element_length_m == doctest::Approx(s.wavelength() / 32.0));
    CHECK(s.tx.position[1] == -5.0);
    CHECK(s.rx.position[2] == 1.0);
    CHECK(s.r0_ohm == 0.2);
    CHECK(s.y0 == Complex(1.0, 0.0));
    CHECK_FALSE(s.direct_link);
}

TEST_CASE("load_scenario: d_m takes precedence and errors are reported") {
    const char* path = "test_scenario2.cfg";
    {
        std::ofstream out(path);
        out << "frequency_hz = 1e9\nM = 2\nd_m = 0.04\n"
            << "tx_pos = 0,-10,0\nrx_pos = 0,10,0\n"
            << "wire_length_over_lambda = 0.03125\nwire_radius_over_lambda = 0.002\n"
            << "R0_ohm = 0.1\n";
    }
    const Scenario s = load_scenario(path);
    std::remove(path);
    CHECK(s.spacing_m == 0.04);
    CHECK(s.direct_link == false);

    CHECK_THROWS_AS(load_scenario("does_not_exist.cfg"), ris::IoError);
}
