#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/numerics.hpp"

namespace ris::em {

using numerics::Complex;
using numerics::ComplexMatrix;
using numerics::ComplexVector;

inline constexpr double kEta0 = 376.730313668;   // free-space impedance, Ohm
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// One z-oriented cylindrical thin wire.
struct WireElement {
    std::array<double, 3> position{};  // meters
    double length = 0.0;               // meters
    double radius = 0.0;               // meters
};

/// Throws InvalidArgument unless the wire is in the thin-wire regime
/// (radius < length / 10, both positive).
void validate(const WireElement& w);

struct Scenario {
    double frequency_hz = 0.0;
    WireElement tx;
    WireElement rx;
    int grid_side = 1;                   // M, the RIS is M x M
    double spacing_m = 0.0;              // d
    std::array<double, 3> ris_center{};
    double element_length_m = 0.0;
    double element_radius_m = 0.0;
    double r0_ohm = 0.0;
    Complex y0{1.0, 0.0};
    bool direct_link = false;

    double wavelength() const { return kSpeedOfLight / frequency_hz; }
    double wavenumber() const;
    int n_ris() const { return grid_side * grid_side; }
};

/// Parses a key = value scenario file. Recognized keys: frequency_hz, tx_pos,
/// rx_pos, ris_center, M, d_over_lambda or d_m, wire_length_over_lambda,
/// wire_radius_over_lambda, R0_ohm, Y0_re, Y0_im, direct_link.
Scenario load_scenario(const std::string& path);

struct ImpedanceNetwork {
    Complex z_rt{};          // Ohm
    ComplexVector z_st;      // Ohm, tx -> elements
    ComplexVector z_rs;      // Ohm, elements -> rx
    ComplexMatrix z_ss;      // Ohm, N x N
};

/// Quadrature orders used by the impedance integrals. The defaults keep every
/// impedance stable to better than 1e-6 relative under order doubling for the
/// geometries of interest (elements no closer than ~lambda/16).
struct QuadratureSpec {
    int wire_order = 24;    // Gauss-Legendre points per wire half
    int radial_order = 48;  // points of the sinh-transformed self-term rule
};

/// M x M grid in the x-z plane centered at `center`, spacing d along both
/// axes, row-major over (z, x). All wires share `length` and `radius`.
std::vector<WireElement> build_ris_grid(int m, double d, const std::array<double, 3>& center,
                                        double length, double radius);

/// E_z of an infinitesimal z-directed dipole of unit current moment at
/// transverse offset delta_rho and axial offset delta_z.
Complex dipole_ez_kernel(double delta_rho, double delta_z, double k0);

/// Induced-EMF mutual impedance between two parallel z-oriented wires with
/// sinusoidal current profiles. Transverse separation is the center distance
/// projected on the x-y plane.
Complex mutual_impedance(const WireElement& p, const WireElement& q, double k0,
                         const QuadratureSpec& quad = {});

/// Same integral with the transverse separation regularized to the wire
/// radius.
Complex self_impedance(const WireElement& p, double k0, const QuadratureSpec& quad = {});

ImpedanceNetwork assemble_network(const Scenario& s, const QuadratureSpec& quad = {});

/// Copy of the network with every off-diagonal entry of Z_SS zeroed.
ImpedanceNetwork diagonal_only(const ImpedanceNetwork& net);

}  // namespace ris::em
