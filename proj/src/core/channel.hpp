#pragma once

#include <vector>

#include "core/em_model.hpp"

namespace ris::channel {

using em::Complex;
using em::ImpedanceNetwork;

/// Tunable RIS termination: a fixed series resistance R0 plus one free
/// reactance per element. Only the reactances are stored, so the real-part
/// constraint holds by construction.
struct RisLoad {
    double r0 = 0.0;                 // Ohm
    std::vector<double> reactances;  // Ohm

    Complex entry(std::size_t i) const { return {r0, reactances[i]}; }
    std::size_t size() const { return reactances.size(); }
};

struct ChannelValue {
    Complex h{};
    double gain_db = 0.0;  // 20 log10 |h|
};

ChannelValue make_channel_value(Complex h);

/// Exact end-to-end channel h = Y0 (Z_RT - z_RS (Z_SS + Z_RIS)^{-1} z_ST),
/// evaluated through a linear solve.
ChannelValue end_to_end_channel(const ImpedanceNetwork& net, const RisLoad& load, Complex y0);

/// Diagonal specialization: h = Y0 (Z_RT - sum_i z_ST(i) z_RS(i) / (Z_SS(i,i)
/// + Z_RIS(i,i))). Only the diagonal of Z_SS is read.
ChannelValue channel_no_coupling(const ImpedanceNetwork& net, const RisLoad& load, Complex y0);

/// 10 log10(|h|^2 / noise_power).
double snr_gain(const ChannelValue& h, double noise_power);

}  // namespace ris::channel
