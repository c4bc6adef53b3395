#include "core/channel.hpp"

#include <cmath>

#include "core/numerics.hpp"

namespace ris::channel {

using numerics::ComplexMatrix;
using numerics::ComplexVector;

namespace {

void check_sizes(const ImpedanceNetwork& net, const RisLoad& load) {
    const std::size_t n = net.z_ss.rows();
    if (net.z_ss.cols() != n || net.z_st.size() != n || net.z_rs.size() != n ||
        load.size() != n) {
        throw InvalidArgument("channel: network/load size mismatch");
    }
}

}  // namespace

ChannelValue make_channel_value(Complex h) {
    return {h, 20.0 * std::log10(std::abs(h))};
}

ChannelValue end_to_end_channel(const ImpedanceNetwork& net, const RisLoad& load, Complex y0) {
    check_sizes(net, load);
    const std::size_t n = load.size();

    ComplexMatrix g = net.z_ss;
    for (std::size_t i = 0; i < n; ++i) g(i, i) += load.entry(i);

    const ComplexVector x = numerics::lu_solve(g, net.z_st);
    Complex scattered = 0.0;
    for (std::size_t i = 0; i < n; ++i) scattered += net.z_rs[i] * x[i];
    return make_channel_value(y0 * (net.z_rt - scattered));
}

ChannelValue channel_no_coupling(const ImpedanceNetwork& net, const RisLoad& load, Complex y0) {
    check_sizes(net, load);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < load.size(); ++i) {
        const Complex den = net.z_ss(i, i) + load.entry(i);
        if (std::abs(den) == 0.0) {
            throw DivisionByZero("channel_no_coupling: series resonance at element " +
                                 std::to_string(i));
        }
        sum += net.z_st[i] * net.z_rs[i] / den;
    }
    return make_channel_value(y0 * (net.z_rt - sum));
}

double snr_gain(const ChannelValue& h, double noise_power) {
    if (!(noise_power > 0.0)) throw InvalidArgument("snr_gain: noise power must be positive");
    return 10.0 * std::log10(std::norm(h.h) / noise_power);
}

}  // namespace ris::channel
