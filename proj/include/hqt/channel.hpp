#ifndef HQT_CHANNEL_HPP
#define HQT_CHANNEL_HPP

#include "hqt/analytic.hpp"
#include "hqt/fock.hpp"

namespace hqt {

struct ChannelParams {
    SqueezeParams squeeze;
    double b0;
    ReducedParams reduced;  // reduced.y0 = y_smsv/(1+b0)
};

ChannelParams make_params(double s_db, double b0);

/// The hybrid entangled channel (Psi_odd|0>_B + Psi_even|1>_B)/sqrt(2),
/// stored as a two-mode Fock state: mode 0 Alice's CV state, mode 1 Bob's
/// vacuum/single-photon side.
struct HybridChannel {
    ChannelParams params;
    FockState state;
    int cutoff;
};

/// Builds the channel from the closed-form CV amplitudes. Throws
/// std::domain_error when the cutoff leaves more than tail_tolerance of
/// either branch's mass above truncation. The stored amplitudes are exact
/// regardless of the tail, so conditional results on photon numbers far
/// below the cutoff do not inherit the truncation error.
HybridChannel build_channel_analytic(const ChannelParams& params, int cutoff,
                                     double tail_tolerance = 1e-10);

/// Ancilla weight r for which the heralded preparation below reproduces the
/// channel exactly: equal branch weights, and the sign that turns the
/// heralded relative phase into the channel's plus superposition (the value
/// is negative; with +|r| the herald produces Psi_odd|0> - Psi_even|1>).
double balanced_ancilla_weight(const ChannelParams& params);

struct PreparedChannel {
    HybridChannel channel;
    double herald_probability;
};

/// Heralded preparation: SMSV mixed with the |00> + r|11> ancilla on the
/// B0 splitter, one photon measured in the ancilla arm. The returned state
/// has its global phase fixed so the lowest occupied amplitude is real
/// positive. Throws std::domain_error on a vanishing herald.
PreparedChannel prepare_channel_simulated(const ChannelParams& params,
                                          double r_ancilla, int cutoff);

}  // namespace hqt

#endif
