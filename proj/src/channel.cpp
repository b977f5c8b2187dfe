#include "hqt/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "hqt/zfun.hpp"

namespace hqt {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

ChannelParams make_params(double s_db, double b0) {
    if (!(b0 >= 0.0) || !std::isfinite(b0))
        throw std::invalid_argument("make_params: B0 must be finite and >= 0");
    ChannelParams p;
    p.squeeze = SqueezeParams::from_db(s_db);
    p.b0 = b0;
    p.reduced = ReducedParams::make(p.squeeze.y_smsv, b0, 1.0);
    return p;
}

HybridChannel build_channel_analytic(const ChannelParams& params, int cutoff,
                                     double tail_tolerance) {
    if (cutoff < 2)
        throw std::invalid_argument("build_channel_analytic: cutoff must be at least 2");
    const double y0 = params.reduced.y0;

    CvStateSpec odd{CvFamily::Base1, 1, 0, 0, y0, params.b0, 0.0};
    CvStateSpec even{CvFamily::Base1, 1, 0, 1, y0, params.b0, 0.0};

    FockState st(2, cutoff);
    double mass_odd = 0.0, mass_even = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        const double ao = cv_amplitude(odd, n);
        const double ae = cv_amplitude(even, n);
        st.at({n, 0}) = kInvSqrt2 * ao;
        st.at({n, 1}) = kInvSqrt2 * ae;
        mass_odd += ao * ao;
        mass_even += ae * ae;
    }
    if (1.0 - mass_odd > tail_tolerance || 1.0 - mass_even > tail_tolerance)
        throw std::domain_error("build_channel_analytic: cutoff too small for requested parameters");
    return HybridChannel{params, std::move(st), cutoff};
}

double balanced_ancilla_weight(const ChannelParams& params) {
    const double y0 = params.reduced.y0;
    const double b0 = params.b0;
    if (!(y0 > 0.0))
        throw std::domain_error("balanced_ancilla_weight: zero squeezing leaves the odd branch empty");
    // |c1(0)| sqrt(Z') = |r| |c1(1)| sqrt(G); the minus sign flips the
    // heralded relative phase onto the channel's plus superposition
    const double mag = std::sqrt(y0 * b0 * (1.0 + b0) * z_derivative(y0, 1) / g1_even_norm(y0, b0));
    return -mag;
}

PreparedChannel prepare_channel_simulated(const ChannelParams& params, double r_ancilla,
                                          int cutoff) {
    if (r_ancilla == 0.0)
        throw std::invalid_argument("prepare_channel_simulated: r_ancilla must be nonzero");
    if (cutoff < 2)
        throw std::invalid_argument("prepare_channel_simulated: cutoff must be at least 2");

    // modes: 0 SMSV line, 1 splitter partner (measured), 2 Bob
    FockState sm = smsv_state(params.squeeze.y_smsv, cutoff);
    FockState anc(2, cutoff);
    const double nrm = 1.0 / std::sqrt(1.0 + r_ancilla * r_ancilla);
    anc.at({0, 0}) = nrm;
    anc.at({1, 1}) = nrm * r_ancilla;
    FockState joint = tensor(sm, anc);

    joint = apply_beam_splitter(joint, BeamSplitterSpec::from_b_param(params.b0, 0, 1));
    Projection herald = project_pnr(joint, 1, 1);
    if (!herald.defined)
        throw std::domain_error("prepare_channel_simulated: herald probability vanished");

    // global phase: first occupied amplitude real positive
    auto amps = herald.state.amplitudes();
    for (const cxd& a : amps) {
        if (std::abs(a) > 1e-14) {
            const cxd phase = a / std::abs(a);
            for (cxd& x : herald.state.amplitudes()) x /= phase;
            break;
        }
    }
    return PreparedChannel{HybridChannel{params, std::move(herald.state), cutoff},
                           herald.probability};
}

}  // namespace hqt
