#include "hqt/teleport.hpp"

#include <cmath>
#include <stdexcept>

namespace hqt {

namespace {

constexpr double kNearImpossible = 1e-15;
constexpr double kBobSupportTol = 1e-10;
constexpr double kPerfectTol = 1e-9;

}  // namespace

TeleportResult teleport_outcome(const HybridChannel& channel, const SingleRailQubit& qubit,
                                double b, int k1, int k2) {
    if (k1 < 0 || k2 < 0 || k1 + k2 > channel.cutoff)
        throw std::invalid_argument("teleport_outcome: outcome outside [0, cutoff]");
    if (!(b > 0.0))
        throw std::invalid_argument("teleport_outcome: B must be positive");

    TeleportResult res;
    res.k1 = k1;
    res.k2 = k2;
    res.parity = ((k1 + k2) % 2 == 1) ? Parity::Odd : Parity::Even;

    // modes after tensor: 0 Alice CV, 1 Bob, 2 qubit; protocol splitter acts
    // on (CV, qubit) with the CV line on the t,-r row
    FockState qs(1, channel.cutoff);
    qs.at({0}) = qubit.a0;
    qs.at({1}) = qubit.a1;
    FockState joint = tensor(channel.state, qs);
    joint = apply_beam_splitter(joint, BeamSplitterSpec::from_b_param(b, 0, 2));

    Projection first = project_pnr(joint, 0, k1);
    double prob = first.probability;
    SingleRailQubit bob{1.0, 0.0};
    bool bob_defined = false;
    if (first.defined) {
        Projection second = project_pnr(first.state, 1, k2);
        prob *= second.probability;
        if (second.defined && prob > kNearImpossible) {
            auto amps = second.state.amplitudes();
            double high = 0.0;
            for (std::size_t n = 2; n < amps.size(); ++n) high += std::norm(amps[n]);
            if (high > kBobSupportTol)
                throw std::domain_error("teleport_outcome: Bob state leaked outside {0,1}");
            bob = SingleRailQubit{amps[0], amps[1]};
            bob_defined = true;
        }
    } else {
        prob = 0.0;
    }
    res.probability = prob;
    res.bob_state = bob;
    res.bob_defined = bob_defined;

    const double y0 = channel.params.reduced.y0;
    const double b0 = channel.params.b0;
    if (k1 == 0 && k2 == 0) {
        res.classification = OutcomeClass::Failure00;
        return res;
    }
    try {
        res.distortion_b = distortion_factor(k1, k2, y0, b0, b);
        res.has_distortion = true;
    } catch (const SingularDistortion&) {
        res.classification = (k1 == 1 && k2 == 1) ? OutcomeClass::Failure11Balanced
                                                  : OutcomeClass::PoleDegenerate;
        return res;
    }
    if (res.parity == Parity::Odd)
        res.normalization_n = std::norm(qubit.a0) + std::norm(qubit.a1) * res.distortion_b * res.distortion_b;
    else
        res.normalization_n = std::norm(qubit.a1) + std::norm(qubit.a0) * res.distortion_b * res.distortion_b;
    res.classification = (std::abs(std::abs(res.distortion_b) - 1.0) < kPerfectTol)
                             ? OutcomeClass::Perfect
                             : OutcomeClass::Distorted;
    return res;
}

std::vector<TeleportResult> enumerate_outcomes(const HybridChannel& channel,
                                               const SingleRailQubit& qubit, double b,
                                               int max_total, double* tail) {
    if (max_total < 0 || max_total > channel.cutoff)
        throw std::invalid_argument("enumerate_outcomes: max_total outside [0, cutoff]");
    std::vector<TeleportResult> out;
    out.reserve(static_cast<std::size_t>(max_total + 1) * (max_total + 2) / 2);

    // one splitter application, then every slice
    FockState qs(1, channel.cutoff);
    qs.at({0}) = qubit.a0;
    qs.at({1}) = qubit.a1;
    FockState joint = tensor(channel.state, qs);
    joint = apply_beam_splitter(joint, BeamSplitterSpec::from_b_param(b, 0, 2));

    double covered = 0.0;
    for (int k1 = 0; k1 <= max_total; ++k1) {
        Projection first = project_pnr(joint, 0, k1);
        for (int k2 = 0; k2 + k1 <= max_total; ++k2) {
            TeleportResult res;
            res.k1 = k1;
            res.k2 = k2;
            res.parity = ((k1 + k2) % 2 == 1) ? Parity::Odd : Parity::Even;
            double prob = 0.0;
            if (first.defined) {
                Projection second = project_pnr(first.state, 1, k2);
                prob = first.probability * second.probability;
                if (second.defined && prob > kNearImpossible) {
                    auto amps = second.state.amplitudes();
                    res.bob_state = SingleRailQubit{amps[0], amps[1]};
                    res.bob_defined = true;
                }
            }
            res.probability = prob;
            covered += prob;

            const double y0 = channel.params.reduced.y0;
            if (k1 == 0 && k2 == 0) {
                res.classification = OutcomeClass::Failure00;
            } else {
                try {
                    res.distortion_b = distortion_factor(k1, k2, y0, channel.params.b0, b);
                    res.has_distortion = true;
                    if (res.parity == Parity::Odd)
                        res.normalization_n =
                            std::norm(qubit.a0) + std::norm(qubit.a1) * res.distortion_b * res.distortion_b;
                    else
                        res.normalization_n =
                            std::norm(qubit.a1) + std::norm(qubit.a0) * res.distortion_b * res.distortion_b;
                    res.classification = (std::abs(std::abs(res.distortion_b) - 1.0) < kPerfectTol)
                                             ? OutcomeClass::Perfect
                                             : OutcomeClass::Distorted;
                } catch (const SingularDistortion&) {
                    res.classification = (k1 == 1 && k2 == 1) ? OutcomeClass::Failure11Balanced
                                                              : OutcomeClass::PoleDegenerate;
                }
            }
            out.push_back(res);
        }
    }
    if (tail) *tail = 1.0 - covered;
    return out;
}

CorrectedOutput classify_and_correct(const TeleportResult& result) {
    CorrectedOutput out;
    if (result.classification == OutcomeClass::Failure00 ||
        result.classification == OutcomeClass::Failure11Balanced ||
        result.classification == OutcomeClass::PoleDegenerate || !result.bob_defined) {
        out.failure = true;
        return out;
    }
    cxd v0 = result.bob_state.a0;
    cxd v1 = result.bob_state.a1;
    if (result.parity == Parity::Even) {
        std::swap(v0, v1);  // X
        out.gates.push_back(Gate::X);
    }
    if (result.distortion_b < 0.0) {
        v1 = -v1;           // Z
        out.gates.push_back(Gate::Z);
    }
    if (out.gates.empty()) out.gates.push_back(Gate::I);
    out.state = SingleRailQubit{v0, v1};
    out.perfect = std::abs(std::abs(result.distortion_b) - 1.0) < kPerfectTol;
    return out;
}

DistortionMap distortion_map(const SingleRailQubit& qubit, double b, Parity parity) {
    if (!std::isfinite(b)) throw std::invalid_argument("distortion_map: b must be finite");

    // U_odd built for (x0, x1): maps it to (x0, b x1)/sqrt(N) and is unitary
    auto u_odd = [](const SingleRailQubit& q, double bb) {
        const double p = std::norm(q.a0);
        const double s = std::norm(q.a1);
        const double n = p + bb * bb * s;
        const double root_n = std::sqrt(n);
        const double mag = std::sqrt(p * s);
        const double phi = q.azimuthal_phase();
        const cxd off = mag * (1.0 - bb) * std::exp(cxd{0.0, -phi});
        std::array<cxd, 4> u;
        u[0] = (p + bb * s) / root_n;
        u[1] = off / root_n;
        u[2] = -std::conj(off) / root_n;
        u[3] = (p + bb * s) / root_n;
        return u;
    };
    auto apply = [](const std::array<cxd, 4>& u, const SingleRailQubit& q) {
        return SingleRailQubit{u[0] * q.a0 + u[1] * q.a1, u[2] * q.a0 + u[3] * q.a1};
    };

    DistortionMap map;
    if (parity == Parity::Odd) {
        map.matrix = u_odd(qubit, b);
        map.output = apply(map.matrix, qubit);
        return map;
    }
    // even: U_odd for the flipped qubit, composed with X
    const SingleRailQubit flipped{qubit.a1, qubit.a0};
    const std::array<cxd, 4> uo = u_odd(flipped, b);
    map.matrix = {uo[1], uo[0], uo[3], uo[2]};  // U_odd * X
    map.output = apply(map.matrix, qubit);
    return map;
}

}  // namespace hqt
