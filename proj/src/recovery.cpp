#include "hqt/recovery.hpp"

#include <cmath>
#include <stdexcept>

#include "hqt/roots.hpp"
#include "hqt/zfun.hpp"

namespace hqt {

namespace {

constexpr int kRecoveryCutoff = 4;
constexpr double kLineTolerance = 1e-9;

const std::pair<int, int> kRecoveredOutcomes[] = {{2, 0}, {0, 2}, {0, 3}, {1, 2}, {2, 1}, {3, 0}};

double line_b0_for(double s_db) {
    const double y_smsv = SqueezeParams::from_db(s_db).y_smsv;
    auto f = [&](double b0) { return b01_parameter(y_smsv / (1.0 + b0), b0) - 1.0; };
    double root = 0.0;
    if (!brent_log_bracket(f, 1e-4, 1e4, &root))
        throw InfeasibleSolve("recovery: no B0 solves B01 = 1 at this squeezing");
    return root;
}

}  // namespace

std::array<double, 2> AuxiliaryState::amplitudes() const {
    const double n = std::sqrt(1.0 + b * b);
    return {1.0 / n, b / n};
}

AuxiliaryState make_auxiliary(Parity parity, double b) {
    if (!std::isfinite(b))
        throw std::invalid_argument("make_auxiliary: b must be finite");
    return AuxiliaryState{parity, b};
}

RecoveryResult recover(const TeleportResult& distorted, const AuxiliaryState& aux) {
    if (!distorted.has_distortion || !distorted.bob_defined)
        throw std::invalid_argument("recover: result carries no recoverable state");
    if (aux.parity != distorted.parity)
        throw std::invalid_argument("recover: auxiliary parity does not match the message");
    if (std::abs(aux.b - std::abs(distorted.distortion_b)) > 1e-9 * std::max(1.0, aux.b))
        throw std::invalid_argument("recover: auxiliary weight does not match |b| of the message");

    const double b_signed = distorted.distortion_b;
    const auto w = aux.amplitudes();

    // modes: 0 auxiliary mix arm, 1 auxiliary keep arm, 2 distorted qubit
    FockState ax(2, kRecoveryCutoff);
    if (aux.parity == Parity::Odd) {
        ax.at({0, 1}) = w[0];
        ax.at({1, 0}) = w[1];
    } else {
        ax.at({0, 0}) = w[0];
        ax.at({1, 1}) = w[1];
    }
    FockState qs(1, kRecoveryCutoff);
    qs.at({0}) = distorted.bob_state.a0;
    qs.at({1}) = distorted.bob_state.a1;
    FockState joint = tensor(ax, qs);
    joint = apply_beam_splitter(joint, BeamSplitterSpec::from_b_param(1.0, 0, 2));

    RecoveryResult out;
    out.success_probability = 0.0;
    bool have_state = false;
    for (const auto& herald : {std::pair{1, 0}, std::pair{0, 1}}) {
        Projection first = project_pnr(joint, 0, herald.first);
        if (!first.defined) continue;
        Projection second = project_pnr(first.state, 1, herald.second);
        const double p = first.probability * second.probability;
        if (!second.defined || p <= 1e-300) continue;
        auto amps = second.state.amplitudes();
        cxd v0 = amps[0], v1 = amps[1];
        // herald 01 needs Z for positive distortion, herald 10 for negative
        const bool needs_z = (herald == std::pair{0, 1}) != (b_signed < 0.0);
        if (needs_z) v1 = -v1;
        SingleRailQubit corrected{v0, v1};
        if (have_state && fidelity_to_input(corrected, out.state) < 1.0 - 1e-9)
            throw std::logic_error("recover: herald branches disagree after correction");
        out.success_probability += p;
        out.state = corrected;
        have_state = true;
    }
    out.success_possible = have_state;
    return out;
}

double total_success_probability(const ChannelParams& params) {
    const double y0 = params.reduced.y0;
    if (std::abs(b01_parameter(y0, params.b0) - 1.0) > kLineTolerance)
        throw std::invalid_argument("total_success_probability: parameters off the B01 = 1 line");
    double total = 0.5;
    for (const auto& [k1, k2] : kRecoveredOutcomes) {
        const double b = distortion_factor(k1, k2, y0, params.b0, 1.0);
        const double weight = b * b / (1.0 + b * b);
        total += weight * outcome_probability_unit_norm(k1, k2, y0, params.b0, 1.0);
    }
    return total;
}

RecoveryOptimum optimize_recovery(double s_db_lo, double s_db_hi, int steps) {
    if (!(s_db_lo > 0.0) || !(s_db_hi > s_db_lo) || steps < 2)
        throw std::invalid_argument("optimize_recovery: bad search box");

    auto eval = [&](double s_db) {
        const double b0 = line_b0_for(s_db);
        ChannelParams p = make_params(s_db, b0);
        return std::pair{total_success_probability(p), b0};
    };

    double best_s = s_db_lo, best_p = -1.0, best_b0 = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double s_db = s_db_lo + (s_db_hi - s_db_lo) * i / (steps - 1);
        const auto [p, b0] = eval(s_db);
        if (p > best_p) { best_p = p; best_s = s_db; best_b0 = b0; }
    }

    // golden-section refinement inside the winning bracket
    const double step = (s_db_hi - s_db_lo) / (steps - 1);
    double a = std::max(s_db_lo, best_s - step);
    double b = std::min(s_db_hi, best_s + step);
    const double gr = 0.61803398874989484820;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = eval(x1).first, f2 = eval(x2).first;
    for (int it = 0; it < 80 && (b - a) > 1e-10; ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = eval(x2).first;
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = eval(x1).first;
        }
    }
    const double s_star = 0.5 * (a + b);
    const auto [p_star, b0_star] = eval(s_star);
    if (p_star > best_p) { best_p = p_star; best_s = s_star; best_b0 = b0_star; }
    return RecoveryOptimum{best_s, best_b0, best_p};
}

}  // namespace hqt
