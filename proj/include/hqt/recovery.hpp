#ifndef HQT_RECOVERY_HPP
#define HQT_RECOVERY_HPP

#include "hqt/teleport.hpp"

namespace hqt {

/// Bob's pre-prepared two-mode ancilla, (|01> + b|10>)/sqrt(1+b^2) for odd
/// distortions and (|00> + b|11>)/sqrt(1+b^2) for even ones. b is the known
/// magnitude of the distortion factor of the message Bob received.
struct AuxiliaryState {
    Parity parity;
    double b;

    /// Amplitudes on the two occupied kets, (1, b)/sqrt(1+b^2).
    std::array<double, 2> amplitudes() const;
};

AuxiliaryState make_auxiliary(Parity parity, double b);

struct RecoveryResult {
    bool success_possible = true;
    SingleRailQubit state{1.0, 0.0};   // corrected output, common to both heralds
    double success_probability = 0.0;  // combined weight of the 01 and 10 heralds
};

/// Mixes the distorted qubit with the matching auxiliary state on a balanced
/// splitter and heralds on a single photon (01 or 10). Any other detector
/// pattern terminates the attempt; its weight is the complement of
/// success_probability. Requires aux to match the result's parity and
/// |distortion| (throws std::invalid_argument otherwise).
RecoveryResult recover(const TeleportResult& distorted, const AuxiliaryState& aux);

/// Overall protocol probability with recovery on the balanced-splitter line:
/// 0.5 + sum over {20,02,03,12,21,30} of b^2/(1+b^2) times the unit-norm
/// outcome probability at B = 1. Rejects parameters off the B01 = 1 line.
double total_success_probability(const ChannelParams& params);

struct RecoveryOptimum {
    double s_db;
    double b0;
    double p_pt;
};

/// Scalar scan of total_success_probability along the solved B01 = 1 line
/// over s_db in [lo, hi] with `steps` grid points, followed by a golden-
/// section refinement of the best bracket. Deterministic for a given grid.
RecoveryOptimum optimize_recovery(double s_db_lo, double s_db_hi, int steps);

}  // namespace hqt

#endif
