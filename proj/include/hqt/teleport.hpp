#ifndef HQT_TELEPORT_HPP
#define HQT_TELEPORT_HPP

#include <array>
#include <vector>

#include "hqt/channel.hpp"
#include "hqt/qubit.hpp"

namespace hqt {

enum class Parity { Odd, Even };

/// Outcome classification: the two failure cases are 00 (Bob holds |1>, no
/// superposition survives) and 11 on a balanced splitter (destructive
/// interference leaves |1> as well). PoleDegenerate covers the other even
/// outcomes sitting exactly on k2 = k1*B, where the same interference kills
/// the superposition.
enum class OutcomeClass { Distorted, Perfect, Failure00, Failure11Balanced, PoleDegenerate };

struct TeleportResult {
    int k1 = 0;
    int k2 = 0;
    Parity parity = Parity::Even;
    OutcomeClass classification = OutcomeClass::Distorted;
    double probability = 0.0;

    /// Conditional state at Bob's side (undefined for failures or for
    /// near-impossible outcomes, see bob_defined).
    SingleRailQubit bob_state{1.0, 0.0};
    bool bob_defined = false;

    double distortion_b = 0.0;   // signed; meaningless when !has_distortion
    bool has_distortion = false;
    double normalization_n = 1.0;
};

/// Runs the protocol for one PNR outcome by brute-force simulation: the
/// channel's CV mode is mixed with the qubit mode on the B splitter and both
/// measurement modes are projected. Probability and Bob's state come from the
/// Fock path; the distortion factor and normalization are filled in from the
/// closed forms (they are the classical knowledge both parties share).
TeleportResult teleport_outcome(const HybridChannel& channel, const SingleRailQubit& qubit,
                                double b, int k1, int k2);

/// All outcomes with k1+k2 <= max_total; *tail receives 1 - sum(P).
std::vector<TeleportResult> enumerate_outcomes(const HybridChannel& channel,
                                               const SingleRailQubit& qubit, double b,
                                               int max_total, double* tail = nullptr);

enum class Gate { I, X, Z };

struct CorrectedOutput {
    bool failure = false;
    std::vector<Gate> gates;       // applied left to right
    SingleRailQubit state{1.0, 0.0};
    bool perfect = false;          // | |b| - 1 | below tolerance
};

/// Applies the classical-message corrections: Z when the distortion factor
/// is negative, X for even outcomes. Failures pass through untouched.
CorrectedOutput classify_and_correct(const TeleportResult& result);

struct DistortionMap {
    std::array<cxd, 4> matrix;     // row-major 2x2 unitary
    SingleRailQubit output{1.0, 0.0};
};

/// Qubit-specific unitary realizing the amplitude distortion: for odd parity
/// it maps the input to (a0, b a1)/sqrt(N); for even parity to the
/// bit-flipped (a1, b a0)/sqrt(N). The even map factors as U_odd(b) X with
/// U_odd built for the flipped qubit.
DistortionMap distortion_map(const SingleRailQubit& qubit, double b, Parity parity);

}  // namespace hqt

#endif
