#ifndef HQT_ANALYTIC_HPP
#define HQT_ANALYTIC_HPP

#include <stdexcept>

#include "hqt/qubit.hpp"

namespace hqt {

/// Thrown where a closed form hits a genuine pole (even-outcome distortion
/// factor at k2 = k1*B). Sweeps catch it and record the cell as a gap.
struct SingularDistortion : std::domain_error {
    using std::domain_error::domain_error;
};

/// Thrown when a unit-distortion solve has no admissible beam splitter.
struct InfeasibleSolve : std::domain_error {
    using std::domain_error::domain_error;
};

/// Squeezing bookkeeping: amplitude s, decibel value S = 20 s log10(e),
/// series parameter y = tanh(s)/2, mean photon number sinh^2 s.
struct SqueezeParams {
    double s;
    double s_db;
    double y_smsv;
    double mean_photons;

    static SqueezeParams from_db(double s_db);
    static SqueezeParams from_amplitude(double s);
    static SqueezeParams from_y(double y);
};

/// Reduced squeezing parameters along the two-splitter cascade:
/// y1 = y_smsv/(1+B0) after the channel splitter, y2 = y1/(1+B) after the
/// teleportation splitter. y0/y are the main-text aliases of the same pair.
struct ReducedParams {
    double y0;
    double y;
    double y1;
    double y2;

    static ReducedParams make(double y_smsv, double b0, double b);
};

/// Measurement-induced CV state families (supplement catalogue).
///
/// SubOnly : k photons subtracted from the SMSV, nothing added.
/// Add1    : one photon added at the splitter input, k subtracted.
/// Base1   : the channel pair (one subtraction; `added` selects the
///           vacuum-input odd state or the photon-input even state).
/// Case00..Case11 : one subtraction at the channel splitter plus k2 at the
///           teleportation splitter; the two digits give the photon inputs
///           of the two splitters. The protocol uses the first subtraction
///           count fixed at 1, which is what these families implement.
enum class CvFamily { SubOnly, Add1, Base1, Case00, Case01, Case10, Case11 };

struct CvStateSpec {
    CvFamily family;
    int k1 = 1;       // subtraction count at the first splitter
    int k2 = 0;       // subtraction count at the second splitter
    int added = 0;    // Base1 only: 0 -> odd member, 1 -> even member
    double y = 0.0;   // reduced squeezing parameter seen by the family
    double b0 = 0.0;  // channel splitter parameter where required
    double b = 0.0;   // teleportation splitter parameter where required
};

/// True when the family occupies only odd photon numbers.
bool cv_state_is_odd(const CvStateSpec& spec);

/// Unnormalized series coefficient of the family's n-th occupied ket
/// (photon number 2n or 2n+1 by parity). Used by the normalization
/// cross-checks; includes the sqrt(y) weight carried by odd families whose
/// catalogue normalization folds it in.
double cv_bare_coefficient(const CvStateSpec& spec, int n);

/// Closed-form normalization factor G of the family, equal to the sum of
/// squared bare coefficients.
double cv_norm_factor(const CvStateSpec& spec);

/// Normalized Fock amplitude <n_photon|Psi>; zero off the family's parity.
double cv_amplitude(const CvStateSpec& spec, int n_photon);

/// Heralding amplitudes of the splitter expansion: added = 0 gives
/// c_k^(0) = (-1)^k (y1 B)^{k/2}/sqrt(k!), added = 1 the photon-input set
/// with the extra 1/sqrt(1+B).
double herald_amplitude(int added, int k, double y1, double b);

/// G_1^{(1)}(y0, B0), the even channel-state normalization.
double g1_even_norm(double y0, double b0);

/// Signed amplitude distortion multiplier b_{k1 k2}. Parity follows
/// k1+k2; the sign is kept (a negative value means Bob must apply Z).
/// Throws SingularDistortion at the even-branch pole k2 = k1*B and
/// std::invalid_argument for (0,0).
double distortion_factor(int k1, int k2, double y0, double b0, double b);

/// Probability of the PNR outcome (k1,k2) for the given input qubit,
/// including the qubit-dependent normalization; (0,0) returns the failure
/// probability |a0|^2/(2 G_1^{(1)}). Finite across the even-branch pole.
double outcome_probability(int k1, int k2, const SingleRailQubit& qubit,
                           double y0, double b0, double b);

/// outcome_probability with the qubit-dependent normalization set to one
/// (the N-stripped distribution entering the recovery totals).
double outcome_probability_unit_norm(int k1, int k2, double y0, double b0, double b);

/// Beam-splitter parameter solving |b_{k1k2}| = 1. Closed form for
/// (0,1),(1,0),(2,0),(0,2); bracketed root finding for (1,1), returning the
/// root above 1 (the pair of roots is reciprocal and equivalent for the
/// outcome probability). Throws InfeasibleSolve when no admissible value
/// exists (e.g. B0 = 1/2 for the two-photon cases).
double solve_unit_distortion_b(int k1, int k2, double y0, double b0);

/// Outcome probability at the unit-distortion operating point, where the
/// normalization factor drops out.
double perfect_outcome_probability(int k1, int k2, double y0, double b_solved);

/// P_11 at the balanced splitter: the destructive-interference failure
/// |a0|^2 y0^2 (1-2B0)^2 / (2 G_1^{(1)}).
double p11_balanced_failure(double a0_sq, double y0, double b0);

/// B_01(y0,B0) = Z'(y0) / (4 y0 G_1^{(1)}); the B_01 = 1 contour is the
/// operating line of the balanced protocol.
double b01_parameter(double y0, double b0);

}  // namespace hqt

#endif
