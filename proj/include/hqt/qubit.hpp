#ifndef HQT_QUBIT_HPP
#define HQT_QUBIT_HPP

#include <complex>

namespace hqt {

/// Single-rail optical qubit a0|0> + a1|1>, unit norm.
struct SingleRailQubit {
    std::complex<double> a0;
    std::complex<double> a1;

    SingleRailQubit(std::complex<double> a0_in, std::complex<double> a1_in);

    /// Relative (azimuthal) phase arg(a1) - arg(a0).
    double azimuthal_phase() const;
};

/// |<input|candidate>|^2; 1 iff equal up to a global phase.
double fidelity_to_input(const SingleRailQubit& candidate, const SingleRailQubit& input);

}  // namespace hqt

#endif
