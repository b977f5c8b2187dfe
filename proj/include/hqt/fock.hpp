#ifndef HQT_FOCK_HPP
#define HQT_FOCK_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hqt {

using cxd = std::complex<double>;

/// Dense state vector over a truncated multimode Fock basis.
///
/// Amplitudes are stored row-major with the first mode slowest; every mode
/// shares the same photon-number cutoff (inclusive). Operations that would
/// push amplitude above the cutoff drop it and account for it in
/// leaked_mass() instead of silently growing the basis.
class FockState {
public:
    FockState(int num_modes, int cutoff);

    static FockState vacuum(int num_modes, int cutoff);

    int num_modes() const { return num_modes_; }
    int cutoff() const { return cutoff_; }
    std::size_t dim() const { return amps_.size(); }

    cxd& at(std::span<const int> occupation);
    const cxd& at(std::span<const int> occupation) const;
    cxd& at(std::initializer_list<int> occupation);
    const cxd& at(std::initializer_list<int> occupation) const;

    std::span<cxd> amplitudes() { return amps_; }
    std::span<const cxd> amplitudes() const { return amps_; }

    double squared_norm() const;
    /// Normalizes in place; throws std::domain_error on a zero state.
    FockState& normalize();

    /// Probability mass sitting at n_i == cutoff in any mode. A caller that
    /// wants a trustworthy truncation can assert this below a tolerance.
    double truncation_tail() const;

    /// Mass dropped so far by cutoff clipping (accumulated by operations).
    double leaked_mass() const { return leaked_mass_; }
    void add_leaked_mass(double m) { leaked_mass_ += m; }

    std::size_t stride(int mode) const { return strides_[static_cast<std::size_t>(mode)]; }

private:
    int num_modes_;
    int cutoff_;
    std::vector<std::size_t> strides_;
    std::vector<cxd> amps_;
    double leaked_mass_ = 0.0;
};

/// Two-mode beam splitter acting as a1+ -> t a1+ - r a2+, a2+ -> r a1+ + t a2+
/// (mode_a carries the t,-r row). B = r^2/t^2 is the reflectance-to-
/// transmittance ratio; B = 1 is balanced.
struct BeamSplitterSpec {
    double t;
    double r;
    double b_param;
    int mode_a;
    int mode_b;

    static BeamSplitterSpec from_transmittance(double t, int mode_a, int mode_b);
    static BeamSplitterSpec from_b_param(double b, int mode_a, int mode_b);
};

/// Single-mode squeezed vacuum in the y = tanh(s)/2 parameterization:
/// amplitude of |2n> is y^n sqrt((2n)!)/n! / sqrt(cosh s). Requires
/// 0 <= y < 0.5 and cutoff >= 2.
FockState smsv_state(double y, int cutoff);

/// Exact two-mode beam-splitter transform, block-diagonal in total photon
/// number; clipped output mass is added to the result's leaked_mass.
FockState apply_beam_splitter(const FockState& state, const BeamSplitterSpec& bs);

struct Projection {
    FockState state;      // conditional state with the measured mode removed
    double probability;
    bool defined;         // false when the outcome has zero probability
};

/// Projects `mode` onto the k-photon outcome and renormalizes the remainder.
Projection project_pnr(const FockState& state, int mode, int k);

/// Inner product <a|b>; shapes must match.
cxd overlap(const FockState& a, const FockState& b);

/// Tensor product; modes of `b` are appended after modes of `a`.
FockState tensor(const FockState& a, const FockState& b);

/// Marginal distribution of the total photon number across all modes.
std::vector<double> total_photon_distribution(const FockState& state);

}  // namespace hqt

#endif
