#include "hqt/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hqt {

namespace {

void check_mode(const FockState& st, int mode) {
    if (mode < 0 || mode >= st.num_modes())
        throw std::out_of_range("fock: mode index out of range");
}

// factorial table; 2*cutoff stays well below the 170! double limit
std::vector<double> factorial_table(int n) {
    std::vector<double> f(static_cast<std::size_t>(n) + 1, 1.0);
    for (int i = 1; i <= n; ++i) f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)] * i;
    return f;
}

}  // namespace

FockState::FockState(int num_modes, int cutoff) : num_modes_(num_modes), cutoff_(cutoff) {
    if (num_modes < 1 || num_modes > 4)
        throw std::invalid_argument("FockState: supports 1..4 modes");
    if (cutoff < 1)
        throw std::invalid_argument("FockState: cutoff must be positive");
    const std::size_t d = static_cast<std::size_t>(cutoff) + 1;
    strides_.assign(static_cast<std::size_t>(num_modes), 1);
    for (int m = num_modes - 2; m >= 0; --m)
        strides_[static_cast<std::size_t>(m)] = strides_[static_cast<std::size_t>(m + 1)] * d;
    amps_.assign(strides_[0] * d, cxd{0.0, 0.0});
}

FockState FockState::vacuum(int num_modes, int cutoff) {
    FockState st(num_modes, cutoff);
    st.amps_[0] = 1.0;
    return st;
}

cxd& FockState::at(std::span<const int> occupation) {
    return const_cast<cxd&>(std::as_const(*this).at(occupation));
}

const cxd& FockState::at(std::span<const int> occupation) const {
    if (static_cast<int>(occupation.size()) != num_modes_)
        throw std::invalid_argument("FockState::at: wrong number of modes");
    std::size_t idx = 0;
    for (int m = 0; m < num_modes_; ++m) {
        const int n = occupation[static_cast<std::size_t>(m)];
        if (n < 0 || n > cutoff_)
            throw std::out_of_range("FockState::at: occupation exceeds cutoff");
        idx += static_cast<std::size_t>(n) * strides_[static_cast<std::size_t>(m)];
    }
    return amps_[idx];
}

cxd& FockState::at(std::initializer_list<int> occupation) {
    return at(std::span<const int>(occupation.begin(), occupation.size()));
}

const cxd& FockState::at(std::initializer_list<int> occupation) const {
    return at(std::span<const int>(occupation.begin(), occupation.size()));
}

double FockState::squared_norm() const {
    double s = 0.0;
    for (const cxd& a : amps_) s += std::norm(a);
    return s;
}

FockState& FockState::normalize() {
    const double n2 = squared_norm();
    if (!(n2 > 0.0) || !std::isfinite(n2))
        throw std::domain_error("FockState::normalize: zero or non-finite norm");
    const double inv = 1.0 / std::sqrt(n2);
    for (cxd& a : amps_) a *= inv;
    return *this;
}

double FockState::truncation_tail() const {
    double tail = 0.0;
    const std::size_t d = static_cast<std::size_t>(cutoff_) + 1;
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        std::size_t rem = idx;
        bool at_edge = false;
        for (int m = 0; m < num_modes_; ++m) {
            const std::size_t n = rem / strides_[static_cast<std::size_t>(m)];
            rem %= strides_[static_cast<std::size_t>(m)];
            if (n + 1 == d) { at_edge = true; break; }
        }
        if (at_edge) tail += std::norm(amps_[idx]);
    }
    return tail;
}

BeamSplitterSpec BeamSplitterSpec::from_transmittance(double t, int mode_a, int mode_b) {
    if (!(t > 0.0) || t > 1.0)
        throw std::invalid_argument("BeamSplitterSpec: t must lie in (0, 1]");
    if (mode_a == mode_b)
        throw std::invalid_argument("BeamSplitterSpec: identical mode indices");
    BeamSplitterSpec bs;
    bs.t = t;
    bs.r = std::sqrt(std::max(0.0, 1.0 - t * t));
    bs.b_param = bs.r * bs.r / (t * t);
    bs.mode_a = mode_a;
    bs.mode_b = mode_b;
    return bs;
}

BeamSplitterSpec BeamSplitterSpec::from_b_param(double b, int mode_a, int mode_b) {
    if (!(b >= 0.0) || !std::isfinite(b))
        throw std::invalid_argument("BeamSplitterSpec: B must be finite and >= 0");
    return from_transmittance(1.0 / std::sqrt(1.0 + b), mode_a, mode_b);
}

FockState smsv_state(double y, int cutoff) {
    if (!(y >= 0.0) || y >= 0.5)
        throw std::domain_error("smsv_state: y must lie in [0, 0.5)");
    if (cutoff < 2)
        throw std::invalid_argument("smsv_state: cutoff must be at least 2");
    FockState st(1, cutoff);
    // 1/sqrt(cosh s) = (1-4y^2)^{1/4}; ratio of consecutive even amplitudes
    // is y sqrt((2n+1)(2n+2))/(n+1)
    double amp = std::pow(1.0 - 4.0 * y * y, 0.25);
    for (int n = 0; 2 * n <= cutoff; ++n) {
        st.amplitudes()[static_cast<std::size_t>(2 * n)] = amp;
        amp *= y * std::sqrt(double(2 * n + 1) * double(2 * n + 2)) / double(n + 1);
    }
    return st;
}

namespace {

// <m', N-m'|BS|m, N-m> for the whole total-photon-number block. tp and rp
// are precomputed power tables of t and r.
std::vector<double> bs_block(int N, const std::vector<double>& tp, const std::vector<double>& rp,
                             const std::vector<double>& fact) {
    const int d = N + 1;
    std::vector<double> M(static_cast<std::size_t>(d) * d, 0.0);
    for (int m = 0; m <= N; ++m) {
        const int n = N - m;
        for (int mp = 0; mp <= N; ++mp) {
            const int np = N - mp;
            double sum = 0.0;
            const int jlo = std::max(0, mp - n);
            const int jhi = std::min(m, mp);
            for (int j = jlo; j <= jhi; ++j) {
                double term = fact[m] / (fact[j] * fact[m - j]);
                term *= fact[n] / (fact[mp - j] * fact[n - mp + j]);
                term *= tp[static_cast<std::size_t>(n - mp + 2 * j)] *
                        rp[static_cast<std::size_t>(m + mp - 2 * j)];
                if ((m - j) & 1) term = -term;
                sum += term;
            }
            M[static_cast<std::size_t>(mp) * d + m] =
                std::sqrt(fact[mp] * fact[np] / (fact[m] * fact[n])) * sum;
        }
    }
    return M;
}

}  // namespace

FockState apply_beam_splitter(const FockState& state, const BeamSplitterSpec& bs) {
    check_mode(state, bs.mode_a);
    check_mode(state, bs.mode_b);
    if (bs.mode_a == bs.mode_b)
        throw std::invalid_argument("apply_beam_splitter: identical mode indices");

    const int c = state.cutoff();
    FockState out(state.num_modes(), c);
    out.add_leaked_mass(state.leaked_mass());

    if (bs.r < 1e-300) {  // fully transmissive: identity
        std::copy(state.amplitudes().begin(), state.amplitudes().end(), out.amplitudes().begin());
        return out;
    }

    const auto fact = factorial_table(2 * c + 1);
    std::vector<double> tp(static_cast<std::size_t>(4 * c) + 2, 1.0), rp(tp.size(), 1.0);
    for (std::size_t i = 1; i < tp.size(); ++i) {
        tp[i] = tp[i - 1] * bs.t;
        rp[i] = rp[i - 1] * bs.r;
    }
    std::vector<std::vector<double>> blocks(static_cast<std::size_t>(2 * c) + 1);
    for (int N = 0; N <= 2 * c; ++N)
        blocks[static_cast<std::size_t>(N)] = bs_block(N, tp, rp, fact);

    const std::size_t sa = state.stride(bs.mode_a);
    const std::size_t sb = state.stride(bs.mode_b);
    const std::size_t d = static_cast<std::size_t>(c) + 1;

    auto in = state.amplitudes();
    auto dst = out.amplitudes();
    std::vector<cxd> vin(d), vout;
    double leak = 0.0;

    // iterate over base offsets where n_a = n_b = 0
    const std::size_t total = state.dim();
    for (std::size_t idx = 0; idx < total; ++idx) {
        const std::size_t na = (idx / sa) % d;
        const std::size_t nb = (idx / sb) % d;
        if (na != 0 || nb != 0) continue;
        for (int N = 0; N <= 2 * c; ++N) {
            const int mlo = std::max(0, N - c);
            const int mhi = std::min(c, N);
            double in_mass = 0.0;
            for (int m = mlo; m <= mhi; ++m) {
                vin[static_cast<std::size_t>(m - mlo)] =
                    in[idx + static_cast<std::size_t>(m) * sa + static_cast<std::size_t>(N - m) * sb];
                in_mass += std::norm(vin[static_cast<std::size_t>(m - mlo)]);
            }
            if (in_mass == 0.0) continue;
            const auto& M = blocks[static_cast<std::size_t>(N)];
            const int bd = N + 1;
            double kept = 0.0;
            for (int mp = mlo; mp <= mhi; ++mp) {
                cxd acc{0.0, 0.0};
                const double* row = M.data() + static_cast<std::size_t>(mp) * bd;
                for (int m = mlo; m <= mhi; ++m)
                    acc += row[m] * vin[static_cast<std::size_t>(m - mlo)];
                dst[idx + static_cast<std::size_t>(mp) * sa + static_cast<std::size_t>(N - mp) * sb] = acc;
                kept += std::norm(acc);
            }
            // block transform is unitary; anything not kept fell past cutoff
            leak += std::max(0.0, in_mass - kept);
        }
    }
    out.add_leaked_mass(leak);
    return out;
}

Projection project_pnr(const FockState& state, int mode, int k) {
    check_mode(state, mode);
    if (k < 0 || k > state.cutoff())
        throw std::out_of_range("project_pnr: k outside [0, cutoff]");
    if (state.num_modes() == 1)
        throw std::invalid_argument("project_pnr: cannot remove the last mode");

    FockState reduced(state.num_modes() - 1, state.cutoff());
    const std::size_t sm = state.stride(mode);
    const std::size_t d = static_cast<std::size_t>(state.cutoff()) + 1;
    auto in = state.amplitudes();
    auto dst = reduced.amplitudes();

    double p = 0.0;
    std::size_t w = 0;
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        const std::size_t nm = (idx / sm) % d;
        if (nm != static_cast<std::size_t>(k)) continue;
        dst[w++] = in[idx];
        p += std::norm(in[idx]);
    }

    Projection res{std::move(reduced), p, p > 1e-300};
    if (res.defined) {
        const double inv = 1.0 / std::sqrt(p);
        for (cxd& a : res.state.amplitudes()) a *= inv;
    }
    return res;
}

cxd overlap(const FockState& a, const FockState& b) {
    if (a.num_modes() != b.num_modes() || a.cutoff() != b.cutoff())
        throw std::invalid_argument("overlap: shape mismatch");
    cxd s{0.0, 0.0};
    auto av = a.amplitudes();
    auto bv = b.amplitudes();
    for (std::size_t i = 0; i < av.size(); ++i) s += std::conj(av[i]) * bv[i];
    return s;
}

FockState tensor(const FockState& a, const FockState& b) {
    if (a.cutoff() != b.cutoff())
        throw std::invalid_argument("tensor: cutoffs must match");
    FockState out(a.num_modes() + b.num_modes(), a.cutoff());
    auto av = a.amplitudes();
    auto bv = b.amplitudes();
    auto dst = out.amplitudes();
    for (std::size_t i = 0; i < av.size(); ++i) {
        if (av[i] == cxd{0.0, 0.0}) continue;
        const std::size_t base = i * bv.size();
        for (std::size_t j = 0; j < bv.size(); ++j) dst[base + j] = av[i] * bv[j];
    }
    out.add_leaked_mass(a.leaked_mass() + b.leaked_mass());
    return out;
}

std::vector<double> total_photon_distribution(const FockState& state) {
    const std::size_t d = static_cast<std::size_t>(state.cutoff()) + 1;
    std::vector<double> dist(static_cast<std::size_t>(state.num_modes()) * (d - 1) + 1, 0.0);
    auto in = state.amplitudes();
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        std::size_t rem = idx, tot = 0;
        for (int m = 0; m < state.num_modes(); ++m) {
            tot += rem / state.stride(m);
            rem %= state.stride(m);
        }
        dist[tot] += std::norm(in[idx]);
    }
    return dist;
}

}  // namespace hqt
