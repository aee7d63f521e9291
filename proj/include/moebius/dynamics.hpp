// dynamics.hpp - unitary evolution of a localized electron and pseudo-spin decoherence

#pragma once

#include "moebius/core.hpp"
#include "moebius/lattice.hpp"
#include "moebius/parallel.hpp"
#include "moebius/spectra.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace moebius {

template <typename Real = double>
struct WavepacketState {
    ComplexVector<Real> amplitudes;
    Basis basis{Basis::SiteAB};
    Real time{0};

    Real norm() const { return amplitudes.norm(); }
};

/// Electron on a_j: |j> (x) (|up> + |dn>) / sqrt(2) in pseudo-spin language.
template <typename Real = double>
WavepacketState<Real> localized_state(int sites, int rung = 0) {
    WavepacketState<Real> psi;
    psi.amplitudes = ComplexVector<Real>::Zero(2 * sites);
    psi.amplitudes(a_index(rung)) = Real(1);
    return psi;
}

/// exp(-i H_chi t) for one channel ring. The +-V offset is applied as an exact phase so that
/// only the hopping part (norm <= 2 xi) goes through the eigensolver.
template <typename Real = double>
class ChannelEvolver {
public:
    ChannelEvolver(const LadderSpec<Real>& spec, Channel channel)
        : offset_(channel_offset(spec, channel)), eig_(eigensystem(channel_kinetic(spec, channel))) {}

    ComplexVector<Real> propagate(const ComplexVector<Real>& psi, Real t) const {
        if (t == Real(0)) return psi;
        ComplexVector<Real> coeffs = eig_.vectors.adjoint() * psi;
        for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::polar(Real(1), -eig_.values(k) * t);
        return std::polar(Real(1), -offset_ * t) * (eig_.vectors * coeffs);
    }

    Real offset() const { return offset_; }

private:
    Real offset_;
    Eigensystem<Complex<Real>> eig_;
};

/// Evolves ladder states in the block-diagonal regime (zero bias, homogeneous V).
template <typename Real = double>
class LadderEvolver {
public:
    explicit LadderEvolver(const LadderSpec<Real>& spec)
        : spec_((require_block_diagonal(spec), spec)),
          rotation_(rung_rotation(spec)),
          up_(spec, Channel::Up),
          down_(spec, Channel::Down) {}

    WavepacketState<Real> evolve(const WavepacketState<Real>& initial, Real t) const {
        const int n = spec_.sites;
        if (initial.amplitudes.size() != 2 * n)
            throw std::invalid_argument("evolve: state dimension does not match the ladder");
        const ComplexVector<Real> beta =
            initial.basis == Basis::SiteAB ? ComplexVector<Real>(rotation_ * initial.amplitudes) : initial.amplitudes;
        ComplexVector<Real> up(n), down(n);
        for (int j = 0; j < n; ++j) {
            up(j) = beta(2 * j);
            down(j) = beta(2 * j + 1);
        }
        up = up_.propagate(up, t);
        down = down_.propagate(down, t);
        ComplexVector<Real> out(2 * n);
        for (int j = 0; j < n; ++j) {
            out(2 * j) = up(j);
            out(2 * j + 1) = down(j);
        }
        if (initial.basis == Basis::SiteAB) out = rotation_.adjoint() * out;
        return {std::move(out), initial.basis, initial.time + t};
    }

    /// Pseudo-spin-basis amplitudes of the evolved state.
    ComplexVector<Real> pseudospin_amplitudes(const WavepacketState<Real>& state) const {
        return state.basis == Basis::SiteAB ? ComplexVector<Real>(rotation_ * state.amplitudes) : state.amplitudes;
    }

    /// Conditional spatial states |psi_chi(t)> = exp(-i H_chi t)|rung> of the two channels.
    std::pair<ComplexVector<Real>, ComplexVector<Real>> detector_states(int rung, Real t) const {
        const ComplexVector<Real> start = ComplexVector<Real>::Unit(spec_.sites, rung);
        return {up_.propagate(start, t), down_.propagate(start, t)};
    }

    const LadderSpec<Real>& spec() const { return spec_; }

private:
    LadderSpec<Real> spec_;
    ComplexMatrix<Real> rotation_;
    ChannelEvolver<Real> up_;
    ChannelEvolver<Real> down_;
};

template <typename Real>
WavepacketState<Real> evolve(const LadderSpec<Real>& spec, const WavepacketState<Real>& initial, Real t) {
    return LadderEvolver<Real>(spec).evolve(initial, t);
}

/// Off-diagonal element of the reduced pseudo-spin state, sum_j conj(beta_j,dn) beta_j,up.
/// For the x-polarized start this is <psi_dn|psi_up> / 2.
template <typename Real>
Complex<Real> coherence(const ComplexVector<Real>& pseudospin) {
    Complex<Real> d(0);
    for (Eigen::Index j = 0; j < pseudospin.size() / 2; ++j) d += std::conj(pseudospin(2 * j + 1)) * pseudospin(2 * j);
    return d;
}

// ----------------------------------------------------------------------------
// Bessel-expansion propagators

template <typename Real = double>
Real bessel_j(int order, Real x) {
    const Real v = boost::math::cyl_bessel_j(std::abs(order), x);
    return (order < 0 && (order % 2 != 0)) ? -v : v;
}

/// Windings |j + kN| beyond this contribute below 1e-16.
template <typename Real = double>
Real winding_cutoff(Real arg) {
    return std::abs(arg) + Real(40);
}

/// <j| exp(-i K t) |0> for a ring of N sites with hopping -xi e^{i theta} c_j^dag c_{j+1} + h.c.,
/// summed over windings: sum_k i^{j_k} e^{-i j_k theta} J_{j_k}(2 xi t), j_k = j + kN.
template <typename Real = double>
Complex<Real> ring_propagator(int j, Real t, int sites, Real hopping, Real twist) {
    const Real x = Real(2) * hopping * t;
    const Real cutoff = winding_cutoff(x);
    const int k_lo = static_cast<int>(std::floor((-cutoff - Real(j)) / Real(sites)));
    const int k_hi = static_cast<int>(std::ceil((cutoff - Real(j)) / Real(sites)));
    Complex<Real> sum(0);
    for (int k = k_lo; k <= k_hi; ++k) {
        const int jk = j + k * sites;
        if (std::abs(Real(jk)) > cutoff) continue;
        const Real phase = Real(jk) * pi_v<Real> / Real(2) - Real(jk) * twist;
        sum += std::polar(bessel_j<Real>(jk, x), phase);
    }
    return sum;
}

/// Channel propagator G_chi(j, t) of the Moebius ladder (hopping part only; the +-V offset
/// contributes the extra factor exp(-+i V t)). The up channel carries the twist pi / N.
template <typename Real = double>
Complex<Real> propagator_bessel(int j, Real t, Channel channel, int sites, Real hopping) {
    const Real twist = channel == Channel::Up ? pi_v<Real> / Real(sites) : Real(0);
    return ring_propagator<Real>(j, t, sites, hopping, twist);
}

/// D(t) assembled from the winding-sum propagators, including the +-V phases.
template <typename Real>
Complex<Real> winding_sum_coherence(const LadderSpec<Real>& spec, Real t) {
    const Real v = spec.rung_coupling(0);
    const Real twist = spec.boundary == Boundary::Moebius ? pi_v<Real> / Real(spec.sites) : Real(0);
    Complex<Real> sum(0);
    for (int j = 0; j < spec.sites; ++j) {
        const auto up = std::polar(Real(1), -v * t) * ring_propagator<Real>(j, t, spec.sites, spec.hopping, twist);
        const auto down = std::polar(Real(1), v * t) * ring_propagator<Real>(j, t, spec.sites, spec.hopping, Real(0));
        sum += std::conj(down) * up;
    }
    return sum / Real(2);
}

/// xi' = xi sqrt(2 - 2 cos(theta)) = 2 xi sin(theta / 2), theta the up-channel twist.
template <typename Real>
Real effective_hopping(int sites, Real hopping, Boundary boundary = Boundary::Moebius) {
    if (boundary == Boundary::Periodic) return Real(0);
    return hopping * std::sqrt(Real(2) - Real(2) * std::cos(pi_v<Real> / Real(sites)));
}

/// Closed form (1/2) e^{2iVt} sum_delta i^delta J_{delta N}(2 xi' t), phase convention as printed.
template <typename Real>
Complex<Real> bessel_coherence(int sites, Real hopping, Real zeeman, Real t, Boundary boundary = Boundary::Moebius) {
    const Real x = Real(2) * effective_hopping(sites, hopping, boundary) * t;
    const int dmax = static_cast<int>(std::ceil(winding_cutoff(x) / Real(sites)));
    Complex<Real> sum(0);
    for (int delta = -dmax; delta <= dmax; ++delta) {
        const int order = delta * sites;
        if (std::abs(Real(order)) > winding_cutoff(x)) continue;
        const int quarter = ((delta % 4) + 4) % 4;
        const Complex<Real> i_pow = quarter == 0   ? Complex<Real>(1, 0)
                                    : quarter == 1 ? Complex<Real>(0, 1)
                                    : quarter == 2 ? Complex<Real>(-1, 0)
                                                   : Complex<Real>(0, -1);
        sum += i_pow * bessel_j<Real>(order, x);
    }
    return std::polar(Real(1), Real(2) * zeeman * t) * sum / Real(2);
}

/// Asymptotic envelope sqrt(N / (2 pi xi t)) of the short-time decay.
template <typename Real>
Real coherence_envelope(int sites, Real hopping, Real t) {
    if (t <= Real(0)) return std::numeric_limits<Real>::infinity();
    return std::sqrt(Real(sites) / (Real(2) * pi_v<Real> * hopping * t));
}

template <typename Real = double>
struct DecoherenceSeries {
    RealVector<Real> time;
    std::vector<Complex<Real>> direct;
    std::vector<Complex<Real>> bessel;
    RealVector<Real> envelope;
    Real xi_prime{0};
};

template <typename Real>
void require_time_grid(const RealVector<Real>& grid) {
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        if (!(grid(i) >= Real(0))) throw std::invalid_argument("time grid: times must be nonnegative");
        if (i > 0 && !(grid(i) >= grid(i - 1))) throw std::invalid_argument("time grid: times must be ascending");
    }
}

/// D(t) by direct evolution of the electron started on a_0, alongside the closed form.
template <typename Real>
DecoherenceSeries<Real> decoherence_factor(const LadderSpec<Real>& spec, const RealVector<Real>& time_grid) {
    require_time_grid(time_grid);
    const LadderEvolver<Real> evolver(spec);
    const Real v = spec.rung_coupling(0);

    DecoherenceSeries<Real> series;
    series.time = time_grid;
    series.xi_prime = effective_hopping(spec.sites, spec.hopping, spec.boundary);
    const auto count = static_cast<std::size_t>(time_grid.size());
    series.direct.resize(count);
    series.bessel.resize(count);
    series.envelope.resize(time_grid.size());
    parallel_for(count, [&](std::size_t i) {
        const Real t = time_grid(static_cast<Eigen::Index>(i));
        const auto [up, down] = evolver.detector_states(0, t);
        series.direct[i] = down.dot(up) / Real(2);
        series.bessel[i] = bessel_coherence(spec.sites, spec.hopping, v, t, spec.boundary);
    });
    for (Eigen::Index i = 0; i < time_grid.size(); ++i)
        series.envelope(i) = coherence_envelope(spec.sites, spec.hopping, time_grid(i));
    return series;
}

template <typename Real = double>
DecoherenceSeries<Real> decoherence_factor(int sites, Real hopping, Real zeeman, const RealVector<Real>& time_grid,
                                           Boundary boundary = Boundary::Moebius) {
    return decoherence_factor(homogeneous_ladder<Real>(sites, zeeman, hopping, boundary), time_grid);
}

/// Default grid: 2000 points over [0, 3N / (2 xi)], long enough to reach the first revivals.
template <typename Real = double>
RealVector<Real> default_time_grid(int sites, Real hopping, Eigen::Index points = 2000) {
    return RealVector<Real>::LinSpaced(points, Real(0), Real(3) * Real(sites) / (Real(2) * hopping));
}

/// First local minimum of |D(t)| found by scanning `samples` points on (0, t_max], refined
/// with Brent's method on the direct evolution.
template <typename Real>
Real first_coherence_zero(const LadderSpec<Real>& spec, Real t_max, int samples = 4000) {
    const LadderEvolver<Real> evolver(spec);
    auto modulus = [&](Real t) {
        const auto [up, down] = evolver.detector_states(0, t);
        return std::abs(down.dot(up)) / Real(2);
    };
    const Real dt = t_max / Real(samples);
    Real prev = modulus(Real(0)), cur = modulus(dt);
    for (int i = 2; i <= samples; ++i) {
        const Real next = modulus(dt * Real(i));
        if (cur < prev && cur <= next) {
            const auto [tmin, fmin] =
                boost::math::tools::brent_find_minima(modulus, dt * Real(i - 2), dt * Real(i), std::numeric_limits<Real>::digits / 2);
            (void)fmin;
            return tmin;
        }
        prev = cur;
        cur = next;
    }
    throw std::runtime_error("first_coherence_zero: no minimum of |D| below t_max");
}

// ----------------------------------------------------------------------------
// entanglement

template <typename Real = double>
struct EntanglementSeries {
    RealVector<Real> time;
    RealVector<Real> entropy;
};

/// Entropy of the reduced pseudo-spin state with eigenvalues 1/2 +- |D|.
template <typename Real = double>
Real coherence_entropy(Real modulus) {
    const Real half = Real(0.5);
    if (modulus > half) {
        if (modulus - half > Real(1e-12)) throw std::invalid_argument("entanglement: |D| exceeds 1/2");
        modulus = half;
    }
    auto term = [](Real p) { return p > Real(0) ? -p * std::log(p) : Real(0); };
    return term(half + modulus) + term(half - modulus);
}

template <typename Real>
EntanglementSeries<Real> entanglement_entropy(const DecoherenceSeries<Real>& series) {
    EntanglementSeries<Real> out{series.time, RealVector<Real>(series.time.size())};
    for (std::size_t i = 0; i < series.direct.size(); ++i)
        out.entropy(static_cast<Eigen::Index>(i)) = coherence_entropy(std::abs(series.direct[i]));
    return out;
}

} // namespace moebius
