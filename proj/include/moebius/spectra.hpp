// spectra.hpp - eigenanalysis, continuum ring model, Stark shifts and optical spectra

#pragma once

#include "moebius/core.hpp"
#include "moebius/lattice.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace moebius {

// ----------------------------------------------------------------------------
// dense Hermitian eigensolver

template <typename Scalar>
struct Eigensystem {
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    RealVector<Real> values;  // ascending
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns, orthonormal
};

template <typename Derived>
Eigensystem<typename Derived::Scalar> eigensystem(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (!is_hermitian(m)) throw std::invalid_argument("eigensystem: input matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.eval());
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensystem: solver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Real>
Eigensystem<Complex<Real>> eigensystem(const HermitianOperator<Real>& h) {
    return eigensystem(h.entries);
}

template <typename Derived>
auto eigenvalues(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (!is_hermitian(m)) throw std::invalid_argument("eigenvalues: input matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.eval(), Eigen::EigenvaluesOnly);
    return RealVector<typename Eigen::NumTraits<Scalar>::Real>(solver.eigenvalues());
}

template <typename Real>
RealVector<Real> eigenvalues(const HermitianOperator<Real>& h) {
    return eigenvalues(h.entries);
}

// ----------------------------------------------------------------------------
// continuum ring: (-i d/dphi - (sz + 1) / 4)^2 + Omega(phi) . sigma in plane waves

template <typename Real = double>
Real level_energy(int n, Channel channel, Real zeeman, Boundary boundary = Boundary::Moebius) {
    if (channel == Channel::Down) return Real(n) * Real(n) - zeeman;
    const Real k = boundary == Boundary::Moebius ? Real(n) - Real(0.5) : Real(n);
    return k * k + zeeman;
}

template <typename Real = double>
struct LevelRow {
    int n;
    Channel channel;
    Real energy;
    Real shift;
};

template <typename Real = double>
using LevelTable = std::vector<LevelRow<Real>>;

/// Zeroth-order levels E_{n,up} = (n - 1/2)^2 + V and E_{n,dn} = n^2 - V for n in [lo, hi].
template <typename Real = double>
LevelTable<Real> continuum_levels(int lo, int hi, Real zeeman, Boundary boundary = Boundary::Moebius) {
    LevelTable<Real> table;
    for (int n = lo; n <= hi; ++n)
        for (Channel c : {Channel::Up, Channel::Down})
            table.push_back({n, c, level_energy<Real>(n, c, zeeman, boundary), Real(0)});
    return table;
}

/// Denominator of the second-order shift, written as the polynomial quoted for each channel.
template <typename Real = double>
Real stark_denominator(int n, Channel channel, Real zeeman) {
    const Real nn = Real(n);
    const Real v = zeeman;
    if (channel == Channel::Up)
        return Real(3) * nn * nn - Real(8) * v * nn + (Real(4) * v * v - v - Real(3) / Real(16));
    return Real(3) * nn * nn - (Real(8) * v + Real(3)) * nn + (Real(4) * v * v + Real(5) * v + Real(9) / Real(16));
}

/// Second-order Stark shift of |n, chi> under the texture field of strength eps.
template <typename Real = double>
Real stark_shift(int n, Channel channel, Real zeeman, Real field) {
    const Real den = stark_denominator<Real>(n, channel, zeeman);
    const Real guard = Real(1e-3) * Real(4) * zeeman * zeeman;
    if (std::abs(den) < guard || den == Real(0)) {
        std::ostringstream msg;
        msg << "stark shift: perturbative denominator " << static_cast<double>(den) << " for n=" << n
            << " channel=" << to_string(channel) << " V=" << static_cast<double>(zeeman)
            << " is below the guard " << static_cast<double>(guard);
        throw NearDegeneracy(msg.str());
    }
    const Real nn = Real(n);
    if (channel == Channel::Up) return field * field * (zeeman - nn - Real(1) / Real(8)) / den;
    return -field * field * (zeeman - nn + Real(5) / Real(8)) / den;
}

template <typename Real = double>
LevelTable<Real> stark_table(int lo, int hi, Real zeeman, Real field) {
    auto table = continuum_levels<Real>(lo, hi, zeeman);
    for (auto& row : table) row.shift = stark_shift<Real>(row.n, row.channel, zeeman, field);
    return table;
}

/// Degenerate level that mixes with |n, chi> already at second order, if any.
/// (n, up) and (1 - n, up) share the intermediate state (1, dn) only for n = 0, 1;
/// the non-degenerate shift formula does not describe that pair.
inline std::optional<int> second_order_partner(int n, Channel channel) {
    if (channel == Channel::Up && (n == 0 || n == 1)) return 1 - n;
    return std::nullopt;
}

/// Truncated plane-wave representation |n> (x) |chi>, n in [-cutoff, cutoff], up before down.
template <typename Real = double>
struct ContinuumModel {
    int cutoff;
    Real zeeman;
    Real field;
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> matrix;

    Eigen::Index dim() const { return matrix.rows(); }
    Eigen::Index index(int n, Channel c) const { return 2 * (n + cutoff) + (c == Channel::Down ? 1 : 0); }
    bool contains(int n) const { return n >= -cutoff && n <= cutoff; }
};

template <typename Real = double>
ContinuumModel<Real> build_continuum(int cutoff, Real zeeman, Real field) {
    if (cutoff < 2) throw std::invalid_argument("cutoff: need n_max >= 2, got " + std::to_string(cutoff));
    ContinuumModel<Real> model{cutoff, zeeman, field, {}};
    const Eigen::Index dim = 2 * (2 * cutoff + 1);
    model.matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
    const Real hop = field / Real(2);
    for (int n = -cutoff; n <= cutoff; ++n) {
        const auto up = model.index(n, Channel::Up);
        model.matrix(up, up) = level_energy<Real>(n, Channel::Up, zeeman);
        const auto dn = model.index(n, Channel::Down);
        model.matrix(dn, dn) = level_energy<Real>(n, Channel::Down, zeeman);
        // <n up|H'|n dn> = <n up|H'|n+1 dn> = eps / 2
        model.matrix(up, dn) = model.matrix(dn, up) = hop;
        if (model.contains(n + 1)) {
            const auto next = model.index(n + 1, Channel::Down);
            model.matrix(up, next) = model.matrix(next, up) = hop;
        }
    }
    return model;
}

/// Exact level adiabatically connected to |n, chi>: the eigenvalue whose eigenvector has the
/// largest weight on that basis state.
template <typename Real>
Real exact_level(const ContinuumModel<Real>& model, const Eigensystem<Real>& eig, int n, Channel c) {
    if (!model.contains(n)) throw std::out_of_range("exact_level: n outside the momentum cutoff");
    const auto row = model.index(n, c);
    Eigen::Index best = 0;
    eig.vectors.row(row).cwiseAbs2().maxCoeff(&best);
    return eig.values(best);
}

// ----------------------------------------------------------------------------
// optical spectra

template <typename Real = double>
struct Peak {
    Real center;
    Real weight;
};

template <typename Real = double>
struct OpticalSpectrum {
    RealVector<Real> omega;
    RealVector<Real> intensity;
    Real eta;
    std::vector<Peak<Real>> peaks;
};

enum class LevelSource { Continuum, Lattice };
enum class Absorption { AllAllowed, Ground };

template <typename Real = double>
Real lorentzian(Real omega, Real center, Real eta) {
    const Real d = omega - center;
    return eta / pi_v<Real> / (d * d + eta * eta);
}

/// Sorts by center and merges centers closer than `tol` (relative to max(1, |center|)).
template <typename Real>
std::vector<Peak<Real>> merge_peaks(std::vector<Peak<Real>> peaks, Real tol = Real(1e-9)) {
    std::sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) { return a.center < b.center; });
    std::vector<Peak<Real>> merged;
    for (const auto& p : peaks) {
        if (!merged.empty()) {
            auto& last = merged.back();
            const Real scale = std::max(Real(1), std::abs(p.center));
            if (std::abs(p.center - last.center) <= tol * scale) {
                last.weight += p.weight;
                continue;
            }
        }
        merged.push_back(p);
    }
    return merged;
}

template <typename Real>
OpticalSpectrum<Real> render_spectrum(std::vector<Peak<Real>> peaks, const RealVector<Real>& omega, Real eta) {
    if (!(eta > Real(0))) throw std::invalid_argument("eta: broadening must be positive");
    OpticalSpectrum<Real> out{omega, RealVector<Real>::Zero(omega.size()), eta, std::move(peaks)};
    for (Eigen::Index i = 0; i < omega.size(); ++i)
        for (const auto& p : out.peaks) out.intensity(i) += p.weight * lorentzian(omega(i), p.center, eta);
    return out;
}

/// Golden-rule peaks of the continuum ring under z-polarized light. All allowed transitions are
/// weighted by |eps/2|^2; `Ground` keeps only those out of the lowest down level in range.
/// The periodic control has no flux and only the vertical transition n,up <-> n,dn.
template <typename Real = double>
std::vector<Peak<Real>> continuum_peaks(int lo, int hi, Real zeeman, Real field,
                                        Boundary boundary = Boundary::Moebius,
                                        Absorption absorption = Absorption::AllAllowed) {
    if (!(field > Real(0))) throw std::invalid_argument("epsilon: field strength must be positive");
    if (hi < lo) throw std::invalid_argument("n_range: empty momentum range");
    const Real weight = (field / Real(2)) * (field / Real(2));

    Real ground = level_energy<Real>(lo, Channel::Down, zeeman);
    for (int n = lo; n <= hi; ++n) ground = std::min(ground, level_energy<Real>(n, Channel::Down, zeeman));
    auto allowed = [&](int down_n) {
        return absorption == Absorption::AllAllowed || level_energy<Real>(down_n, Channel::Down, zeeman) == ground;
    };

    std::vector<Peak<Real>> peaks;
    for (int n = lo; n <= hi; ++n) {
        const Real up = level_energy<Real>(n, Channel::Up, zeeman, boundary);
        if (allowed(n)) peaks.push_back({std::abs(up - level_energy<Real>(n, Channel::Down, zeeman)), weight});
        if (boundary == Boundary::Moebius && n + 1 <= hi && allowed(n + 1))
            peaks.push_back({std::abs(up - level_energy<Real>(n + 1, Channel::Down, zeeman)), weight});
    }
    return merge_peaks(std::move(peaks));
}

/// Golden-rule peaks of the discrete 2N-site ladder with the exact dipole operator
/// eps_j sz per rung (eps_j = eps cos(phi_j / 2) on the twisted ring, eps on the flat one).
/// Transitions run from the lower N eigenstates to the upper N; weights are summed over
/// degenerate multiplets so they do not depend on the eigenbasis chosen inside them.
template <typename Real>
std::vector<Peak<Real>> lattice_peaks(const LadderSpec<Real>& spec, Real field,
                                      Absorption absorption = Absorption::AllAllowed) {
    if (!(field > Real(0))) throw std::invalid_argument("epsilon: field strength must be positive");
    auto unbiased = spec;
    unbiased.field.reset();
    unbiased.onsite_bias = RealVector<Real>::Zero(spec.sites);
    const auto eig = eigensystem(build_hamiltonian(unbiased));

    ComplexVector<Real> dipole(2 * spec.sites);
    for (int j = 0; j < spec.sites; ++j) {
        const Real e = spec.boundary == Boundary::Moebius ? field * std::cos(spec.angle(j) / Real(2)) : field;
        dipole(2 * j) = e;
        dipole(2 * j + 1) = -e;
    }
    const ComplexMatrix<Real> coupling = eig.vectors.adjoint() * dipole.asDiagonal() * eig.vectors;

    const int n = spec.sites;
    const Real tol = Real(1e-9) * std::max(Real(1), eig.values.cwiseAbs().maxCoeff());
    std::vector<Peak<Real>> peaks;
    for (int i = 0; i < n; ++i) {
        if (absorption == Absorption::Ground && eig.values(i) - eig.values(0) > tol) break;
        for (int f = n; f < 2 * n; ++f) {
            const Real w = std::norm(coupling(f, i));
            if (w > Real(1e-24) * field * field) peaks.push_back({eig.values(f) - eig.values(i), w});
        }
    }
    return merge_peaks(std::move(peaks));
}

template <typename Real = double>
RealVector<Real> uniform_grid(Real lo, Real hi, Eigen::Index points) {
    if (points < 2) throw std::invalid_argument("grid: need at least two points");
    return RealVector<Real>::LinSpaced(points, lo, hi);
}

} // namespace moebius
