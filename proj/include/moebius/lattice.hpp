// lattice.hpp - ladder geometry, site-basis Hamiltonian and the pseudo-spin rotation

#pragma once

#include "moebius/core.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace moebius {

/// Full parameterization of a two-leg ladder closed into a ring.
///
/// Energies are measured in units of the hopping (default 1). When `field` is set the
/// on-site bias is the one induced by a uniform field along z, eps_j = E_z * w * cos(phi_j / 2),
/// and `onsite_bias` holds those derived values.
template <typename Real = double>
struct LadderSpec {
    int sites{12};
    Real radius{2};
    Real half_width{0.5};
    Real hopping{1};
    RealVector<Real> rung_coupling;
    RealVector<Real> onsite_bias;
    std::optional<Real> field;
    Boundary boundary{Boundary::Moebius};

    Real angle(int j) const { return Real(2) * pi_v<Real> * Real(j) / Real(sites); }
};

template <typename Real>
void validate(const LadderSpec<Real>& spec) {
    if (spec.sites < 3) throw std::invalid_argument("sites: need N >= 3, got " + std::to_string(spec.sites));
    if (!(spec.radius > Real(0))) throw std::invalid_argument("radius: must be positive");
    if (!(spec.half_width > Real(0)) || !(spec.half_width < spec.radius))
        throw std::invalid_argument("half_width: need 0 < w < R");
    if (!std::isfinite(static_cast<double>(spec.hopping))) throw std::invalid_argument("hopping: must be finite");
    if (spec.rung_coupling.size() != spec.sites)
        throw std::invalid_argument("rung_coupling: expected " + std::to_string(spec.sites) + " entries");
    if (spec.onsite_bias.size() != spec.sites)
        throw std::invalid_argument("onsite_bias: expected " + std::to_string(spec.sites) + " entries");
}

/// eps_j = E_z * w * cos(phi_j / 2), half the field-induced energy difference between the two edges.
template <typename Real>
RealVector<Real> field_bias(int sites, Real field, Real half_width) {
    RealVector<Real> eps(sites);
    for (int j = 0; j < sites; ++j) {
        const Real phi = Real(2) * pi_v<Real> * Real(j) / Real(sites);
        eps(j) = field * half_width * std::cos(phi / Real(2));
    }
    return eps;
}

template <typename Real = double>
LadderSpec<Real> homogeneous_ladder(int sites, Real rung, Real hopping = Real(1),
                                    Boundary boundary = Boundary::Moebius) {
    LadderSpec<Real> spec;
    spec.sites = sites;
    spec.hopping = hopping;
    spec.boundary = boundary;
    if (sites > 0) {
        spec.rung_coupling = RealVector<Real>::Constant(sites, rung);
        spec.onsite_bias = RealVector<Real>::Zero(sites);
    }
    return spec;
}

template <typename Real = double>
LadderSpec<Real> field_ladder(int sites, Real rung, Real hopping, Real field,
                              Boundary boundary = Boundary::Moebius, Real radius = Real(2),
                              Real half_width = Real(0.5)) {
    auto spec = homogeneous_ladder<Real>(sites, rung, hopping, boundary);
    spec.radius = radius;
    spec.half_width = half_width;
    spec.field = field;
    if (sites > 0) spec.onsite_bias = field_bias<Real>(sites, field, half_width);
    return spec;
}

// ----------------------------------------------------------------------------
// geometry

template <typename Real = double>
struct SiteCoordinates {
    std::vector<std::pair<Vector3<Real>, Vector3<Real>>> positions;  // (r_{j+}, r_{j-})
};

/// Embedding of edge site j on side `sign` (+1 or -1); valid for any integer j, including j = N.
template <typename Real>
Vector3<Real> site_position(const LadderSpec<Real>& spec, int j, int sign) {
    const Real phi = spec.angle(j);
    const Real s = Real(sign);
    const Real rho = spec.radius + s * spec.half_width * std::sin(phi / Real(2));
    return {std::cos(phi) * rho, std::sin(phi) * rho, s * spec.half_width * std::cos(phi / Real(2))};
}

template <typename Real>
SiteCoordinates<Real> build_geometry(const LadderSpec<Real>& spec) {
    validate(spec);
    SiteCoordinates<Real> out;
    out.positions.reserve(spec.sites);
    for (int j = 0; j < spec.sites; ++j)
        out.positions.emplace_back(site_position(spec, j, +1), site_position(spec, j, -1));
    return out;
}

// ----------------------------------------------------------------------------
// Hamiltonians

inline std::vector<std::string> site_labels(int sites) {
    std::vector<std::string> labels;
    labels.reserve(2 * sites);
    for (int j = 0; j < sites; ++j) {
        labels.push_back("a" + std::to_string(j));
        labels.push_back("b" + std::to_string(j));
    }
    return labels;
}

inline std::vector<std::string> pseudospin_labels(int sites) {
    std::vector<std::string> labels;
    labels.reserve(2 * sites);
    for (int j = 0; j < sites; ++j) {
        labels.push_back("c" + std::to_string(j) + "up");
        labels.push_back("c" + std::to_string(j) + "dn");
    }
    return labels;
}

/// Index of a_j / b_j in the interleaved basis (a_0, b_0, a_1, b_1, ...).
constexpr Eigen::Index a_index(int j) { return 2 * j; }
constexpr Eigen::Index b_index(int j) { return 2 * j + 1; }

/// Site-basis ladder Hamiltonian: on-site blocks eps_j sz - V_j sx, hopping -xi between
/// neighbouring rungs, and a closing block -xi sx (Moebius) or -xi 1 (Periodic).
template <typename Real>
HermitianOperator<Real> build_hamiltonian(const LadderSpec<Real>& spec) {
    validate(spec);
    const int n = spec.sites;
    ComplexMatrix<Real> h = ComplexMatrix<Real>::Zero(2 * n, 2 * n);
    const auto sx = pauli::x<Real>();
    const auto sz = pauli::z<Real>();
    const auto id = pauli::identity<Real>();

    for (int j = 0; j < n; ++j)
        h.template block<2, 2>(2 * j, 2 * j) = spec.onsite_bias(j) * sz - spec.rung_coupling(j) * sx;

    for (int j = 0; j + 1 < n; ++j) {
        h.template block<2, 2>(2 * j, 2 * j + 2) = -spec.hopping * id;
        h.template block<2, 2>(2 * j + 2, 2 * j) = -spec.hopping * id;
    }

    // A_N = sx A_0 for the twisted closure.
    const Eigen::Matrix<Complex<Real>, 2, 2> closing =
        spec.boundary == Boundary::Moebius ? Eigen::Matrix<Complex<Real>, 2, 2>(-spec.hopping * sx)
                                           : Eigen::Matrix<Complex<Real>, 2, 2>(-spec.hopping * id);
    h.template block<2, 2>(2 * (n - 1), 0) += closing;
    h.template block<2, 2>(0, 2 * (n - 1)) += closing.adjoint();

    return {std::move(h), Basis::SiteAB, site_labels(n)};
}

/// Induced gauge structure of the twisted ladder: texture field Omega_j and hopping twist Q.
template <typename Real = double>
struct PseudoSpinForm {
    Eigen::Matrix<Real, Eigen::Dynamic, 3> omega_field;
    Eigen::Matrix<Complex<Real>, 2, 2> twist_matrix;
};

/// Block-diagonal unitary taking A_j = (a_j, b_j) to B_j = (c_{j,up}, c_{j,dn}).
/// For the Moebius ladder the up component carries the phase exp(-i phi_j / 2).
template <typename Real>
ComplexMatrix<Real> rung_rotation(const LadderSpec<Real>& spec) {
    const int n = spec.sites;
    const Real r = Real(1) / std::sqrt(Real(2));
    ComplexMatrix<Real> u = ComplexMatrix<Real>::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const Complex<Real> phase = spec.boundary == Boundary::Moebius
                                        ? std::polar(Real(1), -spec.angle(j) / Real(2))
                                        : Complex<Real>(1);
        u(2 * j, 2 * j) = phase * r;
        u(2 * j, 2 * j + 1) = -phase * r;
        u(2 * j + 1, 2 * j) = r;
        u(2 * j + 1, 2 * j + 1) = r;
    }
    return u;
}

template <typename Real>
PseudoSpinForm<Real> pseudospin_form(const LadderSpec<Real>& spec) {
    PseudoSpinForm<Real> form;
    form.omega_field.resize(spec.sites, 3);
    for (int j = 0; j < spec.sites; ++j) {
        const Real half = spec.angle(j) / Real(2);
        form.omega_field(j, 0) = spec.onsite_bias(j) * std::cos(half);
        form.omega_field(j, 1) = spec.onsite_bias(j) * std::sin(half);
        form.omega_field(j, 2) = spec.rung_coupling(j);
    }
    form.twist_matrix.setZero();
    form.twist_matrix(0, 0) = std::polar(Real(1), pi_v<Real> / Real(spec.sites));
    form.twist_matrix(1, 1) = Real(1);
    return form;
}

/// Rewrites a Moebius site-basis Hamiltonian in the pseudo-spin basis, where the boundary
/// becomes ordinary periodic closure and the twist moves into Q and Omega_j.
template <typename Real>
std::pair<HermitianOperator<Real>, PseudoSpinForm<Real>> to_pseudospin_basis(const LadderSpec<Real>& spec,
                                                                             const HermitianOperator<Real>& h) {
    validate(spec);
    if (spec.boundary != Boundary::Moebius)
        throw std::invalid_argument("boundary: pseudo-spin rotation requires the Moebius boundary");
    if (h.basis != Basis::SiteAB || h.dim() != 2 * spec.sites)
        throw std::invalid_argument("operator: expected a site-basis Hamiltonian of dimension 2N");
    const auto u = rung_rotation(spec);
    ComplexMatrix<Real> rotated = u * h.entries * u.adjoint();
    return {HermitianOperator<Real>{std::move(rotated), Basis::PseudoSpin, pseudospin_labels(spec.sites)},
            pseudospin_form(spec)};
}

template <typename Real>
std::pair<HermitianOperator<Real>, PseudoSpinForm<Real>> to_pseudospin_basis(const LadderSpec<Real>& spec) {
    return to_pseudospin_basis(spec, build_hamiltonian(spec));
}

/// Extracts the N x N block of one pseudo-spin component from a pseudo-spin-basis operator.
template <typename Real>
ComplexMatrix<Real> channel_block(const HermitianOperator<Real>& h, Channel channel) {
    const Eigen::Index n = h.dim() / 2;
    const Eigen::Index offset = channel == Channel::Up ? 0 : 1;
    ComplexMatrix<Real> block(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) block(i, j) = h.entries(2 * i + offset, 2 * j + offset);
    return block;
}

template <typename Real = double>
struct ChannelPair {
    HermitianOperator<Real> up;
    HermitianOperator<Real> down;

    const HermitianOperator<Real>& operator[](Channel c) const { return c == Channel::Up ? up : down; }
};

/// Hopping amplitude xi_chi of one channel ring: xi exp(i pi / N) for the twisted up channel.
template <typename Real>
Complex<Real> channel_hopping(const LadderSpec<Real>& spec, Channel channel) {
    if (channel == Channel::Up && spec.boundary == Boundary::Moebius)
        return std::polar(spec.hopping, pi_v<Real> / Real(spec.sites));
    return {spec.hopping, Real(0)};
}

template <typename Real>
Real channel_offset(const LadderSpec<Real>& spec, Channel channel) {
    return channel == Channel::Up ? spec.rung_coupling(0) : -spec.rung_coupling(0);
}

template <typename Real>
void require_block_diagonal(const LadderSpec<Real>& spec) {
    validate(spec);
    if (spec.onsite_bias.cwiseAbs().maxCoeff() != Real(0))
        throw std::invalid_argument("onsite_bias: channel decomposition needs zero bias");
    if ((spec.rung_coupling.array() != spec.rung_coupling(0)).any())
        throw std::invalid_argument("rung_coupling: channel decomposition needs homogeneous V");
}

/// Hopping-only part of a channel ring, -(xi_chi c_j^dag c_{j+1} + h.c.) with periodic closure.
template <typename Real>
ComplexMatrix<Real> channel_kinetic(const LadderSpec<Real>& spec, Channel channel) {
    const int n = spec.sites;
    const Complex<Real> xi = channel_hopping(spec, channel);
    ComplexMatrix<Real> k = ComplexMatrix<Real>::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const int next = (j + 1) % n;
        k(j, next) += -xi;
        k(next, j) += -std::conj(xi);
    }
    return k;
}

/// Decoupled channel Hamiltonians H_chi = +-V 1 - (xi_chi shift + h.c.).
template <typename Real>
ChannelPair<Real> channel_hamiltonians(const LadderSpec<Real>& spec) {
    require_block_diagonal(spec);
    auto make = [&](Channel c) {
        ComplexMatrix<Real> h = channel_kinetic(spec, c);
        h.diagonal().array() += channel_offset(spec, c);
        std::vector<std::string> labels;
        for (int j = 0; j < spec.sites; ++j)
            labels.push_back("c" + std::to_string(j) + (c == Channel::Up ? "up" : "dn"));
        return HermitianOperator<Real>{std::move(h), Basis::PseudoSpin, std::move(labels)};
    };
    return {make(Channel::Up), make(Channel::Down)};
}

/// Product of the unit hopping phases around a ring, prod_j (-H_{j,j+1}) / |H_{j,j+1}|.
/// This is the gauge-invariant flux of the ring: -1 for half a flux quantum.
template <typename Derived>
auto loop_phase(const Eigen::MatrixBase<Derived>& ring) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = ring.rows();
    Scalar product(1);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Scalar hop = -ring(j, (j + 1) % n);
        product *= hop / std::abs(hop);
    }
    return product;
}

} // namespace moebius
