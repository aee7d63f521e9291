// transport.hpp - two-terminal NEGF transmission through the ladder ring

#pragma once

#include "moebius/core.hpp"
#include "moebius/lattice.hpp"
#include "moebius/parallel.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace moebius {

/// Two semi-infinite uniform chains attached to a-sites of the ring.
///
/// `onsite` shifts the lead band to [onsite - 2|t|, onsite + 2|t|]; `tunneling` is the
/// lead-ring amplitude (the lead hopping when unset).
template <typename Real = double>
struct LeadSpec {
    Real hopping{1};
    std::optional<Real> tunneling;
    Real onsite{0};
    int attach_left{0};
    std::optional<int> attach_right;  // rung index; N/2 when unset
    bool wide_band{false};

    Real coupling() const { return tunneling.value_or(hopping); }
};

/// Shift applied to E when E - H - Sigma is numerically singular.
inline constexpr double singular_energy_shift = 1e-9;

template <typename Real>
std::pair<int, int> attachment_sites(const LadderSpec<Real>& spec, const LeadSpec<Real>& leads) {
    const int n = spec.sites;
    int right = 0;
    if (leads.attach_right) {
        right = *leads.attach_right;
    } else {
        if (n % 2 != 0) throw std::invalid_argument("sites: antipodal lead attachment needs an even N");
        right = n / 2;
    }
    const int left = leads.attach_left;
    if (left < 0 || left >= n) throw std::invalid_argument("attach_left: rung index out of range");
    if (right < 0 || right >= n) throw std::invalid_argument("attach_right: rung index out of range");
    if (left == right) throw std::invalid_argument("attach_right: leads must attach to distinct sites");
    return {left, right};
}

/// Retarded surface Green's function of a semi-infinite chain with hopping t and on-site e0.
template <typename Real = double>
Complex<Real> surface_green(Real energy, Real hopping, Real onsite = Real(0)) {
    const Real x = energy - onsite;
    const Real t2 = hopping * hopping;
    const Real disc = x * x - Real(4) * t2;
    if (disc < Real(0)) return {x / (Real(2) * t2), -std::sqrt(-disc) / (Real(2) * t2)};
    const Real sign = x >= Real(0) ? Real(1) : Real(-1);
    return {(x - sign * std::sqrt(disc)) / (Real(2) * t2), Real(0)};
}

/// Sigma = tau^2 g_surface(E), Im Sigma <= 0. With `wide_band` the lead is replaced by its
/// band-center value -i tau^2 / |t|.
template <typename Real = double>
Complex<Real> lead_self_energy(Real energy, const LeadSpec<Real>& lead) {
    const Real tau = lead.coupling();
    if (tau == Real(0)) return {Real(0), Real(0)};
    if (lead.hopping == Real(0)) throw std::invalid_argument("lead_hopping: must be nonzero");
    if (lead.wide_band) return {Real(0), -tau * tau / std::abs(lead.hopping)};
    return tau * tau * surface_green(energy, lead.hopping, lead.onsite);
}

template <typename Real = double>
Complex<Real> lead_self_energy(Real energy, Real hopping) {
    LeadSpec<Real> lead;
    lead.hopping = hopping;
    return lead_self_energy(energy, lead);
}

template <typename Real>
Real broadening(const Complex<Real>& sigma) {
    return Real(-2) * sigma.imag();
}

template <typename Real>
ComplexMatrix<Real> embedded_inverse_operand(Real energy, const HermitianOperator<Real>& h, Eigen::Index left,
                                             Eigen::Index right, Complex<Real> sigma_left,
                                             Complex<Real> sigma_right) {
    ComplexMatrix<Real> a = -h.entries;
    a.diagonal().array() += Complex<Real>(energy);
    a(left, left) -= sigma_left;
    a(right, right) -= sigma_right;
    return a;
}

template <typename Real>
void check_conditioning(const Eigen::PartialPivLU<ComplexMatrix<Real>>& lu, Real energy) {
    const Real rc = lu.rcond();
    if (!(rc > Real(16) * std::numeric_limits<Real>::epsilon())) {
        std::ostringstream msg;
        msg << "E - H - Sigma is singular at E=" << static_cast<double>(energy);
        throw SingularMatrix(msg.str(), static_cast<double>(energy));
    }
}

/// G(E) = [E - H - Sigma_L - Sigma_R]^{-1} with the self-energies on the two attachment sites.
template <typename Real>
ComplexMatrix<Real> device_green(Real energy, const LadderSpec<Real>& spec, const HermitianOperator<Real>& h,
                                 const LeadSpec<Real>& leads) {
    const auto [left, right] = attachment_sites(spec, leads);
    const auto sigma = lead_self_energy(energy, leads);
    Eigen::PartialPivLU<ComplexMatrix<Real>> lu(
        embedded_inverse_operand(energy, h, a_index(left), a_index(right), sigma, sigma));
    check_conditioning(lu, energy);
    return lu.inverse();
}

/// Tr[Gamma_R G Gamma_L G^dag] for arbitrary broadening matrices.
template <typename Real>
Real landauer_trace(const ComplexMatrix<Real>& g, const ComplexMatrix<Real>& gamma_left,
                    const ComplexMatrix<Real>& gamma_right) {
    return (gamma_right * g * gamma_left * g.adjoint()).trace().real();
}

template <typename Real = double>
struct TransmissionCurve {
    RealVector<Real> energy;
    RealVector<Real> transmission;
    std::vector<Complex<Real>> sigma_left;
    std::vector<Complex<Real>> sigma_right;
    RealVector<Real> gamma_left;
    RealVector<Real> gamma_right;
};

template <typename Real>
struct TransmissionPoint {
    Real transmission;
    Complex<Real> sigma_left;
    Complex<Real> sigma_right;
};

template <typename Real>
TransmissionPoint<Real> transmission_at(Real energy, const LadderSpec<Real>& spec,
                                               const HermitianOperator<Real>& h, const LeadSpec<Real>& leads) {
    const auto [left, right] = attachment_sites(spec, leads);
    const Eigen::Index li = a_index(left);
    const Eigen::Index ri = a_index(right);

    auto evaluate = [&](Real e) {
        const auto sigma = lead_self_energy(e, leads);
        Eigen::PartialPivLU<ComplexMatrix<Real>> lu(embedded_inverse_operand(e, h, li, ri, sigma, sigma));
        check_conditioning(lu, e);
        // single-site broadenings make Gamma rank one: T = Gamma_L Gamma_R |G_RL|^2
        const ComplexVector<Real> column = lu.solve(ComplexVector<Real>::Unit(h.dim(), li));
        const Real gamma = broadening(sigma);
        return TransmissionPoint<Real>{gamma * gamma * std::norm(column(ri)), sigma, sigma};
    };

    try {
        return evaluate(energy);
    } catch (const SingularMatrix&) {
        try {
            return evaluate(energy + Real(singular_energy_shift));
        } catch (const SingularMatrix&) {
            std::ostringstream msg;
            msg << "transmission: singular Green's function at E=" << static_cast<double>(energy)
                << " (also after shifting by " << singular_energy_shift << ")";
            throw SingularMatrix(msg.str(), static_cast<double>(energy));
        }
    }
}

/// Landauer transmission T(E) of the ring between the two lead attachment sites.
template <typename Real>
TransmissionCurve<Real> transmission(const LadderSpec<Real>& spec, const LeadSpec<Real>& leads,
                                     const RealVector<Real>& energy_grid) {
    const auto h = build_hamiltonian(spec);
    attachment_sites(spec, leads);
    const auto count = static_cast<std::size_t>(energy_grid.size());
    std::vector<TransmissionPoint<Real>> points(count);
    parallel_for(count, [&](std::size_t i) {
        points[i] = transmission_at(energy_grid(static_cast<Eigen::Index>(i)), spec, h, leads);
    });

    TransmissionCurve<Real> curve;
    curve.energy = energy_grid;
    curve.transmission.resize(energy_grid.size());
    curve.gamma_left.resize(energy_grid.size());
    curve.gamma_right.resize(energy_grid.size());
    for (std::size_t i = 0; i < count; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        curve.transmission(k) = points[i].transmission;
        curve.sigma_left.push_back(points[i].sigma_left);
        curve.sigma_right.push_back(points[i].sigma_right);
        curve.gamma_left(k) = broadening(points[i].sigma_left);
        curve.gamma_right(k) = broadening(points[i].sigma_right);
    }
    return curve;
}

/// Number of strict interior local maxima of T above `floor`.
template <typename Real>
int count_peaks(const RealVector<Real>& values, Real floor = Real(1e-6)) {
    int peaks = 0;
    for (Eigen::Index i = 1; i + 1 < values.size(); ++i)
        if (values(i) > floor && values(i) > values(i - 1) && values(i) >= values(i + 1)) ++peaks;
    return peaks;
}

} // namespace moebius
