// core.hpp - shared dense types, enums and error classes for the Moebius ladder toolkit

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace moebius {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using ComplexMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using ComplexVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
using Vector3 = Eigen::Matrix<Real, 3, 1>;

template <typename Real>
constexpr Real pi_v = Real(3.141592653589793238462643383279502884L);

enum class Boundary { Moebius, Periodic };

// Pseudo-spin components: Up = antisymmetric rung mode (+V), Down = symmetric rung mode (-V).
enum class Channel { Up, Down };

enum class Basis { SiteAB, PseudoSpin };

inline std::string to_string(Boundary b) { return b == Boundary::Moebius ? "moebius" : "periodic"; }
inline std::string to_string(Channel c) { return c == Channel::Up ? "up" : "down"; }
inline std::string to_string(Basis b) { return b == Basis::SiteAB ? "site" : "pseudospin"; }

/// Raised when a second-order perturbative denominator is too close to zero.
class NearDegeneracy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when E - H - Sigma cannot be inverted; carries the offending energy.
class SingularMatrix : public std::runtime_error {
public:
    SingularMatrix(const std::string& what, double energy)
        : std::runtime_error(what), energy_(energy) {}
    double energy() const noexcept { return energy_; }

private:
    double energy_;
};

/// Largest |H_ij - conj(H_ji)|, divided by max|H_ij| (or 1 for the zero matrix).
template <typename Derived>
auto hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
    using std::abs;
    auto scale = m.cwiseAbs().maxCoeff();
    if (scale == decltype(scale)(0)) scale = decltype(scale)(1);
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-12) {
    if (m.rows() != m.cols()) return false;
    return static_cast<double>(hermiticity_defect(m)) < tol;
}

/// Dense Hermitian matrix tagged with the basis it is written in.
template <typename Real = double>
struct HermitianOperator {
    ComplexMatrix<Real> entries;
    Basis basis{Basis::SiteAB};
    std::vector<std::string> labels;

    Eigen::Index dim() const { return entries.rows(); }
    Complex<Real> operator()(Eigen::Index i, Eigen::Index j) const { return entries(i, j); }
};

namespace pauli {

template <typename Real = double>
Eigen::Matrix<Complex<Real>, 2, 2> identity() {
    return Eigen::Matrix<Complex<Real>, 2, 2>::Identity();
}

template <typename Real = double>
Eigen::Matrix<Complex<Real>, 2, 2> x() {
    Eigen::Matrix<Complex<Real>, 2, 2> m;
    m << Real(0), Real(1), Real(1), Real(0);
    return m;
}

template <typename Real = double>
Eigen::Matrix<Complex<Real>, 2, 2> y() {
    Eigen::Matrix<Complex<Real>, 2, 2> m;
    m << Real(0), Complex<Real>(0, -1), Complex<Real>(0, 1), Real(0);
    return m;
}

template <typename Real = double>
Eigen::Matrix<Complex<Real>, 2, 2> z() {
    Eigen::Matrix<Complex<Real>, 2, 2> m;
    m << Real(1), Real(0), Real(0), Real(-1);
    return m;
}

} // namespace pauli

} // namespace moebius
