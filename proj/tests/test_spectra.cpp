#include "oracles.hpp"

#include <moebius/spectra.hpp>

#include <boost/math/quadrature/sinh_sinh.hpp>
#include <doctest.h>

#include <random>
#include <set>

using namespace moebius;

TEST_CASE("eigensystem basics") {
    Eigen::Matrix3cd d = Eigen::Matrix3cd::Zero();
    d.diagonal() << 1.0, 2.0, 3.0;
    const auto e = eigensystem(d);
    CHECK(e.values(0) == doctest::Approx(1.0));
    CHECK(e.values(1) == doctest::Approx(2.0));
    CHECK(e.values(2) == doctest::Approx(3.0));

    const auto sx = eigensystem(pauli::x<double>());
    CHECK(sx.values(0) == doctest::Approx(-1.0));
    CHECK(sx.values(1) == doctest::Approx(1.0));

    Eigen::Matrix2cd bad;
    bad << 0.0, 1.0, 2.0, 0.0;
    CHECK_THROWS_AS(eigensystem(bad), std::invalid_argument);
}

TEST_CASE("eigensystem residuals and orthonormality on random Hermitian matrices") {
    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5 + 7 * trial;
        ComplexMatrix<double> a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
        const ComplexMatrix<double> h = (a + a.adjoint()) / 2.0;
        const auto e = eigensystem(h);
        const double scale = e.values.cwiseAbs().maxCoeff();
        for (int k = 0; k < n; ++k) {
            CHECK((h * e.vectors.col(k) - e.values(k) * e.vectors.col(k)).norm() < 1e-10 * scale);
            if (k > 0) CHECK(e.values(k) >= e.values(k - 1));
        }
        const ComplexMatrix<double> overlap = e.vectors.adjoint() * e.vectors;
        CHECK((overlap - ComplexMatrix<double>::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("zeroth-order continuum levels") {
    CHECK(level_energy(0, Channel::Up, 50.0) == 50.25);
    CHECK(level_energy(0, Channel::Down, 50.0) == -50.0);
    CHECK(level_energy(1, Channel::Up, 0.0) == 0.25);
    CHECK(level_energy(1, Channel::Down, 0.0) == 1.0);
    for (int n = -6; n <= 6; ++n) CHECK(level_energy(n, Channel::Up, 3.0) == level_energy(1 - n, Channel::Up, 3.0));
    const auto table = continuum_levels(-2, 2, 50.0);
    CHECK(table.size() == 10);
    for (const auto& row : table) CHECK(std::isfinite(row.energy));
    CHECK(level_energy(2, Channel::Up, 50.0, Boundary::Periodic) == 54.0);
}

TEST_CASE("Stark shift closed forms") {
    CHECK(stark_shift(0, Channel::Up, 50.0, 1.0) == doctest::Approx(49.875 / 9949.8125).epsilon(1e-15));
    CHECK(stark_shift(0, Channel::Up, 50.0, 1.0) == doctest::Approx(5.01266e-3).epsilon(1e-5));
    CHECK(stark_shift(0, Channel::Down, 50.0, 1.0) == doctest::Approx(-50.625 / 10250.5625).epsilon(1e-15));
    CHECK(stark_shift(0, Channel::Down, 50.0, 1.0) == doctest::Approx(-4.93876e-3).epsilon(1e-5));
    for (int n = -4; n <= 4; ++n) {
        CHECK(stark_shift(n, Channel::Up, 50.0, 0.0) == 0.0);
        CHECK(stark_shift(n, Channel::Down, 50.0, 0.0) == 0.0);
    }
    // (2V - 3n - 3/4) vanishes for V = 15/8, n = 1
    CHECK_THROWS_AS(stark_shift(1, Channel::Up, 1.875, 0.1), NearDegeneracy);
}

TEST_CASE("Stark polynomial equals the sum over intermediate states") {
    // independent route: Rayleigh-Schroedinger sum over the model's own couplings
    for (double v : {5.0, 20.0, 50.0}) {
        const auto model = build_continuum(12, v, 1.0);
        for (int n = -3; n <= 3; ++n) {
            for (Channel c : {Channel::Up, Channel::Down}) {
                const double rs = oracle::second_order_shift(model.matrix, model.index(n, c));
                CHECK(stark_shift(n, c, v, 1.0) == doctest::Approx(rs).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("continuum model structure") {
    const auto m = build_continuum(8, 50.0, 1.0);
    CHECK(m.dim() == 34);
    CHECK(m.matrix(m.index(0, Channel::Up), m.index(0, Channel::Down)) == 0.5);
    CHECK(m.matrix(m.index(0, Channel::Up), m.index(1, Channel::Down)) == 0.5);
    CHECK(m.matrix(m.index(0, Channel::Up), m.index(2, Channel::Down)) == 0.0);
    CHECK(hermiticity_defect(m.matrix) == 0.0);
    CHECK_THROWS_AS(build_continuum(1, 50.0, 1.0), std::invalid_argument);

    // every nonzero off-diagonal element is one of the two allowed transitions
    for (int n = -8; n <= 8; ++n) {
        for (int k = -8; k <= 8; ++k) {
            for (Channel a : {Channel::Up, Channel::Down}) {
                for (Channel b : {Channel::Up, Channel::Down}) {
                    if (n == k && a == b) continue;
                    const double x = m.matrix(m.index(n, a), m.index(k, b));
                    const bool allowed = (a == Channel::Up && b == Channel::Down && (k == n || k == n + 1)) ||
                                         (a == Channel::Down && b == Channel::Up && (n == k || n == k + 1));
                    CHECK((x != 0.0) == allowed);
                }
            }
        }
    }

    // zero field: spectrum is the closed-form level set
    const auto zero = build_continuum(8, 50.0, 0.0);
    const auto ev = eigenvalues(zero.matrix);
    std::multiset<double> expected;
    for (const auto& row : continuum_levels(-8, 8, 50.0)) expected.insert(row.energy);
    auto it = expected.begin();
    for (Eigen::Index i = 0; i < ev.size(); ++i, ++it) CHECK(ev(i) == doctest::Approx(*it).epsilon(1e-14));
}

TEST_CASE("exact diagonalization reproduces the lowest perturbed levels") {
    const auto model = build_continuum(6, 50.0, 0.1);
    const Eigensystem<double> eig = eigensystem(model.matrix);
    for (int n = -2; n <= 2; ++n) {
        const double exact = exact_level(model, eig, n, Channel::Down);
        CHECK(std::abs(exact - level_energy(n, Channel::Down, 50.0) - stark_shift(n, Channel::Down, 50.0, 0.1)) < 1e-6);
    }
    // levels without a second-order-coupled degenerate partner follow the formula as well
    for (int n : {-2, -1, 2, 3}) {
        REQUIRE_FALSE(second_order_partner(n, Channel::Up));
        const double exact = exact_level(model, eig, n, Channel::Up);
        CHECK(std::abs(exact - level_energy(n, Channel::Up, 50.0) - stark_shift(n, Channel::Up, 50.0, 0.1)) < 1e-6);
    }
}

TEST_CASE("the degenerate up pair n = 0, 1 mixes at second order") {
    CHECK(second_order_partner(0, Channel::Up) == 1);
    CHECK(second_order_partner(1, Channel::Up) == 0);
    CHECK_FALSE(second_order_partner(0, Channel::Down));
    const double eps = 0.1;
    const auto model = build_continuum(8, 50.0, eps);
    const auto ev = eigenvalues(model.matrix);
    // quasi-degenerate second-order block for {(0,up), (1,up)}
    const double d0 = stark_shift(0, Channel::Up, 50.0, eps);
    const double d1 = stark_shift(1, Channel::Up, 50.0, eps);
    const double w = eps * eps / 4.0 / (level_energy(0, Channel::Up, 50.0) - level_energy(1, Channel::Down, 50.0));
    const double mean = (d0 + d1) / 2, split = std::sqrt((d0 - d1) * (d0 - d1) / 4 + w * w);
    int found = 0;
    for (double target : {50.25 + mean - split, 50.25 + mean + split}) {
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (std::abs(ev(i) - target) < 1e-8) ++found;
    }
    CHECK(found == 2);
    // and the pair's total shift still equals the sum of the two closed forms
    double pair_sum = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i) - 50.25) < 1e-3) pair_sum += ev(i) - 50.25;
    CHECK(pair_sum == doctest::Approx(d0 + d1).epsilon(1e-6));
}

TEST_CASE("cutoff convergence of interior levels") {
    const auto a = build_continuum(8, 50.0, 0.1);
    const auto b = build_continuum(10, 50.0, 0.1);
    const Eigensystem<double> ea = eigensystem(a.matrix), eb = eigensystem(b.matrix);
    for (int n = -2; n <= 2; ++n)
        for (Channel c : {Channel::Up, Channel::Down})
            CHECK(std::abs(exact_level(a, ea, n, c) - exact_level(b, eb, n, c)) < 1e-10);
}

TEST_CASE("optical peaks of the continuum ring") {
    const auto peaks = continuum_peaks(-8, 8, 50.0, 0.2);
    std::set<double> centers;
    for (const auto& p : peaks) {
        centers.insert(p.center);
        CHECK(p.weight > 0.0);
    }
    CHECK(centers.count(100.25) == 1);  // n = 0, vertical
    CHECK(centers.count(99.25) == 1);   // n = 0 -> 1 down
    for (int n = -8; n <= 8; ++n) CHECK(centers.count(std::abs(100.0 - n + 0.25)) == 1);
    for (int n = -8; n < 8; ++n) CHECK(centers.count(std::abs(100.0 - 3.0 * n - 0.75)) == 1);

    const auto ordinary = continuum_peaks(-8, 8, 50.0, 0.2, Boundary::Periodic);
    REQUIRE(ordinary.size() == 1);
    CHECK(ordinary[0].center == 100.0);
    CHECK(ordinary[0].weight == doctest::Approx(17 * 0.01));

    const auto ground = continuum_peaks(-8, 8, 50.0, 0.2, Boundary::Moebius, Absorption::Ground);
    REQUIRE(ground.size() == 2);
    CHECK(ground[0].center == 100.25);
    CHECK(ground[1].center == 102.25);

    CHECK_THROWS_AS(continuum_peaks(-2, 2, 50.0, 0.0), std::invalid_argument);
}

TEST_CASE("peak positions do not depend on the broadening") {
    const auto peaks = continuum_peaks(-4, 4, 50.0, 0.1);
    const auto grid = uniform_grid(90.0, 110.0, 401);
    const auto a = render_spectrum(peaks, grid, 0.05);
    const auto b = render_spectrum(peaks, grid, 0.5);
    REQUIRE(a.peaks.size() == b.peaks.size());
    for (std::size_t i = 0; i < a.peaks.size(); ++i) CHECK(a.peaks[i].center == b.peaks[i].center);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        CHECK(a.intensity(i) >= 0.0);
        CHECK(b.intensity(i) >= 0.0);
    }
    CHECK_THROWS_AS(render_spectrum(peaks, grid, 0.0), std::invalid_argument);
}

TEST_CASE("each Lorentzian integrates to its weight") {
    boost::math::quadrature::sinh_sinh<double> integrator;
    for (double eta : {1e-3, 0.1, 2.0}) {
        // rescaled abscissa w = center + eta u keeps the peak where the rule resolves it
        const double total = integrator.integrate(
            [&](double u) { return 0.37 * eta * lorentzian(100.25 + eta * u, 100.25, eta); });
        CHECK(std::abs(total - 0.37) < 1e-6);
        // finite window check with an independent rule
        const double window = oracle::simpson([&](double w) { return lorentzian(w, 3.0, eta); },
                                              3.0 - 1e4 * eta, 3.0 + 1e4 * eta, 2000000);
        CHECK(std::abs(window - 2.0 / pi_v<double> * std::atan(1e4)) < 1e-6);
    }
}

TEST_CASE("lattice optical spectrum") {
    const auto moebius_spec = homogeneous_ladder<double>(12, 50.0, 1.0);
    const auto peaks = lattice_peaks(moebius_spec, 0.2);
    CHECK(peaks.size() > 4);
    for (const auto& p : peaks) {
        CHECK(p.center > 95.0);
        CHECK(p.center < 105.0);
    }
    // flat ring: the uniform dipole conserves momentum, every transition sits at 2V
    const auto flat = lattice_peaks(homogeneous_ladder<double>(12, 50.0, 1.0, Boundary::Periodic), 0.2);
    REQUIRE(flat.size() == 1);
    CHECK(flat[0].center == doctest::Approx(100.0).epsilon(1e-12));
    // total weight is basis independent: sum = Tr(P_up D P_dn D) = N eps^2
    double total = 0.0;
    for (const auto& p : flat) total += p.weight;
    CHECK(total == doctest::Approx(12 * 0.04).epsilon(1e-10));
}
