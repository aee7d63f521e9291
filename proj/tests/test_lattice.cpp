#include "oracles.hpp"

#include <moebius/lattice.hpp>
#include <moebius/spectra.hpp>

#include <doctest.h>

#include <random>

using namespace moebius;

namespace {

std::vector<double> sorted(const RealVector<double>& v) {
    std::vector<double> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end());
    return out;
}

LadderSpec<double> random_spec(std::mt19937& rng, Boundary boundary) {
    std::uniform_int_distribution<int> sites(3, 16);
    std::uniform_real_distribution<double> coupling(-3.0, 3.0);
    auto spec = homogeneous_ladder<double>(sites(rng), 1.0, 1.0, boundary);
    spec.hopping = 0.2 + std::abs(coupling(rng));
    for (int j = 0; j < spec.sites; ++j) {
        spec.rung_coupling(j) = coupling(rng);
        spec.onsite_bias(j) = coupling(rng);
    }
    return spec;
}

} // namespace

TEST_CASE("geometry follows the parametric embedding") {
    auto spec = homogeneous_ladder<double>(12, 1.0);
    spec.radius = 2.0;
    spec.half_width = 0.5;
    const auto geo = build_geometry(spec);
    REQUIRE(geo.positions.size() == 12);

    const auto& [p0, m0] = geo.positions[0];
    CHECK((p0 - Vector3<double>(2, 0, 0.5)).norm() < 1e-14);
    CHECK((m0 - Vector3<double>(2, 0, -0.5)).norm() < 1e-14);

    const auto& [p6, m6] = geo.positions[6];
    CHECK((p6 - Vector3<double>(-2.5, 0, 0)).norm() < 1e-14);
    CHECK((m6 - Vector3<double>(-1.5, 0, 0)).norm() < 1e-14);

    // j = N lands on the opposite edge of rung 0
    CHECK((site_position(spec, 12, +1) - m0).norm() < 1e-14);
    CHECK((site_position(spec, 12, -1) - p0).norm() < 1e-14);
}

TEST_CASE("field-mode bias matches the geometric dipole") {
    const auto spec = field_ladder<double>(17, 3.0, 1.0, 0.7, Boundary::Moebius, 2.0, 0.4);
    const auto geo = build_geometry(spec);
    for (int j = 0; j < spec.sites; ++j) {
        const double dz = geo.positions[j].first.z() - geo.positions[j].second.z();
        CHECK(std::abs(2.0 * spec.onsite_bias(j) - 0.7 * dz) < 1e-12);
        CHECK(std::abs(spec.onsite_bias(j) - 0.7 * 0.4 * std::cos(spec.angle(j) / 2)) < 1e-12);
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(build_hamiltonian(homogeneous_ladder<double>(2, 1.0)), std::invalid_argument);
    auto spec = homogeneous_ladder<double>(6, 1.0);
    spec.half_width = 3.0;
    CHECK_THROWS_AS(build_geometry(spec), std::invalid_argument);
    spec = homogeneous_ladder<double>(6, 1.0);
    spec.rung_coupling.resize(5);
    CHECK_THROWS_AS(build_hamiltonian(spec), std::invalid_argument);
}

TEST_CASE("decoupled rungs give +-V") {
    for (auto b : {Boundary::Moebius, Boundary::Periodic}) {
        const auto h = build_hamiltonian(homogeneous_ladder<double>(12, 50.0, 0.0, b));
        const auto ev = sorted(eigenvalues(h));
        for (int i = 0; i < 12; ++i) {
            CHECK(ev[i] == doctest::Approx(-50.0).epsilon(1e-14));
            CHECK(ev[i + 12] == doctest::Approx(50.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("twisted closure couples a to b") {
    const auto h = build_hamiltonian(homogeneous_ladder<double>(12, 50.0, 1.0));
    CHECK(h(a_index(11), b_index(0)) == std::complex<double>(-1.0));
    CHECK(h(b_index(11), a_index(0)) == std::complex<double>(-1.0));
    CHECK(h(a_index(11), a_index(0)) == std::complex<double>(0.0));
    CHECK(h(b_index(0), a_index(11)) == std::complex<double>(-1.0));
    CHECK(h.labels[a_index(3)] == "a3");
    CHECK(h.labels[b_index(3)] == "b3");
}

TEST_CASE("ladder spectrum equals the channel dispersions") {
    for (auto b : {Boundary::Moebius, Boundary::Periodic}) {
        const auto ev = sorted(eigenvalues(build_hamiltonian(homogeneous_ladder<double>(12, 50.0, 1.0, b))));
        const auto expected = oracle::ladder_levels(12, 50.0, 1.0, b == Boundary::Moebius);
        REQUIRE(ev.size() == expected.size());
        for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] - expected[i]) < 1e-10);
    }
}

TEST_CASE("random ladders are Hermitian and rotation preserves the spectrum") {
    std::mt19937 rng(20261014);
    for (int trial = 0; trial < 40; ++trial) {
        const auto spec = random_spec(rng, trial % 2 ? Boundary::Moebius : Boundary::Periodic);
        const auto h = build_hamiltonian(spec);
        CHECK(hermiticity_defect(h.entries) < 1e-12);
        if (spec.boundary != Boundary::Moebius) continue;
        const auto [rotated, form] = to_pseudospin_basis(spec, h);
        CHECK(rotated.basis == Basis::PseudoSpin);
        CHECK(hermiticity_defect(rotated.entries) < 1e-12);
        const auto a = sorted(eigenvalues(h));
        const auto b = sorted(eigenvalues(rotated));
        const double scale = std::max(1.0, std::abs(a.back()));
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12 * scale);

        // on-site blocks are Omega_j . sigma, intra-rung hopping is -xi Q
        for (int j = 0; j < spec.sites; ++j) {
            const Eigen::Matrix2cd expected = form.omega_field(j, 0) * pauli::x<double>() +
                                              form.omega_field(j, 1) * pauli::y<double>() +
                                              form.omega_field(j, 2) * pauli::z<double>();
            CHECK((rotated.entries.block<2, 2>(2 * j, 2 * j) - expected).cwiseAbs().maxCoeff() < 1e-12);
            const int next = (j + 1) % spec.sites;
            const Eigen::Matrix2cd hop = rotated.entries.block<2, 2>(2 * j, 2 * next);
            CHECK((hop + spec.hopping * form.twist_matrix).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("pseudo-spin form of the homogeneous Moebius ladder") {
    const auto spec = homogeneous_ladder<double>(12, 50.0, 1.0);
    const auto [h, form] = to_pseudospin_basis(spec);
    CHECK(std::abs(std::abs(form.twist_matrix(0, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(std::abs(form.twist_matrix(1, 1)) - 1.0) < 1e-15);
    const std::complex<double> expected = -std::polar(1.0, pi_v<double> / 12);
    for (int j = 0; j < 12; ++j) {
        const int next = (j + 1) % 12;
        CHECK(std::abs(h(2 * j, 2 * next) - expected) < 1e-13);
        CHECK(std::abs(h(2 * j + 1, 2 * next + 1) + 1.0) < 1e-13);
        for (int k = 0; k < 12; ++k) {
            CHECK(std::abs(h(2 * j, 2 * k + 1)) < 1e-13);  // no up-down mixing
        }
    }
    CHECK(h.labels[0] == "c0up");
    CHECK_THROWS_AS(to_pseudospin_basis(homogeneous_ladder<double>(12, 50.0, 1.0, Boundary::Periodic)),
                    std::invalid_argument);
}

TEST_CASE("loop phase is a half flux quantum in the twisted channel") {
    for (int n : {3, 4, 7, 12, 50, 101}) {
        const auto spec = homogeneous_ladder<double>(n, 5.0, 1.0);
        const auto [h, form] = to_pseudospin_basis(spec);
        CHECK(std::abs(loop_phase(channel_block(h, Channel::Up)) + 1.0) < 1e-12);
        CHECK(std::abs(loop_phase(channel_block(h, Channel::Down)) - 1.0) < 1e-12);
        const auto channels = channel_hamiltonians(spec);
        CHECK(std::abs(loop_phase(channels.up.entries) + 1.0) < 1e-12);
        CHECK(std::abs(loop_phase(channels.down.entries) - 1.0) < 1e-12);
    }
}

TEST_CASE("channel Hamiltonians") {
    const auto spec = homogeneous_ladder<double>(12, 50.0, 1.0);
    const auto ch = channel_hamiltonians(spec);
    const auto up = sorted(eigenvalues(ch.up));
    const auto down = sorted(eigenvalues(ch.down));
    CHECK(up.front() == doctest::Approx(50.0 - 2.0 * std::cos(pi_v<double> / 12)).epsilon(1e-14));
    CHECK(up.front() == doctest::Approx(48.068148).epsilon(1e-8));
    CHECK(down.front() == doctest::Approx(-52.0).epsilon(1e-14));

    const auto oracle_up = oracle::channel_levels(12, 50.0, 1.0, Channel::Up, true);
    const auto oracle_down = oracle::channel_levels(12, 50.0, 1.0, Channel::Down, true);
    for (int i = 0; i < 12; ++i) {
        CHECK(std::abs(up[i] - oracle_up[i]) < 1e-10);
        CHECK(std::abs(down[i] - oracle_down[i]) < 1e-10);
    }

    std::vector<double> both = up;
    both.insert(both.end(), down.begin(), down.end());
    std::sort(both.begin(), both.end());
    const auto full = sorted(eigenvalues(build_hamiltonian(spec)));
    for (int i = 0; i < 24; ++i) CHECK(std::abs(both[i] - full[i]) < 1e-10);

    // untwisted control
    const auto periodic = channel_hamiltonians(homogeneous_ladder<double>(12, 50.0, 1.0, Boundary::Periodic));
    const auto pu = sorted(eigenvalues(periodic.up));
    const auto po = oracle::channel_levels(12, 50.0, 1.0, Channel::Up, false);
    for (int i = 0; i < 12; ++i) CHECK(std::abs(pu[i] - po[i]) < 1e-10);
    CHECK(std::abs(loop_phase(periodic.up.entries) - 1.0) < 1e-12);

    auto biased = spec;
    biased.onsite_bias(3) = 0.1;
    CHECK_THROWS_AS(channel_hamiltonians(biased), std::invalid_argument);
}

TEST_CASE("long double instantiation") {
    const auto spec = homogeneous_ladder<long double>(12, 50.0L, 1.0L);
    const auto h = build_hamiltonian(spec);
    const auto ev = eigenvalues(h);
    const auto expected = oracle::ladder_levels(12, 50.0, 1.0, true);
    std::vector<long double> v(ev.data(), ev.data() + ev.size());
    std::sort(v.begin(), v.end());
    for (int i = 0; i < 24; ++i) CHECK(std::abs(static_cast<double>(v[i]) - expected[i]) < 1e-12);
}
