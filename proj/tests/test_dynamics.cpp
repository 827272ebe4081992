#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "lmg/dynamics.hpp"

using namespace lmg;

namespace {

SpectralSnapshot snapshot_at(int n, Direction dir, double s) {
    const auto sys = build_spin_system(n);
    Schedule sched = make_schedule(dir, 1.0, 2);
    return diagonalize(hamiltonian(sys, sched, s), s);
}

StateVector random_state(int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    StateVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = std::complex<double>(dist(rng), dist(rng));
    return v / v.norm();
}

} // namespace

TEST_CASE("zero dwell time leaves the state unchanged") {
    const auto snap = snapshot_at(10, Direction::Forward, 0.4);
    const auto state = random_state(11, 1);
    const auto out = propagate_interval(state, snap, 0.0);
    CHECK((out - state).norm() < 1e-12);
}

TEST_CASE("eigenvectors are stationary up to a phase") {
    const auto snap = snapshot_at(10, Direction::Forward, 0.4);
    const StateVector state = snap.eigenvectors.col(3).cast<std::complex<double>>();
    const auto out = propagate_interval(state, snap, 0.7);
    CHECK(std::abs(std::abs(state.dot(out)) - 1.0) < 1e-12);
}

TEST_CASE("two half steps equal one full step") {
    const auto snap = snapshot_at(10, Direction::Forward, 0.4);
    const auto state = random_state(11, 2);
    const auto one = propagate_interval(state, snap, 0.6);
    const auto two = propagate_interval(propagate_interval(state, snap, 0.3), snap, 0.3);
    CHECK((one - two).norm() < 1e-12);
}

TEST_CASE("population projection anchors") {
    const auto snap = snapshot_at(10, Direction::Forward, 0.4);
    const int dim = 11;

    StateVector v0 = snap.eigenvectors.col(0).cast<std::complex<double>>();
    Eigen::VectorXd p = project_populations(v0, snap);
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.tail(dim - 1).cwiseAbs().maxCoeff() < 1e-12);

    StateVector mix =
        ((snap.eigenvectors.col(0) + snap.eigenvectors.col(1)) / std::sqrt(2.0)).cast<std::complex<double>>();
    p = project_populations(mix, snap);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));

    p = project_populations(random_state(dim, 3), snap);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("full evolution conserves norm and probability") {
    const auto sys = build_spin_system(20);
    const auto sched = make_schedule(Direction::Forward, 10.0, 500);
    const auto trace = evolve_full(sys, sched);
    for (int k = 0; k < trace.points(); ++k) {
        CHECK(std::abs(trace.populations.row(k).sum() - 1.0) < 1e-10);
        CHECK(trace.populations.row(k).minCoeff() > -1e-14);
    }
}

TEST_CASE("slow forward drive stays in the ground state before the transition") {
    const auto sys = build_spin_system(20);
    const auto sched = make_schedule(Direction::Forward, 100.0, 1000);
    const auto trace = evolve_full(sys, sched);
    CHECK(trace.populations(trace.index_of(0.2), 0) > 0.999);
}

TEST_CASE("adiabatic limit: final ground population grows monotonically in T") {
    const auto sys = build_spin_system(10);
    double previous = 0.0;
    for (double t : {100.0, 400.0, 1600.0}) {
        const auto trace = evolve_full(sys, make_schedule(Direction::Forward, t, 2000));
        const double p0 = trace.populations(trace.points() - 1, 0);
        CHECK(p0 > previous);
        previous = p0;
    }
    CHECK(previous > 0.999);
}

TEST_CASE("grid convergence: populations stable once steps reach the reference count") {
    // Reference count recorded at 1000 intervals for N=20, T=10.
    const auto sys = build_spin_system(20);
    const auto a = evolve_full(sys, make_schedule(Direction::Forward, 10.0, 1000));
    const auto b = evolve_full(sys, make_schedule(Direction::Forward, 10.0, 2000));
    const Eigen::VectorXd pa = a.populations.row(a.points() - 1);
    const Eigen::VectorXd pb = b.populations.row(b.points() - 1);
    CHECK((pa - pb).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("backward start resolves the degenerate doublet by parity") {
    const auto snap = snapshot_at(10, Direction::Backward, 0.0);
    const Eigen::VectorXd parity = parity_diag(build_spin_system(10));

    const auto even = initial_state(snap, InitialState::GroundEvenParity);
    CHECK(std::abs(even.real().dot(parity.cwiseProduct(even.real())) - 1.0) < 1e-10);

    const auto odd = initial_state(snap, InitialState::GroundOddParity);
    CHECK(std::abs(odd.real().dot(parity.cwiseProduct(odd.real())) + 1.0) < 1e-10);

    const auto broken = initial_state(snap, InitialState::GroundBroken);
    CHECK(std::abs(broken.real().dot(parity.cwiseProduct(broken.real()))) < 1e-10);
    CHECK(std::abs(broken.norm() - 1.0) < 1e-12);
}

TEST_CASE("forward and backward patterns differ at matched s") {
    const auto sys = build_spin_system(50);
    const auto fwd = evolve_full(sys, make_schedule(Direction::Forward, 50.0, 1000));
    const auto bwd = evolve_full(sys, make_schedule(Direction::Backward, 50.0, 1000));

    const int k = fwd.index_of(0.7);
    const double mid_tvd =
        total_variation(fwd.populations.row(k), bwd.populations.row(k));
    CHECK(mid_tvd > 0.3); // reference run: 0.53

    const double final_tvd = total_variation(fwd.populations.row(fwd.points() - 1),
                                             bwd.populations.row(bwd.points() - 1));
    CHECK(final_tvd > 0.3); // reference run: 0.60
}

TEST_CASE("parity is conserved: odd-parity levels stay empty in the forward evolution") {
    const auto sys = build_spin_system(20);
    const auto sched = make_schedule(Direction::Forward, 5.0, 400);
    const auto sw = sweep(sys, sched);
    const auto trace = evolve_full(sw, sched);
    double odd_weight = 0.0;
    for (int k = 0; k < trace.points(); ++k) {
        for (int i = 0; i < trace.levels(); ++i) {
            if (sw.snapshots[k].parity[i] == -1) {
                odd_weight = std::max(odd_weight, trace.populations(k, i));
            }
        }
    }
    CHECK(odd_weight < 1e-16);
}
