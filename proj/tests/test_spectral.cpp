#include <doctest.h>

#include <cmath>
#include <random>

#include "lmg/cgc.hpp"
#include "lmg/spectral.hpp"

using namespace lmg;

TEST_CASE("diagonalize anchors at the schedule endpoints, N=4") {
    const auto sys = build_spin_system(4);
    const auto sched = make_schedule(Direction::Forward, 1.0, 10);

    const auto snap0 = diagonalize(hamiltonian(sys, sched, 0.0), 0.0);
    const double expected0[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
    for (int i = 0; i < 5; ++i) CHECK(snap0.eigenvalues[i] == doctest::Approx(expected0[i]).epsilon(1e-12));

    const auto snap1 = diagonalize(hamiltonian(sys, sched, 1.0), 1.0);
    const double expected1[] = {-1.0, -1.0, -0.25, -0.25, 0.0};
    for (int i = 0; i < 5; ++i) CHECK(std::abs(snap1.eigenvalues[i] - expected1[i]) < 1e-12);
}

TEST_CASE("diagonalize residuals and orthonormality") {
    const auto sys = build_spin_system(30);
    const auto sched = make_schedule(Direction::Forward, 1.0, 10);
    const Eigen::MatrixXd h = hamiltonian(sys, sched, 0.6);
    const auto snap = diagonalize(h, 0.6);

    const double hnorm = h.cwiseAbs().maxCoeff();
    for (int i = 0; i < sys.dim; ++i) {
        const double res = (h * snap.eigenvectors.col(i) - snap.eigenvalues[i] * snap.eigenvectors.col(i)).norm();
        CHECK(res < 1e-10 * hnorm);
    }
    const Eigen::MatrixXd gram = snap.eigenvectors.transpose() * snap.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(sys.dim, sys.dim)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("diagonalize rejects non-symmetric input") {
    Eigen::MatrixXd bad(2, 2);
    bad << 0.0, 1.0, 0.5, 0.0;
    CHECK_THROWS_AS(diagonalize(bad), std::invalid_argument);
}

TEST_CASE("N=20 s=0.5 ground energy regression") {
    // Frozen from two independent reference diagonalizations (dense LAPACK
    // and banded bisection) that agree to 7e-15.
    const auto sys = build_spin_system(20);
    const auto sched = make_schedule(Direction::Forward, 1.0, 2);
    const auto snap = diagonalize(hamiltonian(sys, sched, 0.5), 0.5);
    CHECK(snap.eigenvalues[0] == doctest::Approx(-5.186539692559807).epsilon(1e-12));
    CHECK(snap.eigenvalues[1] - snap.eigenvalues[0] == doctest::Approx(0.1842037248758892).epsilon(1e-9));
}

TEST_CASE("sweep aligns eigenvector signs") {
    const auto sys = build_spin_system(20);
    const auto sched = make_schedule(Direction::Forward, 1.0, 200);
    const auto sw = sweep(sys, sched);
    REQUIRE(sw.points() == 201);
    for (int k = 1; k < sw.points(); ++k) {
        for (int i = 0; i < sw.dim(); ++i) {
            CHECK(sw.snapshots[k - 1].eigenvectors.col(i).dot(sw.snapshots[k].eigenvectors.col(i)) >= 0.0);
        }
    }
}

TEST_CASE("sweep flags the exact doublet degeneracies at s=1") {
    const auto sys = build_spin_system(10);
    const auto sched = make_schedule(Direction::Forward, 1.0, 50);
    const auto sw = sweep(sys, sched);
    REQUIRE(!sw.degenerate_points.empty());
    CHECK(sw.degenerate_points.back() == sw.points() - 1);
    // Even-parity member sorts first inside the tied doublet.
    const auto& last = sw.snapshots.back();
    CHECK(last.parity[0] == 1);
    CHECK(last.parity[1] == -1);
}

TEST_CASE("discrete gauge: overlap deficit shrinks quadratically with the grid") {
    const auto sys = build_spin_system(10);
    double previous = 0.0;
    std::vector<double> deficits;
    for (int steps : {50, 100, 200, 400}) {
        const auto sw = sweep(sys, make_schedule(Direction::Forward, 1.0, steps));
        const int k = steps / 2; // near the transition region
        double deficit = 0.0;
        for (int i = 0; i < sw.dim(); ++i) {
            const double overlap =
                sw.snapshots[k].eigenvectors.col(i).dot(sw.snapshots[k + 1].eigenvectors.col(i));
            deficit = std::max(deficit, 1.0 - overlap);
        }
        deficits.push_back(deficit);
        previous = deficit;
    }
    // halving the spacing should cut the deficit by ~4
    for (size_t i = 1; i < deficits.size(); ++i) {
        const double ratio = deficits[i - 1] / deficits[i];
        CHECK(ratio > 2.5);
        CHECK(ratio < 6.0);
    }
}

TEST_CASE("gap anchors") {
    const auto sys = build_spin_system(20);
    const auto sw = sweep(sys, make_schedule(Direction::Forward, 1.0, 100));
    for (int i = 0; i + 1 < sw.dim(); ++i) {
        CHECK(gap(sw, i, i + 1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(gap(sw, 0, 1, sw.points() - 1) < 1e-12);
    CHECK(signed_gap(sw, 0, 1, 0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(gap(sw, 3, 3, 0), std::invalid_argument);
}

TEST_CASE("ground pair gap narrows through the transition and collapses beyond it") {
    // The (0,1) pair is an intra-doublet gap: it decreases monotonically into
    // the broken phase instead of reopening, so its global minimum sits at
    // the s=1 boundary.
    const auto sys = build_spin_system(20);
    const auto sw = sweep(sys, make_schedule(Direction::Forward, 1.0, 1000));
    CHECK(gap(sw, 0, 1, sw.index_of(0.50)) > 0.15);
    CHECK(gap(sw, 0, 1, sw.index_of(0.65)) < 0.01);
    const auto res = min_gap_location(sw, 0);
    CHECK(res.gap_min < 1e-12);
}

TEST_CASE("min gap location: inter-doublet pairs have an interior minimum marching right") {
    const auto sys = build_spin_system(50);
    const auto sw = sweep(sys, make_schedule(Direction::Forward, 1.0, 1000));
    double prev_s0 = 0.0;
    for (int n : {5, 15, 25, 35}) {
        const auto res = min_gap_location(sw, n);
        CHECK(res.interior);
        CHECK(res.s0 > prev_s0);
        prev_s0 = res.s0;
    }
    // n=5 sits at x=0.1; frozen reference from an independent scan: 0.59621
    const auto res5 = min_gap_location(sw, 5);
    CHECK(res5.s0 == doctest::Approx(0.59621).epsilon(2e-3));
}

TEST_CASE("min gap location flags a monotone gap") {
    // Synthetic sweep with a strictly widening gap between levels 0 and 1.
    SpectralSweep sw;
    sw.direction = Direction::Forward;
    for (int k = 0; k <= 10; ++k) {
        SpectralSnapshot snap;
        snap.s = k / 10.0;
        snap.eigenvalues.resize(2);
        snap.eigenvalues << 0.0, 1.0 + snap.s;
        snap.eigenvectors = Eigen::MatrixXd::Identity(2, 2);
        snap.parity = Eigen::VectorXi::Ones(2);
        sw.snapshots.push_back(snap);
    }
    const auto res = min_gap_location(sw, 0);
    CHECK(!res.interior);
    CHECK(res.s0 == 0.0);
    CHECK(res.gap_min == doctest::Approx(1.0));
}

TEST_CASE("cgc endpoints and frozen midpoint") {
    CHECK(cgc_x(0.5) == 0.0);
    CHECK(cgc_x(1.0) == 1.0);
    // 50-digit evaluation of the closed form
    CHECK(cgc_x(0.75) == doctest::Approx(0.30806800925035737).epsilon(1e-12));
    CHECK(cgc_x(0.6) == doctest::Approx(0.09172111331157191).epsilon(1e-12));
    CHECK(cgc_x(0.9) == doctest::Approx(0.5835828115818576).epsilon(1e-12));
    CHECK_THROWS_AS(cgc_x(0.4), std::invalid_argument);
    CHECK_THROWS_AS(cgc_x(1.1), std::invalid_argument);
}

TEST_CASE("cgc inversion round trip") {
    CHECK(cgc_invert(0.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(cgc_invert(1.0) == doctest::Approx(1.0).epsilon(1e-9));
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(0.5, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double s = dist(rng);
        CHECK(cgc_invert(cgc_x(s)) == doctest::Approx(s).epsilon(1e-9));
    }
}

TEST_CASE("integrated density of states") {
    CHECK(integrated_dos(0, 21) == 0.0);
    CHECK(integrated_dos(20, 21) == 1.0);
    CHECK(integrated_dos(10, 21) == 0.5);
    CHECK_THROWS_AS(integrated_dos(21, 21), std::invalid_argument);
}
