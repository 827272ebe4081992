#include "lmg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lmg {

namespace {

Eigen::VectorXd alternating_parity(int dim) {
    Eigen::VectorXd p(dim);
    for (int i = 0; i < dim; ++i) {
        p[i] = ((dim - 1 - i) % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

Eigen::VectorXi parity_labels(const Eigen::MatrixXd& vectors) {
    const Eigen::VectorXd p = alternating_parity(static_cast<int>(vectors.rows()));
    Eigen::VectorXi labels(vectors.cols());
    for (int i = 0; i < vectors.cols(); ++i) {
        const double expect = vectors.col(i).dot(p.cwiseProduct(vectors.col(i)));
        labels[i] = expect >= 0.0 ? 1 : -1;
    }
    return labels;
}

// True when h has no element coupling indices of opposite alternating parity,
// i.e. h commutes with the spin-flip parity operator.
bool commutes_with_parity(const Eigen::MatrixXd& h, double scale) {
    const int dim = static_cast<int>(h.rows());
    for (int i = 0; i < dim; ++i) {
        for (int j = (i % 2 == 0) ? 1 : 0; j < dim; j += 2) {
            if (std::abs(h(i, j)) > 1e-14 * scale) return false;
        }
    }
    return true;
}

SpectralSnapshot diagonalize_parity_blocked(const Eigen::MatrixXd& h, double s);

} // namespace

SpectralSnapshot diagonalize(const Eigen::MatrixXd& h, double s) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("diagonalize: matrix must be square");
    }
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        throw std::invalid_argument("diagonalize: matrix not symmetric (asymmetry " +
                                    std::to_string(asym) + " at s=" + std::to_string(s) + ")");
    }
    // parity-preserving inputs get parity-pure eigenvectors, well defined even
    // through exact doublet degeneracies
    if (commutes_with_parity(h, scale)) {
        return diagonalize_parity_blocked(h, s);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize: eigensolver failed to converge at s=" + std::to_string(s));
    }
    SpectralSnapshot snap;
    snap.s = s;
    snap.eigenvalues = solver.eigenvalues();
    snap.eigenvectors = solver.eigenvectors();
    snap.parity = parity_labels(snap.eigenvectors);
    return snap;
}

namespace {

// H(s) commutes with the spin-flip parity; the even-m and odd-m index
// subsets decouple and each block is tridiagonal in its own indexing.
// Solving the blocks separately keeps eigenvectors parity-pure even where
// the spectrum is quasi-degenerate.
SpectralSnapshot diagonalize_parity_blocked(const Eigen::MatrixXd& h, double s) {
    const int dim = static_cast<int>(h.rows());
    const Eigen::VectorXd p = alternating_parity(dim);

    struct Level {
        double value;
        int parity;
        Eigen::VectorXd vector;
    };
    std::vector<Level> levels;
    levels.reserve(dim);

    for (int parity : {+1, -1}) {
        std::vector<int> idx;
        for (int i = 0; i < dim; ++i) {
            if ((p[i] > 0) == (parity > 0)) idx.push_back(i);
        }
        const int bd = static_cast<int>(idx.size());
        if (bd == 0) continue;
        Eigen::MatrixXd block(bd, bd);
        for (int a = 0; a < bd; ++a) {
            for (int b = 0; b < bd; ++b) {
                block(a, b) = h(idx[a], idx[b]);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("sweep: eigensolver failed to converge at s=" + std::to_string(s));
        }
        for (int a = 0; a < bd; ++a) {
            Level lv;
            lv.value = solver.eigenvalues()[a];
            lv.parity = parity;
            lv.vector = Eigen::VectorXd::Zero(dim);
            for (int b = 0; b < bd; ++b) {
                lv.vector[idx[b]] = solver.eigenvectors()(b, a);
            }
            levels.push_back(std::move(lv));
        }
    }

    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double tie = 1e-12 * scale;
    std::sort(levels.begin(), levels.end(), [tie](const Level& a, const Level& b) {
        if (std::abs(a.value - b.value) <= tie) return a.parity > b.parity; // even first
        return a.value < b.value;
    });

    SpectralSnapshot snap;
    snap.s = s;
    snap.eigenvalues.resize(dim);
    snap.eigenvectors.resize(dim, dim);
    snap.parity.resize(dim);
    for (int i = 0; i < dim; ++i) {
        snap.eigenvalues[i] = levels[i].value;
        snap.eigenvectors.col(i) = levels[i].vector;
        snap.parity[i] = levels[i].parity;
    }
    return snap;
}

} // namespace

int SpectralSweep::index_of(double s) const {
    if (snapshots.empty()) throw std::invalid_argument("index_of: empty sweep");
    const int last = points() - 1;
    const double lo = snapshots.front().s;
    const double hi = snapshots.back().s;
    const int k = static_cast<int>(std::lround((s - lo) / (hi - lo) * last));
    return std::clamp(k, 0, last);
}

SpectralSweep sweep(const SpinSystem& sys, const Schedule& sched) {
    SpectralSweep sw;
    sw.direction = sched.direction;
    sw.total_time = sched.total_time;
    sw.snapshots.reserve(sched.grid.size());

    for (double s : sched.grid) {
        sw.snapshots.push_back(diagonalize_parity_blocked(hamiltonian(sys, sched, s), s));
    }

    const int dim = sw.dim();
    for (int k = 0; k < sw.points(); ++k) {
        SpectralSnapshot& snap = sw.snapshots[k];
        const double scale = std::max(1.0, snap.eigenvalues.cwiseAbs().maxCoeff());
        bool degenerate = false;
        for (int i = 0; i + 1 < dim; ++i) {
            if (snap.eigenvalues[i + 1] - snap.eigenvalues[i] < 1e-12 * scale) degenerate = true;
        }
        if (degenerate) sw.degenerate_points.push_back(k);
        if (k == 0) continue;
        const SpectralSnapshot& prev = sw.snapshots[k - 1];
        for (int i = 0; i < dim; ++i) {
            if (prev.eigenvectors.col(i).dot(snap.eigenvectors.col(i)) < 0.0) {
                snap.eigenvectors.col(i) *= -1.0;
            }
        }
    }
    return sw;
}

double signed_gap(const SpectralSweep& sw, int n, int m, int k) {
    const auto& e = sw.snapshots.at(k).eigenvalues;
    return e[n] - e[m];
}

double gap(const SpectralSweep& sw, int i, int j, int k) {
    if (i == j) throw std::invalid_argument("gap: level indices must differ");
    return std::abs(signed_gap(sw, i, j, k));
}

MinGapResult min_gap_location(const SpectralSweep& sw, int level) {
    const int dim = sw.dim();
    if (level < 0 || level + 1 >= dim) {
        throw std::invalid_argument("min_gap_location: level out of range");
    }
    const int pts = sw.points();
    int best = 0;
    double best_gap = gap(sw, level, level + 1, 0);
    for (int k = 1; k < pts; ++k) {
        const double g = gap(sw, level, level + 1, k);
        if (g < best_gap) {
            best_gap = g;
            best = k;
        }
    }
    MinGapResult res;
    res.gap_min = best_gap;
    res.s0 = sw.s_at(best);
    if (best == 0 || best == pts - 1) {
        res.interior = false;
        return res;
    }
    const double y0 = gap(sw, level, level + 1, best - 1);
    const double y1 = best_gap;
    const double y2 = gap(sw, level, level + 1, best + 1);
    res.interior = (y0 > y1) && (y2 > y1);
    const double denom = y0 - 2.0 * y1 + y2;
    if (res.interior && denom > 0.0) {
        const double h = 0.5 * (sw.s_at(best + 1) - sw.s_at(best - 1));
        res.s0 += 0.5 * (y0 - y2) / denom * h;
        res.gap_min = y1 - 0.125 * (y0 - y2) * (y0 - y2) / denom;
    }
    return res;
}

double integrated_dos(int level, int dim) {
    if (level < 0 || level >= dim) {
        throw std::invalid_argument("integrated_dos: level out of range");
    }
    return static_cast<double>(level) / (dim - 1);
}

} // namespace lmg
