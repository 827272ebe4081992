#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lmg/cgc.hpp"
#include "lmg/chain_model.hpp"
#include "lmg/dynamics.hpp"
#include "lmg/rate_model.hpp"
#include "lmg/spectral.hpp"
#include "lmg/trace.hpp"

namespace py = pybind11;
using namespace lmg;

namespace {

Schedule schedule_from(const std::string& direction, double total_time, int steps) {
    return make_schedule(direction_from_string(direction), total_time, steps);
}

py::dict trace_to_dict(const PopulationTrace& trace) {
    py::dict out;
    out["s"] = trace.grid;
    out["populations"] = trace.populations;
    out["model"] = trace.model_tag;
    return out;
}

py::dict run_spectrum(int n, const std::string& direction, int steps) {
    const auto sys = build_spin_system(n);
    const auto sw = sweep(sys, schedule_from(direction, 1.0, steps));
    Eigen::MatrixXd energies(sw.points(), sw.dim());
    Eigen::MatrixXi parity(sw.points(), sw.dim());
    std::vector<double> grid(sw.points());
    for (int k = 0; k < sw.points(); ++k) {
        grid[k] = sw.s_at(k);
        energies.row(k) = sw.snapshots[k].eigenvalues.transpose();
        parity.row(k) = sw.snapshots[k].parity.transpose();
    }
    py::dict out;
    out["s"] = grid;
    out["energies"] = energies;
    out["parity"] = parity;
    return out;
}

py::dict run_evolve(int n, const std::string& direction, double total_time, int steps,
                    const std::string& model, const std::string& initial, double rate_b,
                    const std::string& rate_form, double gap_floor) {
    const auto sys = build_spin_system(n);
    const auto sched = schedule_from(direction, total_time, steps);
    const auto sw = sweep(sys, sched);

    if (model == "full") {
        return trace_to_dict(evolve_full(sw, sched, initial_state_from_string(initial)));
    }
    if (model == "rate") {
        RateParams params;
        params.b = rate_b;
        params.total_time = total_time;
        params.form = rate_form_from_string(rate_form);
        params.gap_floor = gap_floor;
        Eigen::VectorXd p0 = Eigen::VectorXd::Zero(sw.dim());
        p0[0] = 1.0;
        return trace_to_dict(evolve_rate(sw, params, p0));
    }

    const auto dh = d_hamiltonian_ds(sys, sched);
    ChainCouplings couplings;
    if (model == "chain-const") {
        couplings = constant_couplings(sw, dh);
    } else if (model == "chain-fit") {
        couplings = fit_couplings(sw, dh);
    } else if (model == "chain-exact") {
        couplings = exact_couplings(sw, dh);
    } else {
        throw std::invalid_argument("unknown model '" + model + "'");
    }
    ChainOptions options;
    options.gap_floor = gap_floor;
    return trace_to_dict(
        evolve_chain(sw, couplings, total_time, chain_ground_start(couplings), options));
}

py::dict run_min_gap(int n, int level, int steps) {
    const auto sys = build_spin_system(n);
    const auto sw = sweep(sys, schedule_from("forward", 1.0, steps));
    const auto loc = min_gap_location(sw, level);
    py::dict out;
    out["s0"] = loc.s0;
    out["gap_min"] = loc.gap_min;
    out["interior"] = loc.interior;
    return out;
}

py::dict run_fit(int n, const std::string& direction, int steps) {
    const auto sys = build_spin_system(n);
    const auto sched = schedule_from(direction, 1.0, steps);
    const auto sw = sweep(sys, sched);
    const auto couplings = fit_couplings(sw, d_hamiltonian_ds(sys, sched));
    py::dict out;
    out["amp_a"] = couplings.amp_a;
    out["amp_b"] = couplings.amp_b;
    out["gamma"] = couplings.gamma;
    out["peak_s"] = couplings.peak_s;
    out["sector_levels"] = couplings.sector_levels;
    return out;
}

} // namespace

PYBIND11_MODULE(_lmgdyn, m) {
    m.doc() = "Driven collective-spin dynamics: spectra, populations, effective models";

    m.def("cgc_x", &cgc_x, py::arg("s"),
          "Critical gap curve x_c(s) on [0.5, 1]");
    m.def("cgc_invert", &cgc_invert, py::arg("x"),
          "Inverse of cgc_x on [0, 1]");
    m.def("spectrum", &run_spectrum, py::arg("n"), py::arg("direction") = "forward",
          py::arg("steps") = 200,
          "Eigenvalue sweep; returns s grid, energies and parity labels");
    m.def("min_gap", &run_min_gap, py::arg("n"), py::arg("level"), py::arg("steps") = 1000,
          "Location and size of the minimum gap(level, level+1)");
    m.def("evolve", &run_evolve, py::arg("n"), py::arg("direction") = "forward",
          py::arg("total_time") = 10.0, py::arg("steps") = 400, py::arg("model") = "full",
          py::arg("initial") = "ground", py::arg("rate_b") = 1e-3,
          py::arg("rate_form") = "adiabatic", py::arg("gap_floor") = 1e-6,
          "Population trace for one model; returns s grid and populations");
    m.def("fit_couplings", &run_fit, py::arg("n"), py::arg("direction") = "forward",
          py::arg("steps") = 400,
          "Gaussian-log fit parameters of the chain couplings");
    m.def("total_variation", &total_variation, py::arg("p"), py::arg("q"),
          "Half L1 distance between two probability vectors");
}
