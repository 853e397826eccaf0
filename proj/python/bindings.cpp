// python/bindings.cpp

// Copyright 2026  The ntd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


// Python module ntd._core. Tensors cross as float64 numpy arrays of shape
// (J, K, L) in C order; matrices go through the pybind11 Eigen casters.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "ntd/commands.hpp"
#include "ntd/divergence.hpp"
#include "ntd/errors.hpp"
#include "ntd/segmentation.hpp"
#include "ntd/solver.hpp"
#include "ntd/tensor.hpp"
#include "ntd/tfb.hpp"

namespace py = pybind11;
using namespace ntd;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Tensor3 to_tensor(const Array& a) {
  if (a.ndim() != 3) throw ArgumentError("expected a 3-d array");
  const Dims3 d{a.shape(0), a.shape(1), a.shape(2)};
  return Tensor3::from_row_major(d, std::span<const double>(a.data(), a.size()));
}

Array to_array(const Tensor3& t) {
  const Dims3 d = t.dims();
  Array out({d.j, d.k, d.l});
  const std::vector<double> values = t.to_row_major();
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

Dims3 to_dims(const std::vector<Index>& v) {
  if (v.size() != 3) throw ArgumentError("expected three dimensions");
  return Dims3{v[0], v[1], v[2]};
}

SolverConfig make_config(double beta, const std::vector<Index>& core_dims,
                         std::size_t max_iters, double rel_tol,
                         std::uint64_t seed, double epsilon, bool clamp_data) {
  SolverConfig cfg;
  cfg.beta = Beta(beta);
  cfg.core_dims = to_dims(core_dims);
  cfg.max_iters = max_iters;
  cfg.rel_tol = rel_tol;
  cfg.seed = seed;
  cfg.epsilon = epsilon;
  cfg.clamp_data = clamp_data;
  cfg.validate();
  return cfg;
}

py::dict factors_dict(const FactorSet& f) {
  py::dict d;
  d["W"] = f.w;
  d["H"] = f.h;
  d["Q"] = f.q;
  d["core"] = to_array(f.core);
  return d;
}

FactorSet from_dict(const py::dict& d) {
  return FactorSet{d["W"].cast<Matrix>(), d["H"].cast<Matrix>(),
                   d["Q"].cast<Matrix>(), to_tensor(d["core"].cast<Array>())};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nonnegative Tucker decomposition under the beta-divergence";
  m.attr("__version__") = kVersion;

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);

  m.def("beta_div", [](double x, double y, double b) { return beta_div(x, y, Beta(b)); },
        py::arg("x"), py::arg("y"), py::arg("beta"));
  m.def("gamma_exponent", [](double b) { return gamma_exponent(Beta(b)); },
        py::arg("beta"));
  m.def("objective",
        [](const Array& x, const Array& y, double b) {
          return objective(to_tensor(x), to_tensor(y), Beta(b));
        },
        py::arg("x"), py::arg("approx"), py::arg("beta"));

  m.def("unfold", [](const Array& t, int mode) { return matricize(to_tensor(t), mode); },
        py::arg("tensor"), py::arg("mode"));
  m.def("fold",
        [](const Matrix& mat, int mode, const std::vector<Index>& dims) {
          return to_array(fold(mat, mode, to_dims(dims)));
        },
        py::arg("matrix"), py::arg("mode"), py::arg("dims"));
  m.def("mode_product",
        [](const Array& t, const Matrix& mat, int mode) {
          return to_array(mode_product(to_tensor(t), mat, mode));
        },
        py::arg("tensor"), py::arg("matrix"), py::arg("mode"));
  m.def("multiway_product",
        [](const Array& g, const Matrix& w, const Matrix& h, const Matrix& q) {
          return to_array(multiway_product(to_tensor(g), w, h, q));
        },
        py::arg("core"), py::arg("W"), py::arg("H"), py::arg("Q"));

  m.def("init_factors",
        [](const std::vector<Index>& dims, const std::vector<Index>& core_dims,
           std::uint64_t seed, double epsilon) {
          SolverConfig cfg;
          cfg.core_dims = to_dims(core_dims);
          cfg.seed = seed;
          cfg.epsilon = epsilon;
          return factors_dict(init_factors(to_dims(dims), cfg));
        },
        py::arg("dims"), py::arg("core_dims"), py::arg("seed") = 0,
        py::arg("epsilon") = 1e-12);
  m.def("iterate",
        [](const Array& x, const py::dict& f, double beta, double epsilon) {
          SolverConfig cfg;
          cfg.beta = Beta(beta);
          cfg.epsilon = epsilon;
          FactorSet fs = from_dict(f);
          cfg.core_dims = fs.core.dims();
          const Tensor3 t = to_tensor(x);
          fs.check_conforms(t.dims());
          return factors_dict(iterate(t, std::move(fs), cfg));
        },
        py::arg("x"), py::arg("factors"), py::arg("beta"), py::arg("epsilon") = 1e-12);
  m.def("decompose",
        [](const Array& x, const std::vector<Index>& core_dims, double beta,
           std::size_t max_iters, double rel_tol, std::uint64_t seed,
           double epsilon, bool clamp_data, const std::optional<py::dict>& init) {
          const SolverConfig cfg = make_config(beta, core_dims, max_iters, rel_tol,
                                               seed, epsilon, clamp_data);
          const Tensor3 t = to_tensor(x);
          std::optional<FactorSet> start;
          if (init) start = from_dict(*init);
          SolveResult r;
          {
            py::gil_scoped_release release;
            r = solve(t, cfg, std::move(start));
          }
          py::dict out = factors_dict(r.factors);
          out["losses"] = r.trace.losses;
          out["iterations"] = r.trace.iterations;
          out["converged_at"] = r.trace.converged_at;
          return out;
        },
        py::arg("x"), py::arg("core_dims"), py::arg("beta") = 1.0,
        py::arg("max_iters") = 100, py::arg("rel_tol") = 1e-8, py::arg("seed") = 0,
        py::arg("epsilon") = 1e-12, py::arg("clamp_data") = false,
        py::arg("init") = py::none());

  m.def("mel_filterbank",
        [](Index n_filters, double f_min, double f_max, double sample_rate,
           Index n_fft) {
          return mel_filterbank(n_filters, f_min, f_max, sample_rate, n_fft).weights;
        },
        py::arg("n_filters") = 80, py::arg("f_min") = 80.0, py::arg("f_max") = 16000.0,
        py::arg("sample_rate") = 44100.0, py::arg("n_fft") = 2048);
  m.def("build_tfb",
        [](const Matrix& spec, double hop, const std::vector<double>& bar_times,
           Index frames_per_bar) {
          Spectrogram s{spec, hop};
          s.validate();
          return to_array(build_tfb(s, BarGrid(bar_times), frames_per_bar));
        },
        py::arg("spectrogram"), py::arg("hop_seconds"), py::arg("bar_times"),
        py::arg("frames_per_bar") = 96);

  m.def("bar_autosimilarity", &bar_autosimilarity, py::arg("Q"));
  m.def("novelty_curve", &novelty_curve, py::arg("similarity"),
        py::arg("kernel_half_width") = 4);
  m.def("segment_bars",
        [](const Matrix& sim, Index half_width, double threshold, double min_peak) {
          return segment_bars(sim, SegmentParams{half_width, threshold, min_peak});
        },
        py::arg("similarity"), py::arg("kernel_half_width") = 4,
        py::arg("peak_threshold") = 1.0, py::arg("min_peak") = 0.01);
  m.def("evaluate_boundaries",
        [](const std::vector<double>& est, const std::vector<double>& ref,
           double tolerance, bool trim) {
          const EvalReport r = evaluate_boundaries(est, ref, tolerance, trim);
          py::dict d;
          d["precision"] = r.precision;
          d["recall"] = r.recall;
          d["f_measure"] = r.f_measure;
          d["tolerance"] = r.tolerance;
          d["hits"] = r.hits;
          d["est_count"] = r.est_count;
          d["ref_count"] = r.ref_count;
          d["warning"] = r.warning;
          return d;
        },
        py::arg("est"), py::arg("ref"), py::arg("tolerance"),
        py::arg("trim_endpoints") = true);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = cmd::run_cli(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs a CLI command; returns (exit_code, stdout, stderr).");
}
