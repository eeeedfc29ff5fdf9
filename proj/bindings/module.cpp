#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "kpent/builtin.hpp"
#include "kpent/measures.hpp"
#include "kpent/partitions.hpp"
#include "kpent/pi.hpp"
#include "kpent/roof.hpp"
#include "kpent/state.hpp"
#include "kpent/sweep.hpp"

namespace py = pybind11;
using namespace kpent;

namespace {

PureState make_pure(const std::vector<int>& dims, py::array_t<cxd> amplitudes) {
  RegisterLayout layout(dims);
  auto buf = amplitudes.request();
  if (buf.ndim != 1 || buf.shape[0] != layout.total_dim()) {
    throw std::invalid_argument("amplitudes must be a 1-d array matching the total dimension");
  }
  Vector amp(layout.total_dim());
  const auto* data = static_cast<const cxd*>(buf.ptr);
  for (std::int64_t i = 0; i < amp.size(); ++i) amp[i] = data[i];
  return PureState(std::move(layout), std::move(amp));
}

DensityOperator make_density(const std::vector<int>& dims, py::array_t<cxd> matrix) {
  RegisterLayout layout(dims);
  auto buf = matrix.request();
  if (buf.ndim != 2 || buf.shape[0] != layout.total_dim() || buf.shape[1] != layout.total_dim()) {
    throw std::invalid_argument("matrix must be a square 2-d array matching the total dimension");
  }
  Matrix m(layout.total_dim(), layout.total_dim());
  const auto row_stride = buf.strides[0] / static_cast<py::ssize_t>(sizeof(cxd));
  const auto col_stride = buf.strides[1] / static_cast<py::ssize_t>(sizeof(cxd));
  const auto* data = static_cast<const cxd*>(buf.ptr);
  for (std::int64_t r = 0; r < m.rows(); ++r) {
    for (std::int64_t c = 0; c < m.cols(); ++c) {
      m(r, c) = data[r * row_stride + c * col_stride];
    }
  }
  return DensityOperator(std::move(layout), std::move(m));
}

py::array_t<cxd> amplitudes_array(const PureState& state) {
  py::array_t<cxd> out(static_cast<py::ssize_t>(state.dim()));
  auto buf = out.request();
  auto* data = static_cast<cxd*>(buf.ptr);
  for (std::int64_t i = 0; i < state.dim(); ++i) data[i] = state.amplitudes()[i];
  return out;
}

py::array_t<cxd> matrix_array(const DensityOperator& op) {
  py::array_t<cxd> out({static_cast<py::ssize_t>(op.dim()), static_cast<py::ssize_t>(op.dim())});
  auto buf = out.request();
  auto* data = static_cast<cxd*>(buf.ptr);
  for (std::int64_t r = 0; r < op.dim(); ++r) {
    for (std::int64_t c = 0; c < op.dim(); ++c) data[r * op.dim() + c] = op.matrix()(r, c);
  }
  return out;
}

py::dict report_dict(const MeasureReport& report) {
  py::dict out;
  out["value"] = report.value;
  out["branch"] = to_string(report.branch);
  py::list argmin;
  for (const auto& p : report.argmin) argmin.append(p.to_text());
  out["argmin"] = argmin;
  py::list per;
  for (const auto& [partition, deficit] : report.per_partition) {
    per.append(py::make_tuple(partition.to_text(), deficit));
  }
  out["per_partition"] = per;
  return out;
}

MeasureOptions options_from(double a, double b, int threads) {
  MeasureOptions opts;
  opts.a = a;
  opts.b = b;
  opts.threads = threads;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "parametrized multipartite entanglement measures over bounded-block partitions";

  py::class_<PureState>(m, "PureState")
      .def(py::init(&make_pure), py::arg("dims"), py::arg("amplitudes"))
      .def_property_readonly("dims",
                             [](const PureState& s) { return s.layout().dims(); })
      .def_property_readonly("amplitudes", &amplitudes_array)
      .def("__len__", [](const PureState& s) { return s.size(); });

  py::class_<DensityOperator>(m, "DensityOperator")
      .def(py::init(&make_density), py::arg("dims"), py::arg("matrix"))
      .def_property_readonly("dims",
                             [](const DensityOperator& s) { return s.layout().dims(); })
      .def_property_readonly("matrix", &matrix_array)
      .def("__len__", [](const DensityOperator& s) { return s.size(); });

  // builtin states
  m.def("ghz", &ghz_state, py::arg("n"));
  m.def("w", &w_state, py::arg("n"));
  m.def("phi1", &phi1_state);
  m.def("phi2", &phi2_state);
  m.def("phi_theta", &phi_theta_state, py::arg("theta_deg"));

  // register operations
  m.def("as_density", [](const PureState& s) { return as_density(s); });
  m.def(
      "partial_trace",
      [](const PureState& s, const std::vector<int>& keep) { return partial_trace(s, keep); },
      py::arg("state"), py::arg("keep"));
  m.def(
      "partial_trace",
      [](const DensityOperator& s, const std::vector<int>& keep) { return partial_trace(s, keep); },
      py::arg("state"), py::arg("keep"));
  m.def(
      "spectrum",
      [](const DensityOperator& op) {
        const Spectrum sp = spectrum(op);
        std::vector<double> values(sp.eigenvalues.data(),
                                   sp.eigenvalues.data() + sp.eigenvalues.size());
        return py::make_tuple(values, sp.rank);
      },
      py::arg("op"));
  m.def(
      "trace_power", [](const DensityOperator& op, double p) { return trace_power(op, p); },
      py::arg("op"), py::arg("p"));
  m.def(
      "permute_subsystems",
      [](const PureState& s, const std::vector<int>& perm) { return permute_subsystems(s, perm); },
      py::arg("state"), py::arg("perm"));
  m.def(
      "tensor", [](const PureState& a, const PureState& b) { return tensor(a, b); },
      py::arg("a"), py::arg("b"));

  // partitions
  m.def(
      "partitions",
      [](int n, int k, bool genuine) {
        std::vector<std::string> out;
        for_each_bounded(n, k, [&](const Partition& p) {
          if (genuine && p.max_block_size() != k) return;
          out.push_back(p.to_text());
        });
        return out;
      },
      py::arg("n"), py::arg("k"), py::arg("genuine") = false);
  m.def("count_bounded", [](int n, int k) { return count_bounded(n, k); }, py::arg("n"), py::arg("k"));
  m.def("count_genuine", [](int n, int k) { return count_genuine(n, k); }, py::arg("n"), py::arg("k"));

  // measures
  m.def(
      "pe",
      [](const PureState& s, double p, int k, int threads) {
        return report_dict(pe_concurrence(s, {p, k}, options_from(1, 1, threads)));
      },
      py::arg("state"), py::arg("p"), py::arg("k"), py::arg("threads") = 1);
  m.def(
      "gpe",
      [](const PureState& s, double p, int k, int threads) {
        return report_dict(gpe_concurrence(s, {p, k}, options_from(1, 1, threads)));
      },
      py::arg("state"), py::arg("p"), py::arg("k"), py::arg("threads") = 1);
  m.def(
      "genuine_pe",
      [](const PureState& s, double p, int k, double a, int threads) {
        return report_dict(genuine_pe(s, {p, k}, options_from(a, 1, threads)));
      },
      py::arg("state"), py::arg("p"), py::arg("k"), py::arg("a") = 1.0, py::arg("threads") = 1);
  m.def(
      "genuine_gpe",
      [](const PureState& s, double p, int k, double b, int threads) {
        return report_dict(genuine_gpe(s, {p, k}, options_from(1, b, threads)));
      },
      py::arg("state"), py::arg("p"), py::arg("k"), py::arg("b") = 1.0, py::arg("threads") = 1);
  m.def(
      "classify", [](const PureState& s, double p, double tol) { return classify(s, p, tol); },
      py::arg("state"), py::arg("p") = 2.0, py::arg("tol") = 1e-9);

  // permutation-invariant part
  m.def(
      "pi_project", [](const DensityOperator& op, int threads) { return pi_project(op, {}, threads); },
      py::arg("op"), py::arg("threads") = 1);
  m.def(
      "pi_lower_bound",
      [](const PureState& s, const std::string& measure, double p, int k, int samples,
         std::uint64_t seed) {
        PiBoundOptions opts;
        opts.samples = samples;
        opts.seed = seed;
        const PiBoundReport report =
            pi_lower_bound(s, measure_kind_from_string(measure), {p, k}, opts);
        py::dict out;
        out["value"] = report.value;
        out["certified"] = report.certified;
        out["candidates"] = report.candidates;
        if (report.best_certified) out["best_certified"] = *report.best_certified;
        if (report.best_heuristic) out["best_heuristic"] = *report.best_heuristic;
        return out;
      },
      py::arg("state"), py::arg("measure"), py::arg("p"), py::arg("k"), py::arg("samples") = 32,
      py::arg("seed") = 0);

  // convex roof
  m.def(
      "roof_upper",
      [](const DensityOperator& op, const std::string& measure, double p, int k, int members,
         int restarts, std::uint64_t seed) {
        RoofOptions opts;
        opts.members = members;
        opts.restarts = restarts;
        opts.seed = seed;
        const RoofEstimate est = roof_upper(op, measure_kind_from_string(measure), {p, k}, opts);
        py::dict out;
        out["value"] = est.value;
        out["converged"] = est.converged;
        out["restarts"] = est.restarts;
        py::list members_out;
        for (const auto& member : est.ensemble.members) {
          members_out.append(py::make_tuple(member.probability, amplitudes_array(member.state)));
        }
        out["ensemble"] = members_out;
        return out;
      },
      py::arg("op"), py::arg("measure"), py::arg("p"), py::arg("k"), py::arg("members") = 0,
      py::arg("restarts") = 16, py::arg("seed") = 0);
}
