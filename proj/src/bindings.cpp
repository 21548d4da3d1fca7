// Python bindings for the main operations: frame evaluation, block spectra
// and classification, spectral flow, identity residuals, the nonlinear
// solver, and the ampleness tester.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fueterlab/ample.hpp"
#include "fueterlab/field.hpp"
#include "fueterlab/floer.hpp"
#include "fueterlab/flow.hpp"
#include "fueterlab/spectral.hpp"
#include "fueterlab/variational.hpp"

namespace py = pybind11;
using namespace fueterlab;

namespace {

FrameSpec make_frame(const std::string& manifold, const Eigen::Matrix3d& u) {
  return FrameSpec(manifold_from_name(manifold), u);
}

SweepCutoffs cutoffs_from_kwargs(int kmax, int jmax2, int lmax, int mmax) {
  SweepCutoffs c;
  c.kmax = kmax;
  c.twoj_max = jmax2;
  c.lmax = lmax;
  c.mmax = mmax;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "block-spectral laboratory for quaternionic frame operators on 3-manifolds";

  py::class_<FrameSpec>(m, "Frame")
      .def(py::init(&make_frame), py::arg("manifold"),
           py::arg("U") = Eigen::Matrix3d::Identity())
      .def_property_readonly("manifold",
                             [](const FrameSpec& f) { return manifold_name(f.manifold()); })
      .def_property_readonly("U", [](const FrameSpec& f) { return f.U(); })
      .def("to_json", &FrameSpec::to_json)
      .def_static("from_json", &FrameSpec::from_json);

  m.def("standard_t3_frame", &standard_t3_frame);
  m.def("standard_s3_frame", &standard_s3_frame);
  m.def("singular_s3_frame", &singular_s3_frame);
  m.def("catalog_s1s2_frame", &catalog_s1s2_frame);

  m.def(
      "frame_vectors",
      [](const FrameSpec& f, const Eigen::Vector4d& x) {
        const auto v = frame_vectors(f, {f.manifold(), x});
        return std::vector<Eigen::Vector4d>{v[0], v[1], v[2]};
      },
      py::arg("frame"), py::arg("point"),
      "frame fields at a chart point (T3: (y1,y2,y3,0); S3: unit 4-vector; "
      "S1xS2: (theta, y))");
  m.def(
      "spinc_lambda",
      [](const FrameSpec& f, const Eigen::Vector4d& x) {
        return spinc_lambda(f, {f.manifold(), x});
      },
      py::arg("frame"), py::arg("point"));
  m.def(
      "divergence_residual", [](const FrameSpec& f) { return divergence_residual(f); },
      py::arg("frame"));

  m.def(
      "spectrum",
      [](const FrameSpec& f, int kmax, int jmax2, int lmax, int mmax) {
        const SweepCutoffs cut = cutoffs_from_kwargs(kmax, jmax2, lmax, mmax);
        py::dict out;
        py::list blocks;
        for (const auto& lab : block_labels(f, cut)) {
          const Eigen::VectorXd eigs = block_eigenvalues(assemble_block(f, lab));
          blocks.append(py::make_tuple(lab.str(), eigs));
        }
        out["blocks"] = blocks;
        const KernelReport rep = kernel_dimension(f, cut);
        out["kernel_dim"] = rep.dim;
        out["verdict"] = rep.dim == 4 ? "Regular" : "Singular";
        out["tol"] = rep.tol;
        out["next_min"] = rep.next_min;
        out["neglected_bound"] = rep.neglected_bound;
        return out;
      },
      py::arg("frame"), py::arg("kmax") = 8, py::arg("twoj_max") = 12, py::arg("lmax") = 8,
      py::arg("mmax") = 2);

  m.def(
      "classify",
      [](const FrameSpec& f) {
        return classify(f) == Classification::Regular ? "Regular" : "Singular";
      },
      py::arg("frame"));

  m.def(
      "verify_dd2_sphere",
      [](const FrameSpec& f, int twoj) {
        return verify_dd2(f, {Manifold::Sphere3, Eigen::Vector3i::Zero(), twoj, 0, 0});
      },
      py::arg("frame"), py::arg("twoj"));

  m.def(
      "energy_identity_residuals",
      [](const FrameSpec& f, int samples, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        Basis b = f.manifold() == Manifold::Torus3
                      ? Basis::torus(2)
                      : (f.manifold() == Manifold::Sphere3 ? Basis::sphere(3)
                                                           : Basis::product(4, 2));
        std::vector<double> out;
        for (int s = 0; s < samples; ++s) {
          FieldExpansion g = FieldExpansion::random(b, 4, rng, false);
          if (f.manifold() == Manifold::ProductS1S2) {
            const int nsh = (b.lmax() + 1) * (b.lmax() + 1);
            const int cut = b.lmax() * b.lmax();
            for (int t = 0; t < 2 * b.mmax() + 1; ++t)
              g.coeff.middleRows(t * nsh + cut, nsh - cut).setZero();
          }
          out.push_back(energy_identity_residual(f, g));
        }
        return out;
      },
      py::arg("frame"), py::arg("samples") = 10, py::arg("seed") = 1);

  m.def(
      "isoperimetric_extremal",
      [](const Eigen::Vector3d& y, const Eigen::Vector4d& q0) {
        const auto [lhs, rhs] = isoperimetric_check(y, FourierLoop::extremal(y, Quat::from_vec(q0)));
        return py::make_tuple(lhs, rhs);
      },
      py::arg("y"), py::arg("q0"));

  m.def(
      "singular_sweep_flow",
      [](double s0, double s1, int twoj_max, int grid) {
        const FramePath path = FramePath::s3_singular_sweep(s0, s1);
        std::vector<BlockLabel> labels;
        for (int twoj = 1; twoj <= twoj_max; ++twoj)
          labels.push_back({Manifold::Sphere3, Eigen::Vector3i::Zero(), twoj, 0, 0});
        const FlowResult r = spectral_flow(path, labels, grid);
        py::dict out;
        out["flow"] = r.flow;
        out["curve_count"] = r.curve_count;
        py::list cross;
        for (const auto& c : r.crossings)
          cross.append(py::make_tuple(c.s_star, c.block, c.signature));
        out["crossings"] = cross;
        return out;
      },
      py::arg("s0") = 0.0, py::arg("s1") = 1.2, py::arg("twoj_max") = 9, py::arg("grid") = 64);

  m.def(
      "arnold_count",
      [](double eps, int grid, int random_starts, std::uint64_t seed) {
        ArnoldOptions opt;
        opt.grid = grid;
        opt.random_starts = random_starts;
        opt.seed = seed;
        const ArnoldReport rep =
            arnold_count(standard_t3_frame(), HamiltonianSpec::separable_cosine(1, eps), opt);
        py::dict out;
        out["count"] = rep.count;
        out["degenerate_found"] = rep.degenerate_found;
        out["rejected_unresolved"] = rep.rejected_unresolved;
        return out;
      },
      py::arg("eps") = 0.01, py::arg("grid") = 4, py::arg("random_starts") = 10,
      py::arg("seed") = 1);

  m.def(
      "ample_equivalence",
      [](int samples, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        int agree = 0;
        for (int s = 0; s < samples; ++s) {
          const AmpleData d = AmpleData::random(rng);
          if (nondegenerate_oracle(d) == (is_nondegenerate(d) != 0)) ++agree;
        }
        return py::make_tuple(agree, samples - agree);
      },
      py::arg("samples") = 1000, py::arg("seed") = 1);
}
