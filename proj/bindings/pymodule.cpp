#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilharm/cli.hpp"
#include "nilharm/embedding.hpp"
#include "nilharm/errors.hpp"
#include "nilharm/invariant_ops.hpp"

namespace py = pybind11;
using namespace nilharm;

PYBIND11_MODULE(_nilharm, mod) {
  mod.doc() = "Harmonic analysis on two-step nilpotent Lie groups.";

  py::register_exception<NondegeneracyError>(mod, "NondegeneracyError");
  py::register_exception<TruncationError>(mod, "TruncationError");
  py::register_exception<SpecError>(mod, "SpecError");

  py::class_<GroupElement>(mod, "GroupElement")
      .def(py::init([](Eigen::VectorXd v, Eigen::VectorXd z) {
             return GroupElement{std::move(v), std::move(z)};
           }),
           py::arg("v"), py::arg("z"))
      .def_readwrite("v", &GroupElement::v)
      .def_readwrite("z", &GroupElement::z);

  py::class_<TwoStepAlgebra>(mod, "TwoStepAlgebra")
      .def(py::init<int, int>(), py::arg("m"), py::arg("k"))
      .def_property_readonly("m", &TwoStepAlgebra::m)
      .def_property_readonly("k", &TwoStepAlgebra::k)
      .def("c", &TwoStepAlgebra::c)
      .def("set_c", &TwoStepAlgebra::set_c)
      .def("bracket", &TwoStepAlgebra::bracket)
      .def("multiply", &TwoStepAlgebra::multiply)
      .def("inverse", &TwoStepAlgebra::inverse)
      .def("identity", &TwoStepAlgebra::identity)
      .def("is_mw", &TwoStepAlgebra::is_mw, py::arg("trials") = 16, py::arg("seed") = 0,
           py::arg("tol") = 1e-10)
      .def_property("name", &TwoStepAlgebra::name, &TwoStepAlgebra::set_name);

  mod.def("make_heisenberg", &make_heisenberg, py::arg("n"));
  mod.def("make_free_two_step", &make_free_two_step, py::arg("m"));
  mod.def("builtin_group", &builtin_group, py::arg("name"));
  mod.def("load_group", &load_group, py::arg("path"));
  mod.def("write_group", &write_group, py::arg("a"));

  py::class_<SymplecticFrame>(mod, "SymplecticFrame")
      .def_readonly("X", &SymplecticFrame::X)
      .def_readonly("Y", &SymplecticFrame::Y)
      .def_readonly("d", &SymplecticFrame::d)
      .def_readonly("Dmat", &SymplecticFrame::Dmat)
      .def_property_readonly("n", &SymplecticFrame::n);

  mod.def("b_matrix", &b_matrix, py::arg("a"), py::arg("lam"));
  mod.def("frame", &frame, py::arg("a"), py::arg("lam"), py::arg("tol") = 1e-10);
  mod.def("frame_aligned", &frame_aligned, py::arg("a"), py::arg("path"),
          py::arg("tol") = 1e-10);
  mod.def("homogeneity_check", &homogeneity_check, py::arg("a"), py::arg("lam"), py::arg("r"),
          py::arg("tol") = 1e-10);

  mod.def("hermite_eval", &hermite_eval, py::arg("alpha"), py::arg("xi"));
  mod.def("dilate", &dilate, py::arg("r"), py::arg("alpha"), py::arg("xi"));
  mod.def("laguerre", &laguerre_1d, py::arg("p"), py::arg("x"));
  mod.def("special_hermite_diag",
          py::overload_cast<const MultiIndex&, const Eigen::VectorXcd&>(&special_hermite_diag),
          py::arg("alpha"), py::arg("z"));
  mod.def("special_hermite_diag",
          py::overload_cast<const MultiIndex&, const Eigen::VectorXcd&, const Eigen::VectorXd&>(
              &special_hermite_diag),
          py::arg("alpha"), py::arg("z"), py::arg("d"));
  mod.def("recurrence_check", &recurrence_check, py::arg("alpha"), py::arg("j"), py::arg("z"),
          py::arg("step") = 1e-4);

  py::class_<GridSpec>(mod, "GridSpec")
      .def_static("uniform", &GridSpec::uniform, py::arg("dim"), py::arg("box"),
                  py::arg("points"))
      .def_readonly("box", &GridSpec::box)
      .def_readonly("points", &GridSpec::points)
      .def("size", &GridSpec::size)
      .def("spacing", &GridSpec::spacing);

  py::class_<SampledFunction>(mod, "SampledFunction")
      .def_readonly("grid", &SampledFunction::grid)
      .def_readwrite("values", &SampledFunction::values)
      .def_readonly("coarse", &SampledFunction::coarse)
      .def("value_at", &SampledFunction::value_at)
      .def("l2_norm", &SampledFunction::l2_norm)
      .def("sup_norm", &SampledFunction::sup_norm);

  mod.def("sample", &sample, py::arg("grid"), py::arg("f"));

  py::class_<FrameCoordinates>(mod, "FrameCoordinates")
      .def(py::init([](Eigen::VectorXd x, Eigen::VectorXd y, Eigen::VectorXd t) {
             return FrameCoordinates{std::move(x), std::move(y), std::move(t)};
           }),
           py::arg("x"), py::arg("y"), py::arg("t"))
      .def_readwrite("x", &FrameCoordinates::x)
      .def_readwrite("y", &FrameCoordinates::y)
      .def_readwrite("t", &FrameCoordinates::t);

  mod.def("to_frame", &to_frame, py::arg("frame"), py::arg("g"));
  mod.def("from_frame", &from_frame, py::arg("frame"), py::arg("coords"));
  mod.def("apply_pi", &apply_pi, py::arg("frame"), py::arg("lam"), py::arg("g"), py::arg("phi"));
  mod.def("matrix_coefficient", &matrix_coefficient, py::arg("frame"), py::arg("alpha"),
          py::arg("beta"), py::arg("x"), py::arg("y"), py::arg("gh_order") = 80);

  py::class_<QuadratureSpec>(mod, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("gh_order", &QuadratureSpec::gh_order)
      .def_readwrite("t_box", &QuadratureSpec::t_box)
      .def_readwrite("t_points", &QuadratureSpec::t_points);

  mod.def("central_ft", &central_ft, py::arg("f"), py::arg("lam"), py::arg("a"),
          py::arg("v_grid"), py::arg("quad") = QuadratureSpec{});
  mod.def("twisted_convolution", &twisted_convolution, py::arg("a"), py::arg("f"), py::arg("g"),
          py::arg("lam"));
  mod.def("twisted_convolution_at", &twisted_convolution_at, py::arg("a"), py::arg("f"),
          py::arg("g"), py::arg("lam"), py::arg("z"));

  py::class_<GroupFT>(mod, "GroupFT")
      .def_readonly("frame", &GroupFT::frame)
      .def_readonly("basis", &GroupFT::basis)
      .def_readonly("mat", &GroupFT::mat);

  mod.def("group_ft", &group_ft, py::arg("a"), py::arg("lam"), py::arg("f"), py::arg("N"),
          py::arg("xy_grid"), py::arg("quad") = QuadratureSpec{});
  mod.def("hermite_basis", &hermite_basis, py::arg("n"), py::arg("N"));
  mod.def("hamiltonian_apply", &hamiltonian_apply, py::arg("d"), py::arg("phi"));

  mod.def("left_field_apply",
          py::overload_cast<const TwoStepAlgebra&, const PointEvaluator&, int,
                            const GroupElement&, double>(&left_field_apply),
          py::arg("a"), py::arg("f"), py::arg("i"), py::arg("g"), py::arg("step") = 1e-4);
  mod.def("left_field_apply",
          py::overload_cast<const TwoStepAlgebra&, const PointEvaluator&,
                            const Eigen::VectorXd&, const GroupElement&, double>(
              &left_field_apply),
          py::arg("a"), py::arg("f"), py::arg("u"), py::arg("g"), py::arg("step") = 1e-4);
  mod.def("sublaplacian_apply",
          py::overload_cast<const TwoStepAlgebra&, const PointEvaluator&, const GroupElement&,
                            double>(&sublaplacian_apply),
          py::arg("a"), py::arg("f"), py::arg("g"), py::arg("step") = 1e-3);
  mod.def("frame_invariance_check",
          py::overload_cast<const TwoStepAlgebra&, const SymplecticFrame&,
                            const PointEvaluator&, const GroupElement&, double>(
              &frame_invariance_check),
          py::arg("a"), py::arg("frame"), py::arg("f"), py::arg("g"), py::arg("step") = 1e-3);

  py::class_<BumpSpec>(mod, "BumpSpec")
      .def(py::init([](Eigen::VectorXd center, double radius, int order) {
             return BumpSpec{std::move(center), radius, order};
           }),
           py::arg("center"), py::arg("radius") = 1.0, py::arg("order") = 4)
      .def_readwrite("center", &BumpSpec::center)
      .def_readwrite("radius", &BumpSpec::radius)
      .def_readwrite("order", &BumpSpec::order);
  mod.def("bump_value", &bump_value, py::arg("spec"), py::arg("lam"));

  py::class_<ChainTerm>(mod, "ChainTerm")
      .def(py::init([](Eigen::VectorXd lam, MultiIndex alpha, std::complex<double> coeff) {
             return ChainTerm{std::move(lam), std::move(alpha), coeff};
           }),
           py::arg("lam"), py::arg("alpha"), py::arg("coeff") = std::complex<double>{1.0, 0.0})
      .def_readwrite("lam", &ChainTerm::lambda)
      .def_readwrite("alpha", &ChainTerm::alpha)
      .def_readwrite("coeff", &ChainTerm::coeff);

  py::class_<ChainSpec>(mod, "ChainSpec")
      .def(py::init([](std::vector<ChainTerm> terms) { return ChainSpec{std::move(terms)}; }),
           py::arg("terms"))
      .def_readwrite("terms", &ChainSpec::terms);

  mod.def("lambda_tilde", &lambda_tilde, py::arg("a"), py::arg("lam"), py::arg("alpha"));
  mod.def("h_lambda", &h_lambda, py::arg("a"), py::arg("lam"), py::arg("alpha"));
  mod.def("build_chain",
          py::overload_cast<const TwoStepAlgebra&, const ChainSpec&, int>(&build_chain),
          py::arg("a"), py::arg("spec"), py::arg("k"));

  py::class_<ChainResidual>(mod, "ChainResidual")
      .def_readonly("max_residual", &ChainResidual::max_residual)
      .def_readonly("max_ref", &ChainResidual::max_ref);
  mod.def("chain_relation_check", &chain_relation_check, py::arg("a"), py::arg("spec"),
          py::arg("k"), py::arg("n_points"), py::arg("seed"), py::arg("box_v"), py::arg("box_z"),
          py::arg("step") = 1e-3);
  mod.def("sup_norm_estimate", &sup_norm_estimate, py::arg("a"), py::arg("f"), py::arg("box_v"),
          py::arg("box_z"), py::arg("seed"), py::arg("samples") = 4096,
          py::arg("refine_sweeps") = 60);
  mod.def("build_F_alpha", &build_F_alpha, py::arg("a"), py::arg("alpha"), py::arg("phi"),
          py::arg("lambda_nodes") = 41);

  py::class_<ProbeSettings>(mod, "ProbeSettings")
      .def(py::init<>())
      .def_readwrite("v_box", &ProbeSettings::v_box)
      .def_readwrite("v_points", &ProbeSettings::v_points)
      .def_readwrite("t_spacing", &ProbeSettings::t_spacing)
      .def_readwrite("lambda_nodes", &ProbeSettings::lambda_nodes);
  py::class_<ProbeResult>(mod, "ProbeResult")
      .def_readonly("windows", &ProbeResult::windows)
      .def_readonly("pairings", &ProbeResult::pairings)
      .def_readonly("ratios", &ProbeResult::ratios);
  mod.def("concentration_probe", &concentration_probe, py::arg("a"), py::arg("spec"),
          py::arg("phi"), py::arg("psi"), py::arg("l_max"), py::arg("windows"),
          py::arg("settings") = ProbeSettings{});

  py::class_<EmbeddedAlgebra>(mod, "EmbeddedAlgebra")
      .def_readonly("parent", &EmbeddedAlgebra::parent)
      .def_readonly("child", &EmbeddedAlgebra::child);
  mod.def("embed", &embed, py::arg("a"));
  mod.def("lift", &lift, py::arg("emb"), py::arg("f"));
  mod.def("project", &project, py::arg("emb"), py::arg("g"));
  mod.def("include", &include, py::arg("emb"), py::arg("g"));
  mod.def("lifted_field_check", &lifted_field_check, py::arg("emb"), py::arg("f"),
          py::arg("n_points"), py::arg("seed"), py::arg("box"), py::arg("step") = 1e-4);
  mod.def("lifted_sublaplacian_check", &lifted_sublaplacian_check, py::arg("emb"), py::arg("f"),
          py::arg("n_points"), py::arg("seed"), py::arg("box"), py::arg("step") = 1e-3);

  py::class_<ExperimentSpec>(mod, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("task", &ExperimentSpec::task)
      .def_readwrite("group_name", &ExperimentSpec::group_name)
      .def_readwrite("group_file", &ExperimentSpec::group_file)
      .def_readwrite("seed", &ExperimentSpec::seed)
      .def_readwrite("trials", &ExperimentSpec::trials)
      .def_readwrite("lam", &ExperimentSpec::lambda)
      .def_readwrite("alpha", &ExperimentSpec::alpha)
      .def_readwrite("terms", &ExperimentSpec::terms)
      .def_readwrite("phi_center", &ExperimentSpec::phi_center)
      .def_readwrite("psi_center", &ExperimentSpec::psi_center)
      .def_readwrite("phi_radius", &ExperimentSpec::phi_radius)
      .def_readwrite("psi_radius", &ExperimentSpec::psi_radius)
      .def_readwrite("bump_order", &ExperimentSpec::bump_order)
      .def_readwrite("psi_mode", &ExperimentSpec::psi_mode)
      .def_readwrite("l_max", &ExperimentSpec::l_max)
      .def_readwrite("windows", &ExperimentSpec::windows)
      .def_readwrite("probe", &ExperimentSpec::probe)
      .def_readwrite("n_points", &ExperimentSpec::n_points)
      .def_readwrite("box", &ExperimentSpec::box)
      .def_readwrite("step", &ExperimentSpec::step);

  mod.def(
      "run_experiment",
      [](const ExperimentSpec& spec) {
        const Report rep = run(spec);
        return py::make_tuple(rep.overall_pass(), rep.to_string());
      },
      py::arg("spec"),
      "Runs a task and returns (overall_pass, report_json). Raises SpecError on bad input.");
}
