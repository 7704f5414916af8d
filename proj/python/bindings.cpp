#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "coalstab/equilibrium.hpp"
#include "coalstab/partitions.hpp"
#include "coalstab/stability.hpp"
#include "coalstab/worth.hpp"

namespace py = pybind11;
using namespace coalstab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cournot coalition worth and core stability";

  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  (void)domain_error;

  py::class_<MarketParams>(m, "MarketParams")
      .def_readonly("a", &MarketParams::a)
      .def_readonly("c", &MarketParams::c)
      .def_readonly("gamma", &MarketParams::gamma)
      .def_readonly("n", &MarketParams::n)
      .def("__repr__", [](const MarketParams& p) {
        return "MarketParams(a=" + std::to_string(p.a) + ", c=" + std::to_string(p.c) +
               ", gamma=" + std::to_string(p.gamma) + ", n=" + std::to_string(p.n) + ")";
      });

  py::class_<CoalitionStructure>(m, "CoalitionStructure")
      .def_property_readonly("n", &CoalitionStructure::n)
      .def_property_readonly("s", &CoalitionStructure::s)
      .def_property_readonly("j", &CoalitionStructure::j)
      .def_property_readonly("outsider_sizes", &CoalitionStructure::outsider_sizes)
      .def(py::self == py::self);

  py::class_<EquilibriumProfile>(m, "EquilibriumProfile")
      .def_readonly("sizes", &EquilibriumProfile::sizes)
      .def_readonly("y", &EquilibriumProfile::y)
      .def_readonly("lambdas", &EquilibriumProfile::lambdas)
      .def_readonly("big_a", &EquilibriumProfile::big_a)
      .def_readonly("c0", &EquilibriumProfile::c0)
      .def_readonly("agent_quantities", &EquilibriumProfile::agent_quantities)
      .def_readonly("within_spread", &EquilibriumProfile::within_spread);

  py::class_<WorthReport>(m, "WorthReport")
      .def_readonly("v_s", &WorthReport::v_s)
      .def_readonly("per_agent", &WorthReport::per_agent)
      .def_readonly("v_n", &WorthReport::v_n)
      .def_readonly("grand_per_agent", &WorthReport::grand_per_agent)
      .def_readonly("structure", &WorthReport::structure);

  py::enum_<BeliefMode>(m, "BeliefMode")
      .value("GIVEN_PARTITION", BeliefMode::kGivenPartition)
      .value("FIXED_J_PESSIMISTIC", BeliefMode::kFixedJPessimistic)
      .value("FIXED_J_OPTIMISTIC", BeliefMode::kFixedJOptimistic)
      .value("GLOBAL_PESSIMISTIC", BeliefMode::kGlobalPessimistic)
      .value("GLOBAL_OPTIMISTIC", BeliefMode::kGlobalOptimistic);

  py::class_<StabilityVerdict>(m, "StabilityVerdict")
      .def_readonly("stable", &StabilityVerdict::stable)
      .def_readonly("margin", &StabilityVerdict::margin)
      .def_readonly("v_s", &StabilityVerdict::v_s)
      .def_readonly("per_agent", &StabilityVerdict::per_agent)
      .def_readonly("grand_per_agent", &StabilityVerdict::grand_per_agent)
      .def_readonly("structure", &StabilityVerdict::structure)
      .def_readonly("belief_mode", &StabilityVerdict::belief_mode);

  py::class_<ThresholdReport>(m, "ThresholdReport")
      .def_readonly("zeta", &ThresholdReport::zeta)
      .def_readonly("n", &ThresholdReport::n)
      .def_readonly("s", &ThresholdReport::s)
      .def_readonly("gamma", &ThresholdReport::gamma)
      .def_readonly("feasible", &ThresholdReport::feasible);

  py::class_<ScanCell>(m, "ScanCell")
      .def_readonly("s", &ScanCell::s)
      .def_readonly("j", &ScanCell::j)
      .def_readonly("partition", &ScanCell::partition)
      .def_readonly("v_s", &ScanCell::v_s)
      .def_readonly("per_agent", &ScanCell::per_agent)
      .def_readonly("margin", &ScanCell::margin)
      .def_readonly("stable", &ScanCell::stable);

  py::class_<DeviationSummary>(m, "DeviationSummary")
      .def_readonly("s", &DeviationSummary::s)
      .def_readonly("partitions", &DeviationSummary::partitions)
      .def_readonly("unstable", &DeviationSummary::unstable)
      .def_readonly("empirical_jstar", &DeviationSummary::empirical_jstar)
      .def_readonly("zeta", &DeviationSummary::zeta)
      .def_readonly("zeta_ceil", &DeviationSummary::zeta_ceil)
      .def_readonly("zeta_sufficient", &DeviationSummary::zeta_sufficient);

  py::class_<ScanReport>(m, "ScanReport")
      .def_readonly("params", &ScanReport::params)
      .def_readonly("per_s", &ScanReport::per_s)
      .def_readonly("cells", &ScanReport::cells)
      .def_readonly("total_cells", &ScanReport::total_cells)
      .def_readonly("unstable_cells", &ScanReport::unstable_cells);

  m.def("validate_params", &validate_params, py::arg("a"), py::arg("c"), py::arg("gamma"), py::arg("n"));
  m.def(
      "make_structure",
      [](int n, int s, const std::vector<int>& outsiders) { return make_structure(n, s, outsiders); },
      py::arg("n"), py::arg("s"), py::arg("outsiders") = std::vector<int>{});
  m.def("closed_form_equilibrium", &closed_form_equilibrium, py::arg("params"), py::arg("structure"));
  m.def("solve_foc_system", &solve_foc_system, py::arg("params"), py::arg("structure"));
  m.def("coalition_worth", &coalition_worth, py::arg("params"), py::arg("structure"));
  m.def("grand_worth", &grand_worth, py::arg("params"));
  m.def(
      "enumerate_partitions",
      [](int m_, std::optional<int> j) {
        std::vector<Partition> out;
        for (const Partition& p : enumerate_partitions(m_, j)) out.push_back(p);
        return out;
      },
      py::arg("m"), py::arg("j") = py::none());
  m.def("partition_count", &partition_count, py::arg("m"), py::arg("j") = py::none());
  m.def(
      "min_worth_partition",
      [](int m_, int j) {
        const ExtremalPartition p = min_worth_partition(m_, j);
        return py::make_tuple(p.parts, p.extrapolated);
      },
      py::arg("m"), py::arg("j"), "Returns (parts, extrapolated).");
  m.def(
      "max_worth_partition", [](int m_, int j) { return max_worth_partition(m_, j).parts; },
      py::arg("m"), py::arg("j"));
  m.def("core_check", &core_check, py::arg("params"), py::arg("structure"));
  m.def("threshold_zeta", &threshold_zeta, py::arg("n"), py::arg("s"), py::arg("gamma"));
  m.def("threshold_gamma1", &threshold_gamma1, py::arg("n"), py::arg("s"));
  m.def(
      "belief_verdict",
      [](const MarketParams& params, int s, BeliefMode mode, std::optional<int> j,
         const std::vector<int>& outsiders) { return belief_verdict(params, s, mode, j, outsiders); },
      py::arg("params"), py::arg("s"), py::arg("mode"), py::arg("j") = py::none(),
      py::arg("outsiders") = std::vector<int>{});
  m.def(
      "exhaustive_scan",
      [](const MarketParams& params, int max_n, std::uint64_t max_partitions, int threads) {
        py::gil_scoped_release release;
        return exhaustive_scan(params, ScanOptions{max_n, max_partitions, threads});
      },
      py::arg("params"), py::arg("max_n") = ScanOptions{}.max_n,
      py::arg("max_partitions") = ScanOptions{}.max_partitions, py::arg("threads") = 1);
}
