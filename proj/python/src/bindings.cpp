#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "potts/bethe.hpp"
#include "potts/cli.hpp"
#include "potts/errors.hpp"
#include "potts/harness.hpp"
#include "potts/records.hpp"
#include "potts/transfer.hpp"

namespace py = pybind11;
using namespace potts;

namespace {

ChainSpec chain(const std::string& variant, int L) {
  ChainSpec s;
  s.variant = parse_variant(variant);
  s.L = L;
  s.validate();
  return s;
}

py::dict record_dict(const SpectralRecord& r) {
  py::dict d;
  d["sector"] = r.sector;
  d["energy"] = r.energy;
  d["spin"] = r.spin;
  d["mu"] = r.mu;
  d["roots"] = r.roots;
  d["bethe_residual"] = r.bethe_residual;
  d["eig_residual"] = r.eig_residual;
  return d;
}

} // namespace

PYBIND11_MODULE(_potts, m) {
  m.doc() = "Integrable three-state Potts chains with twisted boundaries";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  m.def("hamiltonian", [](const std::string& variant, int L) {
    return ComplexMatrix(named_hamiltonian(chain(variant, L)).matrix);
  }, py::arg("variant"), py::arg("L"));

  m.def("transfer", [](const std::string& variant, int L, cplx x) {
    return transfer(chain(variant, L), x);
  }, py::arg("variant"), py::arg("L"), py::arg("x"));

  m.def("spectrum", [](const std::string& variant, int L) {
    const ChainSpec s = chain(variant, L);
    py::list out;
    for (const EigenState& e : resolve_sectors(named_hamiltonian(s).matrix, s)) {
      py::dict d;
      d["sector"] = e.sector;
      d["energy"] = e.energy;
      d["eig_residual"] = e.eig_residual;
      out.append(d);
    }
    return out;
  }, py::arg("variant"), py::arg("L"));

  m.def("bethe", [](const std::string& variant, int L, std::optional<int> sector) {
    const PipelineResult res = run_pipeline(chain(variant, L), sector);
    py::list out;
    for (const PipelineState& st : res.states) {
      if (!st.accepted()) throw NumericalError("state not resolved: " + st.failure);
      out.append(record_dict(st.record));
    }
    return out;
  }, py::arg("variant"), py::arg("L"), py::arg("sector") = py::none());

  m.def("bethe_json", [](const std::string& variant, int L) {
    const ChainSpec s = chain(variant, L);
    std::vector<SpectralRecord> recs;
    for (const PipelineState& st : run_pipeline(s).states) recs.push_back(st.record);
    return records_to_json(recs, s.variant, s.n, s.L);
  }, py::arg("variant"), py::arg("L"));

  m.def("bethe_residual", [](const std::string& variant, int L, int sector, const std::vector<cplx>& roots) {
    return bethe_residual(make_bethe_system(bethe_variant_of(parse_variant(variant)), L, sector), roots);
  }, py::arg("variant"), py::arg("L"), py::arg("sector"), py::arg("roots"));

  m.def("check_table", [](const std::string& id) {
    const TableReport rep = reproduce_table(id);
    py::dict d;
    d["id"] = rep.id;
    d["L"] = rep.L;
    d["rows"] = rep.rows.size();
    d["passed_rows"] = rep.passed_rows;
    d["ground_energy"] = rep.ground_energy;
    d["passed"] = rep.all_passed();
    return d;
  }, py::arg("id"));

  m.def("kac_weight", [](int r, int s) {
    const Rational w = kac_weight(r, s);
    return py::make_tuple(w.num(), w.den());
  }, py::arg("r"), py::arg("s"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
