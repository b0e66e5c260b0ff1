#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "simplexobs/commands.hpp"
#include "simplexobs/errors.hpp"
#include "simplexobs/linalg.hpp"
#include "simplexobs/obstruction.hpp"
#include "simplexobs/permutation.hpp"

namespace py = pybind11;
using namespace simplexobs;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string report_text(const CommandResult& r) {
  auto j = r.report;
  j["exit_code"] = r.exit_code;
  return j.dump();
}

std::vector<int> to_images(const Permutation& g) {
  return {g.images().begin(), g.images().end()};
}

IntMatrix dense_matrix(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
  return IntMatrix::from_dense(rows, cols);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Obstruction systems for admissible unitary maps";
  m.attr("__version__") = toolkit_version();

  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);
  py::register_exception<CompositionError>(m, "CompositionError", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_AssertionError);

  m.def("enumerate_sn", [](int n) {
    std::vector<std::vector<int>> out;
    for (const auto& g : enumerate_sn(n)) out.push_back(to_images(g));
    return out;
  }, py::arg("n"));
  m.def("compose", [](std::vector<int> g, std::vector<int> h) {
    return to_images(compose(Permutation(std::move(g)), Permutation(std::move(h))));
  }, py::arg("g"), py::arg("h"));
  m.def("inverse", [](std::vector<int> g) { return to_images(inverse(Permutation(std::move(g)))); },
        py::arg("g"));
  m.def("orbit_partition", [](int n, const std::vector<std::vector<int>>& gens) {
    std::vector<Permutation> perms;
    for (const auto& g : gens) perms.emplace_back(g);
    return orbit_partition(n, perms).blocks();
  }, py::arg("n"), py::arg("generators"));

  m.def("system_summary", [](int n) {
    const auto sys = build_system(n);
    nlohmann::json j = {{"n", n},
                        {"columns", sys.columns.size()},
                        {"rows", sys.rows.size()},
                        {"nonzeros", sys.matrix.nonzeros()},
                        {"rhs", sys.rhs},
                        {"delta_numerators", sys.delta_numerators}};
    return j.dump();
  }, py::arg("n"));

  m.def("rank", [](const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols,
                   const std::string& field, std::optional<std::uint64_t> p) {
    const auto mat = dense_matrix(rows, cols);
    const auto f = Field::parse(field, p);
    switch (f.kind) {
      case FieldKind::gf2: return rank_gf2(mat);
      case FieldKind::gfp: return rank_gfp(mat, f.p);
      default: return rank_rational(mat);
    }
  }, py::arg("rows"), py::arg("cols"), py::arg("field") = "rational", py::arg("p") = py::none());

  m.def("solve_dense", [](const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols,
                          const std::vector<std::int64_t>& rhs, const std::string& field,
                          std::optional<std::uint64_t> p) {
    const auto mat = dense_matrix(rows, cols);
    return to_json(solve_field(mat, rhs, Field::parse(field, p))).dump();
  }, py::arg("rows"), py::arg("cols"), py::arg("rhs"), py::arg("field") = "rational",
        py::arg("p") = py::none());

  m.def("cmd_build", [](int n, const std::string& out) { return report_text(cmd_build(n, out)); },
        py::arg("n"), py::arg("out"));
  m.def("cmd_solve", [](int n, const std::string& field, std::optional<std::uint64_t> p) {
    return report_text(cmd_solve(n, Field::parse(field, p)));
  }, py::arg("n") = 4, py::arg("field") = "gf2", py::arg("p") = py::none(),
        py::call_guard<py::gil_scoped_release>());
  m.def("cmd_verify_paths", [](int n, int faces, int samples, std::uint64_t seed, double tol,
                               int trials, bool base_targets) {
    VerifyPathsOptions o;
    o.n = n;
    o.faces = faces;
    o.samples = samples;
    o.seed = seed;
    o.tol = tol;
    o.trials = trials;
    o.base_targets = base_targets;
    return report_text(cmd_verify_paths(o));
  }, py::arg("n") = 4, py::arg("faces") = 50, py::arg("samples") = 1024, py::arg("seed") = 1,
        py::arg("tol") = 1e-6, py::arg("trials") = 1, py::arg("base_targets") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("cmd_counterexample", [](int depth) { return report_text(cmd_counterexample(depth)); },
        py::arg("grid_depth") = 4, py::call_guard<py::gil_scoped_release>());
}
