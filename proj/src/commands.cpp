#include "simplexobs/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "simplexobs/counterexample.hpp"
#include "simplexobs/errors.hpp"
#include "simplexobs/obstruction.hpp"
#include "simplexobs/unitary_path.hpp"

#ifndef SIMPLEXOBS_VERSION
#define SIMPLEXOBS_VERSION "0.0.0"
#endif

namespace simplexobs {

namespace {

using nlohmann::json;

class PhaseTimer {
 public:
  template <typename F>
  auto run(const std::string& phase, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(phase, start);
    } else {
      auto result = f();
      record(phase, start);
      return result;
    }
  }

  const json& timings() const { return timings_; }

 private:
  void record(const std::string& phase, std::chrono::steady_clock::time_point start) {
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    timings_[phase] = elapsed.count();
  }

  json timings_ = json::object();
};

json make_report(const std::string& command, int n, json parameters) {
  return {{"command", command},
          {"n", n},
          {"parameters", std::move(parameters)},
          {"results", json::object()},
          {"version", toolkit_version()}};
}

json system_summary(const ObstructionSystem& sys) {
  std::size_t even_columns = 0;
  for (const auto d : sys.delta_numerators) even_columns += d != 0 ? 1 : 0;
  return {{"columns", sys.columns.size()},
          {"rows", sys.rows.size()},
          {"nonzeros", sys.matrix.nonzeros()},
          {"edges", sys.columns.simplices().size()},
          {"faces", sys.rows.simplices().size()},
          {"delta_half_entries", even_columns},
          {"rhs_nonzero", std::count_if(sys.rhs.begin(), sys.rhs.end(),
                                        [](std::int64_t v) { return v != 0; })}};
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array() && j.size() > 16) {
    out << prefix << ": [" << j.size() << " entries]\n";
  } else {
    out << prefix << ": " << j.dump() << '\n';
  }
}

}  // namespace

std::string toolkit_version() { return SIMPLEXOBS_VERSION; }

CommandResult cmd_build(int n, const std::filesystem::path& out_dir) {
  PhaseTimer timer;
  auto report = make_report("build", n, {{"n", n}, {"out", out_dir.string()}});
  const auto sys = timer.run("build_system", [&] { return build_system(n); });
  timer.run("export", [&] { export_system(sys, out_dir); });
  report["results"]["obstruction"] = system_summary(sys);
  report["results"]["skeleton"] = {{"C", sys.columns.size()}, {"R", sys.rows.size()}};
  report["results"]["files"] = {"M.mtx", "delta.json", "D.json", "indices.json", "report.json"};
  report["timings"] = timer.timings();

  const auto path = out_dir / "report.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << report.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
  return {std::move(report), kExitOk};
}

CommandResult cmd_solve(int n, Field field) {
  PhaseTimer timer;
  json parameters = {{"n", n}, {"field", field.tag()}};
  if (field.kind == FieldKind::gfp) parameters["p"] = field.p;
  auto report = make_report("solve", n, std::move(parameters));
  const auto sys = timer.run("build_system", [&] { return build_system(n); });
  const auto solved =
      timer.run("solve", [&] { return solve_field(sys.matrix, sys.rhs, field); });

  int exit_code = kExitOk;
  json verdict = to_json(solved);
  if (solved.witness) {
    const bool verified = timer.run(
        "verify", [&] { return verify_solution(sys.matrix, sys.rhs, *solved.witness, field); });
    verdict["witness_verified"] = verified;
    if (!verified) exit_code = kExitCheckFailed;
  }
  if (solved.field.kind != FieldKind::integer && solved.solvable != (solved.rank == solved.rank_augmented)) {
    exit_code = kExitCheckFailed;
  }
  report["results"]["obstruction"] = system_summary(sys);
  report["results"]["exact-linalg"] = std::move(verdict);
  report["timings"] = timer.timings();
  return {std::move(report), exit_code};
}

CommandResult cmd_verify_paths(const VerifyPathsOptions& options) {
  if (options.faces < 1) throw ValidationError("--faces must be at least 1");
  if (options.samples < 64) throw ValidationError("--samples must be at least 64");
  if (options.trials < 1) throw ValidationError("--trials must be at least 1");
  if (!(options.tol > 0)) throw ValidationError("--tol must be positive");

  PhaseTimer timer;
  auto report = make_report("verify-paths", options.n,
                            {{"n", options.n},
                             {"faces", options.faces},
                             {"samples", options.samples},
                             {"seed", options.seed},
                             {"tol", options.tol},
                             {"trials", options.trials},
                             {"base_targets", options.base_targets}});
  const auto sys = timer.run("build_system", [&] { return build_system(options.n); });
  const auto faces = sys.rows.simplices();

  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> face_order(faces.size());
  for (std::size_t i = 0; i < face_order.size(); ++i) face_order[i] = i;
  for (std::size_t i = face_order.size(); i > 1; --i) {
    std::swap(face_order[i - 1], face_order[rng() % i]);
  }
  face_order.resize(std::min(face_order.size(), static_cast<std::size_t>(options.faces)));
  std::sort(face_order.begin(), face_order.end());

  double max_deviation = 0.0;
  double max_loop_endpoint_error = 0.0;
  std::size_t rows_checked = 0;
  std::size_t nonzero_obstruction_rows = 0;
  std::uniform_int_distribution<long> target_dist(-3, 3);

  timer.run("paths", [&] {
    for (int trial = 0; trial < options.trials; ++trial) {
      std::vector<long> targets(sys.columns.size());
      if (options.base_targets) {
        for (std::size_t c = 0; c < targets.size(); ++c) {
          targets[c] = sys.columns[c].block.size() % 2 == 0 ? 1 : 0;
        }
      } else {
        for (auto& t : targets) t = target_dist(rng);
      }

      const auto edge_for = [&](const Subsimplex& edge) {
        const auto r = sys.columns.range(edge);
        if (!r) throw InternalError("edge missing from column index");
        const std::span<const long> slice(targets.data() + r->first, r->second - r->first);
        try {
          return edge_path(edge, slice, options.samples);
        } catch (const ResolutionError& e) {
          throw ResolutionError(std::string(e.what()) + " (edge " + json(edge).dump() + ")");
        }
      };

      for (const auto f : face_order) {
        const auto& face = faces[f];
        const auto& v = face.vertices();
        const auto loop = face_loop(face, edge_for(Subsimplex({v[0], v[1]})),
                                    edge_for(Subsimplex({v[1], v[2]})),
                                    edge_for(Subsimplex({v[0], v[2]})));
        const auto identity = CMatrix::Identity(options.n, options.n);
        max_loop_endpoint_error =
            std::max({max_loop_endpoint_error, (loop.front() - identity).cwiseAbs().maxCoeff(),
                      (loop.back() - identity).cwiseAbs().maxCoeff()});
        for (const auto& w : winding_report(loop)) {
          const auto row = sys.rows.find(face, w.block);
          if (!row) throw InternalError("face block missing from row index");
          long expected = -sys.rhs[*row];
          for (const auto& e : sys.matrix.row(*row)) expected += e.value * targets[e.col];
          max_deviation = std::max(max_deviation, std::abs(w.winding - static_cast<double>(expected)));
          if (expected != 0) ++nonzero_obstruction_rows;
          ++rows_checked;
        }
      }
    }
  });

  const bool pass = max_deviation < options.tol;
  report["results"]["unitary-paths"] = {{"faces_checked", face_order.size()},
                                        {"trials", options.trials},
                                        {"rows_checked", rows_checked},
                                        {"nonzero_expected_windings", nonzero_obstruction_rows},
                                        {"max_deviation", max_deviation},
                                        {"max_loop_endpoint_error", max_loop_endpoint_error},
                                        {"pass", pass}};
  report["results"]["obstruction"] = system_summary(sys);
  report["timings"] = timer.timings();
  return {std::move(report), pass ? kExitOk : kExitCheckFailed};
}

CommandResult cmd_counterexample(int grid_depth) {
  PhaseTimer timer;
  auto report = make_report("counterexample", kSystemMaps, {{"grid_depth", grid_depth}});
  const auto result =
      timer.run("sweep", [&] { return check_piecewise_equivalence(grid_depth); });
  report["results"]["counterexample"] = result;
  report["timings"] = timer.timings();
  return {std::move(report), result.passed() ? kExitOk : kExitCheckFailed};
}

std::string format_text(const nlohmann::json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace simplexobs
