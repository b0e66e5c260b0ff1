#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "simplexobs/commands.hpp"
#include "simplexobs/errors.hpp"

namespace {

using simplexobs::CommandResult;

void emit(const CommandResult& result, const std::string& format) {
  if (format == "text") {
    std::cout << simplexobs::format_text(result.report);
  } else {
    std::cout << result.report.dump(2) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Obstruction systems for admissible unitary maps on S_n-simplex skeleta"};
  app.set_version_flag("--version", simplexobs::toolkit_version());
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  int n = 4;
  const auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", n, "Number of maps")->capture_default_str();
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* build = app.add_subcommand("build", "Assemble M, delta and D and export them");
  add_n(build);
  std::string out_dir = ".";
  build->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "Decide solvability of M x = D over a field or Z");
  add_n(solve);
  std::string field = "gf2";
  std::optional<std::uint64_t> prime;
  solve->add_option("--field", field, "gf2, gfp, rational or integer")
      ->check(CLI::IsMember({"gf2", "gfp", "rational", "integer"}))
      ->capture_default_str();
  solve->add_option("--p", prime, "Prime for --field gfp");

  auto* verify = app.add_subcommand("verify-paths", "Compare lifted face-loop windings with M w - D");
  add_n(verify);
  simplexobs::VerifyPathsOptions vp;
  verify->add_option("--faces", vp.faces, "Number of random faces")->capture_default_str();
  verify->add_option("--samples", vp.samples, "Samples per edge path")->capture_default_str();
  verify->add_option("--seed", vp.seed, "RNG seed")->capture_default_str();
  verify->add_option("--tol", vp.tol, "Tolerance on the winding deviation")->capture_default_str();
  verify->add_option("--trials", vp.trials, "Number of random target vectors")->capture_default_str();
  verify->add_flag("--base-targets", vp.base_targets, "Use the unmodified construction's targets");

  auto* counter = app.add_subcommand("counterexample", "Sweep the piecewise equivalence checks");
  int grid_depth = 4;
  counter->add_option("--grid-depth", grid_depth, "Barycentric lattice depth")->capture_default_str();
  counter->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : simplexobs::kExitUsage;
  }

  try {
    CommandResult result;
    if (*build) {
      result = simplexobs::cmd_build(n, out_dir);
    } else if (*solve) {
      result = simplexobs::cmd_solve(n, simplexobs::Field::parse(field, prime));
    } else if (*verify) {
      vp.n = n;
      result = simplexobs::cmd_verify_paths(vp);
    } else {
      result = simplexobs::cmd_counterexample(grid_depth);
    }
    emit(result, format);
    return result.exit_code;
  } catch (const simplexobs::InternalError& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return simplexobs::kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return simplexobs::kExitUsage;
  }
}
