#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "framelab/commands.hpp"
#include "framelab/version.hpp"

namespace {

using namespace framelab;

int emit(const std::string& bytes, const std::string& out_path) {
  std::cout << bytes;
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open output file '" << out_path << "'\n";
      return cli::kExitInvalidInput;
    }
    file << bytes;
  }
  return cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frame-lab: DFT frame construction, eigen-structure analysis, "
               "pattern search, and quantized-encoding simulation"};
  app.set_version_flag("--version", std::string("frame-lab ") + kVersionString);
  app.require_subcommand(1);

  std::string out_path;

  cli::BuildArgs build_args;
  CLI::App* build = app.add_subcommand("build", "Construct a generator matrix");
  build->add_option("--n", build_args.n, "codeword length")->required();
  build->add_option("--k", build_args.k, "message length")->required();
  build->add_option("--kind", build_args.kind, "real or complex");
  build->add_option("--pattern", build_args.pattern,
                    "data/parity pattern ('x'/'-') selecting the systematic form");
  int alpha_flag = -1;
  build->add_option("--alpha", alpha_flag, "low-band bin count (complex kind)");
  build->add_option("--out", out_path, "also write the output to a file");

  cli::SpectrumArgs spectrum_args;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Subframe eigen-structure report");
  spectrum->add_option("--n", spectrum_args.n, "codeword length")->required();
  spectrum->add_option("--k", spectrum_args.k, "message length")->required();
  spectrum->add_option("--kind", spectrum_args.kind, "real or complex");
  spectrum->add_option("--pattern", spectrum_args.pattern, "data/parity pattern")->required();
  spectrum->add_option("--out", out_path, "also write the output to a file");

  cli::SearchArgs search_args;
  CLI::App* search = app.add_subcommand("search", "Rank all pattern classes");
  search->add_option("--n", search_args.n, "codeword length")->required();
  search->add_option("--k", search_args.k, "message length")->required();
  search->add_option("--kind", search_args.kind, "real or complex");
  search->add_option("--mode", search_args.mode, "rotation or rotation-reflection");
  search->add_option("--format", search_args.format, "json or csv");
  search->add_option("--out", out_path, "also write the output to a file");

  cli::SimulateArgs simulate_args;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo encoding run");
  simulate->add_option("--n", simulate_args.n, "codeword length")->required();
  simulate->add_option("--k", simulate_args.k, "message length")->required();
  simulate->add_option("--kind", simulate_args.kind, "real or complex");
  simulate->add_option("--pattern", simulate_args.pattern, "data/parity pattern")->required();
  simulate->add_option("--noise", simulate_args.noise, "iid or quantizer");
  simulate->add_option("--sigma-q2", simulate_args.sigma_q2, "iid noise variance");
  simulate->add_option("--bits", simulate_args.bits, "quantizer bits per sample");
  simulate->add_option("--range", simulate_args.range, "quantizer range");
  simulate->add_option("--sigma-x2", simulate_args.sigma_x2, "source variance");
  simulate->add_option("--trials", simulate_args.trials, "number of trials");
  simulate->add_option("--seed", simulate_args.seed, "random seed");
  simulate->add_option("--out", out_path, "also write the output to a file");

  cli::VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Run the claim suites");
  verify->add_option("--n-max", verify_args.n_max, "largest codeword length swept (<= 16)");
  verify->add_option("--out", out_path, "also write the output to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitInvalidInput;
  }

  try {
    if (build->parsed()) {
      if (alpha_flag >= 0) build_args.alpha = alpha_flag;
      return emit(cli::run_build(build_args), out_path);
    }
    if (spectrum->parsed()) return emit(cli::run_spectrum(spectrum_args), out_path);
    if (search->parsed()) return emit(cli::run_search(search_args), out_path);
    if (simulate->parsed()) return emit(cli::run_simulate(simulate_args), out_path);
    if (verify->parsed()) {
      const cli::VerifyOutput result = cli::run_verify(verify_args);
      const int code = emit(result.text, out_path);
      if (code != cli::kExitOk) return code;
      return result.all_passed ? cli::kExitOk : cli::kExitVerifyFailed;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInvalidInput;
  }
  return cli::kExitInvalidInput;
}
