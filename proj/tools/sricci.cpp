#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sricci/document.hpp"
#include "sricci/generators.hpp"
#include "sricci/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ricci curvature and spectral checks for simplicial complexes"};
  app.set_version_flag("--version", sricci::kVersion);

  std::string command;
  std::string input;
  std::vector<std::string> generate;
  int dim = -1;
  std::string weights = "delta";
  std::string format = "readable";
  sricci::RunFlags flags;

  app.add_option("command", command, "summary | spectrum | curvature | verify | dual")->required();
  auto* in = app.add_option("--input", input, "complex document (JSON)");
  auto* gen = app.add_option("--generate", generate, "generator name followed by integer parameters");
  in->excludes(gen);
  gen->excludes(in);
  app.add_option("--dim", dim, "face dimension (default: top)");
  app.add_option("--weights", weights, "delta | unit | custom");
  app.add_option("--format", format, "readable | machine");
  app.add_option("--zero-threshold", flags.zero_threshold, "eigenvalues at most this are zero");
  app.add_option("--eps-tolerance", flags.eps_tolerance, "agreement of consecutive kappa_eps/eps samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto cmd = sricci::parse_command(command);
    const auto fmt = sricci::parse_format(format);
    flags.weights = sricci::parse_weight_scheme(weights);
    if (dim >= 0) flags.dim = dim;

    sricci::ComplexDocument doc;
    if (!input.empty()) {
      doc = sricci::parse_document(input);
    } else if (!generate.empty()) {
      std::vector<long> params;
      for (std::size_t j = 1; j < generate.size(); ++j) {
        try {
          std::size_t used = 0;
          params.push_back(std::stol(generate[j], &used));
          if (used != generate[j].size()) throw std::invalid_argument(generate[j]);
        } catch (const std::logic_error&) {
          throw sricci::Error(sricci::ErrorKind::BadParams, "generator parameter \"" + generate[j] + "\" is not an integer");
        }
      }
      doc = sricci::generate(generate.front(), params);
    } else {
      throw sricci::Error(sricci::ErrorKind::BadParams, "one of --input or --generate is required");
    }

    const auto report = sricci::run(cmd, doc, flags);
    std::cout << sricci::render(report, fmt);
    return report.exit_code;
  } catch (const sricci::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
