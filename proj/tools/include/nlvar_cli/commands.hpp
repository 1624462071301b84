#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nlvar_cli/experiment.hpp"

namespace nlvar::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kSpecError = 2,
  kNumericError = 3,
  kNotConverged = 4,
};

inline const std::vector<std::string> kFigures = {"fig1-ode-approx", "fig2-problem1",
                                                  "fig3-quad-mass", "fig4-bolza"};

int cmd_energy(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);
int cmd_minimize(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);
int cmd_residual(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);
int cmd_reproduce(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

/// Full command line, argv[0] included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlvar::cli
