#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/domain.hpp"

namespace ppf {

struct SuiteOptions {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::size_t trials = 1000;       // mtp trials per kernel
  std::size_t translations = 50;   // equivariance translations per seed
  std::size_t points = 256;        // binomial N
  std::size_t dim = 2;
  double side = 1.0;
  double intensity = 100.0;        // poisson input of the mtp suite
  int grid_dim = 2;
  double delta_fraction = 0.005;   // thickened boundary width / L
  double lattice_spacing = 0.1;
  std::size_t threads = 0;
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const noexcept;
  std::size_t failures() const noexcept;
};

// Suite names: tree, grid, clumping, mtp, equivariance, all.
std::vector<std::string> suite_names();
// Throws BadParameters for an unknown suite.
std::vector<SuiteReport> run_suite(const std::string& suite, const SuiteOptions& options);

SuiteReport tree_suite(const SuiteOptions& options);
SuiteReport clumping_suite(const SuiteOptions& options);
SuiteReport grid_suite(const SuiteOptions& options);
SuiteReport mtp_suite(const SuiteOptions& options);
// `translations` random torus translations per seed; every builder is rebuilt on the
// translated configuration and compared under id correspondence.
SuiteReport equivariance_suite(const SuiteOptions& options);

std::string reports_to_json(const std::vector<SuiteReport>& reports);

}  // namespace ppf
