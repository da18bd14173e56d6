#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ahm/energy.hpp"
#include "ahm/radial.hpp"

namespace ahm {

/// One line of a verification report.
struct VerifyRow {
  int criterion = 0;
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool passed = false;
  std::string regime;  // empty when not a regime-dependent bound
  std::string note;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  int checks = 0;
  int failures = 0;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  std::vector<VerifyRow> rows;
  int passed() const;
  int failed() const;
  bool all_passed() const { return failed() == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 20240917;
  /// sphere grid for maps without rotational symmetry
  int grid_nodes = 256;
  /// polar nodes of the grid used for rotationally symmetric maps
  int symmetric_grid_nodes = 512;
  int n1_cells = 2000;
  int n3_cells = 4000;
  /// criteria to run (1..12 available; 12 is not computed here, see
  /// verify_determinism); empty selects 1..11
  std::vector<int> only;
};

constexpr int kCriterionCount = 12;
std::string criterion_title(int id);

/// Runs the selected acceptance checks. The report depends only on the
/// options, so equal options give identical reports.
VerifyReport run_verify(const VerifyOptions& options = {});

/// Runs one criterion and appends its rows to `report`.
CriterionResult run_criterion(int id, const VerifyOptions& options, VerifyReport& report);

/// Serializes the report rows as CSV (17 significant digits).
std::string report_csv(const VerifyReport& report);

/// Runs `run_verify` twice with the same options and compares the CSV output
/// byte for byte; adds the outcome as criterion 12.
bool verify_determinism(const VerifyOptions& options, VerifyReport& report);

}  // namespace ahm
