#pragma once

#include <string>
#include <vector>

namespace fastbench {

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> mismatches;
};

/// Recounts the raw CSVs of an exported report and cross-checks every
/// aggregate in summary.txt and buckets.csv. Mismatches name the field.
VerifyResult verify_report(const std::string& dir);

}  // namespace fastbench
