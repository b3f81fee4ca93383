#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "neurochaos/matrix.hpp"

namespace neurochaos::metrics {

struct ClassificationReport {
  std::vector<int> classes;
  std::vector<std::vector<std::size_t>> confusion;  // [true class][predicted class]
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;  // percent
};

// Standard per-class precision/recall/F1 with zero denominators mapped to 0,
// macro averages as unweighted means. `classes` enumerates every label that
// may appear in either vector.
ClassificationReport report(const LabelVector& y_true, const LabelVector& y_pred,
                            const std::vector<int>& classes);

nlohmann::json to_json(const ClassificationReport& r);

// Fixed-width per-class table, one metric row per class plus the macro row.
std::string to_table(const ClassificationReport& r);

}  // namespace neurochaos::metrics
