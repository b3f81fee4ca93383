#include "neurochaos/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "neurochaos/errors.hpp"

namespace neurochaos::metrics {

ClassificationReport report(const LabelVector& y_true, const LabelVector& y_pred,
                            const std::vector<int>& classes) {
  if (y_true.size() != y_pred.size()) {
    throw ArgumentError("report: label vectors differ in length (" +
                        std::to_string(y_true.size()) + " vs " +
                        std::to_string(y_pred.size()) + ")");
  }
  if (classes.empty()) throw ArgumentError("report: empty class list");

  std::unordered_map<int, std::size_t> index;
  for (std::size_t c = 0; c < classes.size(); ++c) index[classes[c]] = c;

  ClassificationReport r;
  r.classes = classes;
  r.confusion.assign(classes.size(), std::vector<std::size_t>(classes.size(), 0));
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const auto it_t = index.find(y_true[i]);
    const auto it_p = index.find(y_pred[i]);
    if (it_t == index.end() || it_p == index.end()) {
      throw ArgumentError("report: label not in class list at position " + std::to_string(i));
    }
    ++r.confusion[it_t->second][it_p->second];
  }

  std::size_t correct = 0;
  const std::size_t k = classes.size();
  r.precision.resize(k);
  r.recall.resize(k);
  r.f1.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t tp = r.confusion[c][c];
    correct += tp;
    std::size_t pred_c = 0, true_c = 0;
    for (std::size_t o = 0; o < k; ++o) {
      pred_c += r.confusion[o][c];
      true_c += r.confusion[c][o];
    }
    r.precision[c] = pred_c ? static_cast<double>(tp) / static_cast<double>(pred_c) : 0.0;
    r.recall[c] = true_c ? static_cast<double>(tp) / static_cast<double>(true_c) : 0.0;
    const double pr_sum = r.precision[c] + r.recall[c];
    r.f1[c] = pr_sum > 0.0 ? 2.0 * r.precision[c] * r.recall[c] / pr_sum : 0.0;
    r.macro_precision += r.precision[c];
    r.macro_recall += r.recall[c];
    r.macro_f1 += r.f1[c];
  }
  r.macro_precision /= static_cast<double>(k);
  r.macro_recall /= static_cast<double>(k);
  r.macro_f1 /= static_cast<double>(k);
  r.accuracy = y_true.empty() ? 0.0
                              : 100.0 * static_cast<double>(correct) /
                                    static_cast<double>(y_true.size());
  return r;
}

nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json per_class = nlohmann::json::array();
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    per_class.push_back({{"label", r.classes[c]},
                         {"precision", r.precision[c]},
                         {"recall", r.recall[c]},
                         {"f1", r.f1[c]}});
  }
  return {{"classes", r.classes},
          {"confusion", r.confusion},
          {"per_class", per_class},
          {"macro_precision", r.macro_precision},
          {"macro_recall", r.macro_recall},
          {"macro_f1", r.macro_f1},
          {"accuracy", r.accuracy}};
}

std::string to_table(const ClassificationReport& r) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s\n", "", "Pr", "Re", "F1");
  out += line;
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    std::snprintf(line, sizeof(line), "Class-%-4d %8.4f %8.4f %8.4f\n", r.classes[c],
                  r.precision[c], r.recall[c], r.f1[c]);
    out += line;
  }
  std::snprintf(line, sizeof(line), "%-10s %8.4f %8.4f %8.4f\n", "Macro", r.macro_precision,
                r.macro_recall, r.macro_f1);
  out += line;
  std::snprintf(line, sizeof(line), "Accuracy   %8.2f%%\n", r.accuracy);
  out += line;
  return out;
}

}  // namespace neurochaos::metrics
