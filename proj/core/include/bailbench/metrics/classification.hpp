#pragma once

#include <span>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "bailbench/common/diagnostics.hpp"

namespace bailbench {

enum class Averaging { Macro, Binary };  // Binary: positive class 1

std::string_view to_string(Averaging a);

struct Confusion {
  std::size_t tp = 0;  // pred 1, gold 1
  std::size_t fp = 0;  // pred 1, gold 0
  std::size_t tn = 0;
  std::size_t fn = 0;
  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const Confusion&) const = default;
};

struct ClassificationReport {
  Averaging mode = Averaging::Macro;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Confusion confusion;
};

nlohmann::ordered_json to_json(const ClassificationReport& r);

// pairs are (y_pred, y_gold). Empty input or a label outside {0,1} throws
// PreconditionError. Zero denominators give 0 and a warning.
ClassificationReport classification_metrics(std::span<const std::pair<int, int>> pairs, Averaging mode,
                                            Diagnostics* diag = nullptr);

}  // namespace bailbench
