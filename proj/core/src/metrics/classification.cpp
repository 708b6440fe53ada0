#include "bailbench/metrics/classification.hpp"

#include "bailbench/common/errors.hpp"

namespace bailbench {

namespace {

double ratio(std::size_t num, std::size_t den, Diagnostics* diag, const char* what) {
  if (den == 0) {
    if (diag) diag->warn("metrics", "", "classification", std::string(what) + " has a zero denominator; set to 0");
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

struct ClassScores {
  double precision, recall, f1;
};

ClassScores class_scores(std::size_t tp, std::size_t fp, std::size_t fn, int label, Diagnostics* diag) {
  const auto p_what = "precision of class " + std::to_string(label);
  const auto r_what = "recall of class " + std::to_string(label);
  const double p = ratio(tp, tp + fp, diag, p_what.c_str());
  const double r = ratio(tp, tp + fn, diag, r_what.c_str());
  return {p, r, harmonic(p, r)};
}

}  // namespace

std::string_view to_string(Averaging a) { return a == Averaging::Macro ? "macro" : "binary"; }

nlohmann::ordered_json to_json(const ClassificationReport& r) {
  return {{"mode", to_string(r.mode)},
          {"accuracy", r.accuracy},
          {"precision", r.precision},
          {"recall", r.recall},
          {"f1", r.f1},
          {"confusion", {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"tn", r.confusion.tn}, {"fn", r.confusion.fn}}}};
}

ClassificationReport classification_metrics(std::span<const std::pair<int, int>> pairs, Averaging mode,
                                            Diagnostics* diag) {
  if (pairs.empty()) throw PreconditionError("classification metrics need at least one pair");
  ClassificationReport out;
  out.mode = mode;
  auto& c = out.confusion;
  for (const auto& [pred, gold] : pairs) {
    if ((pred != 0 && pred != 1) || (gold != 0 && gold != 1)) throw PreconditionError("labels must be 0 or 1");
    if (pred == 1) {
      ++(gold == 1 ? c.tp : c.fp);
    } else {
      ++(gold == 0 ? c.tn : c.fn);
    }
  }
  out.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  const auto pos = class_scores(c.tp, c.fp, c.fn, 1, diag);
  if (mode == Averaging::Binary) {
    out.precision = pos.precision;
    out.recall = pos.recall;
    out.f1 = pos.f1;
  } else {
    // Class 0 as the positive class: its true positives are tn.
    const auto neg = class_scores(c.tn, c.fn, c.fp, 0, diag);
    out.precision = (pos.precision + neg.precision) / 2.0;
    out.recall = (pos.recall + neg.recall) / 2.0;
    out.f1 = (pos.f1 + neg.f1) / 2.0;
  }
  return out;
}

}  // namespace bailbench
