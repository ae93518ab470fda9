#pragma once

#include <string>
#include <vector>

#include "newscred/model.hpp"
#include "newscred/types.hpp"

namespace newscred {

struct ConfusionCounts {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
  int positive_class = 0;

  long total() const { return tp + fp + tn + fn; }
};

struct MetricsReport {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ConfusionCounts counts;
  std::string variant;
};

// One row of the ablation protocol: which fused segments stay active.
struct AblationVariant {
  std::string name;   // full, T, V, E, or S
  SegmentMask active;
  int fused_dim = 0;
};

// Tally predictions against labels with respect to the chosen positive class.
ConfusionCounts confusion(const std::vector<int>& preds, const std::vector<int>& labels,
                          int positive_class);

// accuracy=(tp+tn)/N; precision=tp/(tp+fp) and recall=tp/(tp+fn), each 0 when
// its denominator is 0; f1 = harmonic mean, 0 when precision+recall = 0.
MetricsReport report(const ConfusionCounts& counts, const std::string& variant = "");

// full keeps all five segments (164); T drops the text segment only,
// attention features stay (132); V drops image (134); E drops emotion (126);
// S drops both attention directions (100).
AblationVariant build_variant(const std::string& name,
                              const DimensionContract& contract = DimensionContract{});

// Names of every supported variant, in canonical order.
const std::vector<std::string>& all_variant_names();

// Plain-text table, one row per report, columns Acc/Pre/Rec/F1 to 3 decimals.
std::string render_table(const std::vector<MetricsReport>& rows);

}  // namespace newscred
