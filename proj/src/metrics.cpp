#include "newscred/metrics.hpp"

#include <cstdio>
#include <sstream>

namespace newscred {

ConfusionCounts confusion(const std::vector<int>& preds, const std::vector<int>& labels,
                          int positive_class) {
  if (preds.empty()) fail("confusion counts need at least one prediction");
  if (preds.size() != labels.size())
    fail(cat(preds.size(), " predictions vs ", labels.size(), " labels"));
  if (positive_class != 0 && positive_class != 1)
    fail(cat("positive class must be 0 or 1, got ", positive_class));

  ConfusionCounts c;
  c.positive_class = positive_class;
  for (size_t i = 0; i < preds.size(); ++i) {
    if ((preds[i] != 0 && preds[i] != 1) || (labels[i] != 0 && labels[i] != 1))
      fail(cat("predictions and labels must be 0 or 1 (index ", i, ")"));
    bool pred_pos = preds[i] == positive_class;
    bool label_pos = labels[i] == positive_class;
    if (pred_pos && label_pos)
      ++c.tp;
    else if (pred_pos && !label_pos)
      ++c.fp;
    else if (!pred_pos && label_pos)
      ++c.fn;
    else
      ++c.tn;
  }
  return c;
}

MetricsReport report(const ConfusionCounts& counts, const std::string& variant) {
  if (counts.total() <= 0) fail("metrics need at least one counted sample");

  MetricsReport r;
  r.counts = counts;
  r.variant = variant;
  r.accuracy = static_cast<double>(counts.tp + counts.tn) / static_cast<double>(counts.total());
  long p_den = counts.tp + counts.fp;
  long r_den = counts.tp + counts.fn;
  r.precision = p_den > 0 ? static_cast<double>(counts.tp) / static_cast<double>(p_den) : 0.0;
  r.recall = r_den > 0 ? static_cast<double>(counts.tp) / static_cast<double>(r_den) : 0.0;
  double f_den = r.precision + r.recall;
  r.f1 = f_den > 0.0 ? 2.0 * r.precision * r.recall / f_den : 0.0;
  return r;
}

AblationVariant build_variant(const std::string& name, const DimensionContract& contract) {
  AblationVariant v;
  v.name = name;
  v.active = kAllSegments;
  if (name == "full") {
    // keep everything
  } else if (name == "T") {
    v.active[0] = false;  // text segment out; attention features stay
  } else if (name == "V") {
    v.active[1] = false;
  } else if (name == "E") {
    v.active[2] = false;
  } else if (name == "S") {
    v.active[3] = false;
    v.active[4] = false;
  } else {
    fail(cat("unknown ablation variant: '", name, "' (want full, T, V, E, or S)"));
  }
  v.fused_dim = masked_fused_dim(v.active, contract);
  return v;
}

const std::vector<std::string>& all_variant_names() {
  static const std::vector<std::string> names = {"full", "T", "V", "E", "S"};
  return names;
}

std::string render_table(const std::vector<MetricsReport>& rows) {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-10s %6s %6s %6s %6s", "variant", "Acc", "Pre", "Rec", "F1");
  out << buf << '\n';
  for (const MetricsReport& r : rows) {
    std::string name = r.variant.empty() ? "-" : r.variant;
    std::snprintf(buf, sizeof(buf), "%-10s %6.3f %6.3f %6.3f %6.3f", name.c_str(), r.accuracy,
                  r.precision, r.recall, r.f1);
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace newscred
