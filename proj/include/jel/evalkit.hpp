#pragma once
// Evaluation protocol: scaled confusion fractions, precision/recall/F1/
// accuracy over them, and precision-at-K for ranked candidate lists.

#include <cstdint>
#include <string>
#include <vector>

namespace jel {

/// Confusion counts scaled so each truth class contributes mass 0.5:
/// tp = count(pred=1 & truth=1) / (2 * count(truth=1)) and so on. With both
/// classes present, tp+fn = 0.5 and tn+fp = 0.5.
struct ScaledConfusion {
    double tp = 0.0;
    double tn = 0.0;
    double fp = 0.0;
    double fn = 0.0;
};

struct PrfMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
};

/// Pairs of (predicted label, true label); labels are 0/1.
ScaledConfusion scaled_confusion(const std::vector<std::pair<int, int>>& predictions);

/// precision = tp/(tp+fp), recall = tp/(tp+fn), f1 their harmonic mean,
/// accuracy = tp+tn. Zero denominators yield 0 for the affected metric.
PrfMetrics prf_metrics(const ScaledConfusion& c);

/// One mention's ranked candidate ids (best first) plus its gold id.
struct RankedMention {
    std::string mention_id;
    std::vector<std::string> ranked_entity_ids;
    std::string gold_entity_id;
};

/// Fraction of mentions whose gold id appears within the first K ranked ids.
/// Requires k >= 1, a nonempty mention list, and a nonempty ranking plus a
/// gold id on every mention.
double precision_at_k(const std::vector<RankedMention>& mentions, std::size_t k);

/// Tab-separated metrics block, values rounded to 4 decimals.
std::string format_metrics_report(const std::string& method_name, const ScaledConfusion& c,
                                  const PrfMetrics& m);

/// Tab-separated P@K block over the given K values.
std::string format_precision_at_k_report(const std::string& method_name,
                                         const std::vector<RankedMention>& mentions,
                                         const std::vector<std::size_t>& ks);

/// Fixed 4-decimal rendering used by the report writers.
std::string format_metric(double value);

}  // namespace jel
