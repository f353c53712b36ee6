#include "jel/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace jel {

ScaledConfusion scaled_confusion(const std::vector<std::pair<int, int>>& predictions) {
    if (predictions.empty()) throw std::invalid_argument("scaled_confusion: no predictions");
    std::size_t pos = 0, neg = 0, tp = 0, tn = 0, fp = 0, fn = 0;
    for (const auto& [pred, truth] : predictions) {
        if (pred != 0 && pred != 1) throw std::invalid_argument("scaled_confusion: labels must be 0/1");
        if (truth != 0 && truth != 1) throw std::invalid_argument("scaled_confusion: labels must be 0/1");
        if (truth == 1) {
            ++pos;
            pred == 1 ? ++tp : ++fn;
        } else {
            ++neg;
            pred == 0 ? ++tn : ++fp;
        }
    }
    if (pos == 0 || neg == 0) {
        throw std::invalid_argument("scaled_confusion: need both positive and negative truth labels");
    }
    ScaledConfusion c;
    c.tp = static_cast<double>(tp) / (2.0 * static_cast<double>(pos));
    c.fn = static_cast<double>(fn) / (2.0 * static_cast<double>(pos));
    c.tn = static_cast<double>(tn) / (2.0 * static_cast<double>(neg));
    c.fp = static_cast<double>(fp) / (2.0 * static_cast<double>(neg));
    return c;
}

PrfMetrics prf_metrics(const ScaledConfusion& c) {
    PrfMetrics m;
    const double pd = c.tp + c.fp;
    const double rd = c.tp + c.fn;
    m.precision = pd == 0.0 ? 0.0 : c.tp / pd;
    m.recall = rd == 0.0 ? 0.0 : c.tp / rd;
    const double hd = m.precision + m.recall;
    m.f1 = hd == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / hd;
    m.accuracy = c.tp + c.tn;
    return m;
}

double precision_at_k(const std::vector<RankedMention>& mentions, std::size_t k) {
    if (k == 0) throw std::invalid_argument("precision_at_k: k must be >= 1");
    if (mentions.empty()) throw std::invalid_argument("precision_at_k: no mentions");
    std::size_t hits = 0;
    for (const auto& m : mentions) {
        if (m.ranked_entity_ids.empty()) {
            throw std::invalid_argument("precision_at_k: empty ranking for mention '" + m.mention_id + "'");
        }
        if (m.gold_entity_id.empty()) {
            throw std::invalid_argument("precision_at_k: missing gold id for mention '" + m.mention_id + "'");
        }
        const std::size_t top = std::min(k, m.ranked_entity_ids.size());
        for (std::size_t i = 0; i < top; ++i) {
            if (m.ranked_entity_ids[i] == m.gold_entity_id) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(mentions.size());
}

std::string format_metric(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return buf;
}

std::string format_metrics_report(const std::string& method_name, const ScaledConfusion& c,
                                  const PrfMetrics& m) {
    std::string out;
    out += "method\tprecision\trecall\tf1\taccuracy\n";
    out += method_name + "\t" + format_metric(m.precision) + "\t" + format_metric(m.recall) +
           "\t" + format_metric(m.f1) + "\t" + format_metric(m.accuracy) + "\n";
    out += "confusion\ttp\ttn\tfp\tfn\n";
    out += "scaled\t" + format_metric(c.tp) + "\t" + format_metric(c.tn) + "\t" +
           format_metric(c.fp) + "\t" + format_metric(c.fn) + "\n";
    return out;
}

std::string format_precision_at_k_report(const std::string& method_name,
                                         const std::vector<RankedMention>& mentions,
                                         const std::vector<std::size_t>& ks) {
    std::string out = "method";
    for (std::size_t k : ks) out += "\tp@" + std::to_string(k);
    out += "\n" + method_name;
    for (std::size_t k : ks) out += "\t" + format_metric(precision_at_k(mentions, k));
    out += "\n";
    return out;
}

}  // namespace jel
