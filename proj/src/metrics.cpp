#include "pdm/metrics.hpp"

#include <algorithm>
#include <set>

#include "pdm/common.hpp"

namespace pdm {

Metrics compute_metrics(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.size() != predicted.size()) throw ValidationError("truth and prediction lengths differ");
    Metrics m;
    std::set<int> cs(truth.begin(), truth.end());
    cs.insert(predicted.begin(), predicted.end());
    m.classes.assign(cs.begin(), cs.end());
    const std::size_t k = m.classes.size();
    auto at = [&](int c) { return std::lower_bound(m.classes.begin(), m.classes.end(), c) - m.classes.begin(); };
    m.confusion.assign(k, std::vector<int>(k, 0));
    std::size_t ok = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++m.confusion[at(truth[i])][at(predicted[i])];
        ok += truth[i] == predicted[i];
    }
    m.accuracy = truth.empty() ? 0.0 : static_cast<double>(ok) / truth.size();
    for (std::size_t c = 0; c < k; ++c) {
        int tp = m.confusion[c][c], col = 0, row = 0;
        for (std::size_t o = 0; o < k; ++o) {
            col += m.confusion[o][c];
            row += m.confusion[c][o];
        }
        ClassScores s;
        s.cls = m.classes[c];
        s.support = row;
        s.precision = col ? static_cast<double>(tp) / col : 0.0;
        s.recall = row ? static_cast<double>(tp) / row : 0.0;
        s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
        m.per_class.push_back(s);
    }
    double p = 0, r = 0, f = 0;
    for (const auto& s : m.per_class) {
        p += s.precision;
        r += s.recall;
        f += s.f1;
    }
    m.macro_f1 = k ? f / k : 0.0;
    m.macro = k > 2;
    if (m.macro) {
        m.precision = p / k;
        m.recall = r / k;
        m.f1 = f / k;
    } else if (k > 0) {
        const auto& s = m.per_class.back();
        m.precision = s.precision;
        m.recall = s.recall;
        m.f1 = s.f1;
    }
    return m;
}

nlohmann::json to_json(const Metrics& m) {
    nlohmann::json j;
    j["accuracy"] = m.accuracy;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f1"] = m.f1;
    j["macro_f1"] = m.macro_f1;
    j["averaging"] = m.macro ? "macro" : "binary";
    j["classes"] = m.classes;
    j["confusion"] = m.confusion;
    j["per_class"] = nlohmann::json::array();
    for (const auto& s : m.per_class)
        j["per_class"].push_back(
            {{"class", s.cls}, {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}, {"support", s.support}});
    return j;
}

}  // namespace pdm
