#include "pdm/cart.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "pdm/common.hpp"

namespace pdm::cart {

namespace {

constexpr double kTieEps = 1e-12;
constexpr int kLabelFeature = -2;

double gini(const std::vector<int>& counts, int n) {
    if (n == 0) return 0.0;
    double s = 0.0;
    for (int c : counts) s += static_cast<double>(c) * c;
    return 1.0 - s / (static_cast<double>(n) * n);
}

struct Split {
    bool found = false;
    double impurity = 0.0;
    std::string key;  // for tie-breaking
    int feature = -1;
    double threshold = 0.0;
    std::string category;
};

bool better(const Split& s, double imp, const std::string& key, double thr) {
    if (!s.found) return true;
    if (imp < s.impurity - kTieEps) return true;
    if (imp > s.impurity + kTieEps) return false;
    if (key != s.key) return key < s.key;
    return thr < s.threshold;
}

// Numeric and categorical split search over a column-major Table.
struct TableSource {
    const Table& d;

    const std::vector<int>& y() const { return d.y; }
    const std::vector<std::string>& keys() const { return d.keys; }

    bool goes_left(const Split& s, int i) const {
        if (s.feature == kLabelFeature) return d.labels[i] == s.category;
        return d.cols[s.feature][i] <= s.threshold;
    }

    void scan(int f, const std::vector<int>& idx, const std::vector<int>& cls, const std::vector<int>& total,
              std::size_t k, Split& best) const {
        const int n = static_cast<int>(idx.size());
        const auto& col = d.cols[f];
        std::vector<std::pair<double, int>> vals(n);
        for (int i = 0; i < n; ++i) vals[i] = {col[idx[i]], cls[idx[i]]};
        std::sort(vals.begin(), vals.end());
        if (vals.front().first == vals.back().first) return;
        std::vector<int> left(k, 0), right(k);
        for (int i = 0; i + 1 < n; ++i) {
            ++left[vals[i].second];
            if (vals[i].first == vals[i + 1].first) continue;
            int nl = i + 1, nr = n - nl;
            for (std::size_t c = 0; c < k; ++c) right[c] = total[c] - left[c];
            double imp = (nl * gini(left, nl) + nr * gini(right, nr)) / n;
            double a = vals[i].first, b = vals[i + 1].first;
            double thr = a + (b - a) / 2.0;
            if (!(thr >= a && thr < b)) thr = a;
            if (better(best, imp, d.keys[f], thr)) best = {true, imp, d.keys[f], f, thr, {}};
        }
    }

    void scan_labels(const std::vector<int>& idx, const std::vector<int>& cls, const std::vector<int>& total,
                     std::size_t k, Split& best) const {
        if (!d.has_labels()) return;
        const int n = static_cast<int>(idx.size());
        std::map<std::string, std::vector<int>> by;
        for (int i : idx) {
            auto& v = by[d.labels[i]];
            if (v.empty()) v.assign(k, 0);
            ++v[cls[i]];
        }
        if (by.size() < 2) return;
        // Categories are visited in sorted order; the rank stands in for the
        // threshold so that ties keep the smallest category.
        double rank = 0;
        std::vector<int> right(k);
        const std::string key(kLabelKey);
        for (const auto& [lab, cnt] : by) {
            int nl = std::accumulate(cnt.begin(), cnt.end(), 0), nr = n - nl;
            for (std::size_t c = 0; c < k; ++c) right[c] = total[c] - cnt[c];
            double imp = (nl * gini(cnt, nl) + nr * gini(right, nr)) / n;
            if (better(best, imp, key, rank)) best = {true, imp, key, kLabelFeature, rank, lab};
            rank += 1;
        }
    }
};

struct TernarySource {
    const TernaryTable& d;

    const std::vector<int>& y() const { return d.y; }
    const std::vector<std::string>& keys() const { return d.keys; }

    bool goes_left(const Split& s, int i) const { return d.cols[s.feature][i] <= s.threshold; }

    void scan(int f, const std::vector<int>& idx, const std::vector<int>& cls, const std::vector<int>& total,
              std::size_t k, Split& best) const {
        const int n = static_cast<int>(idx.size());
        const auto& col = d.cols[f];
        std::vector<int> hist(3 * k, 0);
        for (int i : idx) ++hist[(col[i] + 1) * k + cls[i]];
        int present[3], np = 0, size[3] = {0, 0, 0};
        for (int v = 0; v < 3; ++v) {
            for (std::size_t c = 0; c < k; ++c) size[v] += hist[v * k + c];
            if (size[v] > 0) present[np++] = v;
        }
        if (np < 2) return;
        std::vector<int> left(k, 0), right(k);
        int nl = 0;
        for (int p = 0; p + 1 < np; ++p) {
            int v = present[p];
            for (std::size_t c = 0; c < k; ++c) left[c] += hist[v * k + c];
            nl += size[v];
            int nr = n - nl;
            for (std::size_t c = 0; c < k; ++c) right[c] = total[c] - left[c];
            double imp = (nl * gini(left, nl) + nr * gini(right, nr)) / n;
            double a = v - 1, b = present[p + 1] - 1;
            double thr = a + (b - a) / 2.0;
            if (better(best, imp, d.keys[f], thr)) best = {true, imp, d.keys[f], f, thr, {}};
        }
    }

    void scan_labels(const std::vector<int>&, const std::vector<int>&, const std::vector<int>&, std::size_t,
                     Split&) const {}
};

template <class Src>
class Builder {
public:
    Builder(const Src& src, int max_depth) : src_(src), max_depth_(max_depth) {
        const auto& y = src.y();
        classes_ = y;
        std::sort(classes_.begin(), classes_.end());
        classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
        cls_index_.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            cls_index_[i] = static_cast<int>(std::lower_bound(classes_.begin(), classes_.end(), y[i]) - classes_.begin());
        const auto& keys = src.keys();
        order_.resize(keys.size());
        std::iota(order_.begin(), order_.end(), 0);
        std::sort(order_.begin(), order_.end(), [&](int a, int b) { return keys[a] < keys[b]; });
    }

    Tree run() {
        Tree t;
        t.classes = classes_;
        t.max_depth = max_depth_;
        std::vector<int> idx(cls_index_.size());
        std::iota(idx.begin(), idx.end(), 0);
        grow(t, idx, 0);
        compact(t);
        return t;
    }

private:
    std::vector<int> counts_of(const std::vector<int>& idx) const {
        std::vector<int> c(classes_.size(), 0);
        for (int i : idx) ++c[cls_index_[i]];
        return c;
    }

    int grow(Tree& t, const std::vector<int>& idx, int depth) {
        int id = static_cast<int>(t.nodes.size());
        t.nodes.emplace_back();
        Node nd;
        nd.counts = counts_of(idx);
        nd.cls = classes_[std::max_element(nd.counts.begin(), nd.counts.end()) - nd.counts.begin()];
        bool pure = std::count_if(nd.counts.begin(), nd.counts.end(), [](int c) { return c > 0; }) <= 1;
        Split s;
        if (depth < max_depth_ && !pure && idx.size() >= 2) {
            const std::size_t k = classes_.size();
            for (int f : order_) src_.scan(f, idx, cls_index_, nd.counts, k, s);
            src_.scan_labels(idx, cls_index_, nd.counts, k, s);
        }
        if (!s.found) {
            t.nodes[id] = std::move(nd);
            return id;
        }
        std::vector<int> l, r;
        for (int i : idx) (src_.goes_left(s, i) ? l : r).push_back(i);
        nd.feature = s.feature;
        nd.threshold = s.feature == kLabelFeature ? 0.0 : s.threshold;
        nd.category = s.category;
        t.nodes[id] = nd;
        int li = grow(t, l, depth + 1);
        int ri = grow(t, r, depth + 1);
        t.nodes[id].left = li;
        t.nodes[id].right = ri;
        return id;
    }

    void compact(Tree& t) const {
        const auto& keys = src_.keys();
        std::map<std::string, int> used;
        for (const auto& nd : t.nodes)
            if (nd.feature >= 0) used.emplace(keys[nd.feature], 0);
        int k = 0;
        for (auto& [key, i] : used) {
            i = k++;
            t.keys.push_back(key);
        }
        for (auto& nd : t.nodes)
            if (nd.feature >= 0) nd.feature = used.at(keys[nd.feature]);
    }

    const Src& src_;
    int max_depth_;
    std::vector<int> classes_;
    std::vector<int> cls_index_;
    std::vector<int> order_;
};

}  // namespace

void Table::add_column(std::string key, std::vector<double> values) {
    keys.push_back(std::move(key));
    cols.push_back(std::move(values));
}

int Tree::depth() const {
    std::function<int(int)> go = [&](int i) -> int {
        const auto& nd = nodes[i];
        if (nd.leaf()) return 0;
        return 1 + std::max(go(nd.left), go(nd.right));
    };
    return nodes.empty() ? 0 : go(0);
}

int Tree::leaves() const {
    return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.leaf(); }));
}

Tree fit(const Table& data, int max_depth) {
    if (data.rows() == 0) throw ValidationError("cannot fit a tree on zero rows");
    if (data.cols.size() != data.keys.size()) throw ValidationError("table keys and columns disagree");
    for (const auto& c : data.cols)
        if (c.size() != data.rows()) throw ValidationError("ragged table column");
    if (data.has_labels() && data.labels.size() != data.rows()) throw ValidationError("ragged label column");
    if (max_depth < 0) throw ValidationError("max depth must be non-negative");
    TableSource src{data};
    return Builder<TableSource>(src, max_depth).run();
}

Tree fit(const TernaryTable& data, int max_depth) {
    if (data.rows() == 0) throw ValidationError("cannot fit a tree on zero rows");
    if (data.cols.size() != data.keys.size()) throw ValidationError("table keys and columns disagree");
    for (const auto& c : data.cols)
        if (c.size() != data.rows()) throw ValidationError("ragged table column");
    if (max_depth < 0) throw ValidationError("max depth must be non-negative");
    TernarySource src{data};
    return Builder<TernarySource>(src, max_depth).run();
}

Table to_table(const TernaryTable& data) {
    Table t;
    t.y = data.y;
    for (std::size_t f = 0; f < data.keys.size(); ++f)
        t.add_column(data.keys[f], std::vector<double>(data.cols[f].begin(), data.cols[f].end()));
    return t;
}

double purity(const Tree& t) {
    long total = 0, major = 0;
    for (const auto& nd : t.nodes) {
        if (!nd.leaf()) continue;
        total += std::accumulate(nd.counts.begin(), nd.counts.end(), 0L);
        major += *std::max_element(nd.counts.begin(), nd.counts.end());
    }
    return total == 0 ? 0.0 : static_cast<double>(major) / total;
}

std::vector<DecisionPath> paths(const Tree& t) {
    std::vector<DecisionPath> out;
    Conjunction cur;
    std::function<void(int)> go = [&](int i) {
        const auto& nd = t.nodes[i];
        if (nd.leaf()) {
            out.push_back({cur, nd.cls, nd.counts});
            return;
        }
        Atom a;
        if (nd.feature == kLabelFeature) {
            a.key = std::string(kLabelKey);
            a.text = nd.category;
            a.op = Op::Eq;
        } else {
            a.key = t.keys[nd.feature];
            a.value = nd.threshold;
            a.op = Op::Le;
        }
        cur.push_back(a);
        go(nd.left);
        cur.back().op = nd.feature == kLabelFeature ? Op::Ne : Op::Gt;
        go(nd.right);
        cur.pop_back();
    };
    if (!t.nodes.empty()) go(0);
    return out;
}

DataPredicate class_formula(const Tree& t, int cls) {
    DataPredicate p = DataPredicate::falsity();
    for (auto& path : paths(t))
        if (path.predicted_class == cls) p.disjuncts.push_back(std::move(path.predicate));
    return p;
}


namespace {

int leaf_node(const Tree& t, const std::vector<double>& values, const std::string& label) {
    int i = 0;
    while (!t.nodes[i].leaf()) {
        const auto& nd = t.nodes[i];
        bool left = nd.feature == kLabelFeature ? label == nd.category : values[nd.feature] <= nd.threshold;
        i = left ? nd.left : nd.right;
    }
    return i;
}

template <class F>
void for_rows(const Tree& t, const Table& data, F&& f) {
    std::vector<int> map(t.keys.size(), -1);
    for (std::size_t k = 0; k < t.keys.size(); ++k) {
        auto it = std::find(data.keys.begin(), data.keys.end(), t.keys[k]);
        if (it != data.keys.end()) map[k] = static_cast<int>(it - data.keys.begin());
    }
    std::vector<double> row(t.keys.size());
    static const std::string none;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t k = 0; k < map.size(); ++k) row[k] = map[k] < 0 ? 0.0 : data.cols[map[k]][r];
        f(r, leaf_node(t, row, data.has_labels() ? data.labels[r] : none));
    }
}

}  // namespace

std::vector<int> predict(const Tree& t, const Table& data) {
    std::vector<int> out(data.rows());
    for_rows(t, data, [&](std::size_t r, int node) { out[r] = t.nodes[node].cls; });
    return out;
}

std::vector<int> leaf_ordinals(const Tree& t, const Table& data) {
    // Leaves are created depth-first, left before right, like paths().
    std::vector<int> ordinal(t.nodes.size(), -1);
    int k = 0;
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        if (t.nodes[i].leaf()) ordinal[i] = k++;
    std::vector<int> out(data.rows());
    for_rows(t, data, [&](std::size_t r, int node) { out[r] = ordinal[node]; });
    return out;
}

int predict_one(const Tree& t, const std::vector<double>& values, const std::string& label) {
    return t.nodes[leaf_node(t, values, label)].cls;
}

double accuracy(const Tree& t, const Table& data) {
    if (data.rows() == 0) return 0.0;
    auto p = predict(t, data);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < p.size(); ++i) ok += p[i] == data.y[i];
    return static_cast<double>(ok) / p.size();
}

namespace {

nlohmann::json node_json(const Tree& t, int i) {
    const auto& nd = t.nodes[i];
    nlohmann::json j;
    if (nd.leaf()) {
        j["class"] = nd.cls;
        nlohmann::json counts = nlohmann::json::object();
        for (std::size_t c = 0; c < t.classes.size(); ++c) counts[std::to_string(t.classes[c])] = nd.counts[c];
        j["counts"] = counts;
        return j;
    }
    if (nd.feature == kLabelFeature) {
        j["feature"] = std::string(kLabelKey);
        j["category"] = nd.category;
    } else {
        j["feature"] = t.keys[nd.feature];
        j["threshold"] = nd.threshold;
    }
    j["left"] = node_json(t, nd.left);
    j["right"] = node_json(t, nd.right);
    return j;
}

int node_from_json(Tree& t, const nlohmann::json& j, std::map<std::string, int>& keys, int depth) {
    int id = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    Node nd;
    if (j.contains("class")) {
        nd.cls = j.at("class").get<int>();
        nd.counts.assign(t.classes.size(), 0);
        for (auto& [k, v] : j.at("counts").items()) {
            int c = std::stoi(k);
            auto it = std::lower_bound(t.classes.begin(), t.classes.end(), c);
            if (it == t.classes.end() || *it != c) throw ParseError(fmt::format("unknown class {} in tree", c));
            nd.counts[it - t.classes.begin()] = v.get<int>();
        }
        t.nodes[id] = nd;
        return id;
    }
    auto f = j.at("feature").get<std::string>();
    if (j.contains("category")) {
        nd.feature = kLabelFeature;
        nd.category = j.at("category").get<std::string>();
    } else {
        auto [it, _] = keys.emplace(f, static_cast<int>(keys.size()));
        nd.feature = it->second;
        nd.threshold = j.at("threshold").get<double>();
        if (!std::isfinite(nd.threshold)) throw ParseError("non-finite tree threshold");
    }
    t.nodes[id] = nd;
    int l = node_from_json(t, j.at("left"), keys, depth + 1);
    int r = node_from_json(t, j.at("right"), keys, depth + 1);
    t.nodes[id].left = l;
    t.nodes[id].right = r;
    return id;
}

}  // namespace

nlohmann::json to_json(const Tree& t) {
    nlohmann::json j;
    j["max_depth"] = t.max_depth;
    j["classes"] = t.classes;
    j["root"] = t.nodes.empty() ? nlohmann::json() : node_json(t, 0);
    return j;
}

Tree tree_from_json(const nlohmann::json& j) {
    try {
        Tree t;
        t.max_depth = j.at("max_depth").get<int>();
        t.classes = j.at("classes").get<std::vector<int>>();
        std::map<std::string, int> keys;
        node_from_json(t, j.at("root"), keys, 0);
        // Map iteration is sorted, matching the layout fit() produces.
        std::vector<int> remap(keys.size());
        for (const auto& [k, i] : keys) {
            remap[i] = static_cast<int>(t.keys.size());
            t.keys.push_back(k);
        }
        for (auto& nd : t.nodes)
            if (nd.feature >= 0) nd.feature = remap[nd.feature];
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(fmt::format("bad tree model: {}", e.what()));
    }
}

}  // namespace pdm::cart
