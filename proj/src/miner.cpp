#include "pdm/miner.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "pdm/common.hpp"

namespace pdm {

std::vector<std::string> alphabet(const std::vector<Taxonomy>& taxonomies) {
    std::set<std::string> s;
    for (const auto& t : taxonomies) {
        s.insert(t.root);
        s.insert(t.leaves.begin(), t.leaves.end());
    }
    return {s.begin(), s.end()};
}

namespace {

std::vector<std::string> present_labels(const TraceView& tv, const std::vector<std::string>& sigma) {
    std::vector<std::string> out;
    for (const auto& l : sigma)
        if (!tv.occurrences(l).empty()) out.push_back(l);
    return out;
}

bool event_has(const PolyadicEvent& ev, const std::string& label) {
    for (const auto& c : ev.constituents)
        if (label_matches(label, c.label)) return true;
    return false;
}

}  // namespace

std::map<Itemset, double> frequent_itemsets(const PolyadicLog& log, double theta,
                                            const std::vector<std::string>& sigma) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw ValidationError(fmt::format("theta {} outside [0,1]", theta));
    std::map<Itemset, int> count;
    for (const auto& t : log.traces) {
        auto p = present_labels(TraceView(t), sigma);
        for (std::size_t i = 0; i < p.size(); ++i) {
            ++count[{p[i]}];
            for (std::size_t j = i + 1; j < p.size(); ++j) ++count[{p[i], p[j]}];
        }
    }
    std::map<Itemset, double> out;
    if (log.traces.empty()) return out;
    for (const auto& [set, n] : count) {
        double s = static_cast<double>(n) / log.traces.size();
        if (s >= theta) out.emplace(set, s);
    }
    return out;
}

UnaryCandidates generate_unary_clauses(const std::map<Itemset, double>& itemsets, const PolyadicLog& log,
                                       const std::vector<std::string>& sigma) {
    UnaryCandidates out;
    std::set<std::string> observed;
    for (const auto& t : log.traces)
        for (const auto& l : present_labels(TraceView(t), sigma)) observed.insert(l);
    for (const auto& [set, s] : itemsets) {
        if (set.size() == 2) {
            out.freq_pairs.emplace(set[0], set[1]);
            out.freq_pairs.emplace(set[1], set[0]);
            continue;
        }
        const auto& a = set[0];
        bool init = !log.traces.empty(), end = init, exists = init;
        for (const auto& t : log.traces) {
            if (t.events.empty()) {
                init = end = exists = false;
                break;
            }
            init = init && event_has(t.events.front(), a);
            end = end && event_has(t.events.back(), a);
            exists = exists && !TraceView(t).occurrences(a).empty();
        }
        if (init) out.clauses.push_back(unary(Template::Init, a));
        if (end) out.clauses.push_back(unary(Template::End, a));
        if (exists) out.clauses.push_back(unary(Template::Exists, a));
    }
    if (!log.traces.empty())
        for (const auto& a : sigma)
            if (!observed.count(a)) out.clauses.push_back(unary(Template::Absence, a));
    std::sort(out.clauses.begin(), out.clauses.end(),
              [](const Clause& x, const Clause& y) { return x.to_string() < y.to_string(); });
    return out;
}

std::vector<int> EmbeddingFrame::classes() const {
    std::vector<int> y;
    for (const auto& r : rows) y.push_back(r.cls);
    return y;
}

cart::TernaryTable EmbeddingFrame::table() const {
    cart::TernaryTable t;
    t.y = classes();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        t.keys.push_back(columns[i].to_string());
        t.cols.push_back(cells[i]);
    }
    return t;
}

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string EmbeddingFrame::to_csv() const {
    std::string out = "trace_id,clazz";
    for (const auto& c : columns) out += "," + csv_quote(c.to_string());
    out += "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += csv_quote(rows[r].trace_id) + "," + std::to_string(rows[r].cls);
        for (const auto& col : cells) out += "," + std::to_string(static_cast<int>(col[r]));
        out += "\n";
    }
    return out;
}

signed char outcome_cell(Outcome o) { return static_cast<signed char>(static_cast<int>(o)); }

signed char fill_in_dataframe(const std::set<Mark>& marks) {
    if (marks.empty() || (marks.size() == 1 && marks.count(Mark::Vac))) return 0;
    if (marks.count(Mark::Viol)) return -1;
    return 1;
}

MiningInput::MiningInput(const std::map<int, PolyadicLog>& logs) : logs_(&logs) {
    std::set<Taxonomy, bool (*)(const Taxonomy&, const Taxonomy&)> tax(
        [](const Taxonomy& a, const Taxonomy& b) { return a.root < b.root; });
    for (const auto& [cls, log] : logs) {
        offset_[cls] = static_cast<int>(row_count_);
        row_count_ += log.traces.size();
        auto& v = views_[cls];
        v.reserve(log.traces.size());
        for (const auto& t : log.traces) v.emplace_back(t);
        for (const auto& t : log.taxonomies) {
            auto it = tax.find(t);
            if (it == tax.end()) {
                tax.insert(t);
            } else if (!(*it == t)) {
                Taxonomy merged = *it;
                merged.leaves.insert(merged.leaves.end(), t.leaves.begin(), t.leaves.end());
                std::sort(merged.leaves.begin(), merged.leaves.end());
                merged.leaves.erase(std::unique(merged.leaves.begin(), merged.leaves.end()), merged.leaves.end());
                tax.erase(it);
                tax.insert(merged);
            }
        }
    }
    taxonomies_.assign(tax.begin(), tax.end());
    sigma_ = alphabet(taxonomies_);
}

std::vector<FrameRow> MiningInput::rows() const {
    std::vector<FrameRow> out;
    for (const auto& [cls, log] : *logs_)
        for (const auto& t : log.traces) out.push_back({cls, t.id});
    return out;
}

bool MiningInput::same_taxonomy(const std::string& a, const std::string& b) const {
    auto in = [](const Taxonomy& t, const std::string& l) {
        return t.root == l || std::binary_search(t.leaves.begin(), t.leaves.end(), l);
    };
    for (const auto& t : taxonomies_)
        if (in(t, a) && in(t, b)) return true;
    return false;
}

std::vector<signed char> MiningInput::evaluate(const Clause& c, const EvalOptions& opt) const {
    std::vector<signed char> out;
    out.reserve(row_count_);
    for (const auto& [cls, views] : views_)
        for (const auto& tv : views) out.push_back(outcome_cell(pdm::evaluate(c, tv, opt)));
    return out;
}

cart::Table payload_table(const std::vector<const Constituent*>& cs, const std::vector<int>& classes) {
    std::set<std::string> keys{std::string(kSpanKey)};
    std::set<const PayloadSchema*> seen;
    for (const auto* c : cs)
        if (c->payload.schema && seen.insert(c->payload.schema.get()).second)
            keys.insert(c->payload.schema->keys.begin(), c->payload.schema->keys.end());
    cart::Table t;
    t.y = classes;
    std::unordered_map<std::string, int> col;
    for (const auto& k : keys) {
        col[k] = static_cast<int>(t.keys.size());
        t.add_column(k, std::vector<double>(cs.size(), 0.0));
    }
    const int span_col = col.at(std::string(kSpanKey));
    // Resolve each schema's key positions once.
    std::map<const PayloadSchema*, std::vector<int>> where;
    for (const auto* s : seen) {
        auto& w = where[s];
        for (const auto& k : s->keys) w.push_back(col.at(k));
    }
    t.labels.resize(cs.size());
    for (std::size_t r = 0; r < cs.size(); ++r) {
        const auto* c = cs[r];
        t.labels[r] = c->label;
        t.cols[span_col][r] = c->span;
        if (!c->payload.schema) continue;
        const auto& w = where.at(c->payload.schema.get());
        for (std::size_t i = 0; i < w.size(); ++i) t.cols[w[i]][r] = c->payload.values[i];
    }
    return t;
}

namespace {

cart::Table select_rows(const cart::Table& t, const std::vector<int>& idx) {
    cart::Table out;
    out.keys = t.keys;
    out.cols.resize(t.cols.size());
    for (std::size_t f = 0; f < t.cols.size(); ++f) {
        out.cols[f].reserve(idx.size());
        for (int i : idx) out.cols[f].push_back(t.cols[f][i]);
    }
    for (int i : idx) {
        out.y.push_back(t.y[i]);
        if (t.has_labels()) out.labels.push_back(t.labels[i]);
    }
    return out;
}

// Per class, a seeded shuffle; the first round(fraction * n) rows train.
std::pair<std::vector<int>, std::vector<int>> stratified_split(const std::vector<int>& y, double fraction,
                                                               std::uint64_t seed) {
    std::map<int, std::vector<int>> by;
    for (std::size_t i = 0; i < y.size(); ++i) by[y[i]].push_back(static_cast<int>(i));
    std::mt19937_64 rng(seed);
    std::vector<int> train, test;
    for (auto& [cls, idx] : by) {
        std::shuffle(idx.begin(), idx.end(), rng);
        auto k = static_cast<std::size_t>(std::llround(fraction * idx.size()));
        k = std::clamp<std::size_t>(k, 1, idx.size());
        train.insert(train.end(), idx.begin(), idx.begin() + k);
        test.insert(test.end(), idx.begin() + k, idx.end());
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {train, test};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Conjunction flatten(const DataPredicate& p) {
    Conjunction out;
    for (const auto& c : p.disjuncts) out.insert(out.end(), c.begin(), c.end());
    return out;
}

}  // namespace

RefineResult refine_attempt(const std::vector<const Constituent*>& rows, const std::vector<int>& classes,
                            Template tmpl, const MiningInput& in, const MinerOptions& opt) {
    RefineResult res;
    if (rows.empty()) return res;
    auto table = payload_table(rows, classes);
    auto [train, test] = stratified_split(classes, opt.refine_split, mix_seed(opt.seed, static_cast<int>(tmpl)));
    auto tree = cart::fit(select_rows(table, train), opt.max_depth);
    res.accuracy = cart::accuracy(tree, test.empty() ? select_rows(table, train) : select_rows(table, test));
    if (res.accuracy <= 0.5) return res;
    res.accepted = true;
    std::vector<DataPredicate> preds;
    for (auto& p : cart::paths(tree)) preds.push_back(DataPredicate::of(std::move(p.predicate)));
    for (int cls : tree.classes) {
        auto f = cart::class_formula(tree, cls);
        if (f.disjuncts.empty()) continue;
        if (opt.conjunctive_class_formula) f = DataPredicate::of(flatten(f));
        preds.push_back(std::move(f));
    }
    for (const auto& p : preds) {
        for (bool all : {true, false}) {
            Clause c = unary(tmpl, std::string(kWildcard), p, all);
            res.columns.push_back({c, in.evaluate(c, opt.eval)});
        }
    }
    return res;
}

UnaryRefineResult unary_refine(const std::map<int, UnaryCandidates>& per_log, const MiningInput& in,
                               const MinerOptions& opt) {
    UnaryRefineResult out;
    std::set<Clause> dataless;
    for (Template tmpl : {Template::Init, Template::End, Template::Exists}) {
        std::map<std::string, int> logs_with;
        for (const auto& [cls, cand] : per_log)
            for (const auto& c : cand.clauses)
                if (c.tmpl == tmpl) ++logs_with[c.a];
        bool attempt = std::any_of(logs_with.begin(), logs_with.end(), [](const auto& kv) { return kv.second >= 2; });
        bool refined = false;
        if (attempt) {
            std::vector<const Constituent*> rows;
            std::vector<int> classes;
            for (const auto& [cls, log] : in.logs()) {
                for (const auto& t : log.traces) {
                    if (t.events.empty()) continue;
                    auto take = [&](const PolyadicEvent& ev) {
                        for (const auto& c : ev.constituents) {
                            if (c.is_raw()) continue;
                            rows.push_back(&c);
                            classes.push_back(cls);
                        }
                    };
                    if (tmpl == Template::Init) take(t.events.front());
                    else if (tmpl == Template::End) take(t.events.back());
                    else for (const auto& ev : t.events) take(ev);
                }
            }
            auto r = refine_attempt(rows, classes, tmpl, in, opt);
            refined = r.accepted;
            for (auto& c : r.columns) out.refined.push_back(std::move(c));
        }
        out.refined_templates[tmpl] = refined;
        if (!refined)
            for (const auto& [cls, cand] : per_log)
                for (const auto& c : cand.clauses)
                    if (c.tmpl == tmpl) dataless.insert(c);
    }
    for (const auto& [cls, cand] : per_log)
        for (const auto& c : cand.clauses)
            if (c.tmpl == Template::Absence) dataless.insert(c);
    out.dataless.assign(dataless.begin(), dataless.end());
    return out;
}

ActivationTreeCache::Entry ActivationTreeCache::build(const std::string& a, bool skip_first) const {
    Entry e;
    std::vector<const Constituent*> rows;
    std::vector<int> classes;
    for (const auto& [cls, log] : in_.logs()) {
        for (const auto& tv : in_.views(cls))
            for (const auto& o : tv.occurrences(a)) {
                if (skip_first && o.event <= 1) continue;
                rows.push_back(o.c);
                classes.push_back(cls);
            }
    }
    if (rows.empty()) return e;
    e.empty = false;
    auto table = payload_table(rows, classes);
    e.tree = cart::fit(table, opt_.max_depth);
    e.purity = cart::purity(e.tree);
    e.paths = cart::paths(e.tree);
    auto leaves = cart::leaf_ordinals(e.tree, table);
    for (std::size_t i = 0; i < rows.size(); ++i) e.leaf[rows[i]] = leaves[i];
    return e;
}

void ActivationTreeCache::prepare(const std::vector<std::string>& labels) {
    std::vector<std::pair<std::string, bool>> todo;
    for (const auto& l : labels)
        for (bool skip : {false, true})
            if (!cache_.count({l, skip})) todo.emplace_back(l, skip);
    std::vector<Entry> built(todo.size());
    parallel_for(todo.size(), opt_.jobs, [&](std::size_t i) { built[i] = build(todo[i].first, todo[i].second); });
    for (std::size_t i = 0; i < todo.size(); ++i) cache_.emplace(todo[i], std::move(built[i]));
}

const ActivationTreeCache::Entry& ActivationTreeCache::get(const std::string& a, bool skip_first) {
    auto it = cache_.find({a, skip_first});
    if (it == cache_.end()) it = cache_.emplace(std::make_pair(a, skip_first), build(a, skip_first)).first;
    return it->second;
}

namespace {

constexpr std::array<Shorthand, 4> kRefined{Shorthand::cr, Shorthand::cp, Shorthand::p, Shorthand::r};

// Cells of c(A, pi_l, B, true) for every leaf l: a trace is violated when a
// violated activation falls in l, satisfied when some activation does.
std::vector<std::vector<signed char>> activation_cells(const EvidenceStore& store, Shorthand s, const std::string& a,
                                                       const std::string& b, std::size_t leaves,
                                                       const std::unordered_map<const Constituent*, int>& leaf_of,
                                                       const MiningInput& in) {
    std::vector<std::vector<signed char>> cells(leaves, std::vector<signed char>(in.row_count(), 0));
    for (const auto& [cls, log] : in.logs()) {
        const Evidence* ev = store.find(cls, s, a, b);
        if (!ev) continue;
        // Records of one activation are contiguous.
        const Constituent* last = nullptr;
        for (const auto& r : ev->act) {
            if (r.activation == last) continue;
            last = r.activation;
            auto& cell = cells[leaf_of.at(r.activation)][in.row_of(cls, r.trace)];
            if (cell == 0) cell = 1;
        }
        for (const auto& r : ev->viol) {
            int row = in.row_of(cls, r.trace);
            if (r.activation) {
                cells[leaf_of.at(r.activation)][row] = -1;
            } else {
                // Target without any activation label: violated whatever the
                // activation condition.
                for (auto& col : cells) col[row] = -1;
            }
        }
    }
    return cells;
}

// Cells of c(A, true, B, pi_l) for every leaf l of the target tree.
std::vector<std::vector<signed char>> target_cells(const EvidenceStore& store, Shorthand s, const std::string& a,
                                                   const std::string& b, std::size_t leaves,
                                                   const std::unordered_map<const Constituent*, int>& leaf_of,
                                                   const MiningInput& in) {
    std::vector<std::vector<signed char>> cells(leaves, std::vector<signed char>(in.row_count(), 0));
    for (const auto& [cls, log] : in.logs()) {
        const Evidence* ev = store.find(cls, s, a, b);
        if (!ev) continue;
        if (s == Shorthand::p) {
            std::set<int> with_act;
            for (const auto& r : ev->act) with_act.insert(r.trace);
            for (int t : with_act)
                for (auto& col : cells) col[in.row_of(cls, t)] = 1;
            for (const auto& r : ev->viol) cells[leaf_of.at(r.target)][in.row_of(cls, r.trace)] = -1;
            continue;
        }
        // Per activation, the leaves reached by its witnessing targets.
        std::vector<std::tuple<int, const Constituent*, int>> reach;
        reach.reserve(ev->act.size());
        for (const auto& r : ev->act) reach.emplace_back(r.trace, r.activation, r.target ? leaf_of.at(r.target) : -1);
        std::sort(reach.begin(), reach.end());
        std::vector<char> m(leaves);
        for (std::size_t i = 0; i < reach.size();) {
            const auto [trace, act, first_leaf] = reach[i];
            std::fill(m.begin(), m.end(), 0);
            for (; i < reach.size() && std::get<0>(reach[i]) == trace && std::get<1>(reach[i]) == act; ++i)
                if (std::get<2>(reach[i]) >= 0) m[std::get<2>(reach[i])] = 1;
            int row = in.row_of(cls, trace);
            for (std::size_t l = 0; l < leaves; ++l) {
                auto& cell = cells[l][row];
                if (!m[l]) cell = -1;
                else if (cell == 0) cell = 1;
            }
        }
    }
    return cells;
}

}  // namespace

BinaryRefineResult binary_refine(const std::string& a, const std::string& b, const MiningInput& in,
                                 ActivationTreeCache& trees, const MinerOptions& opt) {
    BinaryRefineResult out;
    const bool poly = in.same_taxonomy(a, b);
    for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        EvidenceStore store;
        for (const auto& [cls, log] : in.logs()) {
            collect_chains(store, cls, x, y, poly, in.views(cls), opt.eval);
            collect_respprec(store, cls, x, y, poly, in.views(cls));
        }
        for (Shorthand s : kRefined) {
            const Template tmpl = shorthand_template(s);
            const auto& entry = trees.get(x, s == Shorthand::cp);
            if (entry.empty) {
                out.dataless.push_back(binary(tmpl, x, y, poly));
                continue;
            }
            if (entry.purity > 0.5) {
                auto cells = activation_cells(store, s, x, y, entry.paths.size(), entry.leaf, in);
                for (std::size_t l = 0; l < entry.paths.size(); ++l)
                    out.refined.push_back({binary(tmpl, x, y, poly, DataPredicate::of(entry.paths[l].predicate)),
                                           std::move(cells[l])});
                continue;
            }
            // Refine by targets.
            std::vector<const Constituent*> rows;
            std::vector<int> classes;
            for (const auto& [cls, log] : in.logs()) {
                const Evidence* ev = store.find(cls, s, x, y);
                if (!ev) continue;
                std::set<const Constituent*> seen;
                auto add = [&](const EvidenceRecord& r) {
                    if (r.target && seen.insert(r.target).second) {
                        rows.push_back(r.target);
                        classes.push_back(cls);
                    }
                };
                for (const auto& r : (s == Shorthand::p ? ev->viol : ev->act)) add(r);
            }
            if (rows.empty()) {
                out.dataless.push_back(binary(tmpl, x, y, poly));
                continue;
            }
            auto table = payload_table(rows, classes);
            auto tree = cart::fit(table, opt.max_depth);
            if (cart::purity(tree) <= 0.5) {
                out.dataless.push_back(binary(tmpl, x, y, poly));
                continue;
            }
            auto paths = cart::paths(tree);
            auto leaves = cart::leaf_ordinals(tree, table);
            std::unordered_map<const Constituent*, int> leaf_of;
            for (std::size_t i = 0; i < rows.size(); ++i) leaf_of[rows[i]] = leaves[i];
            auto cells = target_cells(store, s, x, y, paths.size(), leaf_of, in);
            for (std::size_t l = 0; l < paths.size(); ++l)
                out.refined.push_back({binary(tmpl, x, y, poly, DataPredicate{}, DataPredicate::of(paths[l].predicate)),
                                       std::move(cells[l])});
        }
    }
    return out;
}

namespace {

// Keeps one column per distinct cell vector, the one with the smallest text.
class ColumnMerger {
public:
    void add(Column col) {
        ++seen_;
        std::string key(col.cells.begin(), col.cells.end());
        std::string text = col.clause.to_string();
        auto it = by_cells_.find(key);
        if (it == by_cells_.end()) {
            by_cells_.emplace(std::move(key), std::make_pair(std::move(text), std::move(col)));
        } else if (text < it->second.first) {
            it->second = {std::move(text), std::move(col)};
        }
    }

    std::size_t seen() const { return seen_; }

    std::vector<Column> take() {
        std::vector<std::pair<std::string, Column>> v;
        for (auto& [k, tc] : by_cells_) v.push_back(std::move(tc));
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<Column> out;
        for (auto& [t, c] : v) out.push_back(std::move(c));
        return out;
    }

private:
    std::unordered_map<std::string, std::pair<std::string, Column>> by_cells_;
    std::size_t seen_ = 0;
};

}  // namespace

MinedSpecification build_embedding(const std::map<int, PolyadicLog>& logs, const MinerOptions& opt) {
    if (logs.empty()) throw ValidationError("no class logs to mine");
    MinedSpecification spec;
    MiningInput in(logs);
    const auto& sigma = in.sigma();

    std::map<int, UnaryCandidates> per_log;
    for (const auto& [cls, log] : logs)
        per_log[cls] = generate_unary_clauses(frequent_itemsets(log, opt.theta, sigma), log, sigma);

    ColumnMerger merger;
    std::set<Clause> dataless;
    const bool many = logs.size() >= 2;
    if (many) {
        auto u = unary_refine(per_log, in, opt);
        for (auto& c : u.refined) merger.add(std::move(c));
        dataless.insert(u.dataless.begin(), u.dataless.end());
    } else {
        for (const auto& [cls, cand] : per_log) dataless.insert(cand.clauses.begin(), cand.clauses.end());
    }

    std::map<std::pair<std::string, std::string>, int> pair_logs;
    for (const auto& [cls, cand] : per_log)
        for (const auto& p : cand.freq_pairs) ++pair_logs[p];
    std::vector<std::pair<std::string, std::string>> refine;
    std::set<std::string> activation_labels;
    for (const auto& [p, n] : pair_logs) {
        if (n == 1) {
            bool poly = in.same_taxonomy(p.first, p.second);
            for (Template t : kBinaryTemplates) dataless.insert(binary(t, p.first, p.second, poly));
        } else if (p.first < p.second) {
            refine.push_back(p);
            activation_labels.insert(p.first);
            activation_labels.insert(p.second);
        }
    }

    ActivationTreeCache trees(in, opt);
    trees.prepare({activation_labels.begin(), activation_labels.end()});
    const std::size_t batch = 64;
    for (std::size_t lo = 0; lo < refine.size(); lo += batch) {
        std::size_t hi = std::min(refine.size(), lo + batch);
        std::vector<BinaryRefineResult> res(hi - lo);
        parallel_for(hi - lo, opt.jobs, [&](std::size_t i) {
            res[i] = binary_refine(refine[lo + i].first, refine[lo + i].second, in, trees, opt);
        });
        for (auto& r : res) {
            dataless.insert(r.dataless.begin(), r.dataless.end());
            for (auto& c : r.refined) merger.add(std::move(c));
        }
    }

    std::vector<Clause> plain(dataless.begin(), dataless.end());
    std::vector<std::vector<signed char>> cells(plain.size());
    parallel_for(plain.size(), opt.jobs, [&](std::size_t i) { cells[i] = in.evaluate(plain[i], opt.eval); });
    for (std::size_t i = 0; i < plain.size(); ++i) merger.add({plain[i], std::move(cells[i])});

    spec.candidate_columns = merger.seen();
    spec.frame.rows = in.rows();
    for (auto& c : merger.take()) {
        spec.frame.columns.push_back(std::move(c.clause));
        spec.frame.cells.push_back(std::move(c.cells));
    }
    if (spec.frame.columns.empty()) spec.warnings.push_back("empty clause set; the tree predicts the majority class");
    if (spec.frame.rows.empty()) throw ValidationError("class logs contain no traces");
    return spec;
}

MinedSpecification mine_specification(const std::map<int, PolyadicLog>& logs, const MinerOptions& opt) {
    auto spec = build_embedding(logs, opt);
    spec.tree = cart::fit(spec.frame.table(), opt.max_depth);
    return spec;
}

}  // namespace pdm
