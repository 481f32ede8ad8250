#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <string>
#include <utility>
#include <vector>

#include "pdm/cart.hpp"
#include "pdm/declare.hpp"
#include "pdm/evidence.hpp"

namespace pdm {

struct MinerOptions {
    double theta = 0.0;
    int max_depth = cart::kDefaultMaxDepth;
    double refine_split = 0.7;
    std::uint64_t seed = 0;
    int jobs = 1;
    // Read the per-class formula of unary refinement as the conjunction of
    // its paths instead of their disjunction.
    bool conjunctive_class_formula = false;
    EvalOptions eval;
};

// Every taxonomy node (roots and leaves), sorted.
std::vector<std::string> alphabet(const std::vector<Taxonomy>& taxonomies);

using Itemset = std::vector<std::string>;  // one or two sorted labels

// Trace support of every 1- and 2-itemset over `sigma` that occurs at least
// once and reaches theta.
std::map<Itemset, double> frequent_itemsets(const PolyadicLog& log, double theta,
                                            const std::vector<std::string>& sigma);

struct UnaryCandidates {
    std::set<std::pair<std::string, std::string>> freq_pairs;  // both orders
    std::vector<Clause> clauses;                               // sorted by text
};

UnaryCandidates generate_unary_clauses(const std::map<Itemset, double>& itemsets, const PolyadicLog& log,
                                       const std::vector<std::string>& sigma);

struct FrameRow {
    int cls = 0;
    std::string trace_id;
};

// Trace x clause matrix over {-1, 0, +1}, stored by column.
struct EmbeddingFrame {
    std::vector<FrameRow> rows;
    std::vector<Clause> columns;
    std::vector<std::vector<signed char>> cells;

    std::vector<int> classes() const;
    cart::TernaryTable table() const;
    std::string to_csv() const;
};

struct Column {
    Clause clause;
    std::vector<signed char> cells;
};

signed char outcome_cell(Outcome o);

enum class Mark { Sat, Viol, Vac };
signed char fill_in_dataframe(const std::set<Mark>& marks);

// The class-segmented logs the miner works on, with views for evaluation.
// Frame rows enumerate classes in ascending order, traces in log order.
class MiningInput {
public:
    explicit MiningInput(const std::map<int, PolyadicLog>& logs);

    const std::map<int, PolyadicLog>& logs() const { return *logs_; }
    const std::vector<TraceView>& views(int cls) const { return views_.at(cls); }
    const std::vector<std::string>& sigma() const { return sigma_; }
    const std::vector<Taxonomy>& taxonomies() const { return taxonomies_; }
    std::vector<FrameRow> rows() const;
    std::size_t row_count() const { return row_count_; }
    int row_of(int cls, int trace) const { return offset_.at(cls) + trace; }
    bool same_taxonomy(const std::string& a, const std::string& b) const;

    // One cell per frame row.
    std::vector<signed char> evaluate(const Clause& c, const EvalOptions& opt) const;

private:
    const std::map<int, PolyadicLog>* logs_;
    std::map<int, std::vector<TraceView>> views_;
    std::vector<std::string> sigma_;
    std::vector<Taxonomy> taxonomies_;
    std::map<int, int> offset_;
    std::size_t row_count_ = 0;
};

// Payload rows for the refinement trees: every payload key plus __span as
// numbers, and __label as the categorical column.
cart::Table payload_table(const std::vector<const Constituent*>& cs, const std::vector<int>& classes);

struct RefineResult {
    bool accepted = false;
    double accuracy = 0.0;
    std::vector<Column> columns;
};

// Fits a tree on (payload, class) rows split train/test; on held-out
// accuracy above one half, writes the All and some variants of `tmpl` over
// the wildcard label for every path and every per-class formula.
RefineResult refine_attempt(const std::vector<const Constituent*>& rows, const std::vector<int>& classes,
                            Template tmpl, const MiningInput& in, const MinerOptions& opt);

struct UnaryRefineResult {
    std::vector<Clause> dataless;
    std::vector<Column> refined;
    std::map<Template, bool> refined_templates;
};

UnaryRefineResult unary_refine(const std::map<int, UnaryCandidates>& per_log, const MiningInput& in,
                               const MinerOptions& opt);

// Refinement trees depend only on the activation label (and on whether
// first-event activations count), so they are shared across pairs.
class ActivationTreeCache {
public:
    struct Entry {
        bool empty = true;
        cart::Tree tree;
        double purity = 0.0;
        std::vector<cart::DecisionPath> paths;
        std::unordered_map<const Constituent*, int> leaf;
    };

    ActivationTreeCache(const MiningInput& in, const MinerOptions& opt) : in_(in), opt_(opt) {}
    const Entry& get(const std::string& a, bool skip_first);
    void prepare(const std::vector<std::string>& labels);

private:
    Entry build(const std::string& a, bool skip_first) const;

    const MiningInput& in_;
    const MinerOptions& opt_;
    std::map<std::pair<std::string, bool>, Entry> cache_;
};

struct BinaryRefineResult {
    std::vector<Clause> dataless;
    std::vector<Column> refined;
};

BinaryRefineResult binary_refine(const std::string& a, const std::string& b, const MiningInput& in,
                                 ActivationTreeCache& trees, const MinerOptions& opt);

struct MinedSpecification {
    EmbeddingFrame frame;  // columns are the clause set
    cart::Tree tree;
    std::vector<std::string> warnings;
    std::size_t candidate_columns = 0;  // before merging identical columns
};

// Everything but the final tree.
MinedSpecification build_embedding(const std::map<int, PolyadicLog>& logs, const MinerOptions& opt);
MinedSpecification mine_specification(const std::map<int, PolyadicLog>& logs, const MinerOptions& opt);

}  // namespace pdm
