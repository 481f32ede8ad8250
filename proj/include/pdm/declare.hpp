#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "pdm/polylog.hpp"
#include "pdm/predicate.hpp"

namespace pdm {

enum class Template {
    Init,
    End,
    Exists,
    Absence,
    Choice,
    ExclChoice,
    RespExistence,
    CoExistence,
    Precedence,
    Response,
    Succession,
    ChainPrecedence,
    ChainResponse,
    ChainSuccession,
};

inline constexpr std::array<Template, 14> kAllTemplates{
    Template::Init,          Template::End,        Template::Exists,          Template::Absence,
    Template::Choice,        Template::ExclChoice, Template::RespExistence,   Template::CoExistence,
    Template::Precedence,    Template::Response,   Template::Succession,      Template::ChainPrecedence,
    Template::ChainResponse, Template::ChainSuccession,
};

// The ten binary templates probed for every frequent pair.
inline constexpr std::array<Template, 10> kBinaryTemplates{
    Template::Choice,     Template::ExclChoice, Template::RespExistence,   Template::CoExistence,
    Template::Precedence, Template::Response,   Template::Succession,      Template::ChainPrecedence,
    Template::ChainResponse, Template::ChainSuccession,
};

std::string_view template_name(Template t);
Template template_from_name(std::string_view s);
bool is_unary(Template t);
bool supports_all_variant(Template t);

// Matches every constituent except raw data.
inline constexpr std::string_view kWildcard = "*";

enum class Outcome : int { Violated = -1, Vacuous = 0, Satisfied = 1 };
std::string_view outcome_name(Outcome o);

struct Clause {
    Template tmpl = Template::Exists;
    bool all = false;
    std::string a;
    DataPredicate p;
    std::string b;  // empty for unary templates
    DataPredicate q;
    // Span-aware spacing; set when A and B share a taxonomy.
    bool poly = false;

    std::string to_string() const;
    bool operator==(const Clause&) const = default;
    auto operator<=>(const Clause&) const = default;
};

Clause unary(Template t, std::string a, DataPredicate p = {}, bool all = false);
Clause binary(Template t, std::string a, std::string b, bool poly = false, DataPredicate p = {},
              DataPredicate q = {});

nlohmann::json to_json(const Clause& c);
Clause clause_from_json(const nlohmann::json& j);

// Throws ValidationError when the clause is malformed or names a label
// outside the alphabet (taxonomy nodes plus the wildcard).
void validate_clause(const Clause& c, const std::vector<Taxonomy>& taxonomies);

bool label_matches(std::string_view clause_label, std::string_view constituent_label);

struct EvalOptions {
    // Accept any target ending at or before the activation for
    // ChainPrecedence instead of exactly adjacent ones.
    bool chain_precedence_le = false;
};

// Per-trace occurrence lists: for each label (leaf, root and wildcard) the
// matching constituents in event order.
class TraceView {
public:
    struct Occ {
        int event;  // 1-based
        const Constituent* c;
    };

    explicit TraceView(const PolyadicTrace& t);

    const PolyadicTrace& trace() const { return *trace_; }
    int length() const { return static_cast<int>(trace_->events.size()); }
    const std::vector<Occ>& occurrences(std::string_view label) const;

private:
    const PolyadicTrace* trace_;
    std::unordered_map<std::string, std::vector<Occ>> occ_;
    std::vector<Occ> empty_;
};

Outcome evaluate(const Clause& c, const TraceView& tv, const EvalOptions& opt = {});
Outcome evaluate(const Clause& c, const PolyadicTrace& t, const EvalOptions& opt = {});

// Conjunction of component outcomes: any violation wins, vacuous only when
// every component is vacuous.
Outcome combine(Outcome x, Outcome y);

// Naive reference semantics: straight quantifier expansion over the events,
// no occurrence lists and no early exits.
Outcome oracle_evaluate(const Clause& c, const PolyadicTrace& t, const EvalOptions& opt = {});

}  // namespace pdm
