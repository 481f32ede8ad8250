#include "pdm/declare.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "pdm/common.hpp"

namespace pdm {

namespace {

constexpr std::array<std::string_view, 14> kNames{
    "Init",       "End",      "Exists",     "Absence",         "Choice",
    "ExclChoice", "RespExistence", "CoExistence", "Precedence", "Response",
    "Succession", "ChainPrecedence", "ChainResponse", "ChainSuccession",
};

}  // namespace

std::string_view template_name(Template t) { return kNames[static_cast<int>(t)]; }

Template template_from_name(std::string_view s) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == s) return static_cast<Template>(i);
    throw ValidationError(fmt::format("unknown template '{}'", s));
}

bool is_unary(Template t) {
    return t == Template::Init || t == Template::End || t == Template::Exists || t == Template::Absence;
}

bool supports_all_variant(Template t) {
    return t == Template::Init || t == Template::End || t == Template::Exists;
}

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Violated: return "violated";
        case Outcome::Vacuous: return "vacuous";
        case Outcome::Satisfied: return "satisfied";
    }
    return "?";
}

std::string Clause::to_string() const {
    std::string name = (all ? "All" : "") + std::string(template_name(tmpl));
    if (is_unary(tmpl)) {
        if (p.is_true()) return fmt::format("{}({})", name, a);
        return fmt::format("{}({}, {})", name, a, p.to_string());
    }
    if (p.is_true() && q.is_true()) return fmt::format("{}({}, {})", name, a, b);
    return fmt::format("{}({}, {}, {}, {})", name, a, p.to_string(), b, q.to_string());
}

Clause unary(Template t, std::string a, DataPredicate p, bool all) {
    Clause c;
    c.tmpl = t;
    c.all = all;
    c.a = std::move(a);
    c.p = std::move(p);
    return c;
}

Clause binary(Template t, std::string a, std::string b, bool poly, DataPredicate p, DataPredicate q) {
    Clause c;
    c.tmpl = t;
    c.a = std::move(a);
    c.b = std::move(b);
    c.p = std::move(p);
    c.q = std::move(q);
    c.poly = poly;
    return c;
}

nlohmann::json to_json(const Clause& c) {
    nlohmann::json j;
    j["template"] = std::string(template_name(c.tmpl));
    j["all"] = c.all;
    j["a"] = c.a;
    j["p"] = to_json(c.p);
    if (!is_unary(c.tmpl)) {
        j["b"] = c.b;
        j["q"] = to_json(c.q);
        j["poly"] = c.poly;
    }
    j["text"] = c.to_string();
    return j;
}

Clause clause_from_json(const nlohmann::json& j) {
    try {
        Clause c;
        c.tmpl = template_from_name(j.at("template").get<std::string>());
        c.all = j.value("all", false);
        c.a = j.at("a").get<std::string>();
        if (j.contains("p")) c.p = predicate_from_json(j.at("p"));
        if (!is_unary(c.tmpl)) {
            c.b = j.at("b").get<std::string>();
            if (j.contains("q")) c.q = predicate_from_json(j.at("q"));
            c.poly = j.value("poly", false);
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(fmt::format("bad clause: {}", e.what()));
    }
}

void validate_clause(const Clause& c, const std::vector<Taxonomy>& taxonomies) {
    auto known = [&](const std::string& l) {
        if (l == kWildcard) return true;
        for (const auto& t : taxonomies) {
            if (t.root == l) return true;
            if (std::binary_search(t.leaves.begin(), t.leaves.end(), l)) return true;
        }
        return false;
    };
    if (c.all && !supports_all_variant(c.tmpl))
        throw ValidationError(fmt::format("{} has no All variant", template_name(c.tmpl)));
    if (is_unary(c.tmpl) && !c.b.empty())
        throw ValidationError(fmt::format("unary clause {} carries a target", c.to_string()));
    if (!is_unary(c.tmpl) && c.b.empty())
        throw ValidationError(fmt::format("binary clause {} lacks a target", c.to_string()));
    if (!known(c.a)) throw ValidationError(fmt::format("unknown label '{}'", c.a));
    if (!c.b.empty() && !known(c.b)) throw ValidationError(fmt::format("unknown label '{}'", c.b));
}

bool label_matches(std::string_view clause_label, std::string_view constituent_label) {
    if (constituent_label == kRawLabel) return clause_label == kRawLabel;
    if (clause_label == kWildcard) return true;
    if (clause_label == constituent_label) return true;
    return label_root(constituent_label) == clause_label;
}

Outcome combine(Outcome x, Outcome y) {
    if (x == Outcome::Violated || y == Outcome::Violated) return Outcome::Violated;
    if (x == Outcome::Vacuous && y == Outcome::Vacuous) return Outcome::Vacuous;
    return Outcome::Satisfied;
}

TraceView::TraceView(const PolyadicTrace& t) : trace_(&t) {
    for (std::size_t j = 0; j < t.events.size(); ++j) {
        for (const auto& c : t.events[j].constituents) {
            Occ o{static_cast<int>(j) + 1, &c};
            occ_[c.label].push_back(o);
            if (c.is_raw()) continue;
            occ_[std::string(kWildcard)].push_back(o);
            auto root = label_root(c.label);
            if (!root.empty() && root != c.label) occ_[root].push_back(o);
        }
    }
}

const std::vector<TraceView::Occ>& TraceView::occurrences(std::string_view label) const {
    auto it = occ_.find(std::string(label));
    return it == occ_.end() ? empty_ : it->second;
}

namespace {

using Occ = TraceView::Occ;

std::vector<Occ> filter(const std::vector<Occ>& occ, const DataPredicate& p) {
    if (p.is_true()) return occ;
    std::vector<Occ> out;
    for (const auto& o : occ)
        if (p.holds(*o.c)) out.push_back(o);
    return out;
}

Outcome sat(bool b) { return b ? Outcome::Satisfied : Outcome::Violated; }

// Does event j match (L, p)? occ is sorted by event.
bool event_matches(const std::vector<Occ>& occ, int j, const DataPredicate& p, bool all) {
    auto lo = std::lower_bound(occ.begin(), occ.end(), j, [](const Occ& o, int v) { return o.event < v; });
    bool any = false, every = true;
    for (auto it = lo; it != occ.end() && it->event == j; ++it) {
        bool h = p.holds(*it->c);
        any = any || h;
        every = every && h;
        if (!all && any) return true;
        if (all && !every) return false;
    }
    if (all) return lo != occ.end() && lo->event == j;
    return false;
}

int step(const Clause& c, const Constituent& x) { return c.poly ? x.span : 1; }

Outcome response(const Clause& c, const TraceView& tv, bool chain) {
    auto acts = filter(tv.occurrences(c.a), c.p);
    if (acts.empty()) return Outcome::Vacuous;
    auto targets = filter(tv.occurrences(c.b), c.q);
    int n = tv.length();
    std::vector<char> at(n + 2, 0);
    int last = 0;
    for (const auto& t : targets) {
        at[t.event] = 1;
        last = std::max(last, t.event);
    }
    for (const auto& a : acts) {
        int want = a.event + step(c, *a.c);
        bool ok = chain ? (want <= n && at[want]) : last >= want;
        if (!ok) return Outcome::Violated;
    }
    return Outcome::Satisfied;
}

// Activations on (a, p), targets on (b, q).
Outcome chain_precedence(const std::string& a, const DataPredicate& p, const std::string& b,
                         const DataPredicate& q, bool poly, const TraceView& tv, bool le) {
    std::vector<Occ> acts;
    for (const auto& o : filter(tv.occurrences(a), p))
        if (o.event > 1) acts.push_back(o);
    if (acts.empty()) return Outcome::Vacuous;
    int n = tv.length();
    std::vector<char> ends(n + 2, 0);
    int first_end = std::numeric_limits<int>::max();
    for (const auto& t : filter(tv.occurrences(b), q)) {
        int e = t.event + (poly ? t.c->span : 1);
        if (e <= n) ends[e] = 1;
        first_end = std::min(first_end, e);
    }
    for (const auto& o : acts) {
        bool ok = le ? first_end <= o.event : ends[o.event] != 0;
        if (!ok) return Outcome::Violated;
    }
    return Outcome::Satisfied;
}

Outcome precedence(const std::string& a, const DataPredicate& p, const std::string& b, const DataPredicate& q,
                   const TraceView& tv) {
    const auto& labelled = tv.occurrences(a);
    auto targets = filter(tv.occurrences(b), q);
    if (labelled.empty()) return targets.empty() ? Outcome::Vacuous : Outcome::Violated;
    auto acts = filter(labelled, p);
    if (acts.empty()) return Outcome::Vacuous;
    for (const auto& o : acts) {
        for (const auto& t : targets) {
            if (t.event > o.event) break;
            if (t.c != o.c) return Outcome::Violated;
        }
    }
    return Outcome::Satisfied;
}

Outcome resp_existence(const std::string& a, const DataPredicate& p, const std::string& b,
                       const DataPredicate& q, const TraceView& tv) {
    auto acts = filter(tv.occurrences(a), p);
    if (acts.empty()) return Outcome::Vacuous;
    auto targets = filter(tv.occurrences(b), q);
    for (const auto& o : acts) {
        bool ok = false;
        for (const auto& t : targets)
            if (t.c != o.c) {
                ok = true;
                break;
            }
        if (!ok) return Outcome::Violated;
    }
    return Outcome::Satisfied;
}

bool exists_match(const std::vector<Occ>& occ, const DataPredicate& p) {
    if (p.is_true()) return !occ.empty();
    for (const auto& o : occ)
        if (p.holds(*o.c)) return true;
    return false;
}

bool exists_all_match(const std::vector<Occ>& occ, const DataPredicate& p) {
    for (std::size_t i = 0; i < occ.size();) {
        std::size_t k = i;
        bool every = true;
        for (; k < occ.size() && occ[k].event == occ[i].event; ++k) every = every && p.holds(*occ[k].c);
        if (every) return true;
        i = k;
    }
    return false;
}

}  // namespace

Outcome evaluate(const Clause& c, const TraceView& tv, const EvalOptions& opt) {
    const auto& occ_a = tv.occurrences(c.a);
    int n = tv.length();
    switch (c.tmpl) {
        case Template::Init:
            return sat(n > 0 && event_matches(occ_a, 1, c.p, c.all));
        case Template::End:
            return sat(n > 0 && event_matches(occ_a, n, c.p, c.all));
        case Template::Exists: {
            bool m = c.all ? exists_all_match(occ_a, c.p) : exists_match(occ_a, c.p);
            if (m) return Outcome::Satisfied;
            if (!c.p.is_true() && occ_a.empty()) return Outcome::Vacuous;
            return Outcome::Violated;
        }
        case Template::Absence:
            return sat(!exists_match(occ_a, c.p));
        case Template::Choice:
            return sat(exists_match(occ_a, c.p) || exists_match(tv.occurrences(c.b), c.q));
        case Template::ExclChoice:
            return sat(exists_match(occ_a, c.p) != exists_match(tv.occurrences(c.b), c.q));
        case Template::RespExistence:
            return resp_existence(c.a, c.p, c.b, c.q, tv);
        case Template::CoExistence:
            return combine(resp_existence(c.a, c.p, c.b, c.q, tv), resp_existence(c.b, c.q, c.a, c.p, tv));
        case Template::Precedence:
            return precedence(c.a, c.p, c.b, c.q, tv);
        case Template::Response:
            return response(c, tv, false);
        case Template::Succession:
            return combine(precedence(c.a, c.p, c.b, c.q, tv), response(c, tv, false));
        case Template::ChainPrecedence:
            return chain_precedence(c.a, c.p, c.b, c.q, c.poly, tv, opt.chain_precedence_le);
        case Template::ChainResponse:
            return response(c, tv, true);
        case Template::ChainSuccession:
            return combine(chain_precedence(c.b, c.q, c.a, c.p, c.poly, tv, opt.chain_precedence_le),
                           response(c, tv, true));
    }
    return Outcome::Vacuous;
}

Outcome evaluate(const Clause& c, const PolyadicTrace& t, const EvalOptions& opt) {
    return evaluate(c, TraceView(t), opt);
}

}  // namespace pdm
