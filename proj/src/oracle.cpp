#include "pdm/declare.hpp"

namespace pdm {

namespace {

struct Ref {
    int j;
    const Constituent* c;
};

std::vector<Ref> all_refs(const PolyadicTrace& t) {
    std::vector<Ref> out;
    for (std::size_t j = 0; j < t.events.size(); ++j)
        for (const auto& c : t.events[j].constituents) out.push_back({static_cast<int>(j) + 1, &c});
    return out;
}

bool is(const Ref& r, const std::string& label) { return label_matches(label, r.c->label); }
bool is(const Ref& r, const std::string& label, const DataPredicate& p) { return is(r, label) && p.holds(*r.c); }

Outcome from(bool any_act, bool any_viol) {
    if (any_viol) return Outcome::Violated;
    return any_act ? Outcome::Satisfied : Outcome::Vacuous;
}

bool event_ok(const PolyadicTrace& t, int j, const std::string& l, const DataPredicate& p, bool all) {
    bool some = false, every = true, seen = false;
    for (const auto& c : t.events[j - 1].constituents) {
        if (!label_matches(l, c.label)) continue;
        seen = true;
        if (p.holds(c)) some = true;
        else every = false;
    }
    return all ? (seen && every) : some;
}

bool any(const std::vector<Ref>& rs, const std::string& l, const DataPredicate& p) {
    bool r = false;
    for (const auto& x : rs) r = r || is(x, l, p);
    return r;
}

Outcome resp_ex(const std::vector<Ref>& rs, const std::string& a, const DataPredicate& p, const std::string& b,
                const DataPredicate& q) {
    bool act = false, viol = false;
    for (const auto& x : rs) {
        if (!is(x, a, p)) continue;
        act = true;
        bool found = false;
        for (const auto& y : rs)
            if (y.c != x.c && is(y, b, q)) found = true;
        if (!found) viol = true;
    }
    return from(act, viol);
}

Outcome prec(const std::vector<Ref>& rs, const std::string& a, const DataPredicate& p, const std::string& b,
             const DataPredicate& q) {
    bool labelled = false;
    for (const auto& x : rs) labelled = labelled || is(x, a);
    if (!labelled) return any(rs, b, q) ? Outcome::Violated : Outcome::Vacuous;
    bool act = false, viol = false;
    for (const auto& x : rs) {
        if (!is(x, a, p)) continue;
        act = true;
        for (const auto& y : rs)
            if (y.c != x.c && is(y, b, q) && y.j <= x.j) viol = true;
    }
    return from(act, viol);
}

Outcome resp(const std::vector<Ref>& rs, const Clause& c, bool chain) {
    bool act = false, viol = false;
    for (const auto& x : rs) {
        if (!is(x, c.a, c.p)) continue;
        act = true;
        int d = c.poly ? x.c->span : 1;
        bool found = false;
        for (const auto& y : rs) {
            if (!is(y, c.b, c.q)) continue;
            if (chain ? y.j == x.j + d : y.j >= x.j + d) found = true;
        }
        if (!found) viol = true;
    }
    return from(act, viol);
}

Outcome chain_prec(const std::vector<Ref>& rs, const std::string& a, const DataPredicate& p,
                   const std::string& b, const DataPredicate& q, bool poly, bool le) {
    bool act = false, viol = false;
    for (const auto& x : rs) {
        if (x.j <= 1 || !is(x, a, p)) continue;
        act = true;
        bool found = false;
        for (const auto& y : rs) {
            if (!is(y, b, q)) continue;
            int e = y.j + (poly ? y.c->span : 1);
            if (le ? e <= x.j : e == x.j) found = true;
        }
        if (!found) viol = true;
    }
    return from(act, viol);
}

}  // namespace

Outcome oracle_evaluate(const Clause& c, const PolyadicTrace& t, const EvalOptions& opt) {
    auto rs = all_refs(t);
    int n = static_cast<int>(t.events.size());
    auto s = [](bool b) { return b ? Outcome::Satisfied : Outcome::Violated; };
    switch (c.tmpl) {
        case Template::Init:
            return s(n > 0 && event_ok(t, 1, c.a, c.p, c.all));
        case Template::End:
            return s(n > 0 && event_ok(t, n, c.a, c.p, c.all));
        case Template::Exists: {
            bool m = false, labelled = false;
            for (int j = 1; j <= n; ++j) m = m || event_ok(t, j, c.a, c.p, c.all);
            for (const auto& x : rs) labelled = labelled || is(x, c.a);
            if (m) return Outcome::Satisfied;
            return (!c.p.is_true() && !labelled) ? Outcome::Vacuous : Outcome::Violated;
        }
        case Template::Absence:
            return s(!any(rs, c.a, c.p));
        case Template::Choice:
            return s(any(rs, c.a, c.p) || any(rs, c.b, c.q));
        case Template::ExclChoice:
            return s(any(rs, c.a, c.p) != any(rs, c.b, c.q));
        case Template::RespExistence:
            return resp_ex(rs, c.a, c.p, c.b, c.q);
        case Template::CoExistence:
            return combine(resp_ex(rs, c.a, c.p, c.b, c.q), resp_ex(rs, c.b, c.q, c.a, c.p));
        case Template::Precedence:
            return prec(rs, c.a, c.p, c.b, c.q);
        case Template::Response:
            return resp(rs, c, false);
        case Template::Succession:
            return combine(prec(rs, c.a, c.p, c.b, c.q), resp(rs, c, false));
        case Template::ChainPrecedence:
            return chain_prec(rs, c.a, c.p, c.b, c.q, c.poly, opt.chain_precedence_le);
        case Template::ChainResponse:
            return resp(rs, c, true);
        case Template::ChainSuccession:
            return combine(chain_prec(rs, c.b, c.q, c.a, c.p, c.poly, opt.chain_precedence_le),
                           resp(rs, c, true));
    }
    return Outcome::Vacuous;
}

}  // namespace pdm
