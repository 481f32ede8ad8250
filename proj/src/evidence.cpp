#include "pdm/evidence.hpp"

#include <algorithm>

namespace pdm {

std::string_view shorthand_name(Shorthand s) {
    switch (s) {
        case Shorthand::cr: return "cr";
        case Shorthand::cp: return "cp";
        case Shorthand::r: return "r";
        case Shorthand::p: return "p";
    }
    return "?";
}

Template shorthand_template(Shorthand s) {
    switch (s) {
        case Shorthand::cr: return Template::ChainResponse;
        case Shorthand::cp: return Template::ChainPrecedence;
        case Shorthand::r: return Template::Response;
        case Shorthand::p: return Template::Precedence;
    }
    return Template::Response;
}

Evidence& EvidenceStore::at(int cls, Shorthand s, const std::string& a, const std::string& b) {
    return data_[{cls, s, a, b}];
}

const Evidence* EvidenceStore::find(int cls, Shorthand s, const std::string& a, const std::string& b) const {
    auto it = data_.find({cls, s, a, b});
    return it == data_.end() ? nullptr : &it->second;
}

Outcome EvidenceStore::reconstruct(int cls, Shorthand s, const std::string& a, const std::string& b,
                                   int trace) const {
    const Evidence* e = find(cls, s, a, b);
    if (!e) return Outcome::Vacuous;
    auto hit = [&](const std::vector<EvidenceRecord>& v) {
        return std::any_of(v.begin(), v.end(), [&](const EvidenceRecord& r) { return r.trace == trace; });
    };
    if (hit(e->viol)) return Outcome::Violated;
    if (hit(e->act)) return Outcome::Satisfied;
    return Outcome::Vacuous;
}

void collect_chains(EvidenceStore& store, int cls, const std::string& a, const std::string& b, bool poly,
                    const std::vector<TraceView>& log, const EvalOptions& opt) {
    Evidence& cr = store.at(cls, Shorthand::cr, a, b);
    Evidence& cp = store.at(cls, Shorthand::cp, a, b);
    for (std::size_t i = 0; i < log.size(); ++i) {
        const auto& tv = log[i];
        int ti = static_cast<int>(i);
        const auto& as = tv.occurrences(a);
        if (as.empty()) continue;
        const auto& bs = tv.occurrences(b);
        for (const auto& x : as) {
            int want = x.event + (poly ? x.c->span : 1);
            bool found = false;
            for (const auto& y : bs) {
                if (y.event != want) continue;
                found = true;
                cr.act.push_back({ti, x.c, y.c});
            }
            if (!found) {
                cr.act.push_back({ti, x.c, nullptr});
                cr.viol.push_back({ti, x.c, nullptr});
            }
            if (x.event <= 1) continue;
            found = false;
            for (const auto& y : bs) {
                int e = y.event + (poly ? y.c->span : 1);
                if (opt.chain_precedence_le ? e > x.event : e != x.event) continue;
                found = true;
                cp.act.push_back({ti, x.c, y.c});
            }
            if (!found) {
                cp.act.push_back({ti, x.c, nullptr});
                cp.viol.push_back({ti, x.c, nullptr});
            }
        }
    }
}

void collect_respprec(EvidenceStore& store, int cls, const std::string& a, const std::string& b, bool poly,
                      const std::vector<TraceView>& log) {
    Evidence& r = store.at(cls, Shorthand::r, a, b);
    Evidence& p = store.at(cls, Shorthand::p, a, b);
    for (std::size_t i = 0; i < log.size(); ++i) {
        const auto& tv = log[i];
        int ti = static_cast<int>(i);
        const auto& as = tv.occurrences(a);
        const auto& bs = tv.occurrences(b);
        if (as.empty()) {
            // Only Bs: Precedence(a, b) is violated without being activated.
            for (const auto& y : bs) p.viol.push_back({ti, nullptr, y.c});
            continue;
        }
        for (const auto& x : as) {
            int want = x.event + (poly ? x.c->span : 1);
            bool found = false;
            for (const auto& y : bs) {
                if (y.event < want) continue;
                found = true;
                r.act.push_back({ti, x.c, y.c});
            }
            if (!found) {
                r.act.push_back({ti, x.c, nullptr});
                r.viol.push_back({ti, x.c, nullptr});
            }
            // A target before or together with the activation violates it.
            p.act.push_back({ti, x.c, nullptr});
            for (const auto& y : bs) {
                if (y.event > x.event) break;
                if (y.c == x.c) continue;
                p.viol.push_back({ti, x.c, y.c});
            }
        }
    }
}

}  // namespace pdm
