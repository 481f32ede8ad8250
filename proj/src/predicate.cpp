#include "pdm/predicate.hpp"

#include <fmt/format.h>

#include "pdm/common.hpp"

namespace pdm {

bool Atom::holds(const Constituent& c) const {
    if (key == kLabelKey) {
        if (op == Op::Eq) return c.label == text;
        if (op == Op::Ne) return c.label != text;
        return false;
    }
    double x;
    if (key == kSpanKey) {
        x = c.span;
    } else {
        auto v = c.payload.get(key);
        if (!v) return false;
        x = *v;
    }
    switch (op) {
        case Op::Le: return x <= value;
        case Op::Gt: return x > value;
        case Op::Eq: return x == value;
        case Op::Ne: return x != value;
    }
    return false;
}

bool DataPredicate::is_true() const {
    for (const auto& c : disjuncts)
        if (c.empty()) return true;
    return false;
}

bool DataPredicate::holds(const Constituent& c) const {
    for (const auto& conj : disjuncts) {
        bool ok = true;
        for (const auto& a : conj)
            if (!a.holds(c)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

std::string format_number(double v) { return fmt::format("{}", v); }

namespace {

std::string atom_text(const Atom& a) {
    switch (a.op) {
        case Op::Le: return fmt::format("{} ≤ {}", a.key, format_number(a.value));
        case Op::Gt: return fmt::format("{} > {}", a.key, format_number(a.value));
        case Op::Eq: return fmt::format("{} = {}", a.key, a.key == kLabelKey ? a.text : format_number(a.value));
        case Op::Ne: return fmt::format("{} ≠ {}", a.key, a.key == kLabelKey ? a.text : format_number(a.value));
    }
    return {};
}

const char* op_name(Op op) {
    switch (op) {
        case Op::Le: return "<=";
        case Op::Gt: return ">";
        case Op::Eq: return "==";
        case Op::Ne: return "!=";
    }
    return "?";
}

Op op_from_name(const std::string& s) {
    if (s == "<=") return Op::Le;
    if (s == ">") return Op::Gt;
    if (s == "==") return Op::Eq;
    if (s == "!=") return Op::Ne;
    throw ParseError(fmt::format("unknown comparison '{}'", s));
}

}  // namespace

std::string DataPredicate::to_string() const {
    if (is_true()) return "true";
    if (disjuncts.empty()) return "false";
    std::string out;
    for (std::size_t i = 0; i < disjuncts.size(); ++i) {
        if (i) out += " ∨ ";
        const auto& conj = disjuncts[i];
        bool paren = disjuncts.size() > 1 && conj.size() > 1;
        if (paren) out += "(";
        for (std::size_t k = 0; k < conj.size(); ++k) {
            if (k) out += " ∧ ";
            out += atom_text(conj[k]);
        }
        if (paren) out += ")";
    }
    return out;
}

nlohmann::json to_json(const DataPredicate& p) {
    auto j = nlohmann::json::array();
    for (const auto& conj : p.disjuncts) {
        auto jc = nlohmann::json::array();
        for (const auto& a : conj) {
            nlohmann::json ja{{"key", a.key}, {"op", op_name(a.op)}};
            if (a.key == kLabelKey)
                ja["text"] = a.text;
            else
                ja["value"] = a.value;
            jc.push_back(std::move(ja));
        }
        j.push_back(std::move(jc));
    }
    return j;
}

DataPredicate predicate_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("predicate: expected an array of conjunctions");
    DataPredicate p = DataPredicate::falsity();
    for (const auto& jc : j) {
        if (!jc.is_array()) throw ParseError("predicate: expected an array of atoms");
        Conjunction c;
        for (const auto& ja : jc) {
            Atom a;
            a.key = ja.at("key").get<std::string>();
            a.op = op_from_name(ja.at("op").get<std::string>());
            if (ja.contains("text")) a.text = ja["text"].get<std::string>();
            if (ja.contains("value")) a.value = ja["value"].get<double>();
            c.push_back(std::move(a));
        }
        p.disjuncts.push_back(std::move(c));
    }
    return p;
}

}  // namespace pdm
