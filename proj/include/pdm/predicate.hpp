#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pdm/polylog.hpp"

namespace pdm {

enum class Op { Le, Gt, Eq, Ne };

// One comparison against a kappa-expanded payload. Eq/Ne compare strings
// (only meaningful for __label); Le/Gt compare numbers.
struct Atom {
    std::string key;
    Op op = Op::Le;
    double value = 0.0;
    std::string text;

    bool holds(const Constituent& c) const;
    bool operator==(const Atom&) const = default;
    auto operator<=>(const Atom&) const = default;
};

using Conjunction = std::vector<Atom>;

// Disjunction of conjunctions. A single empty conjunction is TRUE, no
// disjuncts at all is FALSE.
struct DataPredicate {
    std::vector<Conjunction> disjuncts{Conjunction{}};

    static DataPredicate truth() { return {}; }
    static DataPredicate falsity() { return DataPredicate{std::vector<Conjunction>{}}; }
    static DataPredicate of(Conjunction c) { return DataPredicate{{std::move(c)}}; }

    bool is_true() const;
    bool holds(const Constituent& c) const;
    std::string to_string() const;
    bool operator==(const DataPredicate&) const = default;
    auto operator<=>(const DataPredicate&) const = default;
};

std::string format_number(double v);

nlohmann::json to_json(const DataPredicate& p);
DataPredicate predicate_from_json(const nlohmann::json& j);

}  // namespace pdm
