#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pdm/declare.hpp"

namespace pdm {

enum class Shorthand { cr, cp, r, p };

std::string_view shorthand_name(Shorthand s);
Template shorthand_template(Shorthand s);

// One activation, optionally paired with a target. `activation` is null for
// the vacuous-violation records of Precedence (targets with no activation
// label anywhere in the trace).
struct EvidenceRecord {
    int trace = 0;
    const Constituent* activation = nullptr;
    const Constituent* target = nullptr;
};

struct Evidence {
    std::vector<EvidenceRecord> act;
    std::vector<EvidenceRecord> viol;
};

class EvidenceStore {
public:
    Evidence& at(int cls, Shorthand s, const std::string& a, const std::string& b);
    const Evidence* find(int cls, Shorthand s, const std::string& a, const std::string& b) const;

    // Violated if any violation record mentions the trace, Satisfied if an
    // activation does, Vacuous otherwise.
    Outcome reconstruct(int cls, Shorthand s, const std::string& a, const std::string& b, int trace) const;

private:
    std::map<std::tuple<int, Shorthand, std::string, std::string>, Evidence> data_;
};

// ChainResponse and ChainPrecedence evidence for (a, b) over one class log.
void collect_chains(EvidenceStore& store, int cls, const std::string& a, const std::string& b, bool poly,
                    const std::vector<TraceView>& log, const EvalOptions& opt = {});

// Response and Precedence evidence for (a, b) over one class log.
void collect_respprec(EvidenceStore& store, int cls, const std::string& a, const std::string& b, bool poly,
                      const std::vector<TraceView>& log);

}  // namespace pdm
