/*
 * report.hpp
 * ----------
 * Pass/fail reports for axiom-diagram checkers.  Each entry is one
 * commuting diagram, identified by a stable id; failures carry the
 * offending generator together with the two normal forms.
 */
#pragma once

#include "tancat/morphism.hpp"

namespace tancat {

struct AxiomCheck {
    std::string id;
    bool pass = false;
    std::string witness;  // "<var>: <lhs> vs <rhs>" on failure, empty on pass
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::vector<std::string> failing_ids() const {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (!c.pass) out.push_back(c.id);
        return out;
    }
    const AxiomCheck* find(const std::string& id) const {
        for (const auto& c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }

    // Evaluate one diagram: lhs and rhs must be parallel morphisms.
    void record(const std::string& id, const RingMorphism& lhs, const RingMorphism& rhs) {
        auto diffs = morphism_differences(lhs, rhs);
        if (diffs.empty()) {
            checks.push_back({id, true, ""});
        } else {
            const auto& d = diffs.front();
            checks.push_back(
                {id, false, d.var + ": " + d.lhs.to_string() + " vs " + d.rhs.to_string()});
        }
    }
};

}  // namespace tancat
