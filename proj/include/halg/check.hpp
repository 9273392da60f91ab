#pragma once

#include <string>
#include <vector>

namespace halg {

// Uniform result type for structural validators.  Witness strings name the
// offending basis elements / indices so failures are reproducible.
struct CheckItem {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct CheckReport {
    std::vector<CheckItem> items;

    bool pass() const {
        for (const auto& it : items)
            if (!it.pass) return false;
        return true;
    }
    void add(const std::string& name, bool ok, const std::string& witness = "") {
        items.push_back({name, ok, ok ? "" : witness});
    }
    void merge(const CheckReport& other, const std::string& prefix = "") {
        for (const auto& it : other.items) items.push_back({prefix + it.name, it.pass, it.witness});
    }
    std::string first_failure() const {
        for (const auto& it : items)
            if (!it.pass) return it.name + (it.witness.empty() ? "" : ": " + it.witness);
        return "";
    }
};

}  // namespace halg
