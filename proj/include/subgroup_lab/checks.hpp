#pragma once

#include <cmath>
#include <string>

#include "subgroup_lab/json_writer.hpp"

namespace sglab {

// One computed quantity tied to one bound. `asserted` records are
// explicit-constant statements (or exact identities) and must satisfy
// lhs <= rhs; diagnostic records track the slack of asymptotic bounds with
// their unknown constants replaced by 1, and never gate anything.
struct CheckRecord {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double slack = 0; // lhs / rhs
    bool asserted = false;
    bool pass = false;

    static CheckRecord make(std::string name, double lhs, double rhs, bool asserted,
                            bool pass_exact_known = false, bool pass_exact = false) {
        CheckRecord r;
        r.name = std::move(name);
        r.lhs = lhs;
        r.rhs = rhs;
        r.slack = rhs != 0 ? lhs / rhs : (lhs == 0 ? 0.0 : std::numeric_limits<double>::infinity());
        r.asserted = asserted;
        r.pass = pass_exact_known ? pass_exact : lhs <= rhs;
        return r;
    }

    void write(JsonWriter& w) const {
        w.begin_object();
        w.kv("name", name);
        w.kv("lhs", lhs);
        w.kv("rhs", rhs);
        w.kv("slack", slack);
        w.kv("asserted", asserted);
        w.kv("pass", pass);
        w.end_object();
    }
};

} // namespace sglab
