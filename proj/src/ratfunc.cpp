#include "vir/ratfunc.hpp"

namespace vir {

const Ring& scalar_ring() {
    static Ring ring = VarSet::make({"z", "m2", "m3", "m4", "theta", "t"});
    return ring;
}

const TermOrder& scalar_order() {
    static TermOrder ord =
        TermOrder::lex_names(*scalar_ring(), {"t", "theta", "m4", "m3", "m2", "z"});
    return ord;
}

namespace {

// a denominator can be printed without parentheses only when it is a single
// factor under the element grammar: a constant or one variable power
bool den_needs_parens(const Poly& den) {
    if (den.is_constant()) return false;
    if (den.term_count() != 1) return true;
    const auto& [e, c] = *den.terms().begin();
    if (!c.is_one()) return true;
    int used = 0;
    for (auto x : e)
        if (x > 0) ++used;
    return used != 1;
}

} // namespace

std::string RatFunc::to_string() const {
    if (num_.is_zero()) return "0";
    std::string n = num_.to_string(scalar_order());
    if (den_.is_one()) return n;
    if (num_.term_count() > 1) n = "(" + n + ")";
    std::string d = den_.to_string(scalar_order());
    if (den_needs_parens(den_)) d = "(" + d + ")";
    return n + "/" + d;
}

} // namespace vir
