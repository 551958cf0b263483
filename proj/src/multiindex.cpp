#include "vir/multiindex.hpp"

#include <sstream>

namespace vir {

int compare(const MultiIndex& a, const MultiIndex& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight() ? -1 : 1;
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    // weights and degrees stay equal while stripping the common minimal unit,
    // so only the support-comparison clause is re-entered
    std::vector<std::uint32_t> ea(a.entries()), eb(b.entries());
    while (true) {
        if (ea == eb) return 0;
        std::uint32_t pa = 0, pb = 0;
        for (std::size_t s = 0; s < ea.size(); ++s)
            if (ea[s] > 0) { pa = static_cast<std::uint32_t>(s + 1); break; }
        for (std::size_t s = 0; s < eb.size(); ++s)
            if (eb[s] > 0) { pb = static_cast<std::uint32_t>(s + 1); break; }
        if (pa != pb) return pa > pb ? -1 : 1;
        std::uint32_t q = std::min(ea[pa - 1], eb[pa - 1]);
        ea[pa - 1] -= q;
        eb[pa - 1] -= q;
    }
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t s = 0; s < e_.size(); ++s) {
        if (s) os << ",";
        os << e_[s];
    }
    os << "]";
    return os.str();
}

MultiIndex MultiIndex::from_string(const std::string& s) {
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip_ws();
    if (i >= s.size() || s[i] != '[') throw ParseError("expected '['", i);
    ++i;
    std::vector<std::uint32_t> e;
    skip_ws();
    while (i < s.size() && s[i] != ']') {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected non-negative integer", i);
        e.push_back(static_cast<std::uint32_t>(std::stoul(s.substr(start, i - start))));
        skip_ws();
        if (i < s.size() && s[i] == ',') { ++i; skip_ws(); }
    }
    if (i >= s.size()) throw ParseError("expected ']'", i);
    ++i;
    skip_ws();
    if (i != s.size()) throw ParseError("trailing input after multi-index", i);
    return MultiIndex(std::move(e));
}

} // namespace vir
