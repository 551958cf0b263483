#ifndef VIR_PBW_HPP
#define VIR_PBW_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "vir/lie.hpp"

namespace vir {

/// Canonical PBW word: mode indices non-decreasing left to right, powers of
/// the central element factored out into `cpow`.
struct PbwWord {
    std::vector<long> factors;
    std::uint32_t cpow = 0;

    bool is_canonical() const { return std::is_sorted(factors.begin(), factors.end()); }

    friend bool operator==(const PbwWord& a, const PbwWord& b) {
        return a.factors == b.factors && a.cpow == b.cpow;
    }
    friend bool operator<(const PbwWord& a, const PbwWord& b) {
        if (a.factors != b.factors) return a.factors < b.factors;
        return a.cpow < b.cpow;
    }
};

/// Element of the universal enveloping algebra in the canonical PBW basis.
template <class K>
class UeaElt {
public:
    UeaElt() = default;

    static UeaElt one() { return word(PbwWord{}); }

    static UeaElt word(PbwWord w, K coeff = K(1)) {
        UeaElt u;
        u.add_term(std::move(w), std::move(coeff));
        return u;
    }

    static UeaElt generator(long i, K coeff = K(1)) {
        return word(PbwWord{{i}, 0}, std::move(coeff));
    }

    static UeaElt central(K coeff = K(1)) { return word(PbwWord{{}, 1}, std::move(coeff)); }

    static UeaElt from_lie(const LieElt<K>& x) {
        UeaElt u;
        for (const auto& [i, c] : x.modes()) u.add_term(PbwWord{{i}, 0}, c);
        if (!is_zero(x.central())) u.add_term(PbwWord{{}, 1}, x.central());
        return u;
    }

    void add_term(PbwWord w, const K& c) {
        if (is_zero(c)) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(std::move(w), c);
        } else {
            it->second = it->second + c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    const std::map<PbwWord, K>& terms() const { return terms_; }
    bool is_zero_elt() const { return terms_.empty(); }

    UeaElt operator-() const {
        UeaElt r;
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
        return r;
    }
    UeaElt& operator+=(const UeaElt& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    UeaElt& operator-=(const UeaElt& o) { return *this += -o; }
    friend UeaElt operator+(UeaElt a, const UeaElt& b) { return a += b; }
    friend UeaElt operator-(UeaElt a, const UeaElt& b) { return a -= b; }

    friend UeaElt operator*(const K& s, const UeaElt& x) {
        UeaElt r;
        if (is_zero(s)) return r;
        for (const auto& [w, c] : x.terms_) r.terms_.emplace(w, s * c);
        return r;
    }

    friend bool operator==(const UeaElt& a, const UeaElt& b) { return a.terms_ == b.terms_; }

private:
    std::map<PbwWord, K> terms_;
};

/// Rewrites an arbitrary product of generators into the canonical PBW basis.
/// Out-of-order adjacent factors are swapped via the bracket; every swap
/// spawns strictly shorter words, so the rewriting terminates.
template <class K>
UeaElt<K> normal_order(const std::vector<long>& factors, std::uint32_t cpow = 0,
                       const K& coeff = K(1), const BracketRules& rules = {}) {
    UeaElt<K> out;
    if (is_zero(coeff)) return out;
    std::vector<std::tuple<std::vector<long>, std::uint32_t, K>> stack;
    stack.emplace_back(factors, cpow, coeff);
    while (!stack.empty()) {
        auto [w, cp, c] = std::move(stack.back());
        stack.pop_back();
        std::size_t pos = 0;
        bool canonical = true;
        for (; pos + 1 < w.size(); ++pos) {
            if (w[pos] > w[pos + 1]) {
                canonical = false;
                break;
            }
        }
        if (canonical) {
            out.add_term(PbwWord{std::move(w), cp}, c);
            continue;
        }
        auto [mode_coeff, central] = mode_bracket(w[pos], w[pos + 1], rules);
        std::vector<long> swapped(w);
        std::swap(swapped[pos], swapped[pos + 1]);
        stack.emplace_back(std::move(swapped), cp, c);
        if (mode_coeff != 0) {
            std::vector<long> merged;
            merged.reserve(w.size() - 1);
            merged.insert(merged.end(), w.begin(), w.begin() + pos);
            merged.push_back(w[pos] + w[pos + 1]);
            merged.insert(merged.end(), w.begin() + pos + 2, w.end());
            stack.emplace_back(std::move(merged), cp, c * K(Rational(mode_coeff)));
        }
        if (!central.is_zero()) {
            std::vector<long> dropped;
            dropped.reserve(w.size() - 2);
            dropped.insert(dropped.end(), w.begin(), w.begin() + pos);
            dropped.insert(dropped.end(), w.begin() + pos + 2, w.end());
            stack.emplace_back(std::move(dropped), cp + 1, c * K(central));
        }
    }
    return out;
}

/// Associative product on U(V): concatenate words, then normal order.
template <class K>
UeaElt<K> uea_mul(const UeaElt<K>& a, const UeaElt<K>& b, const BracketRules& rules = {}) {
    UeaElt<K> out;
    for (const auto& [wa, ca] : a.terms()) {
        for (const auto& [wb, cb] : b.terms()) {
            std::vector<long> cat(wa.factors);
            cat.insert(cat.end(), wb.factors.begin(), wb.factors.end());
            out += normal_order(cat, wa.cpow + wb.cpow, ca * cb, rules);
        }
    }
    return out;
}

} // namespace vir

#endif
