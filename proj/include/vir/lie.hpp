#ifndef VIR_LIE_HPP
#define VIR_LIE_HPP

#include <map>
#include <utility>

#include "vir/error.hpp"
#include "vir/rational.hpp"

namespace vir {

/// Structure constants of the bracket. `central_sign` exists as an injection
/// point for mutation testing of the check battery; it is +1 in real use.
struct BracketRules {
    int central_sign = +1;
};

/// Largest admissible |mode index|; keeps i^3 within long and basis keys of
/// sane size.
inline constexpr long kMaxMode = 1000000;

/// [l_i, l_j] = (j - i) l_{i+j} + delta_{i,-j} (i^3 - i)/12 c.
/// Returns the mode coefficient and the central coefficient.
inline std::pair<long, Rational> mode_bracket(long i, long j, const BracketRules& rules = {}) {
    if (i < -kMaxMode || i > kMaxMode || j < -kMaxMode || j > kMaxMode)
        throw DomainError("mode index out of range");
    Rational central(0);
    if (i == -j) central = Rational((i * i * i - i) * rules.central_sign, 12);
    return {j - i, central};
}

/// Finite linear combination of the generators l_i and the central element c.
template <class K>
class LieElt {
public:
    LieElt() = default;

    static LieElt mode(long i, K coeff = K(1)) {
        LieElt x;
        x.add_mode(i, std::move(coeff));
        return x;
    }

    static LieElt central_elt(K coeff = K(1)) {
        LieElt x;
        x.central_ = std::move(coeff);
        return x;
    }

    void add_mode(long i, const K& c) {
        if (is_zero(c)) return;
        auto it = modes_.find(i);
        if (it == modes_.end()) {
            modes_.emplace(i, c);
        } else {
            it->second = it->second + c;
            if (is_zero(it->second)) modes_.erase(it);
        }
    }

    void add_central(const K& c) { central_ = central_ + c; }

    const std::map<long, K>& modes() const { return modes_; }
    const K& central() const { return central_; }

    bool is_zero_elt() const { return modes_.empty() && is_zero(central_); }

    LieElt operator-() const {
        LieElt r;
        for (const auto& [i, c] : modes_) r.modes_.emplace(i, -c);
        r.central_ = -central_;
        return r;
    }

    LieElt& operator+=(const LieElt& o) {
        for (const auto& [i, c] : o.modes_) add_mode(i, c);
        add_central(o.central_);
        return *this;
    }
    LieElt& operator-=(const LieElt& o) { return *this += -o; }

    friend LieElt operator+(LieElt a, const LieElt& b) { return a += b; }
    friend LieElt operator-(LieElt a, const LieElt& b) { return a -= b; }

    friend LieElt operator*(const K& s, const LieElt& x) {
        LieElt r;
        if (is_zero(s)) return r;
        for (const auto& [i, c] : x.modes_) r.add_mode(i, s * c);
        r.central_ = s * x.central_;
        return r;
    }

    friend bool operator==(const LieElt& a, const LieElt& b) {
        return a.modes_ == b.modes_ && a.central_ == b.central_;
    }

private:
    std::map<long, K> modes_;
    K central_{};
};

/// Bilinear, antisymmetric bracket with the central extension.
template <class K>
LieElt<K> bracket(const LieElt<K>& x, const LieElt<K>& y, const BracketRules& rules = {}) {
    LieElt<K> out;
    for (const auto& [i, ci] : x.modes()) {
        for (const auto& [j, cj] : y.modes()) {
            auto [mode_coeff, central] = mode_bracket(i, j, rules);
            K c = ci * cj;
            if (mode_coeff != 0) out.add_mode(i + j, c * K(Rational(mode_coeff)));
            if (!central.is_zero()) out.add_central(c * K(central));
        }
    }
    return out; // [x, c] = 0: central coefficients never contribute
}

} // namespace vir

#endif
