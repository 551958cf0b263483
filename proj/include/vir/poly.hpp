#ifndef VIR_POLY_HPP
#define VIR_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vir/error.hpp"
#include "vir/rational.hpp"

namespace vir {

/// Immutable ordered variable set; a Poly belongs to exactly one VarSet.
class VarSet {
public:
    static std::shared_ptr<const VarSet> make(std::vector<std::string> names) {
        return std::shared_ptr<const VarSet>(new VarSet(std::move(names)));
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    std::size_t index(const std::string& n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        throw RingError("unknown variable: " + n);
    }

    bool has(const std::string& n) const {
        return std::find(names_.begin(), names_.end(), n) != names_.end();
    }

    friend bool operator==(const VarSet& a, const VarSet& b) { return a.names_ == b.names_; }

private:
    explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {}
    std::vector<std::string> names_;
};

using Ring = std::shared_ptr<const VarSet>;
using Expo = std::vector<std::uint32_t>;

inline bool expo_divides(const Expo& a, const Expo& b) { // a | b
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Expo expo_add(const Expo& a, const Expo& b) {
    Expo r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Expo expo_sub(const Expo& a, const Expo& b) { // requires b | a
    Expo r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Expo expo_lcm(const Expo& a, const Expo& b) {
    Expo r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(r[i], b[i]);
    return r;
}

inline std::uint64_t expo_total(const Expo& a) {
    std::uint64_t s = 0;
    for (auto e : a) s += e;
    return s;
}

/// Lexicographic order with a configurable variable priority.
/// priority[0] is the most significant variable index.
class TermOrder {
public:
    static TermOrder lex(const VarSet& vs) {
        std::vector<std::size_t> p(vs.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
        return TermOrder(std::move(p));
    }

    /// Priority given by names, most significant first; must cover all variables.
    static TermOrder lex_names(const VarSet& vs, const std::vector<std::string>& names) {
        if (names.size() != vs.size()) throw RingError("term order must rank every variable");
        std::vector<std::size_t> p;
        p.reserve(names.size());
        for (const auto& n : names) p.push_back(vs.index(n));
        return TermOrder(std::move(p));
    }

    // <0: a < b, 0: equal, >0: a > b
    int cmp(const Expo& a, const Expo& b) const {
        for (auto i : prio_) {
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
    }

    bool less(const Expo& a, const Expo& b) const { return cmp(a, b) < 0; }
    const std::vector<std::size_t>& priority() const { return prio_; }

private:
    explicit TermOrder(std::vector<std::size_t> p) : prio_(std::move(p)) {}
    std::vector<std::size_t> prio_;
};

/// Sparse multivariate polynomial over Q with a fixed variable set.
/// Invariant: no stored zero coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(Ring ring) : ring_(std::move(ring)) {}

    static Poly constant(Ring ring, const Rational& c) {
        Poly p(std::move(ring));
        if (!c.is_zero()) p.terms_[Expo(p.ring_->size(), 0)] = c;
        return p;
    }

    static Poly variable(Ring ring, const std::string& name, std::uint32_t power = 1) {
        Poly p(ring);
        Expo e(ring->size(), 0);
        e[ring->index(name)] = power;
        if (power == 0)
            p.terms_[Expo(ring->size(), 0)] = Rational(1);
        else
            p.terms_[e] = Rational(1);
        return p;
    }

    static Poly monomial(Ring ring, Expo e, const Rational& c) {
        Poly p(std::move(ring));
        if (!c.is_zero()) p.terms_[std::move(e)] = c;
        return p;
    }

    const Ring& ring() const { return ring_; }
    const std::map<Expo, Rational>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && expo_total(terms_.begin()->first) == 0);
    }
    bool is_one() const { return is_constant() && constant_value().is_one(); }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw ArithError("not a constant polynomial");
        return terms_.begin()->second;
    }

    std::uint32_t degree_in(std::size_t var) const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, expo_total(e));
        return d;
    }

    bool uses_var(std::size_t var) const {
        for (const auto& [e, c] : terms_)
            if (e[var] > 0) return true;
        return false;
    }

    void add_term(const Expo& e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        check_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        check_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_ring(b);
        Poly r(a.ring_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(expo_add(ea, eb), ca * cb);
        return r;
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator*(const Poly& a, const Rational& c) {
        Poly r(a.ring_);
        if (c.is_zero()) return r;
        r.terms_ = a.terms_;
        for (auto& [e, cc] : r.terms_) cc *= c;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return *a.ring_ == *b.ring_ && a.terms_ == b.terms_;
    }

    Poly pow(std::uint32_t n) const {
        Poly r = constant(ring_, Rational(1));
        Poly b(*this);
        for (; n; n >>= 1) {
            if (n & 1) r *= b;
            if (n > 1) b *= b;
        }
        return r;
    }

    /// Leading (exponent, coefficient) under `ord`.
    std::pair<Expo, Rational> leading_term(const TermOrder& ord) const {
        if (terms_.empty()) throw ArithError("leading term of zero");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (ord.less(best->first, it->first)) best = it;
        return {best->first, best->second};
    }

    /// Divide by the leading coefficient under `ord` (monic normalization).
    Poly monic(const TermOrder& ord) const {
        if (is_zero()) return *this;
        auto [e, c] = leading_term(ord);
        Poly r(*this);
        Rational inv = c.inverse();
        for (auto& [ee, cc] : r.terms_) cc *= inv;
        return r;
    }

    /// Substitute one variable by a polynomial of the same ring.
    Poly substitute(const std::string& var, const Poly& value) const;

    /// Full evaluation; every variable that occurs must be assigned.
    Rational evaluate(const std::map<std::string, Rational>& assign) const;

    std::string to_string(const TermOrder& ord) const;
    std::string to_string() const { return to_string(TermOrder::lex(*ring_)); }

    void check_ring(const Poly& o) const {
        if (!(*ring_ == *o.ring_)) throw RingError("polynomials from different rings");
    }

private:
    Ring ring_;
    std::map<Expo, Rational> terms_;
};

struct DivModResult {
    std::vector<Poly> quotients;
    Poly remainder;
};

/// Multivariate division with remainder: p = sum q_i d_i + r, no term of r
/// divisible by any divisor's leading term under `ord`.
DivModResult poly_divmod(const Poly& p, const std::vector<Poly>& divisors, const TermOrder& ord);

/// Exact division; throws ArithError if not divisible.
Poly poly_divexact(const Poly& a, const Poly& b);

/// GCD over Q[vars], normalized monic under the ring's declaration-order lex.
Poly poly_gcd(const Poly& a, const Poly& b);

} // namespace vir

#endif
