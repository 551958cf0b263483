#ifndef VIR_RATFUNC_HPP
#define VIR_RATFUNC_HPP

#include <map>
#include <optional>
#include <string>

#include "vir/poly.hpp"

namespace vir {

/// The fixed coefficient-parameter ring {z, m2, m3, m4, theta, t}.
const Ring& scalar_ring();

/// Canonical order used for normalization and printing of scalar-ring
/// polynomials: lex with t > theta > m4 > m3 > m2 > z.
const TermOrder& scalar_order();

/// Total or partial assignment of rational values to parameters.
/// Invariant: z, when assigned, is nonzero.
class ParamAssignment {
public:
    ParamAssignment() = default;

    ParamAssignment& set(const std::string& name, const Rational& v) {
        if (name == "z" && v.is_zero()) throw DomainError("parameter z must be nonzero");
        values_[name] = v;
        return *this;
    }

    bool has(const std::string& name) const { return values_.count(name) != 0; }

    const Rational& get(const std::string& name) const {
        auto it = values_.find(name);
        if (it == values_.end()) throw DomainError("unassigned parameter: " + name);
        return it->second;
    }

    const std::map<std::string, Rational>& values() const { return values_; }

private:
    std::map<std::string, Rational> values_;
};

/// Reduced rational function num/den over the scalar ring.
/// Invariants: den != 0, gcd(num, den) = 1, den monic under scalar_order().
class RatFunc {
public:
    RatFunc() : num_(Poly(scalar_ring())), den_(Poly::constant(scalar_ring(), Rational(1))) {}
    RatFunc(long n) : RatFunc(Rational(n)) {} // NOLINT: implicit by design
    RatFunc(const Rational& c)                // NOLINT: implicit by design
        : num_(Poly::constant(scalar_ring(), c)),
          den_(Poly::constant(scalar_ring(), Rational(1))) {}
    explicit RatFunc(const Poly& p)
        : num_(p), den_(Poly::constant(p.ring(), Rational(1))) {
        p.check_ring(num_);
    }
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFunc variable(const std::string& name) {
        return RatFunc(Poly::variable(scalar_ring(), name));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    Rational constant_value() const {
        if (!is_constant()) throw ArithError("not a constant scalar");
        return num_.constant_value();
    }

    RatFunc operator-() const {
        RatFunc r(*this);
        r.num_ = -r.num_;
        return r;
    }

    // fraction arithmetic on reduced operands computes gcds of factors, never
    // of full cross products (Knuth 4.5.1)
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return add_sub(a, b, false); }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return add_sub(a, b, true); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        Poly g1 = cross_gcd(a.num_, b.den_);
        Poly g2 = cross_gcd(b.num_, a.den_);
        Poly na = g1.is_one() ? a.num_ : poly_divexact(a.num_, g1);
        Poly nb = g2.is_one() ? b.num_ : poly_divexact(b.num_, g2);
        Poly da = g2.is_one() ? a.den_ : poly_divexact(a.den_, g2);
        Poly db = g1.is_one() ? b.den_ : poly_divexact(b.den_, g1);
        return reduced(na * nb, da * db);
    }

    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw ArithError("division by zero scalar");
        return a * RatFunc(b.den_, b.num_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inverse() const {
        if (is_zero()) throw ArithError("inverse of zero scalar");
        return RatFunc(den_, num_);
    }

    RatFunc pow(std::uint32_t n) const { return RatFunc(num_.pow(n), den_.pow(n)); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// Exact substitution at a (total) parameter assignment.
    Rational evaluate(const ParamAssignment& p) const {
        Rational d = den_.evaluate(p.values());
        if (d.is_zero()) throw DomainError("denominator vanishes at assignment");
        return num_.evaluate(p.values()) / d;
    }

    /// Substitute a parameter by a scalar; errors if the denominator collapses.
    RatFunc substitute(const std::string& var, const RatFunc& value) const {
        RatFunc n = substitute_poly(num_, var, value);
        RatFunc d = substitute_poly(den_, var, value);
        if (d.is_zero()) throw DomainError("denominator vanishes under substitution");
        return n / d;
    }

    std::string to_string() const;

    /// Sign of the leading numerator coefficient (for sum-printing).
    int leading_sign() const {
        if (num_.is_zero()) return 0;
        return num_.leading_term(scalar_order()).second.sign();
    }

private:
    // trusted constructor: num/den already coprime, only monic-normalizes
    static RatFunc reduced(Poly num, Poly den) {
        RatFunc r;
        if (num.is_zero()) return r;
        Rational lc = den.leading_term(scalar_order()).second;
        if (!lc.is_one()) {
            Rational inv = lc.inverse();
            num = num * inv;
            den = den * inv;
        }
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        return r;
    }

    static Poly cross_gcd(const Poly& a, const Poly& b) {
        if (b.is_one() || a.is_one()) return Poly::constant(a.ring(), Rational(1));
        return poly_gcd(a, b);
    }

    static RatFunc add_sub(const RatFunc& a, const RatFunc& b, bool subtract) {
        const Poly& nb_signed = b.num_;
        auto combine = [&](Poly x, const Poly& y) { return subtract ? x - y : x + y; };
        if (a.den_ == b.den_) {
            Poly t = combine(a.num_, nb_signed);
            if (t.is_zero()) return RatFunc();
            if (a.den_.is_one()) return reduced(std::move(t), a.den_);
            Poly g2 = poly_gcd(t, a.den_);
            if (g2.is_one()) return reduced(std::move(t), a.den_);
            return reduced(poly_divexact(t, g2), poly_divexact(a.den_, g2));
        }
        Poly g1 = cross_gcd(a.den_, b.den_);
        if (g1.is_one()) {
            Poly t = combine(a.num_ * b.den_, b.num_ * a.den_);
            if (t.is_zero()) return RatFunc();
            return reduced(std::move(t), a.den_ * b.den_); // coprime denominators
        }
        Poly da1 = poly_divexact(a.den_, g1);
        Poly db1 = poly_divexact(b.den_, g1);
        Poly t = combine(a.num_ * db1, b.num_ * da1);
        if (t.is_zero()) return RatFunc();
        Poly g2 = poly_gcd(t, g1);
        if (g2.is_one()) return reduced(std::move(t), da1 * b.den_);
        return reduced(poly_divexact(t, g2), da1 * poly_divexact(b.den_, g2));
    }

    static RatFunc substitute_poly(const Poly& p, const std::string& var, const RatFunc& value) {
        // write p = sum_k c_k(rest) * var^k, evaluate in the fraction field
        RatFunc acc(Rational(0));
        std::size_t vi = p.ring()->index(var);
        std::vector<RatFunc> powers{RatFunc(Rational(1))};
        for (const auto& [e, c] : p.terms()) {
            std::uint32_t k = e[vi];
            while (powers.size() <= k) powers.push_back(powers.back() * value);
            Expo rest(e);
            rest[vi] = 0;
            acc += powers[k] * RatFunc(Poly::monomial(p.ring(), rest, c));
        }
        return acc;
    }

    void normalize() {
        num_.check_ring(den_);
        if (den_.is_zero()) throw ArithError("zero denominator in rational function");
        if (num_.is_zero()) {
            den_ = Poly::constant(num_.ring(), Rational(1));
            return;
        }
        if (!den_.is_constant()) {
            Poly g = poly_gcd(num_, den_);
            if (!g.is_one()) {
                num_ = poly_divexact(num_, g);
                den_ = poly_divexact(den_, g);
            }
        }
        Rational lc = den_.leading_term(scalar_order()).second;
        if (!lc.is_one()) {
            Rational inv = lc.inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly num_, den_;
};

inline bool is_zero(const RatFunc& r) { return r.is_zero(); }
inline std::string to_string(const RatFunc& r) { return r.to_string(); }

} // namespace vir

#endif
