#include "vir/poly.hpp"

#include <sstream>

namespace vir {

Poly Poly::substitute(const std::string& var, const Poly& value) const {
    check_ring(value);
    std::size_t vi = ring_->index(var);
    Poly out(ring_);
    // cache powers of the replacement
    std::vector<Poly> powers{constant(ring_, Rational(1))};
    for (const auto& [e, c] : terms_) {
        std::uint32_t k = e[vi];
        while (powers.size() <= k) powers.push_back(powers.back() * value);
        Expo rest(e);
        rest[vi] = 0;
        out += powers[k] * monomial(ring_, rest, c);
    }
    return out;
}

Rational Poly::evaluate(const std::map<std::string, Rational>& assign) const {
    std::vector<std::optional<Rational>> vals(ring_->size());
    for (const auto& [name, v] : assign) {
        if (ring_->has(name)) vals[ring_->index(name)] = v;
    }
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!vals[i]) throw DomainError("unassigned variable: " + ring_->name(i));
            term *= vals[i]->pow(e[i]);
        }
        sum += term;
    }
    return sum;
}

std::string Poly::to_string(const TermOrder& ord) const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Expo, Rational>*> sorted;
    sorted.reserve(terms_.size());
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(),
              [&](auto* a, auto* b) { return ord.less(b->first, a->first); });

    std::ostringstream os;
    bool first = true;
    for (auto* tp : sorted) {
        const auto& [e, c] = *tp;
        Rational ac = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool have_factor = false;
        if (!ac.is_one() || expo_total(e) == 0) {
            os << ac.to_string();
            have_factor = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (have_factor) os << "*";
            os << ring_->name(i);
            if (e[i] > 1) os << "^" << e[i];
            have_factor = true;
        }
    }
    return os.str();
}

DivModResult poly_divmod(const Poly& p, const std::vector<Poly>& divisors, const TermOrder& ord) {
    for (const auto& d : divisors) {
        p.check_ring(d);
        if (d.is_zero()) throw ArithError("division by zero polynomial");
    }
    DivModResult res;
    res.quotients.assign(divisors.size(), Poly(p.ring()));
    res.remainder = Poly(p.ring());

    std::vector<std::pair<Expo, Rational>> lts;
    lts.reserve(divisors.size());
    for (const auto& d : divisors) lts.push_back(d.leading_term(ord));

    Poly work(p);
    while (!work.is_zero()) {
        auto [le, lc] = work.leading_term(ord);
        bool divided = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (expo_divides(lts[i].first, le)) {
                Expo q = expo_sub(le, lts[i].first);
                Rational qc = lc / lts[i].second;
                Poly qmono = Poly::monomial(p.ring(), q, qc);
                res.quotients[i] += qmono;
                work -= qmono * divisors[i];
                divided = true;
                break;
            }
        }
        if (!divided) {
            res.remainder.add_term(le, lc);
            work.add_term(le, -lc);
        }
    }
    return res;
}

Poly poly_divexact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw ArithError("exact division by zero");
    auto ord = TermOrder::lex(*a.ring());
    auto r = poly_divmod(a, {b}, ord);
    if (!r.remainder.is_zero()) throw ArithError("polynomial division is not exact");
    return r.quotients[0];
}

namespace {

// scale to integer coefficients with trivial common integer content; cheap
// integer gcds here are what keeps the pseudo-remainder sequences small
Poly integer_primitive(const Poly& p) {
    if (p.is_zero()) return p;
    mpz_class den_lcm(1);
    for (const auto& [e, c] : p.terms())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.denominator().get_mpz_t());
    mpz_class num_gcd(0);
    for (const auto& [e, c] : p.terms()) {
        mpz_class scaled = c.numerator() * (den_lcm / c.denominator());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    return p * Rational(den_lcm, num_gcd);
}

// vi-degree and leading vi-coefficient (a polynomial free of vi)
std::pair<std::uint32_t, Poly> lead_in(const Poly& p, std::size_t vi) {
    std::uint32_t d = p.degree_in(vi);
    Poly lc(p.ring());
    for (const auto& [e, c] : p.terms()) {
        if (e[vi] == d) {
            Expo rest(e);
            rest[vi] = 0;
            lc.add_term(rest, c);
        }
    }
    return {d, lc};
}

// gcd of all vi-coefficients
Poly content_in(const Poly& p, std::size_t vi) {
    std::map<std::uint32_t, Poly> coeffs;
    for (const auto& [e, c] : p.terms()) {
        Expo rest(e);
        std::uint32_t k = rest[vi];
        rest[vi] = 0;
        auto it = coeffs.find(k);
        if (it == coeffs.end()) it = coeffs.emplace(k, Poly(p.ring())).first;
        it->second.add_term(rest, c);
    }
    Poly g(p.ring());
    for (const auto& [k, c] : coeffs) {
        g = poly_gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

// pseudo-remainder of A by B in vi, normalized to integer-primitive after
// every reduction step; primitive PRS only needs the result up to a scalar
Poly pseudo_rem_primitive(const Poly& A, const Poly& B, std::size_t vi, const Ring& ring) {
    auto [db, lcb] = lead_in(B, vi);
    Poly rem = A;
    while (!rem.is_zero()) {
        auto [dr, lcr] = lead_in(rem, vi);
        if (dr < db) break;
        Poly shift = Poly::variable(ring, ring->name(vi), dr - db);
        rem = integer_primitive(rem * lcb - B * (lcr * shift));
    }
    return rem;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    const Ring& ring = a.is_zero() && b.is_zero() ? a.ring() : (a.is_zero() ? b.ring() : a.ring());
    auto canon = TermOrder::lex(*ring);
    if (a.is_zero()) return b.monic(canon);
    if (b.is_zero()) return a.monic(canon);
    a.check_ring(b);
    if (a.is_constant() || b.is_constant()) return Poly::constant(ring, Rational(1));

    // single-monomial fast path: gcd is the monomial of minimal exponents
    if (a.term_count() == 1 || b.term_count() == 1) {
        const Poly& mono = a.term_count() == 1 ? a : b;
        const Poly& other = a.term_count() == 1 ? b : a;
        Expo e = mono.terms().begin()->first;
        for (const auto& [eo, c] : other.terms())
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], eo[i]);
        return Poly::monomial(ring, e, Rational(1));
    }

    // main variable: lowest index used by either
    std::size_t vi = 0;
    while (!a.uses_var(vi) && !b.uses_var(vi)) ++vi;

    if (!a.uses_var(vi)) return poly_gcd(content_in(b, vi), a).monic(canon);
    if (!b.uses_var(vi)) return poly_gcd(content_in(a, vi), b).monic(canon);

    Poly ca = content_in(a, vi);
    Poly cb = content_in(b, vi);
    Poly cont = poly_gcd(ca, cb);

    Poly A = integer_primitive(poly_divexact(a, ca));
    Poly B = integer_primitive(poly_divexact(b, cb));
    if (A.degree_in(vi) < B.degree_in(vi)) std::swap(A, B);

    // primitive PRS
    while (true) {
        Poly R = pseudo_rem_primitive(A, B, vi, ring);
        if (R.is_zero()) break;
        if (!R.uses_var(vi)) return cont.monic(canon); // coprime primitive parts
        A = B;
        B = integer_primitive(poly_divexact(R, content_in(R, vi)));
    }
    return (cont * B).monic(canon);
}

} // namespace vir
