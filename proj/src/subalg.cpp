#include "vir/subalg.hpp"

namespace vir {

Poly dij(long i, long j, const std::map<long, Poly>& coeffs) {
    if (!(2 <= i && i < j)) throw DomainError("dij requires 2 <= i < j");
    auto get = [&](long k) -> const Poly& {
        auto it = coeffs.find(k);
        if (it == coeffs.end())
            throw DomainError("dij: missing coefficient a_" + std::to_string(k));
        return it->second;
    };
    const Poly& aij = get(i + j);
    const Poly& ai = get(i);
    const Poly& aj1 = get(j + 1);
    const Poly& ai1 = get(i + 1);
    const Poly& aj = get(j);
    return aij * Rational(j - i) - (ai * aj1) * Rational(j - 1) + (ai1 * aj) * Rational(i - 1);
}

namespace {

// rename/extend into another ring by variable names
Poly poly_cast(const Poly& p, const Ring& ring) {
    Poly out(ring);
    std::vector<std::size_t> remap(p.ring()->size());
    for (std::size_t i = 0; i < remap.size(); ++i) remap[i] = ring->index(p.ring()->name(i));
    for (const auto& [e, c] : p.terms()) {
        Expo ne(ring->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) ne[remap[i]] = e[i];
        out.add_term(ne, c);
    }
    return out;
}

std::string aname(long k) { return "a" + std::to_string(k); }

} // namespace

ClassifyReport classify_codim_one(const ClassifyOptions& opts) {
    if (opts.kmax < 9) throw DomainError("classify_codim_one requires kmax >= 9");
    ClassifyReport rep;
    rep.kmax = opts.kmax;

    Ring r3 = VarSet::make({"a2", "a3", "a4"});
    TermOrder lex3 = TermOrder::lex(*r3);
    Poly a2 = Poly::variable(r3, "a2");
    Poly a3 = Poly::variable(r3, "a3");
    Poly a4 = Poly::variable(r3, "a4");

    // D_{2,j} = (j-2) a_{j+2} - (j-1) a_2 a_{j+1} + a_3 a_j = 0 determines
    // a_5, a_6, ... uniquely in terms of a_2, a_3, a_4
    std::map<long, Poly> a{{2, a2}, {3, a3}, {4, a4}};
    for (long j = 3; j + 2 <= opts.kmax; ++j) {
        Poly next = (a.at(2) * a.at(j + 1) * Rational(j - 1) - a.at(3) * a.at(j)) *
                    Rational(1, j - 2);
        a.emplace(j + 2, next);
        rep.eliminated.push_back(aname(j + 2) + " = " + next.to_string(lex3));
    }
    for (long j = 3; j + 2 <= opts.kmax; ++j) {
        if (!dij(2, j, a).is_zero()) throw ArithError("D_{2,j} recursion failed to close");
    }

    std::vector<Poly> constraints;
    for (auto [i, j] : std::vector<std::pair<long, long>>{{3, 4}, {3, 5}, {3, 6}, {4, 5}}) {
        Poly c = dij(i, j, a);
        constraints.push_back(c);
        rep.constraints.push_back("D_{" + std::to_string(i) + "," + std::to_string(j) +
                                  "} = " + c.to_string(lex3));
    }

    // unsaturated ideal in Q[a2, a3, a4]
    auto gb = buchberger(constraints, lex3, opts.groebner);
    for (const auto& g : gb) rep.basis_unsaturated.push_back(g.to_string(lex3));
    Poly a3_power = a3.pow(6) - a3.pow(5) * a2.pow(2);
    rep.member_a3_power = reduce_full(a3_power, gb, lex3).is_zero();

    // saturation by a2 a3 a4 via u * a2 a3 a4 - 1, lex with u eliminated first
    Ring r4 = VarSet::make({"u", "a2", "a3", "a4"});
    TermOrder lex4 = TermOrder::lex(*r4);
    std::vector<Poly> sat_gens;
    for (const auto& c : constraints) sat_gens.push_back(poly_cast(c, r4));
    Poly u = Poly::variable(r4, "u");
    sat_gens.push_back(u * poly_cast(a2 * a3 * a4, r4) -
                       Poly::constant(r4, Rational(1)));
    auto gb_sat = buchberger(sat_gens, lex4, opts.groebner);
    for (const auto& g : gb_sat) rep.basis_saturated.push_back(g.to_string(lex4));
    rep.member_a3 = reduce_full(poly_cast(a3 - a2 * a2, r4), gb_sat, lex4).is_zero();
    rep.member_a4 = reduce_full(poly_cast(a4 - a2 * a2 * a2, r4), gb_sat, lex4).is_zero();

    // converse: a_k = a_2^{k-1} satisfies every constraint
    rep.converse = true;
    for (const auto& c : constraints) {
        Poly s = c.substitute("a3", a2.pow(2)).substitute("a4", a2.pow(3));
        if (!s.is_zero()) rep.converse = false;
    }

    rep.pass = rep.member_a3_power && rep.member_a3 && rep.member_a4 && rep.converse;

    if (opts.full_ideal) {
        // the 8-variable ideal with all nine generators, no elimination shortcut
        std::vector<std::string> names;
        for (long k = 2; k <= 9; ++k) names.push_back(aname(k));
        Ring r8 = VarSet::make(names);
        std::map<long, Poly> av;
        for (long k = 2; k <= 9; ++k) av.emplace(k, Poly::variable(r8, aname(k)));
        std::vector<Poly> gens;
        for (long j = 3; j <= 7; ++j) gens.push_back(dij(2, j, av));
        for (auto [i, j] : std::vector<std::pair<long, long>>{{3, 4}, {3, 5}, {3, 6}, {4, 5}})
            gens.push_back(dij(i, j, av));

        TermOrder ord1 = TermOrder::lex_names(
            *r8, {"a9", "a8", "a7", "a6", "a5", "a4", "a3", "a2"});
        auto g1 = buchberger(gens, ord1, opts.groebner);
        rep.full_basis_sizes[0] = g1.size();
        rep.full_member_order1 =
            reduce_full(av.at(3).pow(6) - av.at(3).pow(5) * av.at(2).pow(2), g1, ord1).is_zero();

        TermOrder ord2 = TermOrder::lex_names(
            *r8, {"a9", "a8", "a7", "a6", "a5", "a2", "a3", "a4"});
        auto g2 = buchberger(gens, ord2, opts.groebner);
        rep.full_basis_sizes[1] = g2.size();
        rep.full_member_order2 =
            reduce_full(av.at(4).pow(3) * av.at(2) - av.at(4).pow(2) * av.at(3).pow(2), g2, ord2)
                .is_zero();

        rep.full_ran = true;
        rep.pass = rep.pass && rep.full_member_order1 && rep.full_member_order2;
    }
    return rep;
}

} // namespace vir
