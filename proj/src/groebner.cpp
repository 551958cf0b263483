#include "vir/groebner.hpp"

#include <set>
#include <tuple>

namespace vir {

Poly reduce_full(const Poly& p, const std::vector<Poly>& basis, const TermOrder& ord) {
    if (basis.empty()) return p;
    return poly_divmod(p, basis, ord).remainder;
}

Poly s_poly(const Poly& f, const Poly& g, const TermOrder& ord) {
    auto [ef, cf] = f.leading_term(ord);
    auto [eg, cg] = g.leading_term(ord);
    Expo l = expo_lcm(ef, eg);
    Poly a = Poly::monomial(f.ring(), expo_sub(l, ef), cf.inverse());
    Poly b = Poly::monomial(g.ring(), expo_sub(l, eg), cg.inverse());
    return a * f - b * g;
}

std::vector<Poly> buchberger(const std::vector<Poly>& gens, const TermOrder& ord,
                             const GroebnerOptions& opts) {
    std::vector<Poly> basis;
    for (const auto& g : gens) {
        if (g.is_zero()) throw ArithError("zero generator");
        basis.push_back(g.monic(ord));
    }
    if (basis.empty()) return basis;

    // pair queue keyed by (total degree of lcm, i, j): normal selection
    using PairKey = std::tuple<std::uint64_t, std::size_t, std::size_t>;
    std::set<PairKey> pairs;
    auto push_pairs = [&](std::size_t upto) {
        for (std::size_t i = 0; i < upto; ++i) {
            Expo l = expo_lcm(basis[i].leading_term(ord).first, basis[upto].leading_term(ord).first);
            pairs.insert({expo_total(l), i, upto});
        }
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs(j);

    std::size_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > opts.max_pairs)
            throw ResourceError("Groebner pair budget exceeded");
        auto [deg, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());

        const Expo& ei = basis[i].leading_term(ord).first;
        const Expo& ej = basis[j].leading_term(ord).first;
        if (expo_lcm(ei, ej) == expo_add(ei, ej)) continue; // coprime leading terms

        Poly r = reduce_full(s_poly(basis[i], basis[j], ord), basis, ord);
        if (r.is_zero()) continue;
        if (r.total_degree() > opts.max_degree)
            throw ResourceError("Groebner degree cap exceeded");
        basis.push_back(r.monic(ord));
        if (basis.size() > opts.max_basis)
            throw ResourceError("Groebner basis size cap exceeded");
        push_pairs(basis.size() - 1);
    }

    // minimalize: drop elements whose leading term is divisible by another's
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Expo& ei = basis[i].leading_term(ord).first;
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const Expo& ej = basis[j].leading_term(ord).first;
            if (expo_divides(ej, ei) && !(ej == ei && j > i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // inter-reduce tails
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = reduce_full(minimal[i], others, ord);
        if (!r.is_zero()) reduced.push_back(r.monic(ord));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return ord.less(a.leading_term(ord).first, b.leading_term(ord).first);
    });
    return reduced;
}

} // namespace vir
