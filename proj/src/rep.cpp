#include "vir/rep.hpp"

#include <algorithm>
#include <deque>

namespace vir {

namespace {

void multiindices_up_to(std::uint64_t max_weight, std::vector<MultiIndex>& out) {
    // all finitely supported (i_1, i_2, ...) with weight <= max_weight
    std::vector<std::uint32_t> current;
    std::function<void(std::uint64_t, std::uint32_t)> rec = [&](std::uint64_t left,
                                                                 std::uint32_t s) {
        out.emplace_back(current);
        for (std::uint32_t part = s; part <= left; ++part) {
            if (current.size() < part) current.resize(part, 0);
            ++current[part - 1];
            rec(left - part, part);
            --current[part - 1];
            while (!current.empty() && current.back() == 0) current.pop_back();
        }
    };
    rec(max_weight, 1);
}

} // namespace

std::vector<BasisKey> enumerate_keys(Space space, std::uint64_t max_weight, std::uint32_t max_j,
                                     std::uint32_t max_k) {
    std::vector<MultiIndex> mis;
    if (space == Space::Ind)
        multiindices_up_to(max_weight, mis);
    else
        mis.emplace_back();
    std::uint32_t jmax = space == Space::V ? 0 : max_j;

    std::vector<BasisKey> keys;
    for (const auto& mi : mis)
        for (std::uint32_t j = 0; j <= jmax; ++j)
            for (std::uint32_t k = 0; k <= max_k; ++k) keys.push_back(BasisKey{mi, j, k});
    std::sort(keys.begin(), keys.end());
    return keys;
}

namespace {

ModElt<Rational> from_vector(Space space, const std::vector<BasisKey>& keys,
                             const std::vector<Rational>& v) {
    ModElt<Rational> x(space);
    for (std::size_t c = 0; c < keys.size(); ++c) x.add_term(keys[c], v[c]);
    return x;
}

} // namespace

std::vector<ModElt<Rational>> kernel(const UeaElt<Rational>& op, Space space, std::uint32_t max_j,
                                     std::uint32_t max_k, const CharacterParams<Rational>& p,
                                     const BracketRules& rules) {
    auto domain = enumerate_keys(space, 0, max_j, max_k);
    auto codomain = enumerate_keys(space, 0, max_j, max_k + 1);
    auto T = build_operator(op, space, domain, codomain, p, rules);
    auto null_vectors = kernel_basis(T.entries, T.domain.size());
    std::vector<ModElt<Rational>> out;
    out.reserve(null_vectors.size());
    for (const auto& v : null_vectors) out.push_back(from_vector(space, T.domain, v));
    return out;
}

AffineSolution solve_affine_system(const std::vector<UeaElt<Rational>>& ops,
                                   const std::vector<ModElt<Rational>>& targets,
                                   std::uint32_t max_j, std::uint32_t max_k,
                                   const CharacterParams<Rational>& p,
                                   const BracketRules& rules) {
    if (ops.empty() || ops.size() != targets.size())
        throw DomainError("solve_affine_system requires matching operators and targets");
    Space space = targets.front().space();
    auto domain = enumerate_keys(space, 0, max_j, max_k);
    auto codomain = enumerate_keys(space, 0, max_j, max_k + 1);
    std::map<BasisKey, std::size_t> index;
    for (std::size_t r = 0; r < codomain.size(); ++r) index[codomain[r]] = r;

    QMatrix stacked;
    std::vector<Rational> rhs;
    for (std::size_t s = 0; s < ops.size(); ++s) {
        auto T = build_operator(ops[s], space, domain, codomain, p, rules);
        for (auto& row : T.entries) stacked.push_back(std::move(row));
        std::vector<Rational> b(codomain.size(), Rational(0));
        for (const auto& [key, c] : targets[s].terms()) {
            auto it = index.find(key);
            if (it == index.end()) throw BoundsError("target lies outside the codomain");
            b[it->second] = c;
        }
        rhs.insert(rhs.end(), b.begin(), b.end());
    }

    auto sol = solve_linear(stacked, rhs);
    AffineSolution out;
    out.solvable = sol.solvable;
    if (sol.solvable) {
        out.particular = from_vector(space, domain, sol.particular);
        for (const auto& v : sol.kernel) out.kernel.push_back(from_vector(space, domain, v));
    }
    return out;
}

AffineSolution solve_affine(const UeaElt<Rational>& op, const ModElt<Rational>& target,
                            std::uint32_t max_j, std::uint32_t max_k,
                            const CharacterParams<Rational>& p, const BracketRules& rules) {
    return solve_affine_system({op}, {target}, max_j, max_k, p, rules);
}

namespace {

// sparse row-echelon set over Q for incremental span membership
class SpanBasis {
public:
    // reduces v in place; returns true if v was independent (and inserted)
    bool insert(std::map<std::size_t, Rational> v) {
        reduce(v);
        if (v.empty()) return false;
        auto lead = v.begin()->first;
        Rational inv = v.begin()->second.inverse();
        for (auto& [c, val] : v) val *= inv;
        rows_.emplace(lead, std::move(v));
        return true;
    }

    bool contains(std::map<std::size_t, Rational> v) const {
        reduce(v);
        return v.empty();
    }

    std::size_t rank() const { return rows_.size(); }

private:
    void reduce(std::map<std::size_t, Rational>& v) const {
        while (!v.empty()) {
            auto it = rows_.find(v.begin()->first);
            if (it == rows_.end()) return;
            Rational f = v.begin()->second;
            for (const auto& [c, val] : it->second) {
                auto vt = v.find(c);
                if (vt == v.end()) {
                    v.emplace(c, -f * val);
                } else {
                    vt->second -= f * val;
                    if (vt->second.is_zero()) v.erase(vt);
                }
            }
        }
    }

    std::map<std::size_t, std::map<std::size_t, Rational>> rows_; // lead col -> row
};

} // namespace

bool reaches_generator(const ModElt<Rational>& x, const CharacterParams<Rational>& p,
                       const Bounds& bounds, std::size_t budget, const BracketRules& rules) {
    if (x.is_zero_elt()) throw DomainError("reaches_generator requires a nonzero element");
    Space space = x.space();

    auto keys = enumerate_keys(space, bounds.max_weight, bounds.max_j, bounds.max_k);
    std::map<BasisKey, std::size_t> index;
    for (std::size_t c = 0; c < keys.size(); ++c) index[keys[c]] = c;
    std::size_t v_index = index.at(BasisKey{});

    auto to_vec = [&](const ModElt<Rational>& e) {
        std::map<std::size_t, Rational> v;
        for (const auto& [key, c] : e.terms()) {
            auto it = index.find(key);
            if (it == index.end()) throw BoundsError("element lies outside the truncation");
            v[it->second] = c;
        }
        return v;
    };

    std::vector<UeaElt<Rational>> dictionary;
    for (long k = 2; k <= 5; ++k) dictionary.push_back(ahat(k, p));
    dictionary.push_back(UeaElt<Rational>::generator(1));
    if (space != Space::V) dictionary.push_back(UeaElt<Rational>::generator(0));

    SpanBasis span;
    std::map<std::size_t, Rational> e_v{{v_index, Rational(1)}};

    std::deque<ModElt<Rational>> queue;
    span.insert(to_vec(x));
    queue.push_back(x);
    if (span.contains(e_v)) return true;

    while (!queue.empty() && budget > 0) {
        ModElt<Rational> cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : dictionary) {
            if (budget == 0) break;
            --budget;
            ModElt<Rational> y;
            try {
                y = act(g, cur, p, bounds, rules);
            } catch (const BoundsError&) {
                continue; // direction leaves the truncation; bounded search skips it
            }
            if (y.is_zero_elt()) continue;
            if (span.insert(to_vec(y))) {
                if (span.contains(e_v)) return true;
                if (span.rank() == keys.size()) return true; // full truncation reached
                queue.push_back(std::move(y));
            }
        }
    }
    return false;
}

RestrictionCheck check_reducible_restriction(long kmax) {
    if (kmax < 2) throw DomainError("check_reducible_restriction requires kmax >= 2");
    RestrictionCheck out;
    auto p = symbolic_params();
    RatFunc z = p.z, m2 = p.m2, m3 = p.m3;
    RatFunc l1_val = -m3 / (z * z); // action of l_1 on the quotient line
    for (long k = 2; k <= kmax; ++k) {
        RatFunc lk_val = k == 2 ? m2 - m3 / z : RatFunc(Rational(0));
        RatFunc defect =
            (lk_val - z.pow(static_cast<std::uint32_t>(k - 1)) * l1_val) - p.character_value(k);
        // impose the reducibility locus m4 = z m3
        RatFunc residual = defect.substitute("m4", z * m3);
        if (!residual.is_zero()) {
            out.pass = false;
            out.bad_k = k;
            out.residual = residual.to_string();
            return out;
        }
    }
    return out;
}

} // namespace vir
