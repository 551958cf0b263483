#ifndef VIR_SUBALG_HPP
#define VIR_SUBALG_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "vir/groebner.hpp"
#include "vir/lie.hpp"

namespace vir {

/// Generator a_hat_k = l_k - z^{k-1} l_1 of the subalgebra a_z (k >= 2, z != 0).
template <class K>
LieElt<K> az_generator(long k, const K& z) {
    if (k < 2) throw DomainError("a_z generators require k >= 2");
    if (is_zero(z)) throw DomainError("a_z requires z != 0");
    LieElt<K> x = LieElt<K>::mode(k);
    x.add_mode(1, -z.pow(static_cast<std::uint32_t>(k - 1)));
    return x;
}

template <class K>
struct AzCoords {
    std::map<long, K> coords; // k >= 2 -> coefficient of l_k - z^{k-1} l_1
    K defect{};               // leftover l_1 coefficient; 0 iff positive part in a_z
    K l0_part{};
    std::map<long, K> negative; // untouched modes <= -1
    K central{};
};

/// Decomposes x over the basis {l_k - a_k l_1} given the coefficient family
/// a_k; the standard family is a_k = z^{k-1}.
template <class K>
AzCoords<K> az_coords_family(const LieElt<K>& x, const std::function<K(long)>& family) {
    AzCoords<K> out;
    K l1_acc{};
    for (const auto& [mode, c] : x.modes()) {
        if (mode >= 2) {
            out.coords.emplace(mode, c);
            l1_acc = l1_acc + c * family(mode);
        } else if (mode == 1) {
            l1_acc = l1_acc + c;
        } else if (mode == 0) {
            out.l0_part = c;
        } else {
            out.negative.emplace(mode, c);
        }
    }
    out.defect = l1_acc;
    out.central = x.central();
    return out;
}

template <class K>
AzCoords<K> az_coords(const LieElt<K>& x, const K& z) {
    if (is_zero(z)) throw DomainError("a_z requires z != 0");
    return az_coords_family<K>(x, [&z](long k) { return z.pow(static_cast<std::uint32_t>(k - 1)); });
}

template <class K>
struct ClosureReport {
    bool pass = true;
    long bad_i = 0, bad_j = 0;
    std::string defect;
};

/// Closure of the span of {l_k - a_k l_1 : k >= 2} under the bracket: the
/// defect of every [g_i, g_j] must vanish.
template <class K>
ClosureReport<K> check_closure_family(const std::function<K(long)>& family, long kmax,
                                      const BracketRules& rules = {}) {
    if (kmax < 3) throw DomainError("check_closure requires kmax >= 3");
    ClosureReport<K> out;
    for (long i = 2; i < kmax; ++i) {
        for (long j = i + 1; j <= kmax; ++j) {
            LieElt<K> gi = LieElt<K>::mode(i);
            gi.add_mode(1, -family(i));
            LieElt<K> gj = LieElt<K>::mode(j);
            gj.add_mode(1, -family(j));
            auto coords = az_coords_family<K>(bracket(gi, gj, rules), family);
            if (!is_zero(coords.defect) || !coords.negative.empty() || !is_zero(coords.l0_part) ||
                !is_zero(coords.central)) {
                out.pass = false;
                out.bad_i = i;
                out.bad_j = j;
                out.defect = to_string(coords.defect);
                return out;
            }
        }
    }
    return out;
}

template <class K>
ClosureReport<K> check_closure(const K& z, long kmax, const BracketRules& rules = {}) {
    if (is_zero(z)) throw DomainError("a_z requires z != 0");
    return check_closure_family<K>(
        [&z](long k) { return z.pow(static_cast<std::uint32_t>(k - 1)); }, kmax, rules);
}

/// The constraint polynomial D_{i,j} = (j-i) a_{i+j} - (j-1) a_i a_{j+1}
/// + (i-1) a_{i+1} a_j with a_k taken from `coeffs`.
Poly dij(long i, long j, const std::map<long, Poly>& coeffs);

struct ClassifyOptions {
    long kmax = 9;
    bool full_ideal = false;
    GroebnerOptions groebner{};
};

struct ClassifyReport {
    long kmax = 9;
    std::vector<std::string> eliminated;   // a_5..a_kmax in terms of a_2, a_3, a_4
    std::vector<std::string> constraints;  // substituted D_{3,4}, D_{3,5}, D_{3,6}, D_{4,5}
    std::vector<std::string> basis_unsaturated;
    std::vector<std::string> basis_saturated;
    bool member_a3_power = false; // a_3^6 - a_3^5 a_2^2 in the unsaturated ideal
    bool member_a3 = false;       // a_3 - a_2^2 reduces to 0 in the saturated basis
    bool member_a4 = false;       // a_4 - a_2^3 reduces to 0 in the saturated basis
    bool converse = false;        // a_k = a_2^{k-1} annihilates every constraint
    bool pass = false;

    bool full_ran = false; // the 8-variable 9-generator ideal, both elimination orders
    bool full_member_order1 = false; // a_3^6 - a_3^5 a_2^2, lex a9 > ... > a2
    bool full_member_order2 = false; // a_4^3 a_2 - a_4^2 a_3^2, lex ... a5 > a2 > a3 > a4
    std::size_t full_basis_sizes[2] = {0, 0};
};

/// Reproduction of the codimension-one classification: eliminate a_5.. via the
/// D_{2,j} recursion, saturate by a_2 a_3 a_4, and test the memberships that
/// force a_3 = a_2^2 and a_4 = a_2^3.
ClassifyReport classify_codim_one(const ClassifyOptions& opts = {});

} // namespace vir

#endif
