#ifndef VIR_REP_HPP
#define VIR_REP_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "vir/linalg.hpp"
#include "vir/multiindex.hpp"
#include "vir/pbw.hpp"
#include "vir/ratfunc.hpp"

namespace vir {

enum class Space { V, W, Ind };

inline std::string space_name(Space s) {
    switch (s) {
        case Space::V: return "V";
        case Space::W: return "W";
        default: return "Ind";
    }
}

/// Parameters (z, m) of the character of C_m plus the central charge theta.
template <class K>
struct CharacterParams {
    K z, m2, m3, m4, theta;
    Rational m5_offset{0}; // mutation hook for the check battery; 0 in real use

    /// Value of the character on a_hat_k = l_k - z^{k-1} l_1.
    K character_value(long k) const {
        if (k < 2) throw DomainError("character is defined for k >= 2");
        if (k == 2) return m2;
        if (k == 3) return m3;
        if (k == 4) return m4;
        K val = K(Rational(-(k - 4))) * m3 * z.pow(static_cast<std::uint32_t>(k - 3)) +
                K(Rational(k - 3)) * m4 * z.pow(static_cast<std::uint32_t>(k - 4));
        if (k == 5 && !m5_offset.is_zero()) val = val + K(m5_offset);
        return val;
    }

    /// The four inequations guaranteeing simplicity:
    /// z m3 != m4, 2 z m2 != m3, 3 z m3 != 2 m4, z^2 m2 + m4 != 2 z m3.
    bool conditions_hold() const {
        if (is_zero(z)) return false;
        return !is_zero(z * m3 - m4) && !is_zero(K(Rational(2)) * z * m2 - m3) &&
               !is_zero(K(Rational(3)) * z * m3 - K(Rational(2)) * m4) &&
               !is_zero(z * z * m2 + m4 - K(Rational(2)) * z * m3);
    }
};

/// Fully symbolic parameters over Q(z, m2, m3, m4, theta, t).
inline CharacterParams<RatFunc> symbolic_params() {
    return {RatFunc::variable("z"), RatFunc::variable("m2"), RatFunc::variable("m3"),
            RatFunc::variable("m4"), RatFunc::variable("theta")};
}

inline CharacterParams<Rational> numeric_params(const ParamAssignment& p) {
    CharacterParams<Rational> out{p.get("z"), p.get("m2"), p.get("m3"), p.get("m4"),
                                  p.has("theta") ? p.get("theta") : Rational(0)};
    if (out.z.is_zero()) throw DomainError("parameter z must be nonzero");
    return out;
}

/// Basis vector label: l^i * l0^j * l1^k * v.
struct BasisKey {
    MultiIndex i;
    std::uint32_t j = 0;
    std::uint32_t k = 0;

    friend bool operator==(const BasisKey& a, const BasisKey& b) {
        return a.i == b.i && a.j == b.j && a.k == b.k;
    }
    friend bool operator<(const BasisKey& a, const BasisKey& b) {
        int c = compare(a.i, b.i);
        if (c != 0) return c < 0;
        if (a.j != b.j) return a.j < b.j;
        return a.k < b.k;
    }
};

/// Truncation bounds for module elements; exceeding a bound is always a
/// reported error, never a silent drop.
struct Bounds {
    std::uint64_t max_weight = std::numeric_limits<std::uint64_t>::max();
    std::uint32_t max_j = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t max_k = std::numeric_limits<std::uint32_t>::max();

    static Bounds unbounded() { return {}; }
    static Bounds of(std::uint64_t w, std::uint32_t j, std::uint32_t k) { return {w, j, k}; }

    bool admits(const BasisKey& key) const {
        return key.i.weight() <= max_weight && key.j <= max_j && key.k <= max_k;
    }
};

/// Element of V_m, W_m or Ind_{z,theta} as a combination of basis vectors.
template <class K>
class ModElt {
public:
    ModElt() : space_(Space::Ind) {}
    explicit ModElt(Space s) : space_(s) {}

    static ModElt generator(Space s) {
        ModElt x(s);
        x.add_term(BasisKey{}, K(1));
        return x;
    }

    static ModElt basis_vector(Space s, BasisKey key, K coeff = K(1)) {
        ModElt x(s);
        x.add_term(std::move(key), std::move(coeff));
        return x;
    }

    Space space() const { return space_; }
    const std::map<BasisKey, K>& terms() const { return terms_; }
    bool is_zero_elt() const { return terms_.empty(); }

    void add_term(BasisKey key, const K& c) {
        validate_key(key);
        if (is_zero(c)) return;
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), c);
        } else {
            it->second = it->second + c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    ModElt operator-() const {
        ModElt r(space_);
        for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
        return r;
    }
    ModElt& operator+=(const ModElt& o) {
        check_space(o);
        for (const auto& [key, c] : o.terms_) add_term(key, c);
        return *this;
    }
    ModElt& operator-=(const ModElt& o) { return *this += -o; }
    friend ModElt operator+(ModElt a, const ModElt& b) { return a += b; }
    friend ModElt operator-(ModElt a, const ModElt& b) { return a -= b; }
    friend ModElt operator*(const K& s, const ModElt& x) {
        ModElt r(x.space_);
        if (is_zero(s)) return r;
        for (const auto& [key, c] : x.terms_) r.terms_.emplace(key, s * c);
        return r;
    }
    friend bool operator==(const ModElt& a, const ModElt& b) {
        return a.space_ == b.space_ && a.terms_ == b.terms_;
    }

    /// Same basis keys viewed in another space; restricting validates keys.
    ModElt cast(Space s) const {
        ModElt r(s);
        for (const auto& [key, c] : terms_) r.add_term(key, c);
        return r;
    }

    void check_space(const ModElt& o) const {
        if (space_ != o.space_) throw DomainError("module elements from different spaces");
    }

private:
    void validate_key(const BasisKey& key) const {
        if (space_ == Space::V && (!key.i.is_zero() || key.j != 0))
            throw DomainError("V_m basis admits only l1 powers");
        if (space_ == Space::W && !key.i.is_zero())
            throw DomainError("W_m basis admits no negative modes");
    }

    Space space_;
    std::map<BasisKey, K> terms_;
};

// ---------------------------------------------------------------------------
// Action of U(V) via rewriting into the adapted PBW order
//   (negative modes | l_0 | l_1 | a_hat_k | c),
// followed by a_hat_k -> m_k and c -> theta on the generator.
// ---------------------------------------------------------------------------

namespace detail {

// letter of the adapted alphabet: mode l_t (t <= 1) or a_hat_k (k >= 2)
struct Letter {
    long v;
    bool ahat;
};

inline bool letter_le(const Letter& a, const Letter& b) {
    if (a.ahat != b.ahat) return !a.ahat;
    return a.v <= b.v;
}

template <class K>
void conv_mode(long s, const K& coeff, const CharacterParams<K>& p,
               std::vector<std::pair<K, Letter>>& out) {
    if (s <= 1) {
        out.emplace_back(coeff, Letter{s, false});
    } else {
        out.emplace_back(coeff, Letter{s, true});
        out.emplace_back(coeff * p.z.pow(static_cast<std::uint32_t>(s - 1)), Letter{1, false});
    }
}

// [x, y] in the adapted alphabet; central contributions arrive multiplied by
// theta (the c -> theta substitution happens here, inside the module action).
template <class K>
void adapted_commutator(const Letter& x, const Letter& y, const CharacterParams<K>& p,
                        const BracketRules& rules, std::vector<std::pair<K, Letter>>& terms,
                        K& central) {
    terms.clear();
    central = K(0);
    if (!x.ahat && !y.ahat) {
        auto [mc, cen] = mode_bracket(x.v, y.v, rules);
        if (mc != 0) conv_mode(x.v + y.v, K(Rational(mc)), p, terms);
        if (!cen.is_zero()) central = K(cen) * p.theta;
    } else if (x.ahat && !y.ahat) {
        // [l_k - z^{k-1} l_1, l_t]
        long k = x.v, t = y.v;
        auto [mc, cen] = mode_bracket(k, t, rules);
        if (mc != 0) conv_mode(k + t, K(Rational(mc)), p, terms);
        if (!cen.is_zero()) central = K(cen) * p.theta;
        auto [mc2, cen2] = mode_bracket(1, t, rules);
        K zk = p.z.pow(static_cast<std::uint32_t>(k - 1));
        if (mc2 != 0) conv_mode(1 + t, -zk * K(Rational(mc2)), p, terms);
        if (!cen2.is_zero()) central = central - zk * K(cen2) * p.theta;
    } else if (!x.ahat && y.ahat) {
        std::vector<std::pair<K, Letter>> inner;
        K cen{};
        adapted_commutator(y, x, p, rules, inner, cen);
        for (auto& [c, L] : inner) terms.emplace_back(-c, L);
        central = -cen;
    } else {
        // [a_j, a_k] = (k-j) a_{j+k} + (j-1) z^{k-1} a_{j+1} - (k-1) z^{j-1} a_{k+1}
        long j = x.v, k = y.v;
        if (k != j)
            terms.emplace_back(K(Rational(k - j)), Letter{j + k, true});
        if (j != 1)
            terms.emplace_back(K(Rational(j - 1)) * p.z.pow(static_cast<std::uint32_t>(k - 1)),
                               Letter{j + 1, true});
        if (k != 1)
            terms.emplace_back(-K(Rational(k - 1)) * p.z.pow(static_cast<std::uint32_t>(j - 1)),
                               Letter{k + 1, true});
    }
}

template <class K>
void rewrite_adapted(std::vector<Letter> letters, K coeff, const CharacterParams<K>& p,
                     const Bounds& bounds, const BracketRules& rules, ModElt<K>& out) {
    std::vector<std::pair<std::vector<Letter>, K>> stack;
    stack.emplace_back(std::move(letters), std::move(coeff));
    std::vector<std::pair<K, Letter>> terms;
    while (!stack.empty()) {
        auto [w, c] = std::move(stack.back());
        stack.pop_back();
        std::size_t pos = 0;
        bool canonical = true;
        for (; pos + 1 < w.size(); ++pos) {
            if (!letter_le(w[pos], w[pos + 1])) {
                canonical = false;
                break;
            }
        }
        if (canonical) {
            std::vector<std::uint32_t> neg;
            std::uint32_t j = 0, k = 0;
            for (const auto& L : w) {
                if (L.ahat) {
                    c = c * p.character_value(L.v);
                } else if (L.v < 0) {
                    std::size_t s = static_cast<std::size_t>(-L.v);
                    if (neg.size() < s) neg.resize(s, 0);
                    ++neg[s - 1];
                } else if (L.v == 0) {
                    ++j;
                } else {
                    ++k;
                }
            }
            BasisKey key{MultiIndex(std::move(neg)), j, k};
            if (!bounds.admits(key)) {
                throw BoundsError("action overflows truncation at basis vector i=" +
                                  key.i.to_string() + " j=" + std::to_string(key.j) +
                                  " k=" + std::to_string(key.k));
            }
            out.add_term(std::move(key), c);
            continue;
        }
        K central{};
        adapted_commutator(w[pos], w[pos + 1], p, rules, terms, central);
        for (const auto& [tc, L] : terms) {
            std::vector<Letter> shorter;
            shorter.reserve(w.size() - 1);
            shorter.insert(shorter.end(), w.begin(), w.begin() + pos);
            shorter.push_back(L);
            shorter.insert(shorter.end(), w.begin() + pos + 2, w.end());
            stack.emplace_back(std::move(shorter), c * tc);
        }
        if (!is_zero(central)) {
            std::vector<Letter> dropped;
            dropped.reserve(w.size() - 2);
            dropped.insert(dropped.end(), w.begin(), w.begin() + pos);
            dropped.insert(dropped.end(), w.begin() + pos + 2, w.end());
            stack.emplace_back(std::move(dropped), c * central);
        }
        std::swap(w[pos], w[pos + 1]);
        stack.emplace_back(std::move(w), std::move(c));
    }
}

inline void check_admissible(const PbwWord& word, Space space) {
    for (long t : word.factors) {
        if (space == Space::V && t < 1)
            throw DomainError("mode l_" + std::to_string(t) + " is inadmissible for V_m");
        if (space == Space::W && t < 0)
            throw DomainError("mode l_" + std::to_string(t) + " is inadmissible for W_m");
    }
    if (word.cpow > 0 && space != Space::Ind)
        throw DomainError("central element acts only on Ind");
}

template <class K>
void key_letters(const BasisKey& key, std::vector<Letter>& out) {
    const auto& e = key.i.entries();
    for (std::size_t s = e.size(); s-- > 0;) {
        for (std::uint32_t r = 0; r < e[s]; ++r) out.push_back(Letter{-(long)(s + 1), false});
    }
    for (std::uint32_t r = 0; r < key.j; ++r) out.push_back(Letter{0, false});
    for (std::uint32_t r = 0; r < key.k; ++r) out.push_back(Letter{1, false});
}

} // namespace detail

/// Exact action of u on x. Modes must be admissible for x's space; results
/// beyond `bounds` raise BoundsError.
template <class K>
ModElt<K> act(const UeaElt<K>& u, const ModElt<K>& x, const CharacterParams<K>& p,
              const Bounds& bounds = Bounds::unbounded(), const BracketRules& rules = {}) {
    ModElt<K> out(x.space());
    for (const auto& [word, cu] : u.terms()) {
        detail::check_admissible(word, x.space());
        // expand plain modes l_t (t >= 2) into a_hat_t + z^{t-1} l_1
        std::vector<std::pair<K, std::vector<detail::Letter>>> expanded;
        expanded.emplace_back(cu, std::vector<detail::Letter>{});
        if (word.cpow > 0) expanded.front().first = cu * p.theta.pow(word.cpow);
        for (long tmode : word.factors) {
            if (tmode <= 1) {
                for (auto& [c, ls] : expanded) ls.push_back(detail::Letter{tmode, false});
            } else {
                std::vector<std::pair<K, std::vector<detail::Letter>>> next;
                next.reserve(expanded.size() * 2);
                K zpow = p.z.pow(static_cast<std::uint32_t>(tmode - 1));
                for (auto& [c, ls] : expanded) {
                    auto with_ahat = ls;
                    with_ahat.push_back(detail::Letter{tmode, true});
                    next.emplace_back(c, std::move(with_ahat));
                    auto with_l1 = std::move(ls);
                    with_l1.push_back(detail::Letter{1, false});
                    next.emplace_back(c * zpow, std::move(with_l1));
                }
                expanded = std::move(next);
            }
        }
        for (const auto& [key, cx] : x.terms()) {
            for (const auto& [c, ls] : expanded) {
                std::vector<detail::Letter> letters(ls);
                detail::key_letters<K>(key, letters);
                detail::rewrite_adapted(std::move(letters), c * cx, p, bounds, rules, out);
            }
        }
    }
    return out;
}

/// a_hat_k = l_k - z^{k-1} l_1 as an operator.
template <class K>
UeaElt<K> ahat(long k, const CharacterParams<K>& p) {
    if (k < 2) throw DomainError("a_hat_k requires k >= 2");
    UeaElt<K> u = UeaElt<K>::generator(k);
    u += UeaElt<K>::generator(1, -p.z.pow(static_cast<std::uint32_t>(k - 1)));
    return u;
}

/// a_hat_k - m_k.
template <class K>
UeaElt<K> ahat_minus_m(long k, const CharacterParams<K>& p) {
    UeaElt<K> u = ahat(k, p);
    u += UeaElt<K>::word(PbwWord{}, -p.character_value(k));
    return u;
}

// ---------------------------------------------------------------------------
// Character consistency
// ---------------------------------------------------------------------------

struct CharacterCheck {
    bool pass = true;
    long bad_i = 0, bad_j = 0;
    std::string residual;
};

/// The bracket of generators evaluated through the character must vanish:
/// (j-i) m_{i+j} + (i-1) z^{j-1} m_{i+1} - (j-1) z^{i-1} m_{j+1} = 0.
template <class K>
CharacterCheck verify_character(const CharacterParams<K>& p, long kmax) {
    if (kmax < 4) throw DomainError("verify_character requires kmax >= 4");
    CharacterCheck out;
    for (long i = 2; i <= kmax; ++i) {
        for (long j = i + 1; j <= kmax; ++j) {
            K lhs = K(Rational(j - i)) * p.character_value(i + j) +
                    K(Rational(i - 1)) * p.z.pow(static_cast<std::uint32_t>(j - 1)) *
                        p.character_value(i + 1) -
                    K(Rational(j - 1)) * p.z.pow(static_cast<std::uint32_t>(i - 1)) *
                        p.character_value(j + 1);
            if (!is_zero(lhs)) {
                out.pass = false;
                out.bad_i = i;
                out.bad_j = j;
                out.residual = to_string(lhs);
                return out;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Truncated operators, kernels, affine solving
// ---------------------------------------------------------------------------

template <class K>
struct TruncatedOperator {
    std::vector<BasisKey> domain, codomain;
    std::vector<std::vector<K>> entries; // entries[row][col], codomain x domain
};

/// All basis keys of the truncation, in canonical order.
std::vector<BasisKey> enumerate_keys(Space space, std::uint64_t max_weight, std::uint32_t max_j,
                                     std::uint32_t max_k);

template <class K>
TruncatedOperator<K> build_operator(const UeaElt<K>& op, Space space,
                                    std::vector<BasisKey> domain, std::vector<BasisKey> codomain,
                                    const CharacterParams<K>& p, const BracketRules& rules = {}) {
    TruncatedOperator<K> T;
    T.domain = std::move(domain);
    T.codomain = std::move(codomain);
    std::map<BasisKey, std::size_t> index;
    for (std::size_t r = 0; r < T.codomain.size(); ++r) index[T.codomain[r]] = r;
    T.entries.assign(T.codomain.size(), std::vector<K>(T.domain.size(), K(0)));
    for (std::size_t c = 0; c < T.domain.size(); ++c) {
        ModElt<K> img = act(op, ModElt<K>::basis_vector(space, T.domain[c]), p,
                            Bounds::unbounded(), rules);
        for (const auto& [key, coeff] : img.terms()) {
            auto it = index.find(key);
            if (it == index.end())
                throw BoundsError("operator image overflows the codomain at i=" +
                                  key.i.to_string() + " j=" + std::to_string(key.j) +
                                  " k=" + std::to_string(key.k));
            T.entries[it->second][c] = coeff;
        }
    }
    return T;
}

/// Matrix of a_hat_k on span{v, l1 v, ..., l1^N v}; upper triangular with
/// diagonal m_k + n z^k (1-k).
template <class K>
TruncatedOperator<K> eigen_matrix(long k, std::uint32_t N, const CharacterParams<K>& p,
                                  const BracketRules& rules = {}) {
    if (k < 2) throw DomainError("eigen_matrix requires k >= 2");
    std::vector<BasisKey> basis;
    for (std::uint32_t n = 0; n <= N; ++n) basis.push_back(BasisKey{MultiIndex{}, 0, n});
    return build_operator(ahat(k, p), Space::V, basis, basis, p, rules);
}

/// Exact kernel basis of `op` on the (max_j, max_k) truncation; the codomain
/// is enlarged by one l1 degree so the image is represented exactly.
std::vector<ModElt<Rational>> kernel(const UeaElt<Rational>& op, Space space, std::uint32_t max_j,
                                     std::uint32_t max_k, const CharacterParams<Rational>& p,
                                     const BracketRules& rules = {});

struct AffineSolution {
    bool solvable = false;
    ModElt<Rational> particular{Space::W};
    std::vector<ModElt<Rational>> kernel;
};

/// Solution set of op.x = target over the truncation (bounded search).
AffineSolution solve_affine(const UeaElt<Rational>& op, const ModElt<Rational>& target,
                            std::uint32_t max_j, std::uint32_t max_k,
                            const CharacterParams<Rational>& p, const BracketRules& rules = {});

/// Simultaneous system op_r.x = target_r over the truncation.
AffineSolution solve_affine_system(const std::vector<UeaElt<Rational>>& ops,
                                   const std::vector<ModElt<Rational>>& targets,
                                   std::uint32_t max_j, std::uint32_t max_k,
                                   const CharacterParams<Rational>& p,
                                   const BracketRules& rules = {});

/// Bounded generation probe: true means a nonzero multiple of the canonical
/// generator v was produced from x (a proof); false only means not found
/// within the budget.
bool reaches_generator(const ModElt<Rational>& x, const CharacterParams<Rational>& p,
                       const Bounds& bounds, std::size_t budget, const BracketRules& rules = {});

// ---------------------------------------------------------------------------
// Support and maximal term of Ind elements
// ---------------------------------------------------------------------------

template <class K>
std::pair<std::set<MultiIndex, bool (*)(const MultiIndex&, const MultiIndex&)>, MultiIndex>
support_and_max(const ModElt<K>& x) {
    if (x.is_zero_elt()) throw DomainError("support of the zero element");
    std::set<MultiIndex, bool (*)(const MultiIndex&, const MultiIndex&)> supp(&prec_less);
    for (const auto& [key, c] : x.terms()) supp.insert(key.i);
    return {supp, *supp.rbegin()};
}

template <class K>
MultiIndex max_term(const ModElt<K>& x) {
    return support_and_max(x).second;
}

// ---------------------------------------------------------------------------
// The reducible case m4 = z m3 (restriction to the 1-dimensional quotient)
// ---------------------------------------------------------------------------

struct RestrictionCheck {
    bool pass = true;
    long bad_k = 0;
    std::string residual;
};

/// Under m4 = z m3 the 1-dimensional n-module with l_1 -> -m3/z^2,
/// l_2 -> m2 - m3/z, l_k -> 0 (k >= 3) must restrict on each a_hat_k to m_k.
RestrictionCheck check_reducible_restriction(long kmax);

} // namespace vir

#endif
