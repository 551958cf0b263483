#ifndef VIR_GROEBNER_HPP
#define VIR_GROEBNER_HPP

#include <vector>

#include "vir/poly.hpp"

namespace vir {

struct GroebnerOptions {
    std::size_t max_basis = 4096;
    std::size_t max_pairs = 1u << 20;
    std::uint64_t max_degree = 512;
};

/// Fully reduce p modulo basis (division remainder).
Poly reduce_full(const Poly& p, const std::vector<Poly>& basis, const TermOrder& ord);

/// S-polynomial of f and g under ord.
Poly s_poly(const Poly& f, const Poly& g, const TermOrder& ord);

/// Reduced Groebner basis of the ideal generated by gens, Buchberger with the
/// normal selection strategy (lowest lcm degree first) and product criterion.
/// Exceeding the resource caps is a reported error.
std::vector<Poly> buchberger(const std::vector<Poly>& gens, const TermOrder& ord,
                             const GroebnerOptions& opts = {});

} // namespace vir

#endif
