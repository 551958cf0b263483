#ifndef VIR_LINALG_HPP
#define VIR_LINALG_HPP

#include <cstddef>
#include <vector>

#include "vir/rational.hpp"

namespace vir {

/// Exact dense matrix over Q, row-major.
using QMatrix = std::vector<std::vector<Rational>>;

/// Basis of the null space of an m x n matrix (vectors of length n).
/// Fraction-free (Bareiss) forward elimination, rational back-substitution.
std::vector<std::vector<Rational>> kernel_basis(const QMatrix& a, std::size_t ncols);

struct LinearSolution {
    bool solvable = false;
    std::vector<Rational> particular;               // one solution (free vars zero)
    std::vector<std::vector<Rational>> kernel;      // null space basis
};

/// Solves a x = b exactly.
LinearSolution solve_linear(const QMatrix& a, const std::vector<Rational>& b);

std::size_t rank(const QMatrix& a, std::size_t ncols);

} // namespace vir

#endif
