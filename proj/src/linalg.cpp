#include "vir/linalg.hpp"

#include <gmpxx.h>

namespace vir {

namespace {

struct Ref {
    std::vector<std::vector<mpz_class>> rows; // row echelon, integer entries
    std::vector<std::size_t> pivot_cols;      // increasing
};

// Bareiss fraction-free elimination; exact integer arithmetic throughout.
Ref bareiss(const QMatrix& a, std::size_t ncols) {
    std::vector<std::vector<mpz_class>> m;
    m.reserve(a.size());
    for (const auto& row : a) {
        mpz_class l(1);
        for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.denominator().get_mpz_t());
        std::vector<mpz_class> r(ncols, mpz_class(0));
        for (std::size_t j = 0; j < row.size() && j < ncols; ++j)
            r[j] = row[j].numerator() * (l / row[j].denominator());
        m.push_back(std::move(r));
    }

    Ref ref;
    mpz_class prev(1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        for (std::size_t i = row + 1; i < m.size(); ++i) {
            for (std::size_t j = col + 1; j < ncols; ++j) {
                mpz_class num = m[row][col] * m[i][j] - m[i][col] * m[row][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[row][col];
        ref.pivot_cols.push_back(col);
        ++row;
    }
    m.resize(row); // zero rows dropped; callers track consistency separately
    ref.rows = std::move(m);
    return ref;
}

// Solves the echelon system rows * x = rhs for the pivot variables given the
// values of the free variables already placed in x.
void back_substitute(const Ref& ref, std::vector<Rational>& x,
                     const std::vector<Rational>& rhs) {
    for (std::size_t r = ref.rows.size(); r-- > 0;) {
        std::size_t pc = ref.pivot_cols[r];
        Rational acc = rhs.empty() ? Rational(0) : rhs[r];
        for (std::size_t c = pc + 1; c < x.size(); ++c) {
            if (ref.rows[r][c] != 0 && !x[c].is_zero())
                acc -= Rational(ref.rows[r][c], 1) * x[c];
        }
        x[pc] = acc / Rational(ref.rows[r][pc], 1);
    }
}

} // namespace

std::vector<std::vector<Rational>> kernel_basis(const QMatrix& a, std::size_t ncols) {
    Ref ref = bareiss(a, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : ref.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(ncols, Rational(0));
        x[f] = Rational(1);
        back_substitute(ref, x, {});
        basis.push_back(std::move(x));
    }
    return basis;
}

LinearSolution solve_linear(const QMatrix& a, const std::vector<Rational>& b) {
    std::size_t ncols = 0;
    for (const auto& r : a) ncols = std::max(ncols, r.size());
    QMatrix aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<Rational> row(a[i]);
        row.resize(ncols, Rational(0));
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    Ref ref = bareiss(aug, ncols + 1);

    LinearSolution out;
    std::vector<Rational> rhs;
    for (std::size_t r = 0; r < ref.rows.size(); ++r) {
        if (ref.pivot_cols[r] == ncols) return out; // 0 = nonzero: inconsistent
        rhs.push_back(Rational(ref.rows[r][ncols], 1));
    }
    out.solvable = true;
    out.particular.assign(ncols, Rational(0));
    back_substitute(ref, out.particular, rhs);

    std::vector<bool> is_pivot(ncols, false);
    for (auto c : ref.pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(ncols, Rational(0));
        x[f] = Rational(1);
        back_substitute(ref, x, {});
        out.kernel.push_back(std::move(x));
    }
    return out;
}

std::size_t rank(const QMatrix& a, std::size_t ncols) {
    return bareiss(a, ncols).rows.size();
}

} // namespace vir
