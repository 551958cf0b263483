#ifndef VIR_MULTIINDEX_HPP
#define VIR_MULTIINDEX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vir/error.hpp"

namespace vir {

/// Finitely supported exponent vector (i_1, i_2, ...) indexing negative-mode
/// monomials l^i = ... l_{-2}^{i_2} l_{-1}^{i_1}. Entry s (1-based) is i_s.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::uint32_t> entries) : e_(std::move(entries)) { trim(); }

    static MultiIndex unit(std::uint32_t s) {
        if (s < 1) throw DomainError("multi-index positions start at 1");
        if (s > 1000000) throw DomainError("multi-index position out of range");
        std::vector<std::uint32_t> e(s, 0);
        e[s - 1] = 1;
        return MultiIndex(std::move(e));
    }

    bool is_zero() const { return e_.empty(); }
    std::uint32_t size() const { return static_cast<std::uint32_t>(e_.size()); }

    std::uint32_t at(std::uint32_t s) const { // 1-based
        if (s < 1 || s > e_.size()) return 0;
        return e_[s - 1];
    }

    std::uint64_t weight() const {
        std::uint64_t w = 0;
        for (std::size_t s = 0; s < e_.size(); ++s) w += (s + 1) * std::uint64_t(e_[s]);
        return w;
    }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (auto x : e_) d += x;
        return d;
    }

    /// Smallest s with i_s != 0; 0 for the zero index.
    std::uint32_t min_support() const {
        for (std::size_t s = 0; s < e_.size(); ++s)
            if (e_[s] > 0) return static_cast<std::uint32_t>(s + 1);
        return 0;
    }

    MultiIndex plus(std::uint32_t s, std::uint32_t count = 1) const {
        if (s < 1 || s > 1000000) throw DomainError("multi-index position out of range");
        std::vector<std::uint32_t> e(e_);
        if (e.size() < s) e.resize(s, 0);
        e[s - 1] += count;
        return MultiIndex(std::move(e));
    }

    MultiIndex minus(std::uint32_t s, std::uint32_t count = 1) const {
        if (at(s) < count) throw DomainError("multi-index entry underflow");
        std::vector<std::uint32_t> e(e_);
        e[s - 1] -= count;
        return MultiIndex(std::move(e));
    }

    const std::vector<std::uint32_t>& entries() const { return e_; }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e_ != b.e_; }

    std::string to_string() const;
    static MultiIndex from_string(const std::string& s);

private:
    void trim() {
        while (!e_.empty() && e_.back() == 0) e_.pop_back();
    }
    std::vector<std::uint32_t> e_;
};

/// The total order on multi-indices: weight, then degree, then larger
/// minimal support is smaller, then strip the common minimal unit and repeat.
/// Returns -1 (a before b), 0, or +1.
int compare(const MultiIndex& a, const MultiIndex& b);

inline bool prec_less(const MultiIndex& a, const MultiIndex& b) { return compare(a, b) < 0; }

} // namespace vir

#endif
