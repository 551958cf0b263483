#include "doctest.h"

#include "vir/rep.hpp"
#include "vir/rng.hpp"

using namespace vir;

namespace {

// reference implementation: the four-clause recursion, verbatim
int compare_recursive(const MultiIndex& a, const MultiIndex& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight() ? -1 : 1;
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    if (a == b) return 0;
    std::uint32_t pa = a.min_support(), pb = b.min_support();
    if (pa != pb) return pa > pb ? -1 : 1;
    return compare_recursive(a.minus(pa), b.minus(pb));
}

MultiIndex random_mi(Rng& rng, long max_weight) {
    MultiIndex mi;
    long budget = rng.uniform(0, max_weight);
    while (budget > 0) {
        long s = rng.uniform(1, budget);
        mi = mi.plus(static_cast<std::uint32_t>(s));
        budget -= s;
    }
    return mi;
}

void enumerate(std::uint64_t max_weight, std::vector<MultiIndex>& out) {
    std::function<void(MultiIndex, std::uint64_t, std::uint32_t)> rec =
        [&](MultiIndex cur, std::uint64_t left, std::uint32_t minpart) {
            out.push_back(cur);
            for (std::uint32_t part = minpart; part <= left; ++part)
                rec(cur.plus(part), left - part, part);
        };
    rec(MultiIndex{}, max_weight, 1);
}

} // namespace

TEST_CASE("weight and degree") {
    CHECK(MultiIndex{}.weight() == 0);
    CHECK(MultiIndex{}.degree() == 0);
    CHECK(MultiIndex::unit(3).weight() == 3);
    CHECK(MultiIndex::unit(3).degree() == 1);
    CHECK(MultiIndex::unit(7).degree() == 1);
    auto m = MultiIndex::unit(1).plus(1).plus(2); // 2e_1 + e_2
    CHECK(m.weight() == 4);
    CHECK(m.degree() == 3);
}

TEST_CASE("the four comparison clauses") {
    auto e1 = MultiIndex::unit(1), e2 = MultiIndex::unit(2), e3 = MultiIndex::unit(3);
    CHECK(prec_less(e1, e2));                        // weights 1 < 2
    CHECK(prec_less(e2, e1.plus(1)));                // equal weight, degrees 1 < 2
    CHECK(prec_less(e2.plus(2), e1.plus(3)));        // equal w, d; min support 2 > 1
    CHECK(compare(e3, e3) == 0);
    // recursion clause: strip the common minimal unit
    auto a = e1.plus(3), b = e1.plus(2).plus(1);     // e_1+e_3 vs 2e_1+e_2
    CHECK(compare(a, b) == -compare_recursive(b, a));
}

TEST_CASE("zero is the unique minimum (exhaustive to weight 8)") {
    std::vector<MultiIndex> all;
    enumerate(8, all);
    for (const auto& m : all)
        if (!m.is_zero()) CHECK(prec_less(MultiIndex{}, m));
}

TEST_CASE("total order laws, exhaustive to weight 6") {
    std::vector<MultiIndex> all;
    enumerate(6, all);
    for (const auto& a : all) {
        for (const auto& b : all) {
            CHECK(compare(a, b) == -compare(b, a));
            CHECK((compare(a, b) == 0) == (a == b));
        }
    }
    for (const auto& a : all)
        for (const auto& b : all)
            for (const auto& c : all)
                if (compare(a, b) <= 0 && compare(b, c) <= 0) CHECK(compare(a, c) <= 0);
}

TEST_CASE("iterative compare agrees with the recursion, randomized to weight 12") {
    Rng rng(31);
    for (int i = 0; i < 500; ++i) {
        auto a = random_mi(rng, 12), b = random_mi(rng, 12);
        CHECK(compare(a, b) == compare_recursive(a, b));
    }
}

TEST_CASE("support and maximal term") {
    using M = ModElt<Rational>;
    auto key = [](MultiIndex i, std::uint32_t j, std::uint32_t k) { return BasisKey{i, j, k}; };

    M x(Space::Ind);
    x.add_term(key(MultiIndex::unit(2), 0, 0), Rational(1));
    x.add_term(key(MultiIndex::unit(1), 0, 1), Rational(1));
    auto [supp, top] = support_and_max(x);
    CHECK(supp.size() == 2);
    CHECK(top == MultiIndex::unit(2));

    CHECK(max_term(M::generator(Space::Ind)) == MultiIndex{});

    M y(Space::Ind);
    y.add_term(key(MultiIndex::unit(1).plus(1), 0, 0), Rational(1)); // l^{2e_1} v
    y.add_term(key(MultiIndex::unit(2), 1, 0), Rational(1));         // l^{e_2} l0 v
    CHECK(max_term(y) == MultiIndex::unit(1).plus(1));               // degree clause

    CHECK_THROWS_AS(support_and_max(M(Space::Ind)), DomainError);
}

TEST_CASE("multi-index text form round-trips") {
    CHECK(MultiIndex::unit(3).to_string() == "[0,0,1]");
    CHECK(MultiIndex{}.to_string() == "[]");
    CHECK(MultiIndex::from_string("[0,0,1]") == MultiIndex::unit(3));
    CHECK(MultiIndex::from_string("[ 2, 1 ]") == MultiIndex::unit(1).plus(1).plus(2));
    CHECK(MultiIndex::from_string("[1,0]") == MultiIndex::unit(1)); // trailing zeros trimmed
    CHECK_THROWS_AS(MultiIndex::from_string("1,2"), ParseError);

    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        auto m = random_mi(rng, 10);
        CHECK(MultiIndex::from_string(m.to_string()) == m);
    }
}
