#include <gtest/gtest.h>

#include "cqfit/text.hpp"
#include "oracles.hpp"

using namespace cqfit;

// Sanity checks of the reference implementations on hand-sized inputs.

TEST(Oracles, BruteHom) {
    Example edge = parse_example("R(a,b)\n#answer a");
    Example loop = parse_example("R(c,c)\n#answer c");
    EXPECT_TRUE(oracles::brute_hom_exists(edge, loop));
    EXPECT_FALSE(oracles::brute_hom_exists(loop, edge));
    EXPECT_FALSE(oracles::brute_hom_exists(edge, parse_example("R(a,b)\n#answer b")));
}

TEST(Oracles, BruteEvaluate) {
    Instance i({Fact{"R", {"a", "b"}}, Fact{"R", {"b", "c"}}});
    CQ q = parse_cq("q(x,z) :- R(x,y), R(y,z)");
    EXPECT_EQ(oracles::brute_evaluate(q, i), (std::set<Tuple>{{"a", "c"}}));
}

TEST(Oracles, NaiveProductAndIsomorphism) {
    Example a = parse_example("R(a,b)\nA(b)\n#answer a");
    Example b = parse_example("R(c,d)\nR(d,c)\nA(c)\n#answer c");
    Example p = oracles::naive_product(a, b);
    EXPECT_EQ(p.size(), 3u);
    EXPECT_TRUE(oracles::isomorphic(p, parse_example("R(u,v)\nR(w,x)\nA(x)\n#answer u")));
    EXPECT_FALSE(oracles::isomorphic(p, parse_example("R(u,v)\nR(w,x)\nA(v)\n#answer u")));
}

TEST(Oracles, CqEnumeration) {
    // One atom over {A} and {R}: A(x0), R(x0,x0), R(x0,x1), R(x1,x0), R(x1,x1), R(x1,x2).
    EXPECT_EQ(oracles::enumerate_unary_cqs({"A"}, {"R"}, 1).size(), 6u);
}

TEST(Oracles, SmallExampleEnumeration) {
    std::size_t count = 0;
    oracles::for_each_small_example(
        2, {"A"}, {"R"}, [](const Example&) { return true; }, [&](const Example&) { ++count; });
    // One value: 2 binary x 2 unary subsets; two values: 16 x 4.
    EXPECT_EQ(count, 4u + 64u);
}
