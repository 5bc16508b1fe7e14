#include <gtest/gtest.h>

#include "cqfit/canonical.hpp"
#include "cqfit/error.hpp"
#include "cqfit/hom.hpp"
#include "cqfit/path.hpp"
#include "cqfit/text.hpp"
#include "oracles.hpp"

using namespace cqfit;

namespace {

CQ figure1_target() {
    return parse_cq("q(x0) :- R(x0,x1), A(x1), B(x1), R(x1,x2), A(x2), B(x2)");
}

// Renames variables of q to v0, v1, ... in order of first occurrence.
std::string normalized(const CQ& q) {
    std::map<Value, Value> names;
    auto name = [&](const Value& v) {
        auto it = names.find(v);
        if (it == names.end()) {
            it = names.emplace(v, "v" + std::to_string(names.size())).first;
        }
        return it->second;
    };
    CQ out;
    for (const auto& v : q.head) {
        out.head.push_back(name(v));
    }
    for (const auto& a : q.atoms) {
        Fact f{a.relation, {}};
        for (const auto& v : a.args) {
            f.args.push_back(name(v));
        }
        out.atoms.push_back(f);
    }
    return serialize(out);
}

}  // namespace

TEST(Schema, RejectsConflictingArity) {
    Schema s;
    s.add("R", 2);
    s.add("R", 2);
    EXPECT_THROW(s.add("R", 1), SchemaError);
    EXPECT_THROW(s.add("Z", 0), SchemaError);
    EXPECT_EQ(s.arity("R"), 2u);
}

TEST(Example, AnswersMustBeInDomain) {
    EXPECT_THROW(Example(Instance({Fact{"A", {"a"}}}), {"b"}), std::invalid_argument);
    Example e = Example::from_facts({}, {"b"});
    EXPECT_EQ(e.domain(), std::set<Value>{"b"});
}

TEST(LabeledCollection, ArityMismatchIsSchemaError) {
    LabeledCollection c;
    EXPECT_EQ(c.arity(), -1);
    c.positives.insert(Example::from_facts({}, {"a"}));
    c.negatives.insert(Example::from_facts({}, {"a", "b"}));
    EXPECT_THROW(c.arity(), SchemaError);
}

TEST(Canonical, SingleAtom) {
    CQ q = parse_cq("q(x0) :- A(x0)");
    Instance i = canonical_instance(q);
    EXPECT_EQ(i.facts(), (std::set<Fact>{Fact{"A", {"x0"}}}));
    EXPECT_EQ(i.domain(), std::set<Value>{"x0"});
    Example e = canonical_example(q);
    EXPECT_EQ(e.answers(), Tuple{"x0"});
}

TEST(Canonical, Figure1TargetHasSixFacts) {
    EXPECT_EQ(canonical_instance(figure1_target()).size(), 6u);
}

TEST(Canonical, TwoCycle) {
    Instance i = canonical_instance(parse_cq("q(x) :- R(x,y), R(y,x)"));
    EXPECT_EQ(i.domain().size(), 2u);
    EXPECT_EQ(i.size(), 2u);
}

TEST(Canonical, BooleanQuery) {
    Example e = canonical_example(parse_cq("q() :- R(x,y)"));
    EXPECT_EQ(e.arity(), 0u);
    EXPECT_EQ(e.size(), 1u);
}

TEST(Canonical, ExampleToCq) {
    CQ q = canonical_cq(Example::from_facts({Fact{"A", {"a"}}}, {"a"}));
    EXPECT_EQ(serialize(q), "q(a) :- A(a)");
}

TEST(Canonical, IsolatedValueBecomesIsolatedVariable) {
    Example e(Instance({Fact{"A", {"a"}}}, {"z"}), {"a"});
    CQ q = canonical_cq(e);
    EXPECT_EQ(q.isolated_variables, std::set<Value>{"z"});
    EXPECT_EQ(canonical_example(q), e);
}

TEST(Canonical, RoundTripOnRandomQueries) {
    Rng rng(7);
    oracles::ExampleSpec spec;
    spec.max_values = 4;
    spec.max_facts = 5;
    spec.ternary = {"T"};
    for (int i = 0; i < 50; ++i) {
        CQ q = canonical_cq(oracles::random_example(rng, spec));
        CQ back = canonical_cq(canonical_example(q));
        EXPECT_EQ(normalized(back), normalized(q));
        EXPECT_TRUE(equivalent(back, q));
    }
}

TEST(Path, AcceptsFigure1Target) {
    PathExample p = as_path_example(canonical_example(figure1_target()));
    EXPECT_EQ(p.length(), 2u);
    EXPECT_EQ(p.labels_at(1), (std::set<std::string>{"A", "B"}));
    EXPECT_EQ(p.labels_at(2), (std::set<std::string>{"A", "B"}));
}

TEST(Path, RejectsNonPaths) {
    EXPECT_THROW(as_path_example(Example::from_facts({Fact{"A", {"a"}}}, {"a"})), ShapeError);
    EXPECT_THROW(as_path_example(Example::from_facts({Fact{"R", {"a", "b"}}}, {"a", "b"})), ShapeError);
    EXPECT_THROW(as_path_example(parse_example("R(a,b)\nR(b,a)\n#answer a")), ShapeError);
    EXPECT_THROW(as_path_example(parse_example("R(a,b)\nR(a,c)\n#answer a")), ShapeError);
    EXPECT_THROW(as_path_example(parse_example("R(a,b)\nA(a)\n#answer a")), ShapeError);
    EXPECT_THROW(as_path_example(parse_example("R(a,b)\nR(c,d)\n#answer a")), ShapeError);
    EXPECT_THROW(as_path_example(parse_example("R(b,a)\n#answer a")), ShapeError);
    EXPECT_THROW(as_path_example(parse_example("R(a,b)\n#domain z\n#answer a")), ShapeError);
    EXPECT_THROW(as_path_example(parse_example("R(a,b)\nR(b,c)\nR(b,b)\n#answer a")), ShapeError);
}

TEST(Path, RoundTripBothWays) {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        PathExample p = oracles::random_path(rng, {});
        EXPECT_EQ(as_path_example(p.to_example()), p);
    }
}

TEST(Path, ConstructorValidates) {
    EXPECT_THROW(PathExample({"a"}, {}, {}), ShapeError);
    EXPECT_THROW(PathExample({"a", "a"}, {"R"}, {{}}), ShapeError);
    EXPECT_THROW(PathExample({"a", "b"}, {"R"}, {{"R"}}), ShapeError);
}

TEST(Text, ParsesExample) {
    Example e = parse_example("R(a,b)\nA(b)\n#answer a");
    EXPECT_EQ(e.size(), 2u);
    EXPECT_EQ(e.answers(), Tuple{"a"});
}

TEST(Text, ParsesCq) {
    CQ q = parse_cq("q(x0) :- R(x0,x1), A(x1)");
    ASSERT_EQ(q.atoms.size(), 2u);
    EXPECT_EQ(q.atoms[0], (Fact{"R", {"x0", "x1"}}));
    EXPECT_EQ(serialize(parse_cq("q( x0 ):-R( x0 , x1 ) ,A(x1) .")), "q(x0) :- R(x0,x1), A(x1)");
    EXPECT_TRUE(parse_cq("q(x) :-").atoms.empty());
}

TEST(Text, ArityErrorNamesLine) {
    try {
        parse_example("R(a,b)\nA(b)\nR(c)\n#answer a");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(parse_example("R(a,b\n#answer a"), ParseError);
    EXPECT_THROW(parse_example("R(a,b)\n#answer a\nA(a)"), ParseError);
    EXPECT_THROW(parse_cq("q(x) R(x,y)"), ParseError);
}

TEST(Text, SerializationIsCanonical) {
    Example a = parse_example("B(b)\nR(a,b)\nA(b)\n#domain z\n#answer a");
    Example b = parse_example("% comment\n\nA(b)\nR(a,b)\nB(b)\n#domain z\n#answer a\n");
    EXPECT_EQ(serialize(a), serialize(b));
    EXPECT_EQ(serialize(a), "A(b)\nB(b)\nR(a,b)\n#domain z\n#answer a\n");
}

TEST(Text, ParseSerializeRoundTrip) {
    Rng rng(3);
    oracles::ExampleSpec spec;
    spec.ternary = {"T"};
    for (int i = 0; i < 100; ++i) {
        spec.arity = static_cast<std::size_t>(i % 3);
        Example e = oracles::random_example(rng, spec);
        EXPECT_EQ(parse_example(serialize(e)), e);
        LabeledCollection c;
        c.positives.insert(e);
        EXPECT_EQ(parse_collection(serialize(c)), c);
    }
}

TEST(Text, PairValuesRoundTrip) {
    Example e = parse_example("R(<a,<b,c>>,<x0,_>)\nA(<x1,R<y0,y1>>)\n#answer <x0,_>");
    EXPECT_EQ(parse_example(serialize(e)), e);
    EXPECT_EQ(e.answers(), Tuple{"<x0,_>"});
}

TEST(Text, CollectionNeedsLabels) {
    EXPECT_THROW(parse_collection("A(a)\n#answer a\n"), ParseError);
    LabeledCollection c = parse_collection("+\nA(a)\n#answer a\n-\nB(a)\n#answer a\n");
    EXPECT_EQ(c.positives.size(), 1u);
    EXPECT_EQ(c.negatives.size(), 1u);
}
