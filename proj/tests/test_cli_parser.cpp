#include <gtest/gtest.h>

#include "gammadelta/parser.hpp"
#include "gammadelta/serialize.hpp"
#include "gammadelta/suites.hpp"

using namespace gammadelta;

TEST(Parser, DividedPowerExpressions) {
    auto ctx = make_pd_context({"x"}, {"y1", "y2"}, CoeffDomain::rational(), 8);
    using E = DPElement<Rational>;
    const auto e = parse_expression("g_2(y1 + y2)");
    EXPECT_EQ(evaluate_pd<Rational>(*e, ctx), divided_power(2, E::divided(ctx, 0) + E::divided(ctx, 1)));
    const auto f = parse_expression("x^2*g_3(y1) - 3/4*y2");
    EXPECT_EQ(evaluate_pd<Rational>(*f, ctx),
              E::ordinary(ctx, 0, 2) * E::divided(ctx, 0, 3) - E::divided(ctx, 1).scaled(make_rational(3, 4)));
    std::vector<std::string> vars;
    collect_variables(*f, vars);
    EXPECT_EQ(vars, (std::vector<std::string>{"x", "y1", "y2"}));
}

TEST(Parser, DeltaExpressions) {
    auto ctx = make_delta_context({"x", "y"}, 3, 2);
    const auto x = DeltaElement::tower(ctx, "x"), y = DeltaElement::tower(ctx, "y");
    EXPECT_EQ(evaluate_delta(*parse_expression("d(x+y)"), ctx), delta(x + y));
    EXPECT_EQ(evaluate_delta(*parse_expression("d^2(x)"), ctx), delta(delta(x)));
    EXPECT_EQ(evaluate_delta(*parse_expression("phi(x*y)"), ctx), frobenius(x * y));
    EXPECT_EQ(evaluate_delta(*parse_expression("-(x - 1)^2"), ctx), DeltaElement(ctx) - (x - DeltaElement::constant(ctx, 1)).pow(2));
    // a bare 'd' is an ordinary name, not the operator
    auto named = make_delta_context({"d", "z"}, 2, 2);
    EXPECT_EQ(evaluate_delta(*parse_expression("d*z"), named),
              DeltaElement::tower(named, "d") * DeltaElement::tower(named, "z"));
}

TEST(Parser, Errors) {
    EXPECT_THROW(parse_expression("d(x+"), ParseError);
    EXPECT_THROW(parse_expression("x +* y"), ParseError);
    EXPECT_THROW(parse_expression("x)"), ParseError);
    try {
        parse_expression("x + $");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 4u);
        EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos);
    }
    auto ctx = make_pd_context({"x"}, {"y"}, CoeffDomain::rational(), 4);
    EXPECT_THROW(evaluate_pd<Rational>(*parse_expression("z"), ctx), ParseError);
    EXPECT_THROW(evaluate_pd<Rational>(*parse_expression("d(y)"), ctx), ParseError);
    EXPECT_THROW(evaluate_pd<Rational>(*parse_expression("g_2(x)"), ctx), NotInIdeal);
}

TEST(Parser, Rings) {
    const auto a = parse_ring("F2[x]<y>", 3);
    EXPECT_EQ(a.domain, CoeffDomain::prime_field(PrimeContext(2)));
    EXPECT_EQ(a.ordinary, std::vector<std::string>{"x"});
    EXPECT_EQ(a.divided, std::vector<std::string>{"y"});
    const auto b = parse_ring("Q[x, y]", 2);
    EXPECT_EQ(b.domain, CoeffDomain::rational());
    EXPECT_EQ(b.ordinary, (std::vector<std::string>{"x", "y"}));
    EXPECT_TRUE(b.divided.empty());
    EXPECT_EQ(parse_ring("Z(3)<y>", 2).domain, CoeffDomain::p_local(PrimeContext(3)));
    EXPECT_EQ(parse_ring("F<y>", 5).domain, CoeffDomain::prime_field(PrimeContext(5)));
    EXPECT_THROW(parse_ring("R[x]", 2), ParseError);
    EXPECT_THROW(parse_ring("Q[x", 2), ParseError);
    EXPECT_THROW(parse_ring("F4[x]", 2), Error);
}

TEST(Serialize, DividedPowerElement) {
    auto ctx = make_pd_context({"x"}, {"y"}, CoeffDomain::rational(), 8);
    using E = DPElement<Rational>;
    const E f = E::ordinary(ctx, 0, 2) * E::divided(ctx, 0, 3) - E::divided(ctx, 0).scaled(make_rational(3, 5));
    EXPECT_EQ(to_json(f).dump(), R"({"terms":[{"c":"-3/5","m":{"g:y":1}},{"c":"1","m":{"x":2,"g:y":3}}]})");
    EXPECT_EQ(to_json(E::zero(ctx)).dump(), R"({"terms":[]})");
}

TEST(Serialize, PnReport) {
    const auto j = to_json(expand_delta_n(2, 1, 2));
    EXPECT_EQ(j.at("a_n"), "1");
    EXPECT_EQ(j.at("P_n_text"), "d(d)*z^2");
    EXPECT_TRUE(j.at("checks").at("homogeneity").get<bool>());
}

TEST(Suites, Names) {
    EXPECT_EQ(suite_names(), (std::vector<std::string>{"pd", "delta", "prism", "derham", "all"}));
    EXPECT_THROW(suite_tasks("nope", RunConfig{}), Error);
}

TEST(Suites, PdSuitePassesAndIsDeterministic) {
    RunConfig cfg;
    cfg.p = 3;
    const auto first = run_tasks(suite_tasks("pd", cfg), 2);
    const auto second = run_tasks(suite_tasks("pd", cfg), 1);
    ASSERT_EQ(first.size(), second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        EXPECT_TRUE(first[i].pass) << first[i].key << " " << first[i].detail;
        EXPECT_EQ(first[i].key, second[i].key);
        EXPECT_EQ(first[i].detail, second[i].detail);
    }
}
