#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "orbimorse/error.hpp"
#include "orbimorse/morse_datum.hpp"

using namespace orbimorse;

namespace {

ErrorCode code_of(const std::function<void()>& fn)
{
    try
    {
        fn();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    FAIL("no exception thrown");
    return ErrorCode::ParseError;
}

std::vector<std::string> homology_strings(const FreeChainComplex& C)
{
    std::vector<std::string> out;
    for (const auto& h : homology(C))
        out.push_back(h.to_string());
    return out;
}

std::size_t position(const FreeChainComplex& C, int degree, const std::string& id)
{
    const auto& g = C.generators(degree);
    return static_cast<std::size_t>(std::find(g.begin(), g.end(), id) - g.begin());
}

}   // namespace

TEST_CASE("hand-entered examples validate", "[validate]")
{
    CHECK(validate(fixtures::teardrop(2, 3)).ok());
    CHECK(validate(fixtures::bean()).ok());
    CHECK(validate(fixtures::bean_seed(), {.require_stable = false}).ok());
    CHECK(validate(fixtures::bean_seed()).has_rule("unstable-point"));
}

TEST_CASE("each validation rule fires on its own defect", "[validate]")
{
    auto with = [](auto edit) {
        MorseDatum d = fixtures::teardrop(2, 4);
        edit(d);
        return validate(d);
    };
    CHECK(with([](MorseDatum& d) { d.points[1].id = "p"; }).has_rule("duplicate-label"));
    CHECK(with([](MorseDatum& d) { d.points[2].stab_order = 0; }).has_rule("stab-order-positive"));
    CHECK(with([](MorseDatum& d) { d.points.push_back({"neg", -1, 1, true}); }).has_rule("index-nonnegative"));
    CHECK(with([](MorseDatum& d) { d.points.push_back({"big", 3, 1, true}); }).has_rule("index-bound"));
    CHECK(with([](MorseDatum& d) { d.flows.push_back({"p'", "nowhere", Integer(1)}); }).has_rule("unknown-endpoint"));
    CHECK(with([](MorseDatum& d) { d.flows.push_back({"p'", "p", Integer(2)}); }).has_rule("duplicate-flow"));
    CHECK(with([](MorseDatum& d) { d.flows.push_back({"p''", "p", Integer(1)}); }).has_rule("index-gap"));
    CHECK(with([](MorseDatum& d) { d.flows[1].signed_count.reset(); }).has_rule("unknown-flow-count"));
    CHECK(with([](MorseDatum& d) { d.points[1].stab_order = 3; }).has_rule("stabilizer-divisibility"));
    CHECK(with([](MorseDatum& d) { d.points[0].stable = false; }).has_rule("unstable-point"));

    MorseDatum placeholder = fixtures::teardrop(2, 4);
    placeholder.flows[0].signed_count.reset();
    CHECK(validate(placeholder, {.allow_placeholders = true}).ok());
}

TEST_CASE("divisibility only binds nonzero counts", "[validate]")
{
    MorseDatum d = fixtures::teardrop(2, 3);
    d.points[1].stab_order = 5;   // p' with stab 5 -> p (2), q (3)
    d.flows[1].signed_count = Integer(0);
    d.flows[2].signed_count = Integer(0);
    d.flows[0].signed_count = Integer(0);
    CHECK(validate(d).ok());
}

TEST_CASE("spindle complexes", "[complex]")
{
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {5, 5}, {4, 6}})
    {
        INFO("m = " << m << ", n = " << n);
        const MorseDatum d = fixtures::teardrop(m, n);
        const FreeChainComplex co = coinvariant_complex(d);
        const FreeChainComplex in = invariant_complex(d);

        // d_co p' = p - q ; d_in p' = m p - n q
        const auto d1co = co.boundary(1);
        const auto d1in = in.boundary(1);
        CHECK(d1co(position(co, 0, "p"), position(co, 1, "p'")) == 1);
        CHECK(d1co(position(co, 0, "q"), position(co, 1, "p'")) == -1);
        CHECK(d1in(position(in, 0, "p"), position(in, 1, "p'")) == m);
        CHECK(d1in(position(in, 0, "q"), position(in, 1, "p'")) == -n);

        CHECK(homology_strings(co) == std::vector<std::string>{"Z", "0", "Z"});
        const int l = std::gcd(m, n);
        const std::string h0 = l == 1 ? "Z" : "Z + Z_" + std::to_string(l);
        CHECK(homology_strings(in) == std::vector<std::string>{h0, "0", "Z"});
        CHECK(orbifold_euler(d) == Rational(1, m) + Rational(1, n));
        CHECK(underlying_euler(d) == 2);
    }
    CHECK(orbifold_euler(fixtures::teardrop(2, 3)) == Rational(5, 6));
}

TEST_CASE("bean complexes", "[complex]")
{
    const MorseDatum d = fixtures::bean();
    const FreeChainComplex in = invariant_complex(d);
    const auto d1 = in.boundary(1);
    CHECK(d1(position(in, 0, "q"), position(in, 1, "q'")) == 2);
    CHECK(d1(position(in, 0, "r"), position(in, 1, "q'")) == -2);
    CHECK(homology_strings(coinvariant_complex(d)) == std::vector<std::string>{"Z", "0", "Z"});
    CHECK(homology_strings(in) == std::vector<std::string>{"Z + Z_2", "0", "Z"});
    CHECK(orbifold_euler(d) == 1);
    CHECK(underlying_euler(d) == 2);
}

TEST_CASE("trivial stabilizers make both complexes agree", "[complex][property]")
{
    MorseDatum d;
    d.ambient_dimension = 2;
    d.points = {{"max", 2, 1, true}, {"a", 1, 1, true}, {"b", 1, 1, true}, {"min", 0, 1, true}};
    d.flows = {{"max", "a", Integer(0)}, {"max", "b", Integer(0)}, {"a", "min", Integer(0)}, {"b", "min", Integer(0)}};
    CHECK(homology(coinvariant_complex(d)) == homology(invariant_complex(d)));
    CHECK(homology_strings(coinvariant_complex(d)) == std::vector<std::string>{"Z", "Z^2", "Z"});
    CHECK(orbifold_euler(d) == underlying_euler(d));
}

TEST_CASE("complex construction errors in precedence order", "[complex][errors]")
{
    MorseDatum d = fixtures::teardrop(2, 3);
    d.flows[1].signed_count.reset();
    CHECK(code_of([&] { coinvariant_complex(d); }) == ErrorCode::UnknownFlowCount);
    try
    {
        coinvariant_complex(d);
    }
    catch (const Error& e)
    {
        CHECK(std::string(e.what()).find("p'->p") != std::string::npos);
    }

    CHECK(code_of([] { invariant_complex(fixtures::bean_seed()); }) == ErrorCode::UnstablePoint);

    MorseDatum breach = fixtures::teardrop(2, 3);
    breach.points[1].stab_order = 2;
    CHECK(code_of([&] { invariant_complex(breach); }) == ErrorCode::NonIntegralCoefficient);
    CHECK(code_of([&] { coinvariant_complex(breach); }) == ErrorCode::InvalidDatum);

    MorseDatum nonzero = fixtures::teardrop(2, 3);
    nonzero.flows[0].signed_count = Integer(1);   // d(d p'') = p - q
    CHECK(code_of([&] { coinvariant_complex(nonzero); }) == ErrorCode::BoundarySquaredNonzero);

    MorseDatum structural = fixtures::teardrop(2, 3);
    structural.flows.push_back({"p''", "ghost", Integer(1)});
    structural.flows[1].signed_count.reset();
    CHECK(code_of([&] { coinvariant_complex(structural); }) == ErrorCode::InvalidDatum);
}

TEST_CASE("placeholder lookup", "[datum]")
{
    MorseDatum d = fixtures::teardrop(2, 3);
    CHECK(d.count("p'", "q") == -1);
    CHECK(d.count("p''", "q") == 0);
    d.flows[2].signed_count.reset();
    CHECK(code_of([&] { d.count("p'", "q"); }) == ErrorCode::UnknownFlowCount);
}

TEST_CASE("ratio identity against direct double sums", "[ratio][property]")
{
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 100; ++trial)
    {
        const MorseDatum d = oracle::random_gap_datum(rng);
        const RatioIdentityReport report = ratio_identity_check(d);
        REQUIRE(report.ok());

        std::map<std::string, std::int64_t> stab;
        for (const auto& p : d.points)
            stab[p.id] = p.stab_order;
        for (const auto& e : report.entries)
        {
            // <d^2 p, r> over intermediate q, evaluated with rationals.
            Rational in = 0;
            Integer co = 0;
            for (const auto& q : d.points)
            {
                const Integer a = d.count(e.p, q.id);
                const Integer b = d.count(q.id, e.r);
                co += a * b;
                in += Rational(a * stab[q.id], stab[e.p]) * Rational(b * stab[e.r], stab[q.id]);
            }
            CHECK(Rational(e.coinvariant_side) == Rational(co * stab[e.r]));
            CHECK(Rational(e.invariant_side) == in * stab[e.p]);
        }
    }
}

TEST_CASE("ratio identity on the spindle is zero on both sides", "[ratio]")
{
    const auto report = ratio_identity_check(fixtures::teardrop(3, 4));
    REQUIRE(report.ok());
    for (const auto& e : report.entries)
    {
        CHECK(e.invariant_side == 0);
        CHECK(e.coinvariant_side == 0);
    }
    MorseDatum breach = fixtures::teardrop(2, 3);
    breach.points[1].stab_order = 2;
    CHECK(code_of([&] { ratio_identity_check(breach); }) == ErrorCode::NonIntegralCoefficient);
}
