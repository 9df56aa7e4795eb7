#include <catch_amalgamated.hpp>

#include "orbimorse/chain_complex.hpp"
#include "orbimorse/error.hpp"

using namespace orbimorse;

namespace {

// Cellular complex of RP^2: one cell per degree, d_2 = 2, d_1 = 0.
FreeChainComplex projective_plane_cells()
{
    return FreeChainComplex(0, {{"e0"}, {"e1"}, {"e2"}},
                            {IntegerMatrix(0, 1), IntegerMatrix::from_rows({{0}}), IntegerMatrix::from_rows({{2}})});
}

}   // namespace

TEST_CASE("construction checks shapes", "[complex]")
{
    CHECK_NOTHROW(projective_plane_cells());
    try
    {
        FreeChainComplex(0, {{"a"}, {"b", "c"}}, {IntegerMatrix(0, 1), IntegerMatrix(1, 1)});
        FAIL("expected ShapeMismatch");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::ShapeMismatch);
    }
    CHECK_THROWS_AS(FreeChainComplex(0, {{"a"}}, {IntegerMatrix(1, 1)}), Error);
}

TEST_CASE("accessors outside the degree range", "[complex]")
{
    const auto C = projective_plane_cells();
    CHECK(C.min_degree() == 0);
    CHECK(C.max_degree() == 2);
    CHECK(C.generators(5).empty());
    CHECK(C.boundary(3).rows() == 1);
    CHECK(C.boundary(3).cols() == 0);
    CHECK(C.boundary(-1).rows() == 0);
}

TEST_CASE("homology of the cellular projective plane", "[complex][homology]")
{
    const auto H = homology(projective_plane_cells());
    REQUIRE(H.size() == 3);
    CHECK(H[0].to_string() == "Z");
    CHECK(H[1].to_string() == "Z_2");
    CHECK(H[2].to_string() == "0");
    CHECK(H[1].degree == 1);
    CHECK(euler_characteristic(H) == 1);
    CHECK(euler_characteristic(projective_plane_cells()) == 1);
}

TEST_CASE("verify_complex reports a witness", "[complex]")
{
    // d_1 d_2 = [1 1] * [1; 1] = 2.
    const FreeChainComplex bad(0, {{"v"}, {"a", "b"}, {"f"}},
                               {IntegerMatrix(0, 1), IntegerMatrix::from_rows({{1, 1}}),
                                IntegerMatrix::from_rows({{1}, {1}})});
    const ComplexVerdict v = verify_complex(bad);
    REQUIRE_FALSE(v.ok());
    CHECK(v.witness->degree == 2);
    CHECK(v.witness->source == "f");
    CHECK(v.witness->target == "v");
    CHECK(v.witness->value == 2);
    CHECK_THROWS_AS(homology(bad), Error);
    CHECK(verify_complex(projective_plane_cells()).ok());
}

TEST_CASE("shifted degree ranges", "[complex]")
{
    const auto C = FreeChainComplex::zero(3, {{"x", "y"}, {}, {"z"}});
    const auto H = homology(C);
    REQUIRE(H.size() == 3);
    CHECK(H[0].degree == 3);
    CHECK(H[0].betti == 2);
    CHECK(H[1].is_trivial());
    CHECK(H[2].betti == 1);
    CHECK(euler_characteristic(C) == -3);   // degrees 3 and 5 are odd
}

TEST_CASE("Euler characteristic of generators equals that of homology", "[complex][property]")
{
    // Random upper-unitriangular style boundaries built from products keep d^2 = 0:
    // d_2 = B, d_1 = A with A * B = 0 by choosing B's columns in ker A.
    const auto A = IntegerMatrix::from_rows({{1, -1, 0}, {0, 1, -1}});
    const auto B = IntegerMatrix::from_rows({{1, 2}, {1, 2}, {1, 2}});
    const FreeChainComplex C(0, {{"a", "b"}, {"e", "f", "g"}, {"s", "t"}}, {IntegerMatrix(0, 2), A, B});
    REQUIRE(verify_complex(C).ok());
    CHECK(euler_characteristic(C) == euler_characteristic(homology(C)));
}
