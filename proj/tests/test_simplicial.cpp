#include <catch_amalgamated.hpp>

#include <sstream>

#include "orbimorse/error.hpp"
#include "orbimorse/simplicial.hpp"

using namespace orbimorse;

namespace {

std::vector<std::string> groups(const std::vector<HomologyGroup>& H)
{
    std::vector<std::string> out;
    for (const auto& h : H)
        out.push_back(h.to_string());
    return out;
}

using Groups = std::vector<std::string>;

}   // namespace

TEST_CASE("closure and f-vectors", "[simplicial]")
{
    CHECK(builtin_complex("S2").f_vector() == std::vector<std::size_t>{4, 6, 4});
    CHECK(builtin_complex("RP2").f_vector() == std::vector<std::size_t>{6, 15, 10});
    CHECK(builtin_complex("T2").f_vector() == std::vector<std::size_t>{7, 21, 14});
    CHECK(builtin_complex("S3").f_vector() == std::vector<std::size_t>{5, 10, 10, 5});
    // Uncovered vertices become isolated points.
    const SimplicialComplex K({"a", "b", "c"}, {{"a", "b"}});
    CHECK(K.f_vector() == std::vector<std::size_t>{3, 1});
}

TEST_CASE("homology of built-in spaces", "[simplicial][homology]")
{
    CHECK(groups(simplicial_homology(builtin_complex("point"))) == Groups{"Z"});
    CHECK(groups(simplicial_homology(builtin_complex("S0"))) == Groups{"Z^2"});
    CHECK(groups(simplicial_homology(builtin_complex("S1"))) == Groups{"Z", "Z"});
    CHECK(groups(simplicial_homology(builtin_complex("S2"))) == Groups{"Z", "0", "Z"});
    CHECK(groups(simplicial_homology(builtin_complex("S3"))) == Groups{"Z", "0", "0", "Z"});
    CHECK(groups(simplicial_homology(builtin_complex("RP2"))) == Groups{"Z", "Z_2", "0"});
    CHECK(groups(simplicial_homology(builtin_complex("T2"))) == Groups{"Z", "Z^2", "Z"});
    CHECK(groups(simplicial_homology(builtin_complex("SRP2"))) == Groups{"Z", "0", "Z_2", "0"});
}

TEST_CASE("boundary matrices square to zero", "[simplicial][property]")
{
    for (const auto& name : builtin_complex_names())
    {
        INFO(name);
        CHECK(verify_complex(builtin_complex(name).chain_complex()).ok());
    }
}

TEST_CASE("suspension shifts reduced homology up by one", "[simplicial][property]")
{
    for (const auto& name : builtin_complex_names())
    {
        INFO(name);
        const auto K = builtin_complex(name);
        const auto base = reduced(simplicial_homology(K));
        const auto susp = reduced(simplicial_homology(suspension(K)));
        REQUIRE(susp.size() == base.size() + 1);
        CHECK(susp[0].is_trivial());
        for (std::size_t k = 0; k < base.size(); ++k)
        {
            CHECK(susp[k + 1].betti == base[k].betti);
            CHECK(susp[k + 1].torsion == base[k].torsion);
        }
    }
}

TEST_CASE("suspension avoids vertex name clashes", "[simplicial]")
{
    const SimplicialComplex K({"north", "south"}, {{"north"}, {"south"}});
    const auto S = suspension(K);
    CHECK(S.vertices().size() == 4);
    CHECK(groups(simplicial_homology(S)) == Groups{"Z", "Z"});
    CHECK(groups(simplicial_homology(builtin_complex("susp:susp:S0"))) == Groups{"Z", "0", "Z"});
}

TEST_CASE("facet lists", "[simplicial][io]")
{
    std::istringstream text("# boundary of a triangle\n a b\n b c  # edge\n\n c a\n");
    const auto K = parse_facet_list(text);
    CHECK(groups(simplicial_homology(K)) == Groups{"Z", "Z"});

    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(parse_facet_list(empty), Error);
    std::istringstream repeated("a a b\n");
    CHECK_THROWS_AS(parse_facet_list(repeated), Error);
    CHECK_THROWS_AS(read_facet_file("/nonexistent/facets.txt"), Error);
}

TEST_CASE("invalid complexes are rejected", "[simplicial][errors]")
{
    CHECK_THROWS_AS(SimplicialComplex({"a", "a"}, {}), Error);
    CHECK_THROWS_AS(SimplicialComplex({"a"}, {{"b"}}), Error);
    CHECK_THROWS_AS(SimplicialComplex({"a", "b"}, {{"a", "b"}, {"b", "a"}}), Error);
    CHECK_THROWS_AS(SimplicialComplex({"a"}, {{}}), Error);
    try
    {
        builtin_complex("Klein");
        FAIL("expected UnknownBuiltin");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == ErrorCode::UnknownBuiltin);
    }
}

TEST_CASE("homology comparison", "[simplicial][compare]")
{
    const auto sphere = simplicial_homology(builtin_complex("S2"));
    CHECK(compare_homology(sphere, sphere).match());
    CHECK(compare_homology(sphere, sphere).to_string() == "MATCH");

    auto with_torsion = sphere;
    with_torsion[0].torsion = {2};
    const auto c = compare_homology(with_torsion, sphere);
    REQUIRE_FALSE(c.match());
    REQUIRE(c.mismatches.size() == 1);
    CHECK(c.mismatches[0].degree == 0);
    CHECK(c.to_string() == "MISMATCH\n  degree 0: Z + Z_2 vs Z");

    // Missing degrees count as the zero group.
    auto padded = sphere;
    padded.push_back({3, 0, {}});
    CHECK(compare_homology(padded, sphere).match());
}
