/**
 * Integral simplicial homology of finite abstract simplicial complexes.
 *
 * Used as ground truth for the homology of underlying topological spaces.
 * Simplices are oriented by the order of their vertices in the vertex
 * list; the boundary carries the usual alternating signs.
 */

#ifndef ORBIMORSE_SIMPLICIAL_HPP
#define ORBIMORSE_SIMPLICIAL_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "orbimorse/chain_complex.hpp"

namespace orbimorse {

using Simplex = std::vector<std::size_t>;   // sorted vertex indices

class SimplicialComplex
{
    public:
        SimplicialComplex() = default;

        /** Throws InvalidComplex on duplicate/unknown/empty facets or duplicate vertex labels. */
        SimplicialComplex(std::vector<std::string> vertices, std::vector<std::vector<std::string>> facets);

        const std::vector<std::string>& vertices() const noexcept { return vertices_; }
        const std::vector<Simplex>& facets() const noexcept { return facets_; }

        int dimension() const;

        /** All simplices of dimension k (closure of the facets), sorted. */
        std::vector<Simplex> simplices(int k) const;

        /** f-vector (number of k-simplices for k = 0..dim). */
        std::vector<std::size_t> f_vector() const;

        FreeChainComplex chain_complex() const;

        std::vector<std::vector<std::string>> facet_labels() const;

    private:
        std::vector<std::string> vertices_;
        std::vector<Simplex> facets_;
        std::vector<std::vector<Simplex>> faces_;   // faces_[k] = k-simplices
};

std::vector<HomologyGroup> simplicial_homology(const SimplicialComplex& K);

/** Reduced homology: H_0 loses one free summand (for nonempty K). */
std::vector<HomologyGroup> reduced(std::vector<HomologyGroup> H);

/** Adds apexes "north" and "south" (suffixed with "'" until unused) and cones every facet to both. */
SimplicialComplex suspension(const SimplicialComplex& K);

/**
 * Built-in complexes: "S0".."S3" (boundaries of simplices), "RP2"
 * (6-vertex real projective plane), "T2" (7-vertex torus), "point",
 * and "S<...>" forms prefixed by "susp:" for suspensions, e.g. "susp:RP2".
 * Aliases: "sphere" = S2, "torus" = T2, "SRP2" = susp:RP2.
 * Throws UnknownBuiltin.
 */
SimplicialComplex builtin_complex(const std::string& name);

std::vector<std::string> builtin_complex_names();

/** One facet per line, whitespace-separated vertex labels; '#' starts a comment. */
SimplicialComplex parse_facet_list(std::istream& in);
SimplicialComplex read_facet_file(const std::string& path);

struct HomologyMismatch
{
    int degree;
    std::string left;
    std::string right;
};

struct HomologyComparison
{
    std::vector<HomologyMismatch> mismatches;

    bool match() const noexcept { return mismatches.empty(); }
    std::string to_string() const;
};

/** Degreewise comparison; degrees missing on one side count as the zero group. */
HomologyComparison compare_homology(const std::vector<HomologyGroup>& a, const std::vector<HomologyGroup>& b);

}   // namespace orbimorse

#endif
