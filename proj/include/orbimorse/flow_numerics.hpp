/**
 * Numerical discovery of orbifold Morse data on global quotients [S/G],
 * where S is a level-set surface in R^3 and G a finite orthogonal group.
 *
 * Pipeline: Newton on the Lagrange system finds the critical points of
 * f restricted to S; they are grouped into G-orbits and classified
 * (index, stabilizer, stability); signed counts of index-gap-one flow
 * lines are obtained by integrating the projected gradient flow along
 * one-dimensional descending or ascending manifolds; the result descends
 * to a MorseDatum on the quotient.
 */

#ifndef ORBIMORSE_FLOW_NUMERICS_HPP
#define ORBIMORSE_FLOW_NUMERICS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orbimorse/morse_datum.hpp"
#include "orbimorse/surface.hpp"

namespace orbimorse {

struct NumericCriticalPoint
{
    Vec3 position;
    double multiplier = 0.0;   // grad f = multiplier * grad level
    double value = 0.0;
    int index = 0;
    std::vector<double> eigenvalues;              // tangent Hessian, ascending
    std::vector<Vec3> negative_eigenvectors;      // unit, tangent; the raw orientation frame
    std::vector<Vec3> positive_eigenvectors;
    std::vector<std::size_t> stab_elements;       // indices into the surface group
    bool stable = true;
};

/**
 * A G-orbit of critical points. lifts[0] is the representative; every
 * lift i equals group[lift_elements[i]] applied to the representative.
 * Orientations of all lifts are pushed forward from the representative's
 * frame, which is negated when orientation_sign is -1. For index 0 the
 * orientation is the sign itself.
 */
struct CriticalOrbit
{
    std::string label;
    int index = 0;
    std::size_t stab_order = 1;
    bool stable = true;
    int orientation_sign = 1;
    NumericCriticalPoint representative;
    std::vector<Vec3> lifts;
    std::vector<std::size_t> lift_elements;

    /** Orientation frame o at lift i. */
    std::vector<Vec3> frame(const ImplicitQuotientSurface& s, std::size_t lift) const;
};

struct SearchOptions
{
    int seeds_u = 48;
    int seeds_v = 96;
    unsigned threads = 0;   // 0: hardware concurrency
};

/**
 * Orbits sorted by index (descending), then f value (descending). Labels
 * come from the surface landmarks when the representative sits on one,
 * otherwise "max<k>", "saddle<k>", "min<k>".
 *
 * Throws DegenerateCritical and SeedGridExhausted (Euler characteristic
 * check against the surface, when known).
 */
std::vector<CriticalOrbit> find_critical_orbits(const ImplicitQuotientSurface& s, const SearchOptions& options = {});

/** Labels of orbits whose stabilizer acts nontrivially on the descending space. */
std::vector<std::string> unstable_labels(const std::vector<CriticalOrbit>& orbits);

struct FlowLine
{
    std::size_t target_lift = 0;   // lift of the target orbit (index-1 -> 0), or of the source orbit's representative (2 -> 1)
    int sign = 0;
    std::vector<Vec3> path;        // from source to target, when requested
};

struct FlowCensus
{
    long long signed_count = 0;
    std::vector<FlowLine> lines;
};

struct CountOptions
{
    unsigned threads = 0;
    bool keep_paths = false;
};

/**
 * Signed count of flow lines from the representative of orbits[from] to
 * any lift of orbits[to]. Requires both orbits stable (UnstableEndpoint)
 * and an index gap of exactly one (IndexGapViolation). Index 1 -> 0
 * shoots forward along both descending directions of the
 * representative; index 2 -> 1 shoots backward from every lift of the
 * target along both ascending directions and keeps the trajectories that
 * limit to the representative.
 *
 * Throws NonConvergentTrajectory and BrokenFlowDetected.
 */
FlowCensus count_flow_lines(const ImplicitQuotientSurface& s,
                            const std::vector<CriticalOrbit>& orbits,
                            std::size_t from,
                            std::size_t to,
                            const CountOptions& options = {});

struct BumpOptions
{
    double width = 0.0;              // 0: a quarter of the distance to the nearest other critical point
    double amplitude_factor = 2.0;   // amplitude = factor * |negative eigenvalue| * width^2, factor > 1
};

/**
 * Adds a G-invariant sum of Gaussian wells at the lifts of an unstable
 * index-one orbit whose stabilizer reverses the descending line. The
 * point becomes a local minimum and two new index-one points appear on
 * the former descending line.
 *
 * Throws UnsupportedProfile and BumpTooWide (width above half the
 * distance to the nearest other critical point).
 */
ImplicitQuotientSurface stabilize_numeric(const ImplicitQuotientSurface& s,
                                          const std::vector<CriticalOrbit>& orbits,
                                          std::size_t unstable_orbit,
                                          const BumpOptions& options = {});

using CountTable = std::map<std::pair<std::size_t, std::size_t>, long long>;

/** Counts for every index-gap-one ordered pair of orbits. */
CountTable count_all_flows(const ImplicitQuotientSurface& s,
                           const std::vector<CriticalOrbit>& orbits,
                           const CountOptions& options = {});

/** One record per orbit and one flow per index-gap-one pair; throws InvalidDatum if validation fails. */
MorseDatum quotient_to_datum(const std::vector<CriticalOrbit>& orbits, const CountTable& counts);

struct DiscoveryOptions
{
    bool stabilize = false;
    SearchOptions search;
    CountOptions count;
    BumpOptions bump;
};

struct Discovery
{
    ImplicitQuotientSurface surface;   // after any stabilization
    std::vector<CriticalOrbit> orbits;
    CountTable counts;
    MorseDatum datum;
};

/**
 * Full pipeline. Without options.stabilize, unstable orbits raise
 * UnstablePoint listing their labels; with it, every unstable orbit is
 * stabilized numerically first.
 */
Discovery discover_datum(const ImplicitQuotientSurface& s, const DiscoveryOptions& options = {});

}   // namespace orbimorse

#endif
