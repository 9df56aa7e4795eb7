#ifndef ORBIMORSE_STABILIZATION_HPP
#define ORBIMORSE_STABILIZATION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orbimorse/morse_datum.hpp"

namespace orbimorse {

/**
 * Local data at an unstable critical point: the descending space splits
 * into the part fixed by the stabilizer H (dim_fixed) and the kernel of
 * the H-averaging operator (dim_perp).
 */
struct UnstableLocalData
{
    std::string point_id;
    int dim_fixed = 0;
    int dim_perp = 1;
    std::int64_t stab_order = 1;   // |H|
};

struct SphereOrbit
{
    std::string label;
    int index = 0;                 // Morse index of h at the orbit
    std::int64_t stab_order = 1;   // order of the stabilizer in H of a point of the orbit
};

/**
 * An H-equivariant stable Morse function h on the unit sphere of the
 * perpendicular descending space, recorded orbit by orbit.
 */
struct SphereMorseDatum
{
    int sphere_dim = 0;
    std::int64_t group_order = 1;   // |H|
    std::vector<SphereOrbit> orbits;

    /** Sum over orbits of (-1)^index * |H| / stab_order; must equal chi(S^sphere_dim). */
    long long equivariant_count() const;
};

/** Throws InvalidSphereDatum or SphereCountMismatch when h is not a valid sphere datum. */
void check_sphere_datum(const SphereMorseDatum& h);

/**
 * Built-in sphere data:
 *   cyclic_rotation_circle(m), m >= 2: S^1 under rotation by 2pi/m, one
 *       free orbit of maxima and one of minima;
 *   two_points_swap: S^0 swapped by Z_2;
 *   antipodal_sphere2: S^2 under the antipodal map, lifted from the
 *       three-critical-point function on RP^2.
 * Throws UnknownBuiltin or BadParams.
 */
SphereMorseDatum builtin_sphere_datum(const std::string& name, const std::vector<long long>& params = {});

/**
 * Parses "cyclic_rotation_circle(3)", "cyclic_rotation_circle:3" or a bare
 * name into builtin_sphere_datum arguments.
 */
SphereMorseDatum builtin_sphere_datum_from_spec(const std::string& spec);

struct StabilizationResult
{
    MorseDatum datum;
    std::vector<std::string> new_point_ids;
    std::vector<std::pair<std::string, std::string>> stale_flow_pairs;
};

/**
 * Replaces the unstable point by a stable point of index dim_fixed and
 * adds one stable point per orbit of h with index
 * index_h + 1 + dim_fixed. Flows touching the modified or new points are
 * dropped; every index-gap-one pair involving them is emitted as an
 * unknown placeholder.
 *
 * new_ids, when nonempty, names the new points orbit by orbit; the default
 * name is "<point_id>.<orbit label>".
 */
StabilizationResult stabilize_point(const MorseDatum& d,
                                    const UnstableLocalData& local,
                                    const SphereMorseDatum& h,
                                    const std::vector<std::string>& new_ids = {});

/**
 * (-1)^dim_fixed / |H| + sum_orbits (-1)^(index_h + 1 + dim_fixed) / stab
 * minus (-1)^(dim_fixed + dim_perp) / |H|; zero exactly when the
 * orbifold Euler number is preserved.
 */
Rational euler_defect(const UnstableLocalData& local, const SphereMorseDatum& h);

}   // namespace orbimorse

#endif
