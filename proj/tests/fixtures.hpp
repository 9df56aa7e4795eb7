// Hand-entered orbifold Morse data shared by the test suites.

#ifndef ORBIMORSE_TESTS_FIXTURES_HPP
#define ORBIMORSE_TESTS_FIXTURES_HPP

#include <cstdint>

#include "orbimorse/morse_datum.hpp"

namespace fixtures {

using orbimorse::Integer;
using orbimorse::MorseDatum;

// Spindle S^2(m, n): cone points p, q; one saddle p' and one maximum p''.
inline MorseDatum teardrop(std::int64_t m, std::int64_t n)
{
    MorseDatum d;
    d.ambient_dimension = 2;
    d.points = {{"p''", 2, 1, true}, {"p'", 1, 1, true}, {"p", 0, m, true}, {"q", 0, n, true}};
    d.flows = {{"p''", "p'", Integer(0)}, {"p'", "p", Integer(1)}, {"p'", "q", Integer(-1)}};
    return d;
}

// Unstable input for the stabilization of the spindle: p is a maximum with stabilizer Z_m.
inline MorseDatum teardrop_seed(std::int64_t m, std::int64_t n)
{
    MorseDatum d;
    d.ambient_dimension = 2;
    d.points = {{"p", 2, m, false}, {"q", 0, n, true}};
    return d;
}

// [S^2/Z_2] by a rotation: maximum p, saddle q', two cone minima q and r.
inline MorseDatum bean()
{
    MorseDatum d;
    d.ambient_dimension = 2;
    d.points = {{"p", 2, 1, true}, {"q'", 1, 1, true}, {"q", 0, 2, true}, {"r", 0, 2, true}};
    d.flows = {{"p", "q'", Integer(0)}, {"q'", "q", Integer(1)}, {"q'", "r", Integer(-1)}};
    return d;
}

inline MorseDatum bean_seed()
{
    MorseDatum d;
    d.ambient_dimension = 2;
    d.points = {{"p", 2, 1, true}, {"q", 1, 2, false}, {"r", 0, 2, true}};
    return d;
}

// [S^3/Z_2] by the antipodal map on the maximum's chart: unstable maximum p, minimum q.
inline MorseDatum s3_z2_seed()
{
    MorseDatum d;
    d.ambient_dimension = 3;
    d.points = {{"p", 3, 2, false}, {"q", 0, 2, true}};
    return d;
}

}   // namespace fixtures

#endif
