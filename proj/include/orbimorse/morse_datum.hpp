/**
 * Orbifold Morse data and the coinvariant / invariant differentials.
 *
 * A MorseDatum lists the critical points of a Morse function on an
 * effective orbifold (Morse index, order of the stabilizer of a lift,
 * stability flag) together with, for each ordered pair of index gap one,
 * the signed number of flow lines between them. Flow counts are stored
 * pre-summed, one integer per ordered pair.
 */

#ifndef ORBIMORSE_MORSE_DATUM_HPP
#define ORBIMORSE_MORSE_DATUM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "orbimorse/chain_complex.hpp"
#include "orbimorse/exact_linalg.hpp"

namespace orbimorse {

using Rational = boost::multiprecision::cpp_rational;

struct CriticalPointRecord
{
    std::string id;
    int index = 0;
    std::int64_t stab_order = 1;
    bool stable = true;

    friend bool operator==(const CriticalPointRecord&, const CriticalPointRecord&) = default;
};

struct FlowCount
{
    std::string from;
    std::string to;
    std::optional<Integer> signed_count;   // nullopt: placeholder, count not yet known

    bool known() const noexcept { return signed_count.has_value(); }

    friend bool operator==(const FlowCount&, const FlowCount&) = default;
};

struct MorseDatum
{
    std::optional<int> ambient_dimension;
    std::vector<CriticalPointRecord> points;
    std::vector<FlowCount> flows;

    const CriticalPointRecord* find(const std::string& id) const;
    /** Signed count for (from, to); 0 when no flow is recorded. Throws UnknownFlowCount on a placeholder. */
    Integer count(const std::string& from, const std::string& to) const;

    friend bool operator==(const MorseDatum&, const MorseDatum&) = default;
};

/** Which optional rules validate() enforces. */
struct ValidationOptions
{
    bool require_stable = true;
    bool allow_placeholders = false;
};

struct Violation
{
    std::string rule;     // e.g. "stabilizer-divisibility"
    std::string detail;
};

struct ValidationReport
{
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    explicit operator bool() const noexcept { return ok(); }
    bool has_rule(const std::string& rule) const;
};

/**
 * Rules checked, by name:
 *   duplicate-label, stab-order-positive, index-nonnegative, index-bound,
 *   unknown-endpoint, duplicate-flow, index-gap, stabilizer-divisibility,
 *   unstable-point (unless !require_stable), unknown-flow-count (unless
 *   allow_placeholders).
 */
ValidationReport validate(const MorseDatum& d, const ValidationOptions& options = {});

/** Boundary entry at (q, p) is the signed count of flow lines p -> q. */
FreeChainComplex coinvariant_complex(const MorseDatum& d);

/** Boundary entry at (q, p) is count(p -> q) * |stab q| / |stab p|. */
FreeChainComplex invariant_complex(const MorseDatum& d);

/** Sum over critical points of (-1)^index / |stab|. */
Rational orbifold_euler(const MorseDatum& d);

/** Sum over critical points of (-1)^index. */
long long underlying_euler(const MorseDatum& d);

/**
 * The identity  <d_in^2 p, r> * |stab p| == <d_co^2 p, r> * |stab r|
 * evaluated for every pair (p, r) of index gap two. Holds for arbitrary
 * integer counts as long as stabilizer divisibility holds; d^2 = 0 is not
 * assumed.
 */
struct RatioIdentityReport
{
    struct Entry
    {
        std::string p;
        std::string r;
        Integer invariant_side;     // <d_in^2 p, r> * |stab p|
        Integer coinvariant_side;   // <d_co^2 p, r> * |stab r|
    };

    std::vector<Entry> entries;

    bool ok() const;
};

RatioIdentityReport ratio_identity_check(const MorseDatum& d);

}   // namespace orbimorse

#endif
