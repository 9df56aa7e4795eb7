#include "orbimorse/stabilization.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "orbimorse/error.hpp"

namespace orbimorse {

namespace {

long long sphere_euler(int dim)
{
    return dim % 2 == 0 ? 2 : 0;
}

int sign_of_power(int exponent)
{
    return exponent % 2 == 0 ? 1 : -1;
}

}   // namespace

long long SphereMorseDatum::equivariant_count() const
{
    long long total = 0;
    for (const auto& orbit : orbits)
        total += sign_of_power(orbit.index) * (group_order / orbit.stab_order);
    return total;
}

void check_sphere_datum(const SphereMorseDatum& h)
{
    if (h.sphere_dim < 0)
        throw Error(ErrorCode::InvalidSphereDatum, "negative sphere dimension");
    if (h.group_order < 1)
        throw Error(ErrorCode::InvalidSphereDatum, "group order must be positive");
    std::set<std::string> labels;
    for (const auto& orbit : h.orbits)
    {
        if (!labels.insert(orbit.label).second)
            throw Error(ErrorCode::InvalidSphereDatum, "duplicate orbit label '" + orbit.label + "'");
        if (orbit.index < 0 || orbit.index > h.sphere_dim)
            throw Error(ErrorCode::InvalidSphereDatum,
                        "orbit '" + orbit.label + "' has index outside [0, " + std::to_string(h.sphere_dim) + "]");
        if (orbit.stab_order < 1 || h.group_order % orbit.stab_order != 0)
            throw Error(ErrorCode::InvalidSphereDatum,
                        "orbit '" + orbit.label + "' stabilizer order does not divide |H|");
    }
    const long long count = h.equivariant_count();
    if (count != sphere_euler(h.sphere_dim))
    {
        std::ostringstream msg;
        msg << "equivariant Morse count " << count << " differs from chi(S^" << h.sphere_dim
            << ") = " << sphere_euler(h.sphere_dim);
        throw Error(ErrorCode::SphereCountMismatch, msg.str());
    }
}

SphereMorseDatum builtin_sphere_datum(const std::string& name, const std::vector<long long>& params)
{
    auto expect_params = [&](std::size_t n) {
        if (params.size() != n)
            throw Error(ErrorCode::BadParams, name + " takes " + std::to_string(n) + " parameter(s)");
    };

    if (name == "cyclic_rotation_circle")
    {
        expect_params(1);
        if (params[0] < 2)
            throw Error(ErrorCode::BadParams, "cyclic_rotation_circle needs m >= 2");
        return {1, params[0], {{"max", 1, 1}, {"min", 0, 1}}};
    }
    if (name == "two_points_swap")
    {
        expect_params(0);
        return {0, 2, {{"pt", 0, 1}}};
    }
    if (name == "antipodal_sphere2")
    {
        expect_params(0);
        return {2, 2, {{"top", 2, 1}, {"mid", 1, 1}, {"bot", 0, 1}}};
    }
    throw Error(ErrorCode::UnknownBuiltin, "no built-in sphere datum named '" + name + "'");
}

SphereMorseDatum builtin_sphere_datum_from_spec(const std::string& spec)
{
    std::string name = spec;
    std::string args;
    if (const auto open = spec.find('('); open != std::string::npos)
    {
        if (spec.back() != ')')
            throw Error(ErrorCode::BadParams, "unbalanced parentheses in '" + spec + "'");
        name = spec.substr(0, open);
        args = spec.substr(open + 1, spec.size() - open - 2);
    }
    else if (const auto colon = spec.find(':'); colon != std::string::npos)
    {
        name = spec.substr(0, colon);
        args = spec.substr(colon + 1);
    }

    std::vector<long long> params;
    std::size_t start = 0;
    while (start < args.size())
    {
        std::size_t end = args.find(',', start);
        if (end == std::string::npos)
            end = args.size();
        long long value = 0;
        const char* first = args.data() + start;
        const char* last = args.data() + end;
        while (first < last && *first == ' ')
            ++first;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw Error(ErrorCode::BadParams, "bad integer parameter in '" + spec + "'");
        params.push_back(value);
        start = end + 1;
    }
    return builtin_sphere_datum(name, params);
}

Rational euler_defect(const UnstableLocalData& local, const SphereMorseDatum& h)
{
    Rational after = Rational(sign_of_power(local.dim_fixed), local.stab_order);
    for (const auto& orbit : h.orbits)
        after += Rational(sign_of_power(orbit.index + 1 + local.dim_fixed), orbit.stab_order);
    const Rational before(sign_of_power(local.dim_fixed + local.dim_perp), local.stab_order);
    return after - before;
}

StabilizationResult stabilize_point(const MorseDatum& d,
                                    const UnstableLocalData& local,
                                    const SphereMorseDatum& h,
                                    const std::vector<std::string>& new_ids)
{
    const auto target = std::find_if(d.points.begin(), d.points.end(),
                                     [&](const CriticalPointRecord& p) { return p.id == local.point_id; });
    if (target == d.points.end())
        throw Error(ErrorCode::PointNotFound, "no critical point '" + local.point_id + "'");
    if (target->stable)
        throw Error(ErrorCode::PointAlreadyStable, "point '" + local.point_id + "' is already stable");

    if (local.dim_fixed < 0 || local.dim_perp < 1)
        throw Error(ErrorCode::DimensionMismatch, "need dim_fixed >= 0 and dim_perp >= 1");
    if (local.dim_fixed + local.dim_perp != target->index)
        throw Error(ErrorCode::DimensionMismatch,
                    "dim_fixed + dim_perp = " + std::to_string(local.dim_fixed + local.dim_perp) +
                        " but point index is " + std::to_string(target->index));
    if (h.sphere_dim != local.dim_perp - 1)
        throw Error(ErrorCode::DimensionMismatch,
                    "sphere datum lives on S^" + std::to_string(h.sphere_dim) + ", expected S^" +
                        std::to_string(local.dim_perp - 1));
    if (local.stab_order != target->stab_order || h.group_order != local.stab_order)
        throw Error(ErrorCode::DimensionMismatch, "stabilizer orders of point, local data and sphere datum disagree");
    check_sphere_datum(h);
    if (euler_defect(local, h) != 0)
        throw Error(ErrorCode::SphereCountMismatch, "stabilization would change the orbifold Euler number");
    if (!new_ids.empty() && new_ids.size() != h.orbits.size())
        throw Error(ErrorCode::BadParams, "expected " + std::to_string(h.orbits.size()) + " new point names");

    StabilizationResult result;
    result.datum.ambient_dimension = d.ambient_dimension;

    std::set<std::string> touched{local.point_id};
    for (const auto& p : d.points)
    {
        if (p.id != local.point_id)
        {
            result.datum.points.push_back(p);
            continue;
        }
        result.datum.points.push_back({p.id, local.dim_fixed, p.stab_order, true});
        for (std::size_t i = 0; i < h.orbits.size(); ++i)
        {
            const auto& orbit = h.orbits[i];
            std::string id = new_ids.empty() ? p.id + "." + orbit.label : new_ids[i];
            result.datum.points.push_back({id, orbit.index + 1 + local.dim_fixed, orbit.stab_order, true});
            result.new_point_ids.push_back(id);
            touched.insert(std::move(id));
        }
    }

    std::set<std::string> ids;
    for (const auto& p : result.datum.points)
        if (!ids.insert(p.id).second)
            throw Error(ErrorCode::BadParams, "new point name '" + p.id + "' collides with an existing label");

    for (const auto& flow : d.flows)
        if (!touched.count(flow.from) && !touched.count(flow.to))
            result.datum.flows.push_back(flow);

    for (const auto& from : result.datum.points)
        for (const auto& to : result.datum.points)
        {
            if (from.index - to.index != 1)
                continue;
            if (!touched.count(from.id) && !touched.count(to.id))
                continue;
            result.datum.flows.push_back({from.id, to.id, std::nullopt});
            result.stale_flow_pairs.emplace_back(from.id, to.id);
        }
    return result;
}

}   // namespace orbimorse
