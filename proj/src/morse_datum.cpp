#include "orbimorse/morse_datum.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "orbimorse/error.hpp"

namespace orbimorse {

const CriticalPointRecord* MorseDatum::find(const std::string& id) const
{
    for (const auto& p : points)
        if (p.id == id)
            return &p;
    return nullptr;
}

Integer MorseDatum::count(const std::string& from, const std::string& to) const
{
    Integer total = 0;
    for (const auto& flow : flows)
    {
        if (flow.from != from || flow.to != to)
            continue;
        if (!flow.known())
            throw Error(ErrorCode::UnknownFlowCount, "flow " + from + " -> " + to + " is a placeholder");
        total += *flow.signed_count;
    }
    return total;
}

bool ValidationReport::has_rule(const std::string& rule) const
{
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.rule == rule; });
}

ValidationReport validate(const MorseDatum& d, const ValidationOptions& options)
{
    ValidationReport report;
    auto add = [&](std::string rule, std::string detail) {
        report.violations.push_back({std::move(rule), std::move(detail)});
    };

    std::map<std::string, const CriticalPointRecord*> by_id;
    for (const auto& p : d.points)
    {
        if (!by_id.emplace(p.id, &p).second)
            add("duplicate-label", "point label '" + p.id + "' appears more than once");
        if (p.stab_order < 1)
            add("stab-order-positive", "point '" + p.id + "' has stabilizer order " + std::to_string(p.stab_order));
        if (p.index < 0)
            add("index-nonnegative", "point '" + p.id + "' has index " + std::to_string(p.index));
        if (d.ambient_dimension && p.index > *d.ambient_dimension)
            add("index-bound", "point '" + p.id + "' has index " + std::to_string(p.index) +
                                   " above ambient dimension " + std::to_string(*d.ambient_dimension));
        if (options.require_stable && !p.stable)
            add("unstable-point", "point '" + p.id + "' is not stable");
    }

    std::set<std::pair<std::string, std::string>> seen_pairs;
    for (const auto& flow : d.flows)
    {
        const std::string pair = "'" + flow.from + "' -> '" + flow.to + "'";
        const auto from = by_id.find(flow.from);
        const auto to = by_id.find(flow.to);
        bool endpoints_ok = true;
        if (from == by_id.end())
        {
            add("unknown-endpoint", "flow " + pair + " starts at an unknown point");
            endpoints_ok = false;
        }
        if (to == by_id.end())
        {
            add("unknown-endpoint", "flow " + pair + " ends at an unknown point");
            endpoints_ok = false;
        }
        if (!seen_pairs.emplace(flow.from, flow.to).second)
            add("duplicate-flow", "flow " + pair + " is listed more than once");
        if (!flow.known() && !options.allow_placeholders)
            add("unknown-flow-count", "flow " + pair + " has no known count");
        if (!endpoints_ok)
            continue;

        const CriticalPointRecord& p = *from->second;
        const CriticalPointRecord& q = *to->second;
        if (p.index - q.index != 1)
            add("index-gap", "flow " + pair + " joins indices " + std::to_string(p.index) + " and " +
                                 std::to_string(q.index));
        if (flow.known() && *flow.signed_count != 0 && p.stab_order >= 1 && q.stab_order >= 1 &&
            q.stab_order % p.stab_order != 0)
            add("stabilizer-divisibility", "flow " + pair + " has nonzero count but |stab| " +
                                               std::to_string(p.stab_order) + " does not divide " +
                                               std::to_string(q.stab_order));
    }
    return report;
}

namespace {

enum class Weighting
{
    Coinvariant,
    Invariant
};

std::string describe(const ValidationReport& report)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < report.violations.size(); ++i)
        os << (i ? "; " : "") << report.violations[i].rule << ": " << report.violations[i].detail;
    return os.str();
}

/** Checks shared by both differentials; returns only after every precondition holds. */
void require_complex_preconditions(const MorseDatum& d, Weighting weighting)
{
    const ValidationReport report = validate(d, {.require_stable = false, .allow_placeholders = true});
    ValidationReport structural;
    ValidationReport divisibility;
    for (const auto& v : report.violations)
        (v.rule == "stabilizer-divisibility" ? divisibility : structural).violations.push_back(v);
    if (!structural.ok())
        throw Error(ErrorCode::InvalidDatum, describe(structural));

    std::vector<std::string> stale;
    for (const auto& flow : d.flows)
        if (!flow.known())
            stale.push_back(flow.from + "->" + flow.to);
    if (!stale.empty())
    {
        std::ostringstream msg;
        msg << "unknown flow counts:";
        for (const auto& s : stale)
            msg << " " << s;
        throw Error(ErrorCode::UnknownFlowCount, msg.str());
    }

    std::vector<std::string> unstable;
    for (const auto& p : d.points)
        if (!p.stable)
            unstable.push_back(p.id);
    if (!unstable.empty())
    {
        std::ostringstream msg;
        msg << "unstable points:";
        for (const auto& s : unstable)
            msg << " " << s;
        throw Error(ErrorCode::UnstablePoint, msg.str());
    }

    if (!divisibility.ok())
        throw Error(weighting == Weighting::Invariant ? ErrorCode::NonIntegralCoefficient : ErrorCode::InvalidDatum,
                    describe(divisibility));
}

FreeChainComplex build_complex(const MorseDatum& d, Weighting weighting)
{
    require_complex_preconditions(d, weighting);

    int top = d.ambient_dimension.value_or(0);
    for (const auto& p : d.points)
        top = std::max(top, p.index);

    std::vector<std::vector<std::string>> generators(static_cast<std::size_t>(top) + 1);
    std::map<std::string, std::pair<int, std::size_t>> position;   // id -> (degree, slot)
    std::map<std::string, std::int64_t> stab;
    for (const auto& p : d.points)
    {
        auto& slot = generators[static_cast<std::size_t>(p.index)];
        position[p.id] = {p.index, slot.size()};
        stab[p.id] = p.stab_order;
        slot.push_back(p.id);
    }

    std::vector<IntegerMatrix> boundaries;
    for (std::size_t k = 0; k < generators.size(); ++k)
        boundaries.emplace_back(k == 0 ? 0 : generators[k - 1].size(), generators[k].size());

    for (const auto& flow : d.flows)
    {
        const auto [k, col] = position.at(flow.from);
        const std::size_t row = position.at(flow.to).second;
        Integer entry = *flow.signed_count;
        if (weighting == Weighting::Invariant)
            entry = entry * stab.at(flow.to) / stab.at(flow.from);
        boundaries[static_cast<std::size_t>(k)](row, col) += entry;
    }

    FreeChainComplex C(0, std::move(generators), std::move(boundaries));
    if (const auto verdict = verify_complex(C); !verdict)
        throw Error(ErrorCode::BoundarySquaredNonzero,
                    std::string(weighting == Weighting::Invariant ? "invariant" : "coinvariant") +
                        " complex: " + verdict.to_string());
    return C;
}

}   // namespace

FreeChainComplex coinvariant_complex(const MorseDatum& d)
{
    return build_complex(d, Weighting::Coinvariant);
}

FreeChainComplex invariant_complex(const MorseDatum& d)
{
    return build_complex(d, Weighting::Invariant);
}

Rational orbifold_euler(const MorseDatum& d)
{
    Rational chi = 0;
    for (const auto& p : d.points)
    {
        const Rational term(1, p.stab_order);
        chi += (p.index % 2 == 0) ? term : Rational(-term);
    }
    return chi;
}

long long underlying_euler(const MorseDatum& d)
{
    long long chi = 0;
    for (const auto& p : d.points)
        chi += (p.index % 2 == 0) ? 1 : -1;
    return chi;
}

bool RatioIdentityReport::ok() const
{
    return std::all_of(entries.begin(), entries.end(),
                       [](const Entry& e) { return e.invariant_side == e.coinvariant_side; });
}

RatioIdentityReport ratio_identity_check(const MorseDatum& d)
{
    const ValidationReport report = validate(d, {.require_stable = false, .allow_placeholders = false});
    if (report.has_rule("stabilizer-divisibility"))
        throw Error(ErrorCode::NonIntegralCoefficient, describe(report));
    if (!report.ok())
        throw Error(ErrorCode::InvalidDatum, describe(report));

    // co(p, q) and in(p, q) for every recorded pair
    std::map<std::pair<std::string, std::string>, Integer> co;
    for (const auto& flow : d.flows)
        co[{flow.from, flow.to}] += *flow.signed_count;

    RatioIdentityReport result;
    for (const auto& p : d.points)
        for (const auto& r : d.points)
        {
            if (p.index - r.index != 2)
                continue;
            Integer co_squared = 0;
            Integer in_squared = 0;
            for (const auto& q : d.points)
            {
                if (q.index != p.index - 1)
                    continue;
                const auto pq = co.find({p.id, q.id});
                const auto qr = co.find({q.id, r.id});
                if (pq == co.end() || qr == co.end())
                    continue;
                co_squared += pq->second * qr->second;
                const Integer in_pq = pq->second * q.stab_order / p.stab_order;
                const Integer in_qr = qr->second * r.stab_order / q.stab_order;
                in_squared += in_pq * in_qr;
            }
            result.entries.push_back({p.id, r.id, in_squared * p.stab_order, co_squared * r.stab_order});
        }
    return result;
}

}   // namespace orbimorse
