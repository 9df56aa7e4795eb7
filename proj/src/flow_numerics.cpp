#include "orbimorse/flow_numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <sstream>
#include <thread>

#include "orbimorse/error.hpp"

namespace orbimorse {

namespace {

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;

/**
 * Runs fn(i) for i in [0, n). Results must be written to slot i by fn, so
 * the merged output does not depend on scheduling. The exception of the
 * lowest failing index is rethrown.
 */
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::vector<std::exception_ptr> errors(n);
    auto run = [&](std::size_t i) {
        try
        {
            fn(i);
        }
        catch (...)
        {
            errors[i] = std::current_exception();
        }
    };
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            run(i);
    }
    else
    {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++)
                    run(i);
            });
        for (auto& th : pool)
            th.join();
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

bool lex_greater(const Vec3& a, const Vec3& b)
{
    for (int i = 0; i < 3; ++i)
        if (std::abs(a[i] - b[i]) > 1e-9)
            return a[i] > b[i];
    return false;
}

double signed_volume(const Vec3& a, const Vec3& b, const Vec3& c)
{
    return a.cross(b).dot(c);
}

int sign_of(double x)
{
    return x > 0 ? 1 : -1;
}

Vec4 lagrange_residual(const ImplicitQuotientSurface& s, const Vec3& x, double lambda)
{
    Vec4 r;
    r.head<3>() = s.grad_f(x) - lambda * s.level.gradient(x);
    r(3) = s.level.value(x);
    return r;
}

struct LagrangePoint
{
    Vec3 x;
    double lambda;
};

/** Damped Newton on grad f = lambda grad F, F = 0. */
std::optional<LagrangePoint> solve_lagrange(const ImplicitQuotientSurface& s, const Vec3& seed)
{
    Vec3 x = s.project(seed);
    Vec3 gF = s.level.gradient(x);
    if (!x.allFinite() || !gF.allFinite() || gF.squaredNorm() == 0.0)
        return std::nullopt;
    double lambda = s.grad_f(x).dot(gF) / gF.squaredNorm();

    for (int it = 0; it < 80; ++it)
    {
        const Vec4 r = lagrange_residual(s, x, lambda);
        if (!r.allFinite())
            return std::nullopt;
        const double norm = r.norm();
        if (norm < s.tol.newton_tol)
            return LagrangePoint{x, lambda};

        gF = s.level.gradient(x);
        Mat4 J = Mat4::Zero();
        J.topLeftCorner<3, 3>() = s.hess_f(x) - lambda * s.level.hessian(x);
        J.block<3, 1>(0, 3) = -gF;
        J.block<1, 3>(3, 0) = gF.transpose();
        Eigen::FullPivLU<Mat4> lu(J);
        if (!lu.isInvertible())
            return std::nullopt;
        const Vec4 delta = lu.solve(-r);

        double t = 1.0;
        Vec3 x_next;
        double lambda_next = 0.0;
        for (int halving = 0; halving < 20; ++halving, t *= 0.5)
        {
            x_next = x + t * delta.head<3>();
            lambda_next = lambda + t * delta(3);
            const Vec4 r_next = lagrange_residual(s, x_next, lambda_next);
            if (r_next.allFinite() && r_next.norm() < norm)
                break;
        }
        if (!x_next.allFinite() || x_next.norm() > s.tol.escape_radius)
            return std::nullopt;
        x = x_next;
        lambda = lambda_next;
    }
    return std::nullopt;
}

/** Orthonormal tangent basis (t1, t2) with (t1, t2, n) right-handed. */
std::pair<Vec3, Vec3> tangent_basis(const Vec3& n)
{
    int axis = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(n[i]) < std::abs(n[axis]))
            axis = i;
    Vec3 a = Vec3::Unit(axis);
    const Vec3 t1 = (a - a.dot(n) * n).normalized();
    return {t1, n.cross(t1)};
}

/** Fixes the sign of v so that its largest-magnitude component is positive. */
Vec3 canonical_sign(const Vec3& v)
{
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(v[i]) > std::abs(v[k]) + 1e-12)
            k = i;
    return v[k] < 0 ? Vec3(-v) : v;
}

NumericCriticalPoint classify(const ImplicitQuotientSurface& s, const LagrangePoint& p)
{
    NumericCriticalPoint c;
    c.position = p.x;
    c.multiplier = p.lambda;
    c.value = s.f(p.x);

    const Vec3 n = s.normal(p.x);
    const auto [t1, t2] = tangent_basis(n);
    Eigen::Matrix<double, 3, 2> T;
    T.col(0) = t1;
    T.col(1) = t2;
    const Mat3 H = s.hess_f(p.x) - p.lambda * s.level.hessian(p.x);
    const Eigen::Matrix2d M = T.transpose() * H * T;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(M);
    for (int i = 0; i < 2; ++i)
    {
        const double ev = eig.eigenvalues()(i);
        if (std::abs(ev) < s.tol.degenerate_tol)
        {
            std::ostringstream msg;
            msg << "tangent Hessian eigenvalue " << ev << " at (" << p.x.transpose() << ")";
            throw Error(ErrorCode::DegenerateCritical, msg.str());
        }
        c.eigenvalues.push_back(ev);
        const Vec3 v = canonical_sign((T * eig.eigenvectors().col(i)).normalized());
        (ev < 0 ? c.negative_eigenvectors : c.positive_eigenvectors).push_back(v);
    }
    c.index = static_cast<int>(c.negative_eigenvectors.size());

    for (std::size_t g = 0; g < s.group.size(); ++g)
        if ((s.group[g] * p.x - p.x).norm() < s.tol.stab_tol)
            c.stab_elements.push_back(g);
    for (std::size_t g : c.stab_elements)
        for (const auto& v : c.negative_eigenvectors)
            if ((s.group[g] * v - v).norm() > s.tol.stab_tol)
                c.stable = false;
    return c;
}

std::string landmark_label(const ImplicitQuotientSurface& s, const Vec3& x)
{
    for (const auto& l : s.landmarks)
        if ((l.position - x).norm() < 1e-6)
            return l.name;
    return {};
}

}   // namespace

std::vector<Vec3> CriticalOrbit::frame(const ImplicitQuotientSurface& s, std::size_t lift) const
{
    const Mat3& g = s.group[lift_elements.at(lift)];
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < representative.negative_eigenvectors.size(); ++i)
    {
        Vec3 v = g * representative.negative_eigenvectors[i];
        if (i == 0 && orientation_sign < 0)
            v = -v;
        out.push_back(v);
    }
    return out;
}

std::vector<CriticalOrbit> find_critical_orbits(const ImplicitQuotientSurface& s, const SearchOptions& options)
{
    const std::size_t nu = static_cast<std::size_t>(std::max(1, options.seeds_u));
    const std::size_t nv = static_cast<std::size_t>(std::max(1, options.seeds_v));
    std::vector<std::optional<LagrangePoint>> solved(nu * nv);
    parallel_for(solved.size(), options.threads, [&](std::size_t i) {
        const double u = (static_cast<double>(i / nv) + 0.5) / static_cast<double>(nu);
        const double v = (static_cast<double>(i % nv) + 0.5) / static_cast<double>(nv);
        solved[i] = solve_lagrange(s, s.chart(u, v));
    });

    std::vector<LagrangePoint> found;
    for (const auto& p : solved)
    {
        if (!p)
            continue;
        const bool duplicate = std::any_of(found.begin(), found.end(), [&](const LagrangePoint& q) {
            return (q.x - p->x).norm() < s.tol.dedup_tol;
        });
        if (!duplicate)
            found.push_back(*p);
    }

    // Group into orbits; every lift is generated from the representative.
    std::vector<bool> assigned(found.size(), false);
    std::vector<CriticalOrbit> orbits;
    for (std::size_t i = 0; i < found.size(); ++i)
    {
        if (assigned[i])
            continue;
        std::vector<Vec3> lifts;
        for (const auto& g : s.group)
        {
            const Vec3 y = g * found[i].x;
            if (std::none_of(lifts.begin(), lifts.end(),
                             [&](const Vec3& z) { return (z - y).norm() < s.tol.dedup_tol; }))
                lifts.push_back(y);
        }
        std::sort(lifts.begin(), lifts.end(), lex_greater);
        for (std::size_t j = i; j < found.size(); ++j)
            for (const auto& y : lifts)
                if ((found[j].x - y).norm() < s.tol.dedup_tol)
                    assigned[j] = true;

        // Polish the representative itself so its frame is computed at a true zero.
        const auto rep = solve_lagrange(s, lifts.front());
        if (!rep)
            throw Error(ErrorCode::SeedGridExhausted, "Newton failed to re-converge at an orbit representative");

        CriticalOrbit orbit;
        orbit.representative = classify(s, *rep);
        orbit.index = orbit.representative.index;
        orbit.stab_order = orbit.representative.stab_elements.size();
        orbit.stable = orbit.representative.stable;
        for (const auto& y : lifts)
        {
            for (std::size_t g = 0; g < s.group.size(); ++g)
            {
                const Vec3 image = s.group[g] * orbit.representative.position;
                if ((image - y).norm() < s.tol.dedup_tol)
                {
                    orbit.lifts.push_back(image);
                    orbit.lift_elements.push_back(g);
                    break;
                }
            }
        }
        orbits.push_back(std::move(orbit));
    }

    std::sort(orbits.begin(), orbits.end(), [](const CriticalOrbit& a, const CriticalOrbit& b) {
        if (a.index != b.index)
            return a.index > b.index;
        const double fa = a.representative.value;
        const double fb = b.representative.value;
        if (std::abs(fa - fb) > 1e-9)
            return fa > fb;
        return lex_greater(a.representative.position, b.representative.position);
    });

    std::map<int, int> counters;
    for (auto& orbit : orbits)
    {
        orbit.label = landmark_label(s, orbit.representative.position);
        if (orbit.label.empty())
        {
            static const char* names[] = {"min", "saddle", "max"};
            const std::string stem = orbit.index >= 0 && orbit.index <= 2 ? names[orbit.index]
                                                                           : "crit" + std::to_string(orbit.index) + "_";
            orbit.label = stem + std::to_string(counters[orbit.index]++);
        }
    }

    if (s.euler_characteristic)
    {
        long long chi = 0;
        for (const auto& orbit : orbits)
            chi += (orbit.index % 2 == 0 ? 1 : -1) * static_cast<long long>(orbit.lifts.size());
        if (chi != *s.euler_characteristic)
        {
            std::ostringstream msg;
            msg << "found critical points have alternating count " << chi << ", surface Euler characteristic is "
                << *s.euler_characteristic;
            throw Error(ErrorCode::SeedGridExhausted, msg.str());
        }
    }
    return orbits;
}

std::vector<std::string> unstable_labels(const std::vector<CriticalOrbit>& orbits)
{
    std::vector<std::string> labels;
    for (const auto& orbit : orbits)
        if (!orbit.stable)
            labels.push_back(orbit.label);
    return labels;
}

namespace {

struct CriticalSite
{
    std::size_t orbit;
    std::size_t lift;
    Vec3 position;
    bool attractor;
};

struct Trajectory
{
    std::size_t orbit;
    std::size_t lift;
    std::vector<Vec3> path;
};

/**
 * Integrates dx/dt = direction * P_x grad f (direction -1 is the Morse
 * flow) with an adaptive Dormand-Prince 5(4) step, re-projecting onto the
 * surface after every accepted step, until the trajectory enters the
 * capture ball of an attractor.
 */
Trajectory integrate(const ImplicitQuotientSurface& s,
                     const std::vector<CriticalSite>& sites,
                     const Vec3& start,
                     double direction,
                     std::size_t exclude_orbit,
                     std::size_t exclude_lift,
                     bool keep_path)
{
    const auto field = [&](const Vec3& x) -> Vec3 {
        const Vec3 n = s.normal(x);
        const Vec3 g = s.grad_f(x);
        return direction * (g - g.dot(n) * n);
    };

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                            e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;
    (void)c2, (void)c3, (void)c4, (void)c5;

    const double max_displacement = 0.02;
    Trajectory out{0, 0, {}};
    Vec3 x = s.project(start);
    if (keep_path)
        out.path.push_back(x);
    double h = s.tol.integrate_step;
    Vec3 k1 = field(x);

    for (long step = 0; step < s.tol.max_steps; ++step)
    {
        for (const auto& site : sites)
        {
            const double dist = (site.position - x).norm();
            if (site.attractor && dist < s.tol.capture_radius)
            {
                out.orbit = site.orbit;
                out.lift = site.lift;
                return out;
            }
            if (!site.attractor && dist < s.tol.broken_flow_radius &&
                !(site.orbit == exclude_orbit && site.lift == exclude_lift))
            {
                std::ostringstream msg;
                msg << "trajectory from (" << start.transpose() << ") limits to a non-attracting critical point at ("
                    << site.position.transpose() << ")";
                throw Error(ErrorCode::BrokenFlowDetected, msg.str());
            }
        }
        if (!x.allFinite() || x.norm() > s.tol.escape_radius)
            throw Error(ErrorCode::NonConvergentTrajectory, "trajectory escaped");

        for (int attempt = 0;; ++attempt)
        {
            if (attempt > 60)
                throw Error(ErrorCode::NonConvergentTrajectory, "step size underflow");
            const Vec3 k2 = field(x + h * (a21 * k1));
            const Vec3 k3 = field(x + h * (a31 * k1 + a32 * k2));
            const Vec3 k4 = field(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const Vec3 k5 = field(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Vec3 k6 = field(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Vec3 y = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Vec3 k7 = field(y);
            const Vec3 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double err_norm = err.cwiseAbs().maxCoeff();
            const double displacement = (y - x).norm();
            if (!y.allFinite() || err_norm > s.tol.integrate_tol || displacement > max_displacement)
            {
                double shrink = 0.2;
                if (y.allFinite() && err_norm > 0)
                    shrink = std::clamp(0.9 * std::pow(s.tol.integrate_tol / err_norm, 0.2), 0.2, 0.9);
                if (displacement > max_displacement)
                    shrink = std::min(shrink, 0.5);
                h *= shrink;
                continue;
            }
            x = s.project(y);
            k1 = field(x);
            const double grow = err_norm > 0 ? std::clamp(0.9 * std::pow(s.tol.integrate_tol / err_norm, 0.2), 0.2, 5.0)
                                             : 5.0;
            h *= grow;
            if (keep_path)
                out.path.push_back(x);
            break;
        }
    }
    throw Error(ErrorCode::NonConvergentTrajectory, "trajectory did not converge within the step limit");
}

std::vector<CriticalSite> critical_sites(const std::vector<CriticalOrbit>& orbits, int attractor_index)
{
    std::vector<CriticalSite> sites;
    for (std::size_t o = 0; o < orbits.size(); ++o)
        for (std::size_t l = 0; l < orbits[o].lifts.size(); ++l)
            sites.push_back({o, l, orbits[o].lifts[l], orbits[o].index == attractor_index});
    return sites;
}

}   // namespace

FlowCensus count_flow_lines(const ImplicitQuotientSurface& s,
                            const std::vector<CriticalOrbit>& orbits,
                            std::size_t from,
                            std::size_t to,
                            const CountOptions& options)
{
    const CriticalOrbit& P = orbits.at(from);
    const CriticalOrbit& Q = orbits.at(to);
    if (!P.stable || !Q.stable)
        throw Error(ErrorCode::UnstableEndpoint,
                    "flow counting needs stable endpoints ('" + P.label + "' -> '" + Q.label + "')");
    if (P.index - Q.index != 1)
        throw Error(ErrorCode::IndexGapViolation, "'" + P.label + "' -> '" + Q.label + "' has index gap " +
                                                      std::to_string(P.index - Q.index) + ", expected 1");

    struct Shot
    {
        Vec3 start;
        std::size_t anchor_lift;   // lift the shot leaves from
        int offset_sign;
    };

    const double delta = s.tol.shoot_offset;
    std::vector<Shot> shots;
    double direction = -1.0;
    int attractor_index = 0;
    std::size_t exclude_orbit = from;

    if (P.index == 1 && Q.index == 0)
    {
        const Vec3 e = P.frame(s, 0).at(0);
        for (int sigma : {1, -1})
            shots.push_back({P.lifts[0] + delta * sigma * e, 0, sigma});
    }
    else if (P.index == 2 && Q.index == 1)
    {
        direction = 1.0;
        attractor_index = 2;
        exclude_orbit = to;
        for (std::size_t j = 0; j < Q.lifts.size(); ++j)
        {
            const Vec3 u = s.group[Q.lift_elements[j]] * Q.representative.positive_eigenvectors.at(0);
            for (int tau : {1, -1})
                shots.push_back({Q.lifts[j] + delta * tau * u, j, tau});
        }
    }
    else
    {
        throw Error(ErrorCode::IndexGapViolation, "only index pairs (1,0) and (2,1) occur on surfaces");
    }

    const std::vector<CriticalSite> sites = critical_sites(orbits, attractor_index);
    std::vector<Trajectory> results(shots.size());
    parallel_for(shots.size(), options.threads, [&](std::size_t i) {
        results[i] = integrate(s, sites, shots[i].start, direction, exclude_orbit, shots[i].anchor_lift,
                               options.keep_paths);
    });

    FlowCensus census;
    for (std::size_t i = 0; i < shots.size(); ++i)
    {
        const Trajectory& t = results[i];
        const Shot& shot = shots[i];
        FlowLine line;
        if (P.index == 1)
        {
            if (t.orbit != to)
                continue;
            // Leaving along +e means the unstable-manifold orientation matches the flow.
            line.target_lift = t.lift;
            line.sign = shot.offset_sign * Q.orientation_sign;
            line.path = t.path;
        }
        else
        {
            if (t.orbit != from || t.lift != 0)
                continue;
            const std::vector<Vec3> frame_p = P.frame(s, 0);
            const int eps_p = sign_of(signed_volume(frame_p[0], frame_p[1], s.normal(P.lifts[0])));
            const Vec3 u = s.group[Q.lift_elements[shot.anchor_lift]] * Q.representative.positive_eigenvectors[0];
            const Vec3 arrival = -shot.offset_sign * u;
            const Vec3 o_q = Q.frame(s, shot.anchor_lift).at(0);
            const int eps_q = sign_of(signed_volume(arrival, o_q, s.normal(Q.lifts[shot.anchor_lift])));
            line.target_lift = shot.anchor_lift;
            line.sign = eps_p * eps_q;
            line.path.assign(t.path.rbegin(), t.path.rend());
        }
        census.signed_count += line.sign;
        census.lines.push_back(std::move(line));
    }
    return census;
}

ImplicitQuotientSurface stabilize_numeric(const ImplicitQuotientSurface& s,
                                          const std::vector<CriticalOrbit>& orbits,
                                          std::size_t unstable_orbit,
                                          const BumpOptions& options)
{
    const CriticalOrbit& orbit = orbits.at(unstable_orbit);
    if (orbit.stable)
        throw Error(ErrorCode::UnsupportedProfile, "orbit '" + orbit.label + "' is already stable");
    if (orbit.index != 1)
        throw Error(ErrorCode::UnsupportedProfile,
                    "numeric stabilization supports index-one points only (dim_fixed 0, dim_perp 1)");
    if (!(options.amplitude_factor > 1.0))
        throw Error(ErrorCode::BadParams, "amplitude factor must exceed 1");

    const Vec3& x0 = orbit.lifts[0];
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t o = 0; o < orbits.size(); ++o)
        for (std::size_t l = 0; l < orbits[o].lifts.size(); ++l)
            if (!(o == unstable_orbit && l == 0))
                nearest = std::min(nearest, (orbits[o].lifts[l] - x0).norm());

    const double width = options.width > 0.0 ? options.width : 0.25 * nearest;
    if (width > 0.5 * nearest)
    {
        std::ostringstream msg;
        msg << "bump width " << width << " exceeds half the distance " << nearest
            << " to the nearest other critical point";
        throw Error(ErrorCode::BumpTooWide, msg.str());
    }
    const double lambda = std::abs(orbit.representative.eigenvalues.at(0));
    const double amplitude = options.amplitude_factor * lambda * width * width;

    ImplicitQuotientSurface out = s;
    for (const auto& lift : orbit.lifts)
        out.bumps.push_back({lift, amplitude, width});
    check_surface(out);
    return out;
}

CountTable count_all_flows(const ImplicitQuotientSurface& s,
                           const std::vector<CriticalOrbit>& orbits,
                           const CountOptions& options)
{
    CountTable table;
    for (std::size_t i = 0; i < orbits.size(); ++i)
        for (std::size_t j = 0; j < orbits.size(); ++j)
            if (orbits[i].index - orbits[j].index == 1)
                table[{i, j}] = count_flow_lines(s, orbits, i, j, options).signed_count;
    return table;
}

MorseDatum quotient_to_datum(const std::vector<CriticalOrbit>& orbits, const CountTable& counts)
{
    MorseDatum d;
    d.ambient_dimension = 2;
    for (const auto& orbit : orbits)
        d.points.push_back({orbit.label, orbit.index, static_cast<std::int64_t>(orbit.stab_order), orbit.stable});
    for (std::size_t i = 0; i < orbits.size(); ++i)
        for (std::size_t j = 0; j < orbits.size(); ++j)
        {
            if (orbits[i].index - orbits[j].index != 1)
                continue;
            const auto it = counts.find({i, j});
            if (it == counts.end())
                throw Error(ErrorCode::InvalidDatum,
                            "no count for '" + orbits[i].label + "' -> '" + orbits[j].label + "'");
            d.flows.push_back({orbits[i].label, orbits[j].label, Integer(it->second)});
        }

    const ValidationReport report = validate(d);
    if (!report.ok())
    {
        std::ostringstream msg;
        for (const auto& v : report.violations)
            msg << v.rule << ": " << v.detail << "; ";
        throw Error(ErrorCode::InvalidDatum, msg.str());
    }
    return d;
}

Discovery discover_datum(const ImplicitQuotientSurface& s, const DiscoveryOptions& options)
{
    Discovery result{s, find_critical_orbits(s, options.search), {}, {}};

    const std::size_t initial_unstable = unstable_labels(result.orbits).size();
    if (initial_unstable > 0 && !options.stabilize)
    {
        std::ostringstream msg;
        msg << "unstable points: ";
        const auto labels = unstable_labels(result.orbits);
        for (std::size_t i = 0; i < labels.size(); ++i)
            msg << (i ? ", " : "") << labels[i];
        throw Error(ErrorCode::UnstablePoint, msg.str());
    }

    for (std::size_t round = 0; round < initial_unstable; ++round)
    {
        const auto it = std::find_if(result.orbits.begin(), result.orbits.end(),
                                     [](const CriticalOrbit& o) { return !o.stable; });
        if (it == result.orbits.end())
            break;
        const auto index = static_cast<std::size_t>(it - result.orbits.begin());
        result.surface = stabilize_numeric(result.surface, result.orbits, index, options.bump);
        result.orbits = find_critical_orbits(result.surface, options.search);
    }
    if (const auto labels = unstable_labels(result.orbits); !labels.empty())
        throw Error(ErrorCode::UnstablePoint, "stabilization left unstable points, first: " + labels.front());

    result.counts = count_all_flows(result.surface, result.orbits, options.count);
    result.datum = quotient_to_datum(result.orbits, result.counts);
    return result;
}

}   // namespace orbimorse
