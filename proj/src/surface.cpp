#include "orbimorse/surface.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "orbimorse/error.hpp"

namespace orbimorse {

double ImplicitQuotientSurface::f(const Vec3& x) const
{
    double value = morse.value(x);
    for (const auto& b : bumps)
        value -= b.amplitude * std::exp(-(x - b.center).squaredNorm() / (b.width * b.width));
    return value;
}

Vec3 ImplicitQuotientSurface::grad_f(const Vec3& x) const
{
    Vec3 g = morse.gradient(x);
    for (const auto& b : bumps)
    {
        const Vec3 d = x - b.center;
        const double a2 = b.width * b.width;
        const double e = b.amplitude * std::exp(-d.squaredNorm() / a2);
        g += e * 2.0 * d / a2;
    }
    return g;
}

Mat3 ImplicitQuotientSurface::hess_f(const Vec3& x) const
{
    Mat3 H = morse.hessian(x);
    for (const auto& b : bumps)
    {
        const Vec3 d = x - b.center;
        const double a2 = b.width * b.width;
        const double e = b.amplitude * std::exp(-d.squaredNorm() / a2);
        H -= e * (4.0 * d * d.transpose() / (a2 * a2) - 2.0 * Mat3::Identity() / a2);
    }
    return H;
}

Vec3 ImplicitQuotientSurface::project(const Vec3& x) const
{
    Vec3 y = x;
    for (int it = 0; it < 50; ++it)
    {
        const double F = level.value(y);
        const Vec3 g = level.gradient(y);
        const double g2 = g.squaredNorm();
        if (g2 == 0.0)
            break;
        y -= F * g / g2;
        if (std::abs(F) < 1e-15)
            break;
    }
    return y;
}

Vec3 ImplicitQuotientSurface::normal(const Vec3& x) const
{
    return level.gradient(x).normalized();
}

Mat3 named_generator(const std::string& name)
{
    if (name == "identity")
        return Mat3::Identity();
    if (name == "rotation_pi_z")
        return Vec3(-1.0, -1.0, 1.0).asDiagonal();
    if (name == "antipodal")
        return -Mat3::Identity();
    if (name == "reflect_x")
        return Vec3(-1.0, 1.0, 1.0).asDiagonal();
    if (name == "reflect_y")
        return Vec3(1.0, -1.0, 1.0).asDiagonal();
    if (name == "reflect_z")
        return Vec3(1.0, 1.0, -1.0).asDiagonal();
    throw Error(ErrorCode::InvalidSurface, "unknown group generator '" + name + "'");
}

std::vector<Mat3> close_group(const std::vector<Mat3>& generators, double tol)
{
    std::vector<Mat3> group{Mat3::Identity()};
    auto contains = [&](const Mat3& m) {
        for (const auto& g : group)
            if ((g - m).cwiseAbs().maxCoeff() < tol)
                return true;
        return false;
    };
    for (const auto& g : generators)
    {
        if ((g.transpose() * g - Mat3::Identity()).cwiseAbs().maxCoeff() > tol)
            throw Error(ErrorCode::InvalidSurface, "group generator is not orthogonal");
    }
    for (std::size_t i = 0; i < group.size(); ++i)
        for (const auto& g : generators)
        {
            const Mat3 product = g * group[i];
            if (!contains(product))
            {
                group.push_back(product);
                if (group.size() > 1000)
                    throw Error(ErrorCode::InvalidSurface, "generated group exceeds 1000 elements");
            }
        }
    return group;
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, double fallback)
{
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params, std::initializer_list<const char*> allowed)
{
    for (const auto& [key, value] : params)
    {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || key == a;
        if (!ok)
            throw Error(ErrorCode::InvalidSurface, "unknown surface parameter '" + key + "'");
        if (!std::isfinite(value))
            throw Error(ErrorCode::InvalidSurface, "parameter '" + key + "' is not finite");
    }
}

SmoothFunction sphere_level(double radius)
{
    return {
        [radius](const Vec3& x) { return x.squaredNorm() - radius * radius; },
        [](const Vec3& x) -> Vec3 { return 2.0 * x; },
        [](const Vec3&) -> Mat3 { return 2.0 * Mat3::Identity(); },
    };
}

std::function<Vec3(double, double)> sphere_chart(double radius)
{
    return [radius](double u, double v) -> Vec3 {
        const double theta = std::numbers::pi * u;
        const double phi = 2.0 * std::numbers::pi * v;
        return radius * Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
    };
}

}   // namespace

ImplicitQuotientSurface make_surface(const std::string& kind,
                                     const std::map<std::string, double>& params,
                                     const std::vector<std::string>& generators,
                                     const Tolerances& tol)
{
    ImplicitQuotientSurface s;
    s.kind = kind;
    s.params = params;
    s.tol = tol;
    s.generator_names = generators;

    if (kind == "sphere")
    {
        reject_unknown(params, {"radius"});
        const double radius = param(params, "radius", 1.0);
        if (radius <= 0.0)
            throw Error(ErrorCode::InvalidSurface, "sphere radius must be positive");
        s.level = sphere_level(radius);
        s.morse = {
            [](const Vec3& x) { return x.z(); },
            [](const Vec3&) -> Vec3 { return Vec3::UnitZ(); },
            [](const Vec3&) -> Mat3 { return Mat3::Zero(); },
        };
        s.euler_characteristic = 2;
        s.chart = sphere_chart(radius);
        s.landmarks = {{"north_pole", Vec3(0, 0, radius)}, {"south_pole", Vec3(0, 0, -radius)}};
    }
    else if (kind == "epsilon_sphere")
    {
        reject_unknown(params, {"epsilon"});
        const double eps = param(params, "epsilon", 0.8);
        s.level = sphere_level(1.0);
        s.morse = {
            [eps](const Vec3& x) { return x.z() + eps * (x.x() * x.x() - x.y() * x.y()); },
            [eps](const Vec3& x) -> Vec3 { return Vec3(2.0 * eps * x.x(), -2.0 * eps * x.y(), 1.0); },
            [eps](const Vec3&) -> Mat3 { return Vec3(2.0 * eps, -2.0 * eps, 0.0).asDiagonal(); },
        };
        s.euler_characteristic = 2;
        s.chart = sphere_chart(1.0);
        s.landmarks = {{"north_pole", Vec3(0, 0, 1)}, {"south_pole", Vec3(0, 0, -1)}};
    }
    else if (kind == "torus")
    {
        reject_unknown(params, {"R", "r", "tilt"});
        const double R = param(params, "R", 2.0);
        const double r = param(params, "r", 1.0);
        const double tilt = param(params, "tilt", 0.1);
        if (!(r > 0.0 && R > r))
            throw Error(ErrorCode::InvalidSurface, "torus needs R > r > 0");
        s.level = {
            [R, r](const Vec3& x) {
                const double rho = std::hypot(x.x(), x.y());
                return (rho - R) * (rho - R) + x.z() * x.z() - r * r;
            },
            [R](const Vec3& x) -> Vec3 {
                const double rho = std::hypot(x.x(), x.y());
                const double c = 2.0 * (rho - R) / rho;
                return Vec3(c * x.x(), c * x.y(), 2.0 * x.z());
            },
            [R](const Vec3& x) -> Mat3 {
                const double rho = std::hypot(x.x(), x.y());
                const double rho3 = rho * rho * rho;
                const double xx = x.x() * x.x(), yy = x.y() * x.y(), xy = x.x() * x.y();
                Mat3 H = Mat3::Zero();
                H(0, 0) = 2.0 * (xx / (rho * rho) + (rho - R) * yy / rho3);
                H(1, 1) = 2.0 * (yy / (rho * rho) + (rho - R) * xx / rho3);
                H(0, 1) = H(1, 0) = 2.0 * (xy / (rho * rho) - (rho - R) * xy / rho3);
                H(2, 2) = 2.0;
                return H;
            },
        };
        s.morse = {
            [tilt](const Vec3& x) { return x.x() + tilt * x.z(); },
            [tilt](const Vec3&) -> Vec3 { return Vec3(1.0, 0.0, tilt); },
            [](const Vec3&) -> Mat3 { return Mat3::Zero(); },
        };
        s.euler_characteristic = 0;
        s.chart = [R, r](double u, double v) -> Vec3 {
            const double a = 2.0 * std::numbers::pi * u;
            const double b = 2.0 * std::numbers::pi * v;
            return Vec3((R + r * std::cos(b)) * std::cos(a), (R + r * std::cos(b)) * std::sin(a), r * std::sin(b));
        };
    }
    else
    {
        throw Error(ErrorCode::InvalidSurface, "unknown surface kind '" + kind + "'");
    }

    std::vector<Mat3> gens;
    for (const auto& name : generators)
        gens.push_back(named_generator(name));
    s.group = close_group(gens, tol.stab_tol);
    check_surface(s);
    return s;
}

void check_surface(const ImplicitQuotientSurface& s)
{
    const double tol = s.tol.stab_tol;
    auto find = [&](const Mat3& m) {
        for (const auto& g : s.group)
            if ((g - m).cwiseAbs().maxCoeff() < tol)
                return true;
        return false;
    };
    for (const auto& a : s.group)
    {
        if (!find(a.transpose()))
            throw Error(ErrorCode::InvalidSurface, "group is not closed under inverses");
        for (const auto& b : s.group)
            if (!find(a * b))
                throw Error(ErrorCode::InvalidSurface, "group is not closed under products");
    }

    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i)
    {
        const Vec3 x = s.project(s.chart(unit(rng), unit(rng)));
        for (const auto& g : s.group)
        {
            const Vec3 gx = g * x;
            if (std::abs(s.level.value(gx) - s.level.value(x)) > tol)
                throw Error(ErrorCode::InvalidSurface, "level function is not invariant under the group");
            if (std::abs(s.f(gx) - s.f(x)) > tol)
            {
                std::ostringstream msg;
                msg << "Morse function is not invariant under the group (" << s.f(gx) << " vs " << s.f(x) << ")";
                throw Error(ErrorCode::InvalidSurface, msg.str());
            }
        }
    }
}

}   // namespace orbimorse
