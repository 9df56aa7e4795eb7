/**
 * Level-set surfaces in R^3 with a finite orthogonal group action and an
 * invariant Morse function.
 */

#ifndef ORBIMORSE_SURFACE_HPP
#define ORBIMORSE_SURFACE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace orbimorse {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/** A C^2 function on R^3 with analytic first and second derivatives. */
struct SmoothFunction
{
    std::function<double(const Vec3&)> value;
    std::function<Vec3(const Vec3&)> gradient;
    std::function<Mat3(const Vec3&)> hessian;
};

/** Subtracts amplitude * exp(-|x - center|^2 / width^2) from the Morse function. */
struct GaussianBump
{
    Vec3 center;
    double amplitude = 0.0;
    double width = 1.0;
};

struct Tolerances
{
    double newton_tol = 1e-12;
    double dedup_tol = 1e-6;
    double stab_tol = 1e-8;
    double integrate_step = 1e-2;     // initial step of the adaptive integrator
    double escape_radius = 1e3;
    double degenerate_tol = 1e-6;     // smallest admissible |tangent Hessian eigenvalue|
    double capture_radius = 1e-3;     // a trajectory inside this ball around an attractor has converged
    double shoot_offset = 1e-5;       // initial displacement along a descending/ascending direction
    double broken_flow_radius = 1e-4; // approach to a non-attracting critical point closer than this is a broken flow
    double integrate_tol = 1e-11;     // local error per step
    long max_steps = 200000;
};

struct Landmark
{
    std::string name;
    Vec3 position;
};

class ImplicitQuotientSurface
{
    public:
        std::string kind;
        std::map<std::string, double> params;
        SmoothFunction level;               // the surface is level^{-1}(0)
        SmoothFunction morse;               // before bumps
        std::vector<GaussianBump> bumps;
        std::vector<std::string> generator_names;
        std::vector<Mat3> group;            // full group, identity first
        Tolerances tol;
        std::optional<int> euler_characteristic;
        std::function<Vec3(double, double)> chart;   // (u, v) in [0,1)^2 -> point near the surface
        std::vector<Landmark> landmarks;

        double f(const Vec3& x) const;
        Vec3 grad_f(const Vec3& x) const;
        Mat3 hess_f(const Vec3& x) const;

        /** Newton projection onto level^{-1}(0) along the level gradient. */
        Vec3 project(const Vec3& x) const;
        /** Unit normal level_gradient / |level_gradient|. */
        Vec3 normal(const Vec3& x) const;
};

/** Rotation by pi about z, the antipodal map, reflections "reflect_x|y|z", "identity". Throws InvalidSurface. */
Mat3 named_generator(const std::string& name);

/** Closes the generators under multiplication; identity first, then in discovery order. Throws InvalidSurface past 1000 elements. */
std::vector<Mat3> close_group(const std::vector<Mat3>& generators, double tol);

/**
 * Built-in surfaces:
 *   sphere         |x|^2 - radius^2, f = z                        (param radius, default 1)
 *   torus          (sqrt(x^2+y^2) - R)^2 + z^2 - r^2, f = x + tilt*z (R=2, r=1, tilt=0.1)
 *   epsilon_sphere |x|^2 - 1, f = z + epsilon (x^2 - y^2)          (epsilon=0.8)
 * Throws InvalidSurface for unknown kinds or parameters, and when the
 * group is not finite or the functions are not invariant.
 */
ImplicitQuotientSurface make_surface(const std::string& kind,
                                     const std::map<std::string, double>& params,
                                     const std::vector<std::string>& generators,
                                     const Tolerances& tol = {});

/**
 * Group closure and invariance of level and Morse function on 1000
 * deterministic surface samples, all to stab_tol. Throws InvalidSurface.
 */
void check_surface(const ImplicitQuotientSurface& s);

}   // namespace orbimorse

#endif
