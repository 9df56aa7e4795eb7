// Command-line front end. Exit status: 0 success, 1 domain failure, 2 parse failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "orbimorse/error.hpp"
#include "orbimorse/flow_numerics.hpp"
#include "orbimorse/io.hpp"
#include "orbimorse/morse_datum.hpp"
#include "orbimorse/simplicial.hpp"
#include "orbimorse/stabilization.hpp"

using namespace orbimorse;

namespace {

constexpr int exit_domain = 1;
constexpr int exit_parse = 2;

std::vector<HomologyGroup> datum_homology(const MorseDatum& d, const std::string& which)
{
    return homology(which == "in" ? invariant_complex(d) : coinvariant_complex(d));
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write '" + out_path + "'");
    out << text;
}

int cmd_validate(const std::string& path, bool allow_placeholders, bool allow_unstable)
{
    const MorseDatum d = read_datum_file(path);
    ValidationOptions options;
    options.allow_placeholders = allow_placeholders;
    options.require_stable = !allow_unstable;
    const ValidationReport report = validate(d, options);
    for (const auto& v : report.violations)
        std::cout << v.rule << ": " << v.detail << "\n";
    if (!report.ok())
        return exit_domain;
    std::cout << "valid: " << d.points.size() << " points, " << d.flows.size() << " flows\n";
    return 0;
}

int cmd_homology(const std::string& path, const std::string& which, const std::string& format)
{
    const MorseDatum d = read_datum_file(path);
    const auto render = [&](const std::vector<HomologyGroup>& H) {
        return format == "machine" ? format_homology_machine(H) : format_homology_table(H);
    };
    if (which == "both")
    {
        // Build both before printing so a failure leaves no partial report.
        const std::string co = render(datum_homology(d, "co"));
        const std::string in = render(datum_homology(d, "in"));
        std::cout << (format == "machine" ? "[co]\n" : "coinvariant\n") << co
                  << (format == "machine" ? "[in]\n" : "\ninvariant\n") << in;
    }
    else
    {
        std::cout << render(datum_homology(d, which));
    }
    return 0;
}

int cmd_euler(const std::string& path)
{
    const MorseDatum d = read_datum_file(path);
    ValidationOptions options;
    options.allow_placeholders = true;
    options.require_stable = false;
    if (const auto report = validate(d, options); !report.ok())
    {
        for (const auto& v : report.violations)
            std::cerr << v.rule << ": " << v.detail << "\n";
        return exit_domain;
    }
    std::cout << "orbifold: " << orbifold_euler(d) << "\n"
              << "underlying: " << underlying_euler(d) << "\n";
    return 0;
}

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty())
            out.push_back(item);
    return out;
}

int cmd_stabilize(const std::string& path,
                  const std::string& point,
                  const std::string& h_spec,
                  const std::string& names,
                  const std::string& out_path)
{
    const MorseDatum d = read_datum_file(path);
    const CriticalPointRecord* p = d.find(point);
    if (!p)
        throw Error(ErrorCode::PointNotFound, "no point '" + point + "'");
    const SphereMorseDatum h = builtin_sphere_datum_from_spec(h_spec);

    // The perpendicular part of the descending space has dimension sphere_dim + 1.
    UnstableLocalData local;
    local.point_id = point;
    local.dim_perp = h.sphere_dim + 1;
    local.dim_fixed = p->index - local.dim_perp;
    local.stab_order = p->stab_order;

    const StabilizationResult r = stabilize_point(d, local, h, split_commas(names));
    emit(dump_datum(r.datum), out_path);
    std::cerr << "new points:";
    for (const auto& id : r.new_point_ids)
        std::cerr << " " << id;
    std::cerr << "\nunknown flow counts: " << r.stale_flow_pairs.size() << "\n";
    for (const auto& [from, to] : r.stale_flow_pairs)
        std::cerr << "  " << from << " -> " << to << "\n";
    return 0;
}

void write_trajectories(const ImplicitQuotientSurface& s,
                        const std::vector<CriticalOrbit>& orbits,
                        const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    out.precision(17);
    CountOptions options;
    options.keep_paths = true;
    for (std::size_t i = 0; i < orbits.size(); ++i)
        for (std::size_t j = 0; j < orbits.size(); ++j)
        {
            if (orbits[i].index - orbits[j].index != 1)
                continue;
            const FlowCensus census = count_flow_lines(s, orbits, i, j, options);
            for (const auto& line : census.lines)
            {
                out << "# " << orbits[i].label << " -> " << orbits[j].label << " sign " << line.sign << "\n";
                for (const auto& x : line.path)
                    out << x.x() << " " << x.y() << " " << x.z() << "\n";
                out << "\n";
            }
        }
}

int cmd_flow(const std::string& path,
             bool stabilize,
             unsigned threads,
             const std::string& out_path,
             const std::string& trajectories_path)
{
    const ImplicitQuotientSurface s = read_surface_file(path);
    DiscoveryOptions options;
    options.stabilize = stabilize;
    options.search.threads = threads;
    options.count.threads = threads;
    const Discovery result = discover_datum(s, options);

    if (!trajectories_path.empty())
        write_trajectories(result.surface, result.orbits, trajectories_path);
    emit(dump_datum(result.datum), out_path);
    if (!out_path.empty())
    {
        for (const auto& o : result.orbits)
            std::cout << o.label << ": index " << o.index << ", stab " << o.stab_order << ", " << o.lifts.size()
                      << " lifts\n";
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_compare(const std::string& path,
                const std::string& target,
                const std::string& which,
                const std::string& homology_path)
{
    const MorseDatum d = read_datum_file(path);
    const auto left = datum_homology(d, which);

    std::vector<HomologyGroup> right;
    if (!homology_path.empty())
    {
        const std::string text = read_text_file(homology_path);
        right = parse_homology_machine(text, text.find('[') == std::string::npos ? "" : which);
    }
    else if (target.empty())
    {
        throw Error(ErrorCode::ParseError, "compare needs a space name, a facet file or --homology");
    }
    else if (std::filesystem::is_regular_file(target))
    {
        right = simplicial_homology(read_facet_file(target));
    }
    else
    {
        right = simplicial_homology(builtin_complex(target));
    }

    const HomologyComparison c = compare_homology(left, right);
    std::cout << c.to_string() << "\n";
    return c.match() ? 0 : exit_domain;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Orbifold Morse homology toolkit"};
    app.require_subcommand(1);

    std::string datum_path;
    std::string complex_kind = "co";
    std::string format = "table";

    auto* validate_cmd = app.add_subcommand("validate", "check a datum file against every rule");
    bool allow_placeholders = false;
    bool allow_unstable = false;
    validate_cmd->add_option("datum", datum_path, "datum file")->required();
    validate_cmd->add_flag("--allow-placeholders", allow_placeholders, "accept \"unknown\" flow counts");
    validate_cmd->add_flag("--allow-unstable", allow_unstable, "accept unstable points");

    auto* homology_cmd = app.add_subcommand("homology", "homology of the coinvariant and/or invariant complex");
    homology_cmd->add_option("datum", datum_path, "datum file")->required();
    homology_cmd->add_option("--complex", complex_kind, "co, in or both")
        ->check(CLI::IsMember({"co", "in", "both"}));
    homology_cmd->add_option("--format", format, "table or machine")->check(CLI::IsMember({"table", "machine"}));

    auto* euler_cmd = app.add_subcommand("euler", "orbifold and underlying Euler numbers");
    euler_cmd->add_option("datum", datum_path, "datum file")->required();

    auto* stabilize_cmd = app.add_subcommand("stabilize", "replace an unstable point by a stable one");
    std::string point;
    std::string h_spec;
    std::string names;
    std::string out_path;
    stabilize_cmd->set_help_flag("--help", "print this help and exit");   // frees -h for --h
    stabilize_cmd->add_option("datum", datum_path, "datum file")->required();
    stabilize_cmd->add_option("--point", point, "unstable point id")->required();
    stabilize_cmd->add_option("--h", h_spec, "built-in sphere datum, e.g. cyclic_rotation_circle(3)")->required();
    stabilize_cmd->add_option("--names", names, "comma-separated ids for the new points");
    stabilize_cmd->add_option("--out", out_path, "output datum file (default: stdout)");

    auto* flow_cmd = app.add_subcommand("flow", "discover a datum numerically from a surface file");
    std::string surface_path;
    std::string trajectories_path;
    bool stabilize = false;
    unsigned threads = 0;
    flow_cmd->add_option("surface", surface_path, "surface file")->required();
    flow_cmd->add_flag("--stabilize", stabilize, "stabilize every unstable point first");
    flow_cmd->add_option("--threads", threads, "worker threads (0: all cores)");
    flow_cmd->add_option("--out", out_path, "output datum file (default: stdout)");
    flow_cmd->add_option("--trajectories", trajectories_path, "write every counted flow line as a point list");

    auto* compare_cmd = app.add_subcommand("compare", "compare datum homology with a space");
    std::string target;
    std::string homology_path;
    compare_cmd->add_option("datum", datum_path, "datum file")->required();
    compare_cmd->add_option("space", target, "built-in complex name or facet-list file");
    compare_cmd->add_option("--complex", complex_kind, "co or in")->check(CLI::IsMember({"co", "in"}));
    compare_cmd->add_option("--homology", homology_path, "machine-format homology file instead of a space");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_parse;
    }

    try
    {
        if (*validate_cmd)
            return cmd_validate(datum_path, allow_placeholders, allow_unstable);
        if (*homology_cmd)
            return cmd_homology(datum_path, complex_kind, format);
        if (*euler_cmd)
            return cmd_euler(datum_path);
        if (*stabilize_cmd)
            return cmd_stabilize(datum_path, point, h_spec, names, out_path);
        if (*flow_cmd)
            return cmd_flow(surface_path, stabilize, threads, out_path, trajectories_path);
        if (*compare_cmd)
            return cmd_compare(datum_path, target, complex_kind, homology_path);
    }
    catch (const Error& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::ParseError ? exit_parse : exit_domain;
    }
    return exit_domain;
}
