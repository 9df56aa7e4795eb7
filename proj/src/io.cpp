#include "orbimorse/io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "orbimorse/error.hpp"

namespace orbimorse {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what)
{
    throw Error(ErrorCode::ParseError, what);
}

json parse_json(std::string_view text)
{
    try
    {
        return json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error& e)
    {
        fail(std::string("malformed JSON: ") + e.what());
    }
}

void check_keys(const json& object, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!object.is_object())
        fail(where + " must be an object");
    for (const auto& item : object.items())
    {
        bool known = false;
        for (const char* key : allowed)
            known = known || item.key() == key;
        if (!known)
            fail(where + ": unknown key '" + item.key() + "'");
    }
}

const json& required(const json& object, const char* key, const std::string& where)
{
    const auto it = object.find(key);
    if (it == object.end())
        fail(where + ": missing key '" + key + "'");
    return *it;
}

std::string as_string(const json& v, const std::string& where)
{
    if (!v.is_string())
        fail(where + " must be a string");
    return v.get<std::string>();
}

long long as_integer(const json& v, const std::string& where)
{
    if (!v.is_number_integer())
        fail(where + " must be an integer");
    return v.get<long long>();
}

void check_schema(const json& root, std::string_view expected)
{
    const std::string version = as_string(required(root, "schema_version", "file"), "schema_version");
    if (version != expected)
        fail("unsupported schema_version '" + version + "', expected '" + std::string(expected) + "'");
}

Integer parse_count(const json& v, const std::string& where)
{
    if (v.is_number_integer())
        return Integer(v.get<long long>());
    if (!v.is_string())
        fail(where + " must be an integer, a decimal string or \"unknown\"");
    const std::string s = v.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
        fail(where + ": '" + s + "' is not an integer");
    return Integer(s);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}   // namespace

std::string read_text_file(const std::string& path)
{
    return read_file(path);
}

MorseDatum parse_datum(std::string_view text)
{
    const json root = parse_json(text);
    check_keys(root, "datum", {"schema_version", "ambient_dimension", "points", "flows"});
    check_schema(root, datum_schema);

    MorseDatum d;
    if (const auto it = root.find("ambient_dimension"); it != root.end() && !it->is_null())
        d.ambient_dimension = static_cast<int>(as_integer(*it, "ambient_dimension"));

    const json& points = required(root, "points", "datum");
    if (!points.is_array())
        fail("points must be an array");
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        const std::string where = "points[" + std::to_string(i) + "]";
        const json& p = points[i];
        check_keys(p, where, {"id", "index", "stab", "stable"});
        CriticalPointRecord r;
        r.id = as_string(required(p, "id", where), where + ".id");
        r.index = static_cast<int>(as_integer(required(p, "index", where), where + ".index"));
        if (const auto it = p.find("stab"); it != p.end())
            r.stab_order = as_integer(*it, where + ".stab");
        if (const auto it = p.find("stable"); it != p.end())
        {
            if (!it->is_boolean())
                fail(where + ".stable must be a boolean");
            r.stable = it->get<bool>();
        }
        d.points.push_back(std::move(r));
    }

    if (const auto it = root.find("flows"); it != root.end())
    {
        if (!it->is_array())
            fail("flows must be an array");
        for (std::size_t i = 0; i < it->size(); ++i)
        {
            const std::string where = "flows[" + std::to_string(i) + "]";
            const json& f = (*it)[i];
            check_keys(f, where, {"from", "to", "count"});
            FlowCount c;
            c.from = as_string(required(f, "from", where), where + ".from");
            c.to = as_string(required(f, "to", where), where + ".to");
            const json& count = required(f, "count", where);
            if (!(count.is_string() && count.get<std::string>() == "unknown"))
                c.signed_count = parse_count(count, where + ".count");
            d.flows.push_back(std::move(c));
        }
    }
    return d;
}

MorseDatum read_datum_file(const std::string& path)
{
    return parse_datum(read_file(path));
}

std::string dump_datum(const MorseDatum& d)
{
    json root = json::object();
    root["schema_version"] = datum_schema;
    if (d.ambient_dimension)
        root["ambient_dimension"] = *d.ambient_dimension;
    json points = json::array();
    for (const auto& p : d.points)
        points.push_back({{"id", p.id}, {"index", p.index}, {"stab", p.stab_order}, {"stable", p.stable}});
    root["points"] = std::move(points);

    json flows = json::array();
    for (const auto& f : d.flows)
    {
        json entry = {{"from", f.from}, {"to", f.to}};
        if (!f.known())
            entry["count"] = "unknown";
        else if (*f.signed_count >= std::numeric_limits<long long>::min() &&
                 *f.signed_count <= std::numeric_limits<long long>::max())
            entry["count"] = f.signed_count->convert_to<long long>();
        else
            entry["count"] = f.signed_count->str();
        flows.push_back(std::move(entry));
    }
    root["flows"] = std::move(flows);
    return root.dump(2) + "\n";
}

void write_datum_file(const MorseDatum& d, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail("cannot write '" + path + "'");
    out << dump_datum(d);
}

ImplicitQuotientSurface parse_surface(std::string_view text)
{
    const json root = parse_json(text);
    check_keys(root, "surface file", {"schema_version", "surface", "group", "tolerances"});
    check_schema(root, surface_schema);

    const json& surface = required(root, "surface", "surface file");
    check_keys(surface, "surface", {"kind", "params"});
    const std::string kind = as_string(required(surface, "kind", "surface"), "surface.kind");
    std::map<std::string, double> params;
    if (const auto it = surface.find("params"); it != surface.end())
    {
        if (!it->is_object())
            fail("surface.params must be an object");
        for (const auto& item : it->items())
        {
            if (!item.value().is_number())
                fail("surface.params." + item.key() + " must be a number");
            params[item.key()] = item.value().get<double>();
        }
    }

    std::vector<std::string> generators;
    if (const auto it = root.find("group"); it != root.end())
    {
        if (!it->is_array())
            fail("group must be an array of generator names");
        for (const auto& g : *it)
            generators.push_back(as_string(g, "group entry"));
    }

    Tolerances tol;
    if (const auto it = root.find("tolerances"); it != root.end())
    {
        const std::map<std::string, double*> fields = {
            {"newton_tol", &tol.newton_tol},
            {"dedup_tol", &tol.dedup_tol},
            {"stab_tol", &tol.stab_tol},
            {"integrate_step", &tol.integrate_step},
            {"escape_radius", &tol.escape_radius},
            {"degenerate_tol", &tol.degenerate_tol},
            {"capture_radius", &tol.capture_radius},
            {"shoot_offset", &tol.shoot_offset},
            {"broken_flow_radius", &tol.broken_flow_radius},
            {"integrate_tol", &tol.integrate_tol},
        };
        if (!it->is_object())
            fail("tolerances must be an object");
        for (const auto& item : it->items())
        {
            if (item.key() == "max_steps")
            {
                tol.max_steps = as_integer(item.value(), "tolerances.max_steps");
                continue;
            }
            const auto field = fields.find(item.key());
            if (field == fields.end())
                fail("tolerances: unknown key '" + item.key() + "'");
            if (!item.value().is_number() || !(item.value().get<double>() > 0.0))
                fail("tolerances." + item.key() + " must be a positive number");
            *field->second = item.value().get<double>();
        }
    }
    return make_surface(kind, params, generators, tol);
}

ImplicitQuotientSurface read_surface_file(const std::string& path)
{
    return parse_surface(read_file(path));
}

std::string format_homology_table(const std::vector<HomologyGroup>& H)
{
    std::ostringstream os;
    os << std::left << std::setw(8) << "degree" << std::setw(7) << "betti" << std::setw(12) << "torsion"
       << "group\n";
    for (const auto& h : H)
    {
        std::string torsion;
        for (std::size_t i = 0; i < h.torsion.size(); ++i)
            torsion += (i ? "," : "") + h.torsion[i].str();
        os << std::setw(8) << h.degree << std::setw(7) << h.betti << std::setw(12) << (torsion.empty() ? "-" : torsion)
           << h.to_string() << "\n";
    }
    return os.str();
}

std::string format_homology_machine(const std::vector<HomologyGroup>& H)
{
    std::ostringstream os;
    for (const auto& h : H)
    {
        os << h.degree << ' ' << h.betti;
        for (std::size_t i = 0; i < h.torsion.size(); ++i)
            os << (i ? ',' : ' ') << h.torsion[i].str();
        os << '\n';
    }
    return os.str();
}

std::vector<HomologyGroup> parse_homology_machine(std::string_view text, const std::string& section)
{
    std::vector<HomologyGroup> H;
    std::set<int> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    std::string current;
    bool found_section = false;
    for (int number = 1; std::getline(in, line); ++number)
    {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;)
            tokens.push_back(t);
        if (tokens.empty())
            continue;
        const std::string where = "homology line " + std::to_string(number);
        if (tokens[0].front() == '[')
        {
            if (tokens.size() != 1 || tokens[0].back() != ']' || tokens[0].size() < 3)
                fail(where + ": bad section header");
            if (section.empty())
                fail(where + ": report has sections, select one");
            current = tokens[0].substr(1, tokens[0].size() - 2);
            found_section = found_section || current == section;
            continue;
        }
        if (current != section)
        {
            if (!section.empty() && current.empty())
                fail(where + ": data before the first section header");
            continue;
        }
        if (tokens.size() < 2 || tokens.size() > 3)
            fail(where + ": expected 'degree betti [t1,t2,...]'");

        HomologyGroup h;
        try
        {
            std::size_t used = 0;
            h.degree = std::stoi(tokens[0], &used);
            if (used != tokens[0].size())
                fail(where + ": bad degree");
            const long long betti = std::stoll(tokens[1], &used);
            if (used != tokens[1].size() || betti < 0)
                fail(where + ": bad Betti number");
            h.betti = static_cast<std::size_t>(betti);
        }
        catch (const std::logic_error&)
        {
            fail(where + ": expected integers");
        }
        if (tokens.size() == 3)
        {
            std::istringstream factors(tokens[2]);
            for (std::string t; std::getline(factors, t, ',');)
            {
                if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
                    fail(where + ": bad torsion factor '" + t + "'");
                Integer factor(t);
                if (factor < 2)
                    fail(where + ": torsion factors must exceed 1");
                h.torsion.push_back(factor);
            }
        }
        if (!seen.insert(h.degree).second)
            fail(where + ": degree repeated");
        H.push_back(std::move(h));
    }
    if (!section.empty() && !found_section)
        fail("homology report has no section [" + section + "]");
    return H;
}

std::vector<HomologyGroup> read_homology_file(const std::string& path, const std::string& section)
{
    return parse_homology_machine(read_file(path), section);
}

}   // namespace orbimorse
