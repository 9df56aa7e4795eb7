#include "orbimorse/simplicial.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "orbimorse/error.hpp"

namespace orbimorse {

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertices, std::vector<std::vector<std::string>> facets)
    : vertices_(std::move(vertices))
{
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (!index.emplace(vertices_[i], i).second)
            throw Error(ErrorCode::InvalidComplex, "duplicate vertex label '" + vertices_[i] + "'");

    std::set<Simplex> seen;
    std::vector<bool> covered(vertices_.size(), false);
    for (const auto& facet : facets)
    {
        if (facet.empty())
            throw Error(ErrorCode::InvalidComplex, "empty facet");
        Simplex s;
        for (const auto& label : facet)
        {
            const auto it = index.find(label);
            if (it == index.end())
                throw Error(ErrorCode::InvalidComplex, "facet uses unknown vertex '" + label + "'");
            s.push_back(it->second);
            covered[it->second] = true;
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error(ErrorCode::InvalidComplex, "facet repeats a vertex");
        if (!seen.insert(s).second)
            throw Error(ErrorCode::InvalidComplex, "duplicate facet");
        facets_.push_back(std::move(s));
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!covered[v])
            facets_.push_back({v});

    // Closure: every nonempty subset of every facet.
    std::vector<std::set<Simplex>> faces;
    for (const auto& facet : facets_)
    {
        const std::size_t n = facet.size();
        if (faces.size() < n)
            faces.resize(n);
        for (unsigned long mask = 1; mask < (1ul << n); ++mask)
        {
            Simplex face;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1ul << i))
                    face.push_back(facet[i]);
            faces[face.size() - 1].insert(std::move(face));
        }
    }
    for (auto& level : faces)
        faces_.emplace_back(level.begin(), level.end());
}

int SimplicialComplex::dimension() const
{
    return static_cast<int>(faces_.size()) - 1;
}

std::vector<Simplex> SimplicialComplex::simplices(int k) const
{
    if (k < 0 || k > dimension())
        return {};
    return faces_[static_cast<std::size_t>(k)];
}

std::vector<std::size_t> SimplicialComplex::f_vector() const
{
    std::vector<std::size_t> f;
    for (const auto& level : faces_)
        f.push_back(level.size());
    return f;
}

std::vector<std::vector<std::string>> SimplicialComplex::facet_labels() const
{
    std::vector<std::vector<std::string>> out;
    for (const auto& facet : facets_)
    {
        std::vector<std::string> labels;
        for (std::size_t v : facet)
            labels.push_back(vertices_[v]);
        out.push_back(std::move(labels));
    }
    return out;
}

FreeChainComplex SimplicialComplex::chain_complex() const
{
    std::vector<std::vector<std::string>> generators;
    std::vector<IntegerMatrix> boundaries;
    for (int k = 0; k <= dimension(); ++k)
    {
        const auto& level = faces_[static_cast<std::size_t>(k)];
        std::vector<std::string> names;
        for (const auto& s : level)
        {
            std::string name;
            for (std::size_t i = 0; i < s.size(); ++i)
                name += (i ? "," : "") + vertices_[s[i]];
            names.push_back("[" + name + "]");
        }
        generators.push_back(std::move(names));

        if (k == 0)
        {
            boundaries.emplace_back(0, level.size());
            continue;
        }
        const auto& lower = faces_[static_cast<std::size_t>(k - 1)];
        IntegerMatrix b(lower.size(), level.size());
        for (std::size_t j = 0; j < level.size(); ++j)
            for (std::size_t omit = 0; omit < level[j].size(); ++omit)
            {
                Simplex face = level[j];
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(omit));
                const auto row = static_cast<std::size_t>(
                    std::lower_bound(lower.begin(), lower.end(), face) - lower.begin());
                b(row, j) = (omit % 2 == 0) ? 1 : -1;
            }
        boundaries.push_back(std::move(b));
    }
    if (generators.empty())
        return FreeChainComplex::zero(0, {{}});
    return FreeChainComplex(0, std::move(generators), std::move(boundaries));
}

std::vector<HomologyGroup> simplicial_homology(const SimplicialComplex& K)
{
    return homology(K.chain_complex());
}

std::vector<HomologyGroup> reduced(std::vector<HomologyGroup> H)
{
    for (auto& h : H)
        if (h.degree == 0 && h.betti > 0)
            --h.betti;
    return H;
}

SimplicialComplex suspension(const SimplicialComplex& K)
{
    std::vector<std::string> vertices = K.vertices();
    auto fresh = [&](std::string name) {
        while (std::find(vertices.begin(), vertices.end(), name) != vertices.end())
            name += "'";
        vertices.push_back(name);
        return name;
    };
    const std::string north = fresh("north");
    const std::string south = fresh("south");

    std::vector<std::vector<std::string>> facets;
    for (const auto& facet : K.facet_labels())
        for (const auto& apex : {north, south})
        {
            auto coned = facet;
            coned.push_back(apex);
            facets.push_back(std::move(coned));
        }
    return SimplicialComplex(std::move(vertices), std::move(facets));
}

namespace {

std::vector<std::string> numbered(std::size_t n)
{
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(std::to_string(i));
    return v;
}

/** Boundary of the (n+1)-simplex. */
SimplicialComplex simplex_boundary(std::size_t n)
{
    const std::size_t count = n + 2;
    std::vector<std::vector<std::string>> facets;
    for (std::size_t omit = 0; omit < count; ++omit)
    {
        std::vector<std::string> facet;
        for (std::size_t v = 0; v < count; ++v)
            if (v != omit)
                facet.push_back(std::to_string(v));
        facets.push_back(std::move(facet));
    }
    return SimplicialComplex(numbered(count), std::move(facets));
}

SimplicialComplex projective_plane6()
{
    const std::vector<std::vector<std::string>> facets = {
        {"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"}, {"1", "5", "6"}, {"1", "2", "6"},
        {"2", "3", "5"}, {"2", "4", "5"}, {"2", "4", "6"}, {"3", "4", "6"}, {"3", "5", "6"},
    };
    return SimplicialComplex({"1", "2", "3", "4", "5", "6"}, facets);
}

SimplicialComplex torus7()
{
    std::vector<std::vector<std::string>> facets;
    for (int i = 0; i < 7; ++i)
    {
        facets.push_back({std::to_string(i), std::to_string((i + 1) % 7), std::to_string((i + 3) % 7)});
        facets.push_back({std::to_string(i), std::to_string((i + 2) % 7), std::to_string((i + 3) % 7)});
    }
    return SimplicialComplex(numbered(7), std::move(facets));
}

}   // namespace

SimplicialComplex builtin_complex(const std::string& name)
{
    if (name.rfind("susp:", 0) == 0)
        return suspension(builtin_complex(name.substr(5)));
    if (name == "point")
        return SimplicialComplex({"0"}, {{"0"}});
    if (name.size() == 2 && name[0] == 'S' && name[1] >= '0' && name[1] <= '3')
        return simplex_boundary(static_cast<std::size_t>(name[1] - '0'));
    if (name == "sphere")
        return simplex_boundary(2);
    if (name == "RP2")
        return projective_plane6();
    if (name == "T2" || name == "torus")
        return torus7();
    if (name == "SRP2")
        return suspension(projective_plane6());
    throw Error(ErrorCode::UnknownBuiltin, "no built-in complex named '" + name + "'");
}

std::vector<std::string> builtin_complex_names()
{
    return {"point", "S0", "S1", "S2", "S3", "RP2", "T2", "SRP2"};
}

SimplicialComplex parse_facet_list(std::istream& in)
{
    std::vector<std::string> vertices;
    std::set<std::string> known;
    std::vector<std::vector<std::string>> facets;
    std::string line;
    while (std::getline(in, line))
    {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream tokens(line);
        std::vector<std::string> facet;
        for (std::string label; tokens >> label;)
        {
            if (known.insert(label).second)
                vertices.push_back(label);
            facet.push_back(std::move(label));
        }
        if (!facet.empty())
            facets.push_back(std::move(facet));
    }
    if (facets.empty())
        throw Error(ErrorCode::InvalidComplex, "facet list is empty");
    return SimplicialComplex(std::move(vertices), std::move(facets));
}

SimplicialComplex read_facet_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open facet file '" + path + "'");
    return parse_facet_list(in);
}

std::string HomologyComparison::to_string() const
{
    if (match())
        return "MATCH";
    std::ostringstream os;
    os << "MISMATCH";
    for (const auto& m : mismatches)
        os << "\n  degree " << m.degree << ": " << m.left << " vs " << m.right;
    return os.str();
}

HomologyComparison compare_homology(const std::vector<HomologyGroup>& a, const std::vector<HomologyGroup>& b)
{
    std::map<int, HomologyGroup> left;
    std::map<int, HomologyGroup> right;
    std::set<int> degrees;
    for (const auto& h : a)
    {
        left[h.degree] = h;
        degrees.insert(h.degree);
    }
    for (const auto& h : b)
    {
        right[h.degree] = h;
        degrees.insert(h.degree);
    }

    HomologyComparison result;
    for (int k : degrees)
    {
        HomologyGroup x = left.count(k) ? left[k] : HomologyGroup{k, 0, {}};
        HomologyGroup y = right.count(k) ? right[k] : HomologyGroup{k, 0, {}};
        if (x.betti != y.betti || x.torsion != y.torsion)
            result.mismatches.push_back({k, x.to_string(), y.to_string()});
    }
    return result;
}

}   // namespace orbimorse
