#include "orbimorse/chain_complex.hpp"

#include <sstream>
#include <utility>

#include "orbimorse/error.hpp"

namespace orbimorse {

namespace {

const std::vector<std::string> kNoGenerators;

}   // namespace

FreeChainComplex::FreeChainComplex(int min_degree,
                                   std::vector<std::vector<std::string>> generators,
                                   std::vector<IntegerMatrix> boundaries)
    : min_degree_(min_degree), generators_(std::move(generators)), boundaries_(std::move(boundaries))
{
    if (boundaries_.size() != generators_.size())
    {
        std::ostringstream msg;
        msg << generators_.size() << " degrees of generators but " << boundaries_.size() << " boundary maps";
        throw Error(ErrorCode::ShapeMismatch, msg.str());
    }
    for (std::size_t i = 0; i < generators_.size(); ++i)
    {
        const std::size_t expected_rows = i == 0 ? 0 : generators_[i - 1].size();
        const std::size_t expected_cols = generators_[i].size();
        const IntegerMatrix& b = boundaries_[i];
        if (b.rows() != expected_rows || b.cols() != expected_cols)
        {
            std::ostringstream msg;
            msg << "boundary in degree " << min_degree_ + static_cast<int>(i) << " is " << b.rows() << "x"
                << b.cols() << ", expected " << expected_rows << "x" << expected_cols;
            throw Error(ErrorCode::ShapeMismatch, msg.str());
        }
    }
}

FreeChainComplex FreeChainComplex::zero(int min_degree, std::vector<std::vector<std::string>> generators)
{
    std::vector<IntegerMatrix> boundaries;
    for (std::size_t i = 0; i < generators.size(); ++i)
        boundaries.emplace_back(i == 0 ? 0 : generators[i - 1].size(), generators[i].size());
    return FreeChainComplex(min_degree, std::move(generators), std::move(boundaries));
}

const std::vector<std::string>& FreeChainComplex::generators(int k) const
{
    if (k < min_degree_ || k > max_degree())
        return kNoGenerators;
    return generators_[static_cast<std::size_t>(k - min_degree_)];
}

IntegerMatrix FreeChainComplex::boundary(int k) const
{
    if (k < min_degree_ || k > max_degree())
        return IntegerMatrix(rank_in(k - 1), rank_in(k));
    return boundaries_[static_cast<std::size_t>(k - min_degree_)];
}

std::string ComplexVerdict::to_string() const
{
    if (ok())
        return "boundary squared vanishes in every degree";
    std::ostringstream os;
    os << "boundary squared is nonzero in degree " << witness->degree << ": coefficient of "
       << witness->target << " in d(d(" << witness->source << ")) is " << witness->value;
    return os.str();
}

ComplexVerdict verify_complex(const FreeChainComplex& C)
{
    for (int k = C.min_degree() + 2; k <= C.max_degree(); ++k)
    {
        const IntegerMatrix composite = C.boundary(k - 1) * C.boundary(k);
        for (std::size_t i = 0; i < composite.rows(); ++i)
            for (std::size_t j = 0; j < composite.cols(); ++j)
                if (composite(i, j) != 0)
                    return ComplexVerdict{ComplexVerdict::Witness{
                        k, C.generators(k)[j], C.generators(k - 2)[i], composite(i, j)}};
    }
    return ComplexVerdict{};
}

std::vector<HomologyGroup> homology(const FreeChainComplex& C)
{
    if (const auto verdict = verify_complex(C); !verdict)
        throw Error(ErrorCode::NotAComplex, verdict.to_string());

    std::vector<HomologyGroup> groups;
    for (int k = C.min_degree(); k <= C.max_degree(); ++k)
    {
        HomologyGroup h = homology_at(C.boundary(k), C.boundary(k + 1));
        h.degree = k;
        groups.push_back(std::move(h));
    }
    return groups;
}

long long euler_characteristic(const FreeChainComplex& C)
{
    long long chi = 0;
    for (int k = C.min_degree(); k <= C.max_degree(); ++k)
    {
        const auto n = static_cast<long long>(C.rank_in(k));
        chi += (k % 2 == 0) ? n : -n;
    }
    return chi;
}

long long euler_characteristic(const std::vector<HomologyGroup>& H)
{
    long long chi = 0;
    for (const auto& h : H)
    {
        const auto b = static_cast<long long>(h.betti);
        chi += (h.degree % 2 == 0) ? b : -b;
    }
    return chi;
}

}   // namespace orbimorse
