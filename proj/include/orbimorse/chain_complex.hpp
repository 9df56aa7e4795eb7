#ifndef ORBIMORSE_CHAIN_COMPLEX_HPP
#define ORBIMORSE_CHAIN_COMPLEX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orbimorse/exact_linalg.hpp"

namespace orbimorse {

/**
 * A bounded free chain complex over Z with labeled generators.
 *
 * Degrees run over the explicit range [min_degree, max_degree]; a degree
 * may have no generators. boundary(k) maps degree-k generators to
 * degree-(k-1) generators, so its rows are indexed by degree k-1 and its
 * columns by degree k. The boundary out of min_degree is the empty
 * 0 x n map.
 */
class FreeChainComplex
{
    public:
        FreeChainComplex() = default;

        /**
         * generators[i] are the generators in degree min_degree + i.
         * boundaries[i] is boundary(min_degree + i); boundaries[0] must be
         * 0 x #generators[0]. Throws ShapeMismatch on inconsistent shapes.
         */
        FreeChainComplex(int min_degree,
                         std::vector<std::vector<std::string>> generators,
                         std::vector<IntegerMatrix> boundaries);

        /** Complex with the given generators and all-zero boundaries. */
        static FreeChainComplex zero(int min_degree, std::vector<std::vector<std::string>> generators);

        int min_degree() const noexcept { return min_degree_; }
        int max_degree() const noexcept { return min_degree_ + static_cast<int>(generators_.size()) - 1; }
        std::size_t num_degrees() const noexcept { return generators_.size(); }

        /** Generators in degree k; empty outside the range. */
        const std::vector<std::string>& generators(int k) const;
        std::size_t rank_in(int k) const { return generators(k).size(); }

        /** boundary(k); a correctly shaped zero matrix outside the range. */
        IntegerMatrix boundary(int k) const;

    private:
        int min_degree_ = 0;
        std::vector<std::vector<std::string>> generators_;
        std::vector<IntegerMatrix> boundaries_;
};

/**
 * Outcome of checking boundary(k-1) * boundary(k) == 0 in every degree.
 * On failure the witness names the first offending degree k (row-major
 * first nonzero entry of the composition).
 */
struct ComplexVerdict
{
    struct Witness
    {
        int degree;
        std::string source;   // generator in degree k
        std::string target;   // generator in degree k-2
        Integer value;
    };

    std::optional<Witness> witness;

    bool ok() const noexcept { return !witness.has_value(); }
    explicit operator bool() const noexcept { return ok(); }
    std::string to_string() const;
};

ComplexVerdict verify_complex(const FreeChainComplex& C);

/** One HomologyGroup per degree in range. Throws NotAComplex if verify_complex fails. */
std::vector<HomologyGroup> homology(const FreeChainComplex& C);

/** Alternating sum of generator counts. */
long long euler_characteristic(const FreeChainComplex& C);

/** Alternating sum of Betti numbers. */
long long euler_characteristic(const std::vector<HomologyGroup>& H);

}   // namespace orbimorse

#endif
