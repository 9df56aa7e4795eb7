// Independent reference computations used only by tests. None of these
// share code with the library's Smith normal form.

#ifndef ORBIMORSE_TESTS_ORACLES_HPP
#define ORBIMORSE_TESTS_ORACLES_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "orbimorse/exact_linalg.hpp"
#include "orbimorse/morse_datum.hpp"
#include "orbimorse/stabilization.hpp"

namespace oracle {

using orbimorse::Integer;
using orbimorse::IntegerMatrix;
using orbimorse::Rational;

/** Fraction-free (Bareiss) determinant of a square matrix. */
inline Integer bareiss_determinant(const IntegerMatrix& A)
{
    const std::size_t n = A.rows();
    if (n == 0)
        return 1;
    std::vector<std::vector<Integer>> M(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M[i][j] = A(i, j);
    Integer sign = 1;
    Integer previous = 1;
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (M[k][k] == 0)
        {
            std::size_t swap = k + 1;
            while (swap < n && M[swap][k] == 0)
                ++swap;
            if (swap == n)
                return 0;
            std::swap(M[k], M[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / previous;
        previous = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

/** Rank over Q by Gaussian elimination on rationals. */
inline std::size_t rational_rank(const IntegerMatrix& A)
{
    std::vector<std::vector<Rational>> M(A.rows(), std::vector<Rational>(A.cols()));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            M[i][j] = Rational(A(i, j));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < A.cols() && rank < A.rows(); ++col)
    {
        std::size_t pivot = rank;
        while (pivot < A.rows() && M[pivot][col] == 0)
            ++pivot;
        if (pivot == A.rows())
            continue;
        std::swap(M[pivot], M[rank]);
        for (std::size_t i = 0; i < A.rows(); ++i)
        {
            if (i == rank || M[i][col] == 0)
                continue;
            const Rational factor = M[i][col] / M[rank][col];
            for (std::size_t j = col; j < A.cols(); ++j)
                M[i][j] -= factor * M[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out)
{
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true)
    {
        out.push_back(pick);
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

/**
 * Invariant factors from determinantal divisors: d_k = gcd of all k x k
 * minors, and the k-th invariant factor is d_k / d_{k-1}. Exponential in
 * the size; for small matrices only.
 */
inline std::vector<Integer> invariant_factors_by_minors(const IntegerMatrix& A)
{
    std::vector<Integer> factors;
    Integer previous = 1;
    for (std::size_t k = 1; k <= std::min(A.rows(), A.cols()); ++k)
    {
        std::vector<std::vector<std::size_t>> rows;
        std::vector<std::vector<std::size_t>> cols;
        combinations(A.rows(), k, rows);
        combinations(A.cols(), k, cols);
        Integer g = 0;
        for (const auto& r : rows)
            for (const auto& c : cols)
            {
                IntegerMatrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        sub(i, j) = A(r[i], c[j]);
                const Integer minor = bareiss_determinant(sub);
                g = boost::multiprecision::gcd(g, minor);
            }
        if (g == 0)
            break;
        factors.push_back(g / previous);
        previous = g;
    }
    return factors;
}

inline IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, int bound)
{
    std::uniform_int_distribution<std::size_t> dim(1, max_dim);
    std::uniform_int_distribution<int> entry(-bound, bound);
    const std::size_t r = dim(rng);
    const std::size_t c = dim(rng);
    IntegerMatrix A(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            A(i, j) = entry(rng);
    return A;
}

/**
 * Random datum on a skeleton with points in indices 0..3, stabilizer
 * orders chosen so that divisibility holds along every recorded flow, and
 * arbitrary integer counts (d^2 = 0 is not arranged).
 */
inline orbimorse::MorseDatum random_gap_datum(std::mt19937_64& rng)
{
    orbimorse::MorseDatum d;
    d.ambient_dimension = 3;
    std::uniform_int_distribution<int> per_level(1, 3);
    std::uniform_int_distribution<int> count(-5, 5);
    // Orders grow as the index drops, so |stab p| divides |stab q| for every p -> q.
    const std::vector<std::vector<std::int64_t>> allowed = {{1}, {1, 2, 3}, {6, 12}, {12, 24}};
    for (int index = 3; index >= 0; --index)
    {
        const int n = per_level(rng);
        for (int i = 0; i < n; ++i)
        {
            const auto& choice = allowed[static_cast<std::size_t>(3 - index)];
            std::uniform_int_distribution<std::size_t> pick(0, choice.size() - 1);
            d.points.push_back({"x" + std::to_string(index) + "_" + std::to_string(i), index, choice[pick(rng)], true});
        }
    }
    for (const auto& p : d.points)
        for (const auto& q : d.points)
            if (p.index - q.index == 1 && q.stab_order % p.stab_order == 0)
                d.flows.push_back({p.id, q.id, Integer(count(rng))});
    return d;
}

/**
 * A random H-equivariant sphere datum: a fixed minimum and a fixed maximum
 * (count 1 + (-1)^k) plus cancelling pairs of orbits in adjacent indices.
 */
inline orbimorse::SphereMorseDatum random_sphere_datum(std::mt19937_64& rng)
{
    const std::vector<std::int64_t> orders = {1, 2, 3, 4, 6, 12};
    std::uniform_int_distribution<int> dim(0, 4);
    std::uniform_int_distribution<std::size_t> pick(0, orders.size() - 1);
    orbimorse::SphereMorseDatum h;
    h.sphere_dim = dim(rng);
    h.group_order = orders[pick(rng)];
    std::vector<std::int64_t> divisors;
    for (auto o : orders)
        if (h.group_order % o == 0)
            divisors.push_back(o);
    std::uniform_int_distribution<std::size_t> pick_divisor(0, divisors.size() - 1);

    h.orbits.push_back({"bottom", 0, h.group_order});
    if (h.sphere_dim > 0)
        h.orbits.push_back({"top", h.sphere_dim, h.group_order});
    else
        h.orbits.push_back({"other", 0, h.group_order});   // S^0: two fixed points

    std::uniform_int_distribution<int> pairs(0, 3);
    const int n = h.sphere_dim > 0 ? pairs(rng) : 0;
    for (int i = 0; i < n; ++i)
    {
        std::uniform_int_distribution<int> low(0, h.sphere_dim - 1);
        const int index = low(rng);
        const std::int64_t stab = divisors[pick_divisor(rng)];
        h.orbits.push_back({"a" + std::to_string(i), index, stab});
        h.orbits.push_back({"b" + std::to_string(i), index + 1, stab});
    }
    return h;
}

}   // namespace oracle

#endif
