/**
 * Exact integer matrices and the Smith normal form.
 *
 * All arithmetic is carried out with arbitrary-precision integers, so no
 * operation here can overflow. Empty matrices (zero rows or zero columns)
 * are legal and stand for zero maps between free modules, one of which
 * has rank zero.
 */

#ifndef ORBIMORSE_EXACT_LINALG_HPP
#define ORBIMORSE_EXACT_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace orbimorse {

using Integer = boost::multiprecision::cpp_int;

class IntegerMatrix
{
    public:
        IntegerMatrix() = default;

        /** Zero matrix of the given shape. */
        IntegerMatrix(std::size_t rows, std::size_t cols);

        /**
         * Matrix from row-major entries. Throws DimensionMismatch unless
         * entries.size() == rows * cols.
         */
        IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

        static IntegerMatrix identity(std::size_t n);

        /** Convenience constructor for literals; all rows must have equal length. */
        static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

        const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
        Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

        const std::vector<Integer>& entries() const noexcept { return entries_; }

        bool is_zero() const;
        IntegerMatrix transpose() const;

        /** Matrix with rows and columns reordered: result(i, j) = (*this)(row_order[i], col_order[j]). */
        IntegerMatrix permuted(const std::vector<std::size_t>& row_order,
                               const std::vector<std::size_t>& col_order) const;

        void swap_rows(std::size_t a, std::size_t b);
        void swap_cols(std::size_t a, std::size_t b);
        /** row[target] += factor * row[source] */
        void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
        /** col[target] += factor * col[source] */
        void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
        void negate_row(std::size_t r);
        void negate_col(std::size_t c);

        friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b);
        friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);

        std::string to_string() const;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<Integer> entries_;
};

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

/**
 * U * A * V = D with U, V unimodular and D diagonal in Smith form.
 */
struct SmithDecomposition
{
    IntegerMatrix U;
    IntegerMatrix D;
    IntegerMatrix V;
    std::vector<Integer> invariant_factors;   // nonzero diagonal entries of D, each dividing the next
};

/**
 * Smith normal form by elementary integer row and column operations.
 *
 * Pivot rule: the entry of smallest nonzero absolute value in the active
 * submatrix, ties broken by row-major position. The output is fully
 * determined by the input.
 */
SmithDecomposition smith_normal_form(const IntegerMatrix& A);

/** Number of nonzero invariant factors; equals the rank over the rationals. */
std::size_t rank(const IntegerMatrix& A);

/**
 * Homology of the integral chain complex  C_{k+1} --in--> C_k --out--> C_{k-1}
 * at C_k, i.e. ker(out) / im(in).
 *
 * torsion lists the invariant factors of `in` that are > 1.
 */
struct HomologyGroup
{
    int degree = 0;
    std::size_t betti = 0;
    std::vector<Integer> torsion;

    bool is_trivial() const { return betti == 0 && torsion.empty(); }
    /** e.g. "Z^2 + Z_2 + Z_4", or "0". */
    std::string to_string() const;

    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/**
 * Throws DimensionMismatch if cols(out) != rows(in), and NotAComplex if
 * out * in != 0. Degree of the result is left at 0; callers set it.
 */
HomologyGroup homology_at(const IntegerMatrix& boundary_out, const IntegerMatrix& boundary_in);

}   // namespace orbimorse

#endif
