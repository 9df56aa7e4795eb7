#include "orbimorse/exact_linalg.hpp"

#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "orbimorse/error.hpp"

namespace orbimorse {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols)
{
}

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries))
{
    if (entries_.size() != rows * cols)
    {
        std::ostringstream msg;
        msg << "expected " << rows * cols << " entries for a " << rows << "x" << cols
            << " matrix, got " << entries_.size();
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n)
{
    IntegerMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i)
        I(i, i) = 1;
    return I;
}

IntegerMatrix IntegerMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows)
{
    const std::size_t nrows = rows.size();
    const std::size_t ncols = nrows == 0 ? 0 : rows.begin()->size();
    std::vector<Integer> entries;
    entries.reserve(nrows * ncols);
    for (const auto& row : rows)
    {
        if (row.size() != ncols)
            throw Error(ErrorCode::DimensionMismatch, "ragged row list");
        for (long long x : row)
            entries.emplace_back(x);
    }
    return IntegerMatrix(nrows, ncols, std::move(entries));
}

bool IntegerMatrix::is_zero() const
{
    for (const auto& x : entries_)
        if (x != 0)
            return false;
    return true;
}

IntegerMatrix IntegerMatrix::transpose() const
{
    IntegerMatrix T(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            T(j, i) = (*this)(i, j);
    return T;
}

IntegerMatrix IntegerMatrix::permuted(const std::vector<std::size_t>& row_order,
                                      const std::vector<std::size_t>& col_order) const
{
    if (row_order.size() != rows_ || col_order.size() != cols_)
        throw Error(ErrorCode::DimensionMismatch, "permutation length does not match matrix shape");
    IntegerMatrix P(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            P(i, j) = (*this)(row_order[i], col_order[j]);
    return P;
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(target, j) += factor * (*this)(source, j);
}

void IntegerMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, target) += factor * (*this)(i, source);
}

void IntegerMatrix::negate_row(std::size_t r)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = -(*this)(r, j);
}

void IntegerMatrix::negate_col(std::size_t c)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, c) = -(*this)(i, c);
}

bool operator==(const IntegerMatrix& a, const IntegerMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if (a.cols_ != b.rows_)
    {
        std::ostringstream msg;
        msg << "cannot multiply " << a.rows_ << "x" << a.cols_ << " by " << b.rows_ << "x" << b.cols_;
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
    IntegerMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k)
        {
            const Integer& aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

std::string IntegerMatrix::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m)
{
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        os << (i == 0 ? "[" : ", [");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j == 0 ? "" : ", ") << m(i, j);
        os << "]";
    }
    return os << "] (" << m.rows() << "x" << m.cols() << ")";
}

namespace {

/** Smallest nonzero |D(i,j)| with i, j >= t; ties broken row-major. */
std::optional<std::pair<std::size_t, std::size_t>> find_pivot(const IntegerMatrix& D, std::size_t t)
{
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < D.rows(); ++i)
        for (std::size_t j = t; j < D.cols(); ++j)
        {
            const Integer& x = D(i, j);
            if (x == 0)
                continue;
            Integer ax = abs(x);
            if (!best || ax < best_abs)
            {
                best = {i, j};
                best_abs = std::move(ax);
            }
        }
    return best;
}

}   // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& A)
{
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    IntegerMatrix D = A;
    IntegerMatrix U = IntegerMatrix::identity(m);
    IntegerMatrix V = IntegerMatrix::identity(n);

    const std::size_t diag = std::min(m, n);
    for (std::size_t t = 0; t < diag; ++t)
    {
        for (;;)
        {
            auto pivot = find_pivot(D, t);
            if (!pivot)
                break;
            D.swap_rows(t, pivot->first);
            U.swap_rows(t, pivot->first);
            D.swap_cols(t, pivot->second);
            V.swap_cols(t, pivot->second);

            // Reduce column t and row t by the pivot. Any nonzero remainder
            // is smaller than the pivot, so re-pivoting strictly decreases it.
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
            {
                if (D(i, t) == 0)
                    continue;
                Integer q = D(i, t) / D(t, t);
                D.add_row_multiple(i, t, -q);
                U.add_row_multiple(i, t, -q);
                if (D(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j)
            {
                if (D(t, j) == 0)
                    continue;
                Integer q = D(t, j) / D(t, t);
                D.add_col_multiple(j, t, -q);
                V.add_col_multiple(j, t, -q);
                if (D(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            // Row and column are clear; enforce that the pivot divides the
            // rest of the active block.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < m && divides_all; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0)
                    {
                        D.add_row_multiple(t, i, 1);
                        U.add_row_multiple(t, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all)
                break;
        }
        if (D(t, t) == 0)
            break;
        if (D(t, t) < 0)
        {
            D.negate_row(t);
            U.negate_row(t);
        }
    }

    SmithDecomposition result{std::move(U), std::move(D), std::move(V), {}};
    for (std::size_t t = 0; t < diag && result.D(t, t) != 0; ++t)
        result.invariant_factors.push_back(result.D(t, t));
    return result;
}

std::size_t rank(const IntegerMatrix& A)
{
    return smith_normal_form(A).invariant_factors.size();
}

std::string HomologyGroup::to_string() const
{
    if (is_trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    if (betti > 0)
    {
        os << "Z";
        if (betti > 1)
            os << "^" << betti;
        first = false;
    }
    for (const auto& t : torsion)
    {
        os << (first ? "" : " + ") << "Z_" << t;
        first = false;
    }
    return os.str();
}

HomologyGroup homology_at(const IntegerMatrix& boundary_out, const IntegerMatrix& boundary_in)
{
    if (boundary_out.cols() != boundary_in.rows())
    {
        std::ostringstream msg;
        msg << "outgoing boundary has " << boundary_out.cols() << " columns but incoming boundary has "
            << boundary_in.rows() << " rows";
        throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
    if (!(boundary_out * boundary_in).is_zero())
        throw Error(ErrorCode::NotAComplex, "composition of consecutive boundaries is nonzero");

    const std::size_t n = boundary_out.cols();
    const std::size_t rank_out = rank(boundary_out);
    const SmithDecomposition in = smith_normal_form(boundary_in);

    HomologyGroup h;
    h.betti = n - rank_out - in.invariant_factors.size();
    for (const auto& d : in.invariant_factors)
        if (d > 1)
            h.torsion.push_back(d);
    return h;
}

}   // namespace orbimorse
