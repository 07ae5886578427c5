#pragma once

// Dense exact linear algebra over the prime field F_p.
//
// Matrices keep Eigen storage of reduced residues in {0, ..., p-1}. Every
// arithmetic helper reduces immediately, and the elimination kernels skip
// zero entries, which keeps the sparse differentials of permutation
// resolutions cheap even though the storage is dense.

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "permres/error.hpp"

namespace permres
{

using Index = Eigen::Index;

inline bool is_prime(long long n)
{
    if (n < 2)
        return false;
    for (long long d = 2; d * d <= n; ++d)
    {
        if (n % d == 0)
            return false;
    }
    return true;
}

/**
 * The prime field F_p. Construction checks primality by trial division.
 */
class FieldSpec
{
    public:
        FieldSpec() = default;

        explicit FieldSpec(int p) : p_(p)
        {
            if (!is_prime(p))
                throw Error(ErrorKind::InvalidInput, "p = " + std::to_string(p) + " is not prime");
            if (p > 46337)
                throw Error(ErrorKind::InvalidInput, "p = " + std::to_string(p) + " too large for exact int products");
        }

        int p() const { return p_; }

        int reduce(long long v) const
        {
            long long r = v % p_;
            return static_cast<int>(r < 0 ? r + p_ : r);
        }

        int negate(int a) const { return a == 0 ? 0 : p_ - a; }

        int inverse(int a) const
        {
            // extended Euclid on (a, p)
            long long t = 0, new_t = 1, r = p_, new_r = reduce(a);
            if (new_r == 0)
                throw Error(ErrorKind::InternalError, "inverse of zero in F_" + std::to_string(p_));
            while (new_r != 0)
            {
                long long q = r / new_r;
                t = std::exchange(new_t, t - q * new_t);
                r = std::exchange(new_r, r - q * new_r);
            }
            return reduce(t);
        }

        friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

    private:
        int p_ = 2;
};

/**
 * Dense matrix over F_p with Eigen row-major storage of reduced residues.
 *
 * Matrices act on column coordinate vectors; a vector is a one-column matrix.
 */
template <typename Scalar>
class BasicMatrix
{
    static_assert(std::is_integral_v<Scalar> && std::is_signed_v<Scalar>,
                  "matrix entries are stored as signed integer residues");

    public:
        using Storage = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

        BasicMatrix() = default;

        BasicMatrix(FieldSpec field, Index rows, Index cols)
            : field_(field), entries_(Storage::Zero(rows, cols))
        {
            check_scalar_range();
        }

        template <typename Derived>
        BasicMatrix(FieldSpec field, const Eigen::MatrixBase<Derived>& values)
            : field_(field), entries_(values.rows(), values.cols())
        {
            check_scalar_range();
            for (Index i = 0; i < values.rows(); ++i)
                for (Index j = 0; j < values.cols(); ++j)
                    entries_(i, j) = static_cast<Scalar>(field_.reduce(static_cast<long long>(values(i, j))));
        }

        static BasicMatrix identity(FieldSpec field, Index n)
        {
            BasicMatrix m(field, n, n);
            m.entries_.diagonal().setOnes();
            return m;
        }

        static BasicMatrix from_rows(FieldSpec field, std::initializer_list<std::initializer_list<long long>> rows)
        {
            const Index nrows = static_cast<Index>(rows.size());
            const Index ncols = nrows == 0 ? 0 : static_cast<Index>(rows.begin()->size());
            BasicMatrix m(field, nrows, ncols);
            Index i = 0;
            for (const auto& row : rows)
            {
                if (static_cast<Index>(row.size()) != ncols)
                    throw Error(ErrorKind::DimensionMismatch, "ragged row list");
                Index j = 0;
                for (long long v : row)
                    m.set(i, j++, v);
                ++i;
            }
            return m;
        }

        static BasicMatrix column(FieldSpec field, std::initializer_list<long long> values)
        {
            BasicMatrix m(field, static_cast<Index>(values.size()), 1);
            Index i = 0;
            for (long long v : values)
                m.set(i++, 0, v);
            return m;
        }

        FieldSpec field() const { return field_; }
        int modulus() const { return field_.p(); }
        Index rows() const { return entries_.rows(); }
        Index cols() const { return entries_.cols(); }

        int operator()(Index i, Index j) const { return entries_(i, j); }

        void set(Index i, Index j, long long value)
        {
            entries_(i, j) = static_cast<Scalar>(field_.reduce(value));
        }

        const Storage& entries() const { return entries_; }

        // Direct storage access for kernels; callers keep every entry reduced.
        Storage& raw() { return entries_; }

        bool is_zero() const { return (entries_.array() == Scalar(0)).all(); }

        bool is_identity() const
        {
            return rows() == cols() && entries_ == Storage::Identity(rows(), cols());
        }

        BasicMatrix block(Index row, Index col, Index nrows, Index ncols) const
        {
            BasicMatrix out(field_, nrows, ncols);
            out.entries_ = entries_.block(row, col, nrows, ncols);
            return out;
        }

        BasicMatrix col(Index j) const { return block(0, j, rows(), 1); }
        BasicMatrix row(Index i) const { return block(i, 0, 1, cols()); }

        void set_block(Index row, Index col, const BasicMatrix& b)
        {
            entries_.block(row, col, b.rows(), b.cols()) = b.entries_;
        }

        BasicMatrix transpose() const
        {
            BasicMatrix out(field_, cols(), rows());
            out.entries_ = entries_.transpose();
            return out;
        }

        std::size_t nonzeros() const
        {
            return static_cast<std::size_t>((entries_.array() != Scalar(0)).count());
        }

        friend bool operator==(const BasicMatrix& a, const BasicMatrix& b)
        {
            return a.field_ == b.field_ && a.rows() == b.rows() && a.cols() == b.cols()
                   && a.entries_ == b.entries_;
        }

    private:
        void check_scalar_range() const
        {
            if (field_.p() - 1 > static_cast<int>(std::numeric_limits<Scalar>::max()))
                throw Error(ErrorKind::InvalidInput, "p does not fit the matrix scalar type");
        }

        FieldSpec field_;
        Storage entries_;
};

/// Residues fit in 16 bits for every prime admitted by the default group-order cap.
using Matrix = BasicMatrix<std::int16_t>;

namespace detail
{

template <typename Scalar>
void require_same_field(const BasicMatrix<Scalar>& a, const BasicMatrix<Scalar>& b)
{
    if (!(a.field() == b.field()))
        throw Error(ErrorKind::DimensionMismatch, "matrices over different fields");
}

/**
 * In-place Gauss(-Jordan) elimination restricted to the first `pivot_cols`
 * columns. Pivots are normalized to 1. With `reduce_above` the result is the
 * reduced row echelon form; otherwise only rows below each pivot are cleared.
 * Returns the pivot columns in increasing order.
 */
template <typename Storage>
std::vector<Index> eliminate(Storage& m, const FieldSpec& field, Index pivot_cols, bool reduce_above)
{
    using Scalar = typename Storage::Scalar;
    const int p = field.p();
    const Index nrows = m.rows();
    const Index ncols = m.cols();
    std::vector<Index> pivots;
    std::vector<Index> support;
    Index rank = 0;
    for (Index c = 0; c < pivot_cols && rank < nrows; ++c)
    {
        Index r = rank;
        while (r < nrows && m(r, c) == 0)
            ++r;
        if (r == nrows)
            continue;
        if (r != rank)
            m.row(r).swap(m.row(rank));

        Scalar* prow = m.row(rank).data();
        const int inv = field.inverse(prow[c]);
        support.clear();
        for (Index k = c; k < ncols; ++k)
        {
            if (prow[k] != 0)
            {
                prow[k] = static_cast<Scalar>((prow[k] * inv) % p);
                support.push_back(k);
            }
        }

        for (Index i = reduce_above ? 0 : rank + 1; i < nrows; ++i)
        {
            if (i == rank)
                continue;
            Scalar* row = m.row(i).data();
            const int f = row[c];
            if (f == 0)
                continue;
            const int g = p - f;
            for (Index k : support)
                row[k] = static_cast<Scalar>((row[k] + g * prow[k]) % p);
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

}   // namespace detail

template <typename Scalar>
BasicMatrix<Scalar> operator+(const BasicMatrix<Scalar>& a, const BasicMatrix<Scalar>& b)
{
    detail::require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes differ");
    BasicMatrix<Scalar> out(a.field(), a.rows(), a.cols());
    const int p = a.modulus();
    out.raw() = (a.entries().template cast<int>() + b.entries().template cast<int>())
                    .unaryExpr([p](int v) { return v >= p ? v - p : v; })
                    .template cast<Scalar>();
    return out;
}

template <typename Scalar>
BasicMatrix<Scalar> operator-(const BasicMatrix<Scalar>& a)
{
    BasicMatrix<Scalar> out(a.field(), a.rows(), a.cols());
    const int p = a.modulus();
    out.raw() = a.entries().unaryExpr([p](Scalar v) { return static_cast<Scalar>(v == 0 ? 0 : p - v); });
    return out;
}

template <typename Scalar>
BasicMatrix<Scalar> operator-(const BasicMatrix<Scalar>& a, const BasicMatrix<Scalar>& b)
{
    return a + (-b);
}

template <typename Scalar>
BasicMatrix<Scalar> scaled(const BasicMatrix<Scalar>& a, long long s)
{
    const int c = a.field().reduce(s);
    const int p = a.modulus();
    BasicMatrix<Scalar> out(a.field(), a.rows(), a.cols());
    out.raw() = a.entries().unaryExpr([c, p](Scalar v) { return static_cast<Scalar>((v * c) % p); });
    return out;
}

/// Product over F_p; the cost scales with the nonzeros of both factors.
template <typename Scalar>
BasicMatrix<Scalar> operator*(const BasicMatrix<Scalar>& a, const BasicMatrix<Scalar>& b)
{
    detail::require_same_field(a, b);
    if (a.cols() != b.rows())
        throw Error(ErrorKind::DimensionMismatch,
                    "product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and "
                        + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const Index n = b.cols();
    BasicMatrix<Scalar> out(a.field(), a.rows(), n);
    if (n == 0 || a.rows() == 0)
        return out;

    // compressed rows of b
    std::vector<Index> offsets(static_cast<std::size_t>(b.rows()) + 1, 0);
    std::vector<Index> cols;
    std::vector<int> vals;
    for (Index k = 0; k < b.rows(); ++k)
    {
        const Scalar* row = b.entries().row(k).data();
        for (Index j = 0; j < n; ++j)
        {
            if (row[j] != 0)
            {
                cols.push_back(j);
                vals.push_back(row[j]);
            }
        }
        offsets[static_cast<std::size_t>(k) + 1] = static_cast<Index>(cols.size());
    }

    const int p = a.modulus();
    std::vector<std::int64_t> acc(static_cast<std::size_t>(n));
    for (Index i = 0; i < a.rows(); ++i)
    {
        std::fill(acc.begin(), acc.end(), 0);
        const Scalar* arow = a.entries().row(i).data();
        bool touched = false;
        for (Index k = 0; k < a.cols(); ++k)
        {
            const int x = arow[k];
            if (x == 0)
                continue;
            for (Index t = offsets[k]; t < offsets[k + 1]; ++t)
                acc[static_cast<std::size_t>(cols[t])] += static_cast<std::int64_t>(x) * vals[t];
            touched = true;
        }
        if (!touched)
            continue;
        Scalar* orow = out.raw().row(i).data();
        for (Index j = 0; j < n; ++j)
            orow[j] = static_cast<Scalar>(acc[static_cast<std::size_t>(j)] % p);
    }
    return out;
}

template <typename Scalar>
BasicMatrix<Scalar> power(const BasicMatrix<Scalar>& a, int exponent)
{
    if (a.rows() != a.cols())
        throw Error(ErrorKind::DimensionMismatch, "power of a non-square matrix");
    BasicMatrix<Scalar> out = BasicMatrix<Scalar>::identity(a.field(), a.rows());
    for (int k = 0; k < exponent; ++k)
        out = out * a;
    return out;
}

/// Kronecker product; entry ((i,k),(j,l)) lives at (i*rows(b)+k, j*cols(b)+l).
template <typename Scalar>
BasicMatrix<Scalar> kron(const BasicMatrix<Scalar>& a, const BasicMatrix<Scalar>& b)
{
    detail::require_same_field(a, b);
    BasicMatrix<Scalar> out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    const int p = a.modulus();
    for (Index i = 0; i < a.rows(); ++i)
    {
        for (Index j = 0; j < a.cols(); ++j)
        {
            const int x = a(i, j);
            if (x == 0)
                continue;
            out.raw().block(i * b.rows(), j * b.cols(), b.rows(), b.cols())
                = b.entries().unaryExpr([x, p](Scalar v) { return static_cast<Scalar>((v * x) % p); });
        }
    }
    return out;
}

template <typename Scalar>
BasicMatrix<Scalar> hstack(const BasicMatrix<Scalar>& a, const BasicMatrix<Scalar>& b)
{
    detail::require_same_field(a, b);
    if (a.rows() != b.rows())
        throw Error(ErrorKind::DimensionMismatch, "hstack row counts differ");
    BasicMatrix<Scalar> out(a.field(), a.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

template <typename Scalar>
BasicMatrix<Scalar> vstack(const BasicMatrix<Scalar>& a, const BasicMatrix<Scalar>& b)
{
    detail::require_same_field(a, b);
    if (a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, "vstack column counts differ");
    BasicMatrix<Scalar> out(a.field(), a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    return out;
}

template <typename Scalar>
BasicMatrix<Scalar> block_diagonal(const BasicMatrix<Scalar>& a, const BasicMatrix<Scalar>& b)
{
    detail::require_same_field(a, b);
    BasicMatrix<Scalar> out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

template <typename Scalar>
struct Rref
{
    BasicMatrix<Scalar> reduced;
    Index rank = 0;
    std::vector<Index> pivots;
};

template <typename Scalar>
Rref<Scalar> rref(const BasicMatrix<Scalar>& a)
{
    Rref<Scalar> out{a, 0, {}};
    out.pivots = detail::eliminate(out.reduced.raw(), a.field(), a.cols(), true);
    out.rank = static_cast<Index>(out.pivots.size());
    return out;
}

template <typename Scalar>
Index rank(const BasicMatrix<Scalar>& a)
{
    // eliminate along the shorter side
    if (a.rows() > a.cols())
    {
        typename BasicMatrix<Scalar>::Storage work = a.entries().transpose();
        return static_cast<Index>(detail::eliminate(work, a.field(), work.cols(), false).size());
    }
    typename BasicMatrix<Scalar>::Storage work = a.entries();
    return static_cast<Index>(detail::eliminate(work, a.field(), work.cols(), false).size());
}

/**
 * Canonical kernel basis: one column per free variable of rref(a), in
 * increasing index order, with that free variable set to 1 and the other
 * free variables 0.
 */
template <typename Scalar>
BasicMatrix<Scalar> nullspace(const BasicMatrix<Scalar>& a)
{
    const auto r = rref(a);
    const FieldSpec field = a.field();
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (Index c : r.pivots)
        is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<Index> free_cols;
    for (Index c = 0; c < a.cols(); ++c)
        if (!is_pivot[static_cast<std::size_t>(c)])
            free_cols.push_back(c);

    BasicMatrix<Scalar> basis(field, a.cols(), static_cast<Index>(free_cols.size()));
    for (std::size_t k = 0; k < free_cols.size(); ++k)
    {
        const Index f = free_cols[k];
        const Index col = static_cast<Index>(k);
        basis.set(f, col, 1);
        for (Index i = 0; i < r.rank; ++i)
            basis.set(r.pivots[static_cast<std::size_t>(i)], col, field.negate(r.reduced(i, f)));
    }
    return basis;
}

/**
 * Canonical particular solution of a X = b (free variables 0), or nothing
 * when the system is inconsistent.
 */
template <typename Scalar>
std::optional<BasicMatrix<Scalar>> solve(const BasicMatrix<Scalar>& a, const BasicMatrix<Scalar>& b)
{
    detail::require_same_field(a, b);
    if (a.rows() != b.rows())
        throw Error(ErrorKind::DimensionMismatch,
                    "solve: A has " + std::to_string(a.rows()) + " rows, B has " + std::to_string(b.rows()));
    BasicMatrix<Scalar> work = hstack(a, b);
    const auto pivots = detail::eliminate(work.raw(), a.field(), a.cols(), true);
    const Index rnk = static_cast<Index>(pivots.size());
    for (Index i = rnk; i < work.rows(); ++i)
    {
        for (Index j = a.cols(); j < work.cols(); ++j)
        {
            if (work(i, j) != 0)
                return std::nullopt;
        }
    }
    BasicMatrix<Scalar> x(a.field(), a.cols(), b.cols());
    for (Index i = 0; i < rnk; ++i)
        x.raw().row(pivots[static_cast<std::size_t>(i)]) = work.entries().block(i, a.cols(), 1, b.cols());
    return x;
}

/// Columns form the canonical basis of the column space (nonzero rows of rref(aᵀ)).
template <typename Scalar>
BasicMatrix<Scalar> column_basis(const BasicMatrix<Scalar>& a)
{
    const auto r = rref(a.transpose());
    return r.reduced.block(0, 0, r.rank, a.rows()).transpose();
}

template <typename Scalar>
std::optional<BasicMatrix<Scalar>> inverse(const BasicMatrix<Scalar>& a)
{
    if (a.rows() != a.cols())
        return std::nullopt;
    if (rank(a) != a.rows())
        return std::nullopt;
    return solve(a, BasicMatrix<Scalar>::identity(a.field(), a.rows()));
}

}   // namespace permres
