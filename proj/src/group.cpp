#include "permres/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace permres
{

GroupSpec::GroupSpec(FieldSpec field, int rank, Caps caps) : field_(field), rank_(rank), caps_(caps)
{
    if (rank < 1)
        throw Error(ErrorKind::InvalidInput, "group rank must be >= 1");
    if (caps.max_dim == 0 || caps.max_order == 0)
        throw Error(ErrorKind::InvalidInput, "caps must be positive");
    std::size_t order = 1;
    for (int i = 0; i < rank; ++i)
    {
        order *= static_cast<std::size_t>(field.p());
        if (order > caps.max_order)
            throw Error(ErrorKind::CapExceeded,
                        "group order " + std::to_string(field.p()) + "^" + std::to_string(rank)
                            + " exceeds cap " + std::to_string(caps.max_order));
    }
    order_ = order;
}

void GroupSpec::check_dim(std::size_t dim, const char* what) const
{
    if (dim > caps_.max_dim)
        throw Error(ErrorKind::CapExceeded,
                    std::string(what) + " of dimension " + std::to_string(dim) + " exceeds cap "
                        + std::to_string(caps_.max_dim));
}

std::size_t GroupSpec::element_index(const GroupElement& g) const
{
    std::size_t index = 0;
    for (int i = 0; i < rank_; ++i)
        index = index * static_cast<std::size_t>(p()) + static_cast<std::size_t>(field_.reduce(g[i]));
    return index;
}

GroupElement GroupSpec::element(std::size_t index) const
{
    GroupElement g(static_cast<std::size_t>(rank_), 0);
    for (int i = rank_ - 1; i >= 0; --i)
    {
        g[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(p()));
        index /= static_cast<std::size_t>(p());
    }
    return g;
}

void require_same_group(const GroupSpec& a, const GroupSpec& b, const char* what)
{
    if (!(a == b))
        throw Error(ErrorKind::GroupMismatch, std::string(what) + ": operands live over different groups");
}

Subgroup::Subgroup(GroupSpec group, const Matrix& spanning) : group_(std::move(group))
{
    if (spanning.cols() != group_.rank())
        throw Error(ErrorKind::DimensionMismatch, "subgroup basis must have r columns");
    if (!(spanning.field() == group_.field()))
        throw Error(ErrorKind::GroupMismatch, "subgroup basis over the wrong field");
    auto r = rref(spanning);
    basis_ = r.reduced.block(0, 0, r.rank, spanning.cols());
    pivots_ = std::move(r.pivots);
}

Subgroup Subgroup::trivial(const GroupSpec& group)
{
    return Subgroup(group, Matrix(group.field(), 0, group.rank()));
}

Subgroup Subgroup::whole(const GroupSpec& group)
{
    return Subgroup(group, Matrix::identity(group.field(), group.rank()));
}

Subgroup Subgroup::coordinate_hyperplane(const GroupSpec& group, int i)
{
    if (i < 1 || i > group.rank())
        throw Error(ErrorKind::InvalidInput, "coordinate index out of range");
    Matrix rows(group.field(), group.rank() - 1, group.rank());
    Index row = 0;
    for (int j = 0; j < group.rank(); ++j)
    {
        if (j != i - 1)
            rows.set(row++, j, 1);
    }
    return Subgroup(group, rows);
}

std::size_t Subgroup::index() const
{
    std::size_t n = 1;
    for (int i = dim(); i < group_.rank(); ++i)
        n *= static_cast<std::size_t>(group_.p());
    return n;
}

GroupElement Subgroup::canonical_representative(const GroupElement& g) const
{
    const FieldSpec f = group_.field();
    GroupElement x(g.size());
    for (std::size_t j = 0; j < g.size(); ++j)
        x[j] = f.reduce(g[j]);
    for (Index k = 0; k < basis_.rows(); ++k)
    {
        const std::size_t c = static_cast<std::size_t>(pivots_[static_cast<std::size_t>(k)]);
        const int coeff = x[c];
        if (coeff == 0)
            continue;
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] = f.reduce(x[j] - static_cast<long long>(coeff) * basis_(k, static_cast<Index>(j)));
    }
    return x;
}

bool Subgroup::contains(const GroupElement& g) const
{
    const auto x = canonical_representative(g);
    return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; });
}

std::vector<GroupElement> Subgroup::coset_representatives() const
{
    std::vector<bool> is_pivot(static_cast<std::size_t>(group_.rank()), false);
    for (Index c : pivots_)
        is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::size_t> free;
    for (int j = 0; j < group_.rank(); ++j)
        if (!is_pivot[static_cast<std::size_t>(j)])
            free.push_back(static_cast<std::size_t>(j));

    std::vector<GroupElement> reps;
    const std::size_t count = index();
    reps.reserve(count);
    for (std::size_t n = 0; n < count; ++n)
    {
        GroupElement g(static_cast<std::size_t>(group_.rank()), 0);
        std::size_t rest = n;
        for (std::size_t k = free.size(); k-- > 0;)
        {
            g[free[k]] = static_cast<int>(rest % static_cast<std::size_t>(group_.p()));
            rest /= static_cast<std::size_t>(group_.p());
        }
        reps.push_back(std::move(g));
    }
    return reps;
}

std::vector<int> Subgroup::key() const
{
    std::vector<int> k;
    k.reserve(static_cast<std::size_t>(basis_.rows() * basis_.cols()));
    for (Index i = 0; i < basis_.rows(); ++i)
        for (Index j = 0; j < basis_.cols(); ++j)
            k.push_back(basis_(i, j));
    return k;
}

Subgroup subgroup_sum(const Subgroup& h, const Subgroup& k)
{
    require_same_group(h.group(), k.group(), "subgroup sum");
    return Subgroup(h.group(), vstack(h.basis(), k.basis()));
}

Subgroup subgroup_intersection(const Subgroup& h, const Subgroup& k)
{
    require_same_group(h.group(), k.group(), "subgroup intersection");
    // x lies in H iff x is orthogonal to the annihilator of H
    const Matrix ann_h = nullspace(h.basis()).transpose();
    const Matrix ann_k = nullspace(k.basis()).transpose();
    return Subgroup(h.group(), nullspace(vstack(ann_h, ann_k)).transpose());
}

std::vector<Subgroup> all_subgroups(const GroupSpec& group)
{
    std::vector<Subgroup> found{Subgroup::trivial(group)};
    std::set<std::vector<int>> seen{found.front().key()};
    for (std::size_t next = 0; next < found.size(); ++next)
    {
        for (std::size_t n = 1; n < group.order(); ++n)
        {
            const GroupElement g = group.element(n);
            if (found[next].contains(g))
                continue;
            Matrix row(group.field(), 1, group.rank());
            for (int j = 0; j < group.rank(); ++j)
                row.set(0, j, g[static_cast<std::size_t>(j)]);
            Subgroup bigger(group, vstack(found[next].basis(), row));
            if (seen.insert(bigger.key()).second)
                found.push_back(std::move(bigger));
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

std::string to_string(const Subgroup& h)
{
    std::ostringstream os;
    os << "<";
    for (Index i = 0; i < h.basis().rows(); ++i)
    {
        if (i > 0)
            os << ", ";
        os << "(";
        for (Index j = 0; j < h.basis().cols(); ++j)
            os << (j > 0 ? "," : "") << h.basis()(i, j);
        os << ")";
    }
    os << ">";
    return os.str();
}

}   // namespace permres
