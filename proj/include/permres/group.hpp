#pragma once

// Elementary abelian p-groups E = (C_p)^r written additively as F_p^r, and
// their subgroups (= F_p-subspaces).

#include <cstddef>
#include <string>
#include <vector>

#include "permres/field.hpp"

namespace permres
{

/// An element of E as its exponent vector in F_p^r.
using GroupElement = std::vector<int>;

struct Caps
{
    std::size_t max_dim = 4096;
    std::size_t max_order = 3125;
};

/**
 * E = (C_p)^r with standard generators e_1, ..., e_r. The group also carries
 * the size caps every module constructor enforces.
 */
class GroupSpec
{
    public:
        GroupSpec() = default;
        GroupSpec(FieldSpec field, int rank, Caps caps = {});

        FieldSpec field() const { return field_; }
        int p() const { return field_.p(); }
        int rank() const { return rank_; }
        std::size_t order() const { return order_; }
        const Caps& caps() const { return caps_; }

        /// Throws CapExceeded when a module of this dimension is not allowed.
        void check_dim(std::size_t dim, const char* what) const;

        /// Lexicographic position of an element, first coordinate most significant.
        std::size_t element_index(const GroupElement& g) const;
        GroupElement element(std::size_t index) const;

        friend bool operator==(const GroupSpec& a, const GroupSpec& b)
        {
            return a.field_ == b.field_ && a.rank_ == b.rank_;
        }

    private:
        FieldSpec field_;
        int rank_ = 1;
        std::size_t order_ = 2;
        Caps caps_;
};

void require_same_group(const GroupSpec& a, const GroupSpec& b, const char* what);

/**
 * A subgroup H <= E, stored as the rref basis (rows) of the subspace.
 */
class Subgroup
{
    public:
        Subgroup() = default;

        /// Rows of `spanning` span the subgroup; they need not be independent.
        Subgroup(GroupSpec group, const Matrix& spanning);

        static Subgroup trivial(const GroupSpec& group);
        static Subgroup whole(const GroupSpec& group);
        /// span{e_j : j != i}, the kernel of the i-th coordinate (1-based i).
        static Subgroup coordinate_hyperplane(const GroupSpec& group, int i);

        const GroupSpec& group() const { return group_; }
        const Matrix& basis() const { return basis_; }
        int dim() const { return static_cast<int>(basis_.rows()); }
        /// [E : H] = p^(r - dim H)
        std::size_t index() const;

        const std::vector<Index>& pivots() const { return pivots_; }
        bool contains(const GroupElement& g) const;

        /// Reduce g modulo H by clearing the pivot coordinates.
        GroupElement canonical_representative(const GroupElement& g) const;

        /// All combinations of the non-pivot coordinates, ordered lexicographically.
        std::vector<GroupElement> coset_representatives() const;

        /// Rows concatenated, compared lexicographically.
        std::vector<int> key() const;

        friend bool operator==(const Subgroup& a, const Subgroup& b)
        {
            return a.group_ == b.group_ && a.basis_ == b.basis_;
        }
        friend bool operator<(const Subgroup& a, const Subgroup& b) { return a.key() < b.key(); }

    private:
        GroupSpec group_;
        Matrix basis_;
        std::vector<Index> pivots_;
};

Subgroup subgroup_sum(const Subgroup& h, const Subgroup& k);
Subgroup subgroup_intersection(const Subgroup& h, const Subgroup& k);

/// All subgroups of E (only sensible for small groups).
std::vector<Subgroup> all_subgroups(const GroupSpec& group);

std::string to_string(const Subgroup& h);

}   // namespace permres
