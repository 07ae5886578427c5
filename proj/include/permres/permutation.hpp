#pragma once

// Permutation modules k(E/H_1) + ... + k(E/H_n): symbolic descriptors,
// realization with coset bases, the Mackey rule, and basis-level recognition.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permres/group.hpp"
#include "permres/module.hpp"

namespace permres
{

/// A multiset of subgroups, kept sorted by Subgroup::key().
class PermutationDescriptor
{
    public:
        PermutationDescriptor() = default;
        PermutationDescriptor(GroupSpec group, std::vector<Subgroup> parts);

        const GroupSpec& group() const { return group_; }
        const std::vector<Subgroup>& parts() const { return parts_; }

        friend bool operator==(const PermutationDescriptor& a, const PermutationDescriptor& b)
        {
            return a.group_ == b.group_ && a.parts_ == b.parts_;
        }

    private:
        GroupSpec group_;
        std::vector<Subgroup> parts_;
};

std::size_t descriptor_dim(const PermutationDescriptor& d);
bool descriptor_eq(const PermutationDescriptor& a, const PermutationDescriptor& b);
bool is_free_descriptor(const PermutationDescriptor& d);
std::string to_string(const PermutationDescriptor& d);

/// Basis vector = coset `rep + H` of the part with index `part`.
struct CosetLabel
{
    std::uint32_t part = 0;
    GroupElement rep;

    friend bool operator==(const CosetLabel&, const CosetLabel&) = default;
};

struct PermutationTag
{
    PermutationDescriptor descriptor;
    std::vector<CosetLabel> basis_map;

    friend bool operator==(const PermutationTag&, const PermutationTag&) = default;
};

struct TaggedModule
{
    Module module;
    PermutationTag tag;
};

/**
 * Explicit module for a descriptor. Parts are laid out in descriptor order;
 * within a part the basis is the lexicographic list of coset representatives
 * (combinations of the non-pivot coordinates), and e_i translates cosets.
 */
TaggedModule realize(const PermutationDescriptor& d);

/// k(E/H) (x) k(E/K) = [E : H+K] copies of k(E/(H n K)).
PermutationDescriptor mackey_tensor(const Subgroup& h, const Subgroup& k);
PermutationDescriptor tensor_descriptor(const PermutationDescriptor& a, const PermutationDescriptor& b);

/**
 * Reads off the permutation structure of M in its given basis: orbits of
 * the generator permutations and their stabilizers. Throws
 * NotPermutationBasis naming the generator and row when some generator is
 * not a permutation matrix.
 */
TaggedModule recognize(const Module& m);

/// Rebuilds the permutation module a tag describes.
Module module_from_tag(const PermutationTag& tag);

/// Empty when `tag` describes `m` exactly (same matrices and multiplicities).
std::optional<std::string> tag_violation(const Module& m, const PermutationTag& tag);

/// Tag of a direct sum, first summand's basis first.
PermutationTag tag_direct_sum(const PermutationTag& a, const PermutationTag& b);

/// Tensor product in the product coset basis; the descriptor comes from the Mackey rule.
TaggedModule tensor_tagged(const TaggedModule& a, const TaggedModule& b);

/// Restricts a tag to a union of whole parts (kept in their original order).
PermutationTag tag_restrict(const PermutationTag& tag, const std::vector<std::uint32_t>& keep_parts);

}   // namespace permres
