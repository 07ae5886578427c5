#pragma once

// kE-modules for E = (C_p)^r, module maps, and the structural operators
// (radical, quotient, kernel, sums, tensor, dual, Hom, composition series,
// projective cover, Heller loop, free summands).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "permres/field.hpp"
#include "permres/group.hpp"

namespace permres
{

/// A permutation of basis indices: generator sends e_j to e_{image[j]}.
using Permutation = std::vector<std::uint32_t>;

/**
 * A kE-module: r commuting matrices A_1, ..., A_r with A_i^p = I.
 *
 * Generators are stored either densely or, for modules with a distinguished
 * permutation basis, as index permutations. The storage is shared and
 * immutable, so copies are cheap.
 */
class Module
{
    public:
        Module() = default;
        Module(GroupSpec group, std::vector<Matrix> generators);
        /// An empty module needs the group to know its rank.
        static Module zero(const GroupSpec& group);
        static Module from_permutations(GroupSpec group, std::size_t dim, std::vector<Permutation> generators);

        const GroupSpec& group() const { return group_; }
        FieldSpec field() const { return group_.field(); }
        std::size_t dim() const { return dim_; }
        Index size() const { return static_cast<Index>(dim_); }
        int rank() const { return group_.rank(); }

        /// Dense copy of generator i (0-based).
        Matrix generator(int i) const;
        std::vector<Matrix> generators() const;

        bool has_permutation_form() const { return data_ && data_->dense.empty(); }
        const Permutation& permutation(int i) const;

        /// A_i * x
        Matrix act(int i, const Matrix& x) const;
        /// x * A_i
        Matrix act_right(const Matrix& x, int i) const;
        /// g * x for a group element g, i.e. A_1^{g_1} ... A_r^{g_r} x
        Matrix act(const GroupElement& g, const Matrix& x) const;

        friend bool operator==(const Module& a, const Module& b);

    private:
        struct Data
        {
            std::vector<Matrix> dense;
            std::vector<Permutation> perms;
        };

        GroupSpec group_;
        std::size_t dim_ = 0;
        std::shared_ptr<const Data> data_;
};

/// A matrix (target.dim x source.dim) intertwining the two actions.
struct ModuleMap
{
    Module source;
    Module target;
    Matrix matrix;

    ModuleMap() = default;
    ModuleMap(Module source, Module target, Matrix matrix);

    bool intertwines() const;
    bool injective() const { return rank(matrix) == source.size(); }
    bool surjective() const { return rank(matrix) == target.size(); }
};

ModuleMap identity_map(const Module& m);
ModuleMap zero_map(const Module& source, const Module& target);
ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner);

/// 0 -> L -> M -> N -> 0
struct ShortExactSequence
{
    ModuleMap incl;
    ModuleMap proj;
};

/// Empty when all invariants hold, otherwise the first violated one.
std::optional<std::string> ses_violation(const ShortExactSequence& ses);

struct ValidationReport
{
    bool ok = true;
    std::string kind;   // "order" or "commutativity"
    int i = 0;          // 1-based generator indices
    int j = 0;
    std::string message;
};

ValidationReport validate(const Module& m);

Module make_trivial(const GroupSpec& group, std::size_t n);

/// (kE)^t, basis ordered by block then lexicographic exponent vector.
Module make_free(const GroupSpec& group, std::size_t t);

/**
 * The kE-linear map (kE)^t -> target sending the j-th free generator to
 * column j of `images`.
 */
ModuleMap free_map(const Module& free, const Module& target, const Matrix& images);

/// A submodule given by a basis (columns, in m's coordinates) of an invariant subspace.
struct Submodule
{
    Module module;
    ModuleMap incl;
};

Submodule submodule(const Module& m, const Matrix& basis);

/// rad M = sum_i image(A_i - I)
Submodule radical(const Module& m);

struct Quotient
{
    Module module;
    ModuleMap proj;
    /// lift[:, j] is the standard basis vector of the j-th complement coordinate.
    Matrix lift;
};

Quotient quotient(const Module& m, const ModuleMap& incl);

Submodule kernel(const ModuleMap& f);

struct DirectSum
{
    Module module;
    ModuleMap inj1, inj2, proj1, proj2;
};

DirectSum direct_sum(const Module& m, const Module& n);

/// Diagonal action, basis index (a, b) -> a * dim(N) + b.
Module tensor(const Module& m, const Module& n);

Module dual(const Module& m);

/// Basis of Hom_kE(M, N), each element a dim(N) x dim(M) matrix.
std::vector<Matrix> hom_space(const Module& m, const Module& n);

struct CompositionSeries
{
    /// L_0 = 0, ..., L_s = M (L_s is the input module itself).
    std::vector<Module> terms;
    /// inclusions[i] : L_i -> L_{i+1}
    std::vector<ModuleMap> inclusions;
    /// Columns b_1..b_s in M's coordinates; L_i = span(b_1..b_i).
    Matrix flag_basis;
};

CompositionSeries composition_series(const Module& m);

struct ProjectiveCover
{
    Module free;
    std::size_t rank = 0;
    ModuleMap pi;
};

ProjectiveCover projective_cover(const Module& m);

struct HellerLoop
{
    Module module;
    ModuleMap incl;   // into cover.free
    ProjectiveCover cover;
};

HellerLoop omega(const Module& m);
Module omega_power(const Module& m, int n);

/// Rank of the norm element on M, i.e. the number of free summands.
std::size_t free_rank(const Module& m);

struct FreeSplitting
{
    Module stripped;          // M'
    std::size_t free_rank = 0;
    Module free;              // (kE)^t
    ModuleMap to_sum;         // M -> M' + (kE)^t
    ModuleMap from_sum;       // inverse
};

FreeSplitting strip_free(const Module& m);

enum class IsoVerdict
{
    Isomorphic,
    NotIsomorphic,
    Inconclusive
};

struct IsoProbe
{
    IsoVerdict verdict = IsoVerdict::Inconclusive;
    std::optional<ModuleMap> iso;
    std::string reason;
};

IsoProbe iso_probe(const Module& m, const Module& n, int trials = 64, std::uint64_t seed = 0);

/// The SES L_{i-1} -> L_i -> L_i / L_{i-1} of a flag step.
ShortExactSequence ses_from_flag(const ModuleMap& incl);

/// Module structure on a subspace given by basis columns (must be invariant).
Module restrict_action(const Module& m, const Matrix& basis);

}   // namespace permres
