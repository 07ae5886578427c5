#pragma once

// Bounded chain complexes of kE-modules C_0 <- C_1 <- ... <- C_n, homological
// indexing, with an optional augmentation C_0 -> M treated as d_0 and
// optional permutation tags on the terms.

#include <optional>
#include <string>
#include <vector>

#include "permres/module.hpp"
#include "permres/permutation.hpp"

namespace permres
{

struct Augmentation
{
    Module target;
    Matrix matrix;   // target.dim x dim C_0
};

struct Complex
{
    GroupSpec group;
    std::vector<Module> terms;                       // C_0 .. C_n
    std::vector<Matrix> differentials;               // differentials[j-1] = d_j : C_j -> C_{j-1}
    std::optional<Augmentation> augmentation;
    std::optional<std::vector<PermutationTag>> tags;

    int top_degree() const { return static_cast<int>(terms.size()) - 1; }
    bool empty() const { return terms.empty(); }

    /// Zero module outside 0..n.
    Module term(int j) const;
    std::size_t term_dim(int j) const;
    /// d_j for 1 <= j <= n; zero matrix with the right shape elsewhere (d_0 = 0).
    Matrix d(int j) const;
    /// d_j, except that d_0 is the augmentation when present.
    Matrix boundary(int j) const;
    /// Tag of term j; empty tag outside 0..n. Requires tags.
    PermutationTag tag(int j) const;
};

/// Throws DimensionMismatch when shapes, module groups or tag alignment are inconsistent.
void check_shape(const Complex& c);

PermutationTag empty_tag(const GroupSpec& group);

/// Single term in degree 0 with the given augmentation.
Complex single_term_complex(const TaggedModule& term, std::optional<Augmentation> augmentation);

struct HomologyReport
{
    std::vector<std::size_t> ranks;   // rank of boundary(j), j = 0..n+1
    std::vector<long long> dims;      // dim H_j, j = 0..n
    long long augmentation_defect = 0;   // dim target - rank(augmentation)
};

HomologyReport homology(const Complex& c);
std::vector<long long> homology_dims(const Complex& c);

long long euler_characteristic(const Complex& c);

/// Empty when d_j d_{j+1} = 0 for all j (and augmentation . d_1 = 0).
std::optional<std::string> d_squared_violation(const Complex& c);

/// Empty when every differential and the augmentation intertwine.
std::optional<std::string> intertwining_violation(const Complex& c);

bool is_resolution(const Complex& c);

/// Terms C_0..C_min(m, n) are free (by tag when tagged, else by cover dimension).
bool free_up_to(const Complex& c, int m);

struct ChainMap
{
    std::vector<Matrix> components;   // f_j : source_j -> target_j; missing means zero

    Matrix component(int j, const Complex& source, const Complex& target) const;
};

/**
 * Empty when f is a chain map, including the top-degree identity
 * f_n d_{n+1} = 0 beyond the target's length. When `base` is given, also
 * checks target_eps . f_0 = base . source_eps.
 */
std::optional<std::string> chain_map_violation(const Complex& source, const Complex& target, const ChainMap& f,
                                               const std::optional<Matrix>& base = std::nullopt);

/// cone_j = source_{j-1} + target_j with d(q, p) = (-d q, f(q) + d p). No augmentation.
Complex cone(const Complex& source, const Complex& target, const ChainMap& f);

/// (A (x) B)_n = sum_{i+j=n} A_i (x) B_j by increasing i, with sign (-1)^i on d_B.
Complex tensor_complexes(const Complex& a, const Complex& b);

/// Termwise direct sum; augmentations and tags combine when both present.
Complex direct_sum_complexes(const Complex& a, const Complex& b);

/**
 * Lifts f : L -> M to a chain map Q -> P of resolutions (Q of L, P of M),
 * degree by degree through free generators of the tagged terms of Q. P must
 * vanish above `ell`; components above `ell` are zero.
 */
ChainMap lift_chain_map(const ModuleMap& f, const Complex& q, const Complex& p, int ell);

/// Drops C_0; the new augmentation is d_1 corestricted onto ker(augmentation).
Complex truncate(const Complex& c);

/// Replaces the augmentation eps by q . eps (target q.target).
Complex reaugment(const Complex& c, const ModuleMap& q);

}   // namespace permres
