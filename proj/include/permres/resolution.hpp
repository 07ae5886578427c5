#pragma once

// Permutation resolutions: the periodic pieces Q(i), the tensor resolution of
// k, rotation of short exact sequences, cone splicing, free-summand trimming,
// and the top-level construction for arbitrary modules.

#include <optional>
#include <string>
#include <vector>

#include "permres/complex.hpp"

namespace permres
{

struct GoodResolution
{
    Complex complex;
    int m = 0;
};

/**
 * Q(i): k(E/H_i) in degrees 0..ell-1 and k in degree ell, where H_i is the
 * i-th coordinate hyperplane. Odd differentials are g - 1, even ones the
 * norm, d_ell embeds k onto the norm element; the augmentation sums cosets.
 */
Complex periodic_complex(const GroupSpec& group, int i, int ell);

/// Smallest even integer >= m + 1 (at least 2).
int periodic_length(int m);

/// Q(1) (x) ... (x) Q(r) with ell_i = periodic_length(m).
GoodResolution trivial_resolution(const GroupSpec& group, int m);

struct Rotation
{
    ShortExactSequence ses;   // 0 -> Omega N -> L + P -> M -> 0
    ProjectiveCover cover;    // P -> N
    HellerLoop loop;          // Omega N inside P
    ModuleMap phi;            // P -> M lifting the cover through M -> N
    DirectSum middle;         // L + P
};

Rotation rotate(const ShortExactSequence& ses);

/**
 * Resolution of N = coker(f) from resolutions of L' and M', via a lift of f
 * and its mapping cone. `q` is the quotient M' -> N.
 */
Complex splice(const Complex& res_l, const Complex& res_m, const ModuleMap& f, const ModuleMap& q);

GoodResolution good_resolution(const Module& m, int degree);

/**
 * Removes a free summand Q of the augmentation target X = M + Q from degree
 * 0. `to_m` and `to_q` are the projections X -> M and X -> Q.
 */
Complex trim(const Complex& res, const ModuleMap& to_m, const ModuleMap& to_q);

struct Check
{
    std::string name;
    bool ok = true;
    std::string detail;
};

struct Certificate
{
    bool pass = true;
    std::vector<Check> checks;
    std::string first_failure;
    long long euler = 0;
    long long target_dim = 0;
    std::vector<long long> homology;
    /// Largest j with C_0..C_j free (-1 when C_0 is not free).
    int free_degree = -1;
};

/// Recomputes every invariant from scratch; freeness is checked when m is given.
Certificate certify(const Complex& c, std::optional<int> m = std::nullopt);

/// K_j: ker(eps) for j = 1, ker(d_{j-1}) for j >= 2.
Submodule syzygy(const Complex& c, int j);

}   // namespace permres
