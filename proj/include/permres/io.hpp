#pragma once

// Canonical JSON files for modules, descriptors and complexes, seeded random
// modules, and human-readable summaries.
//
// Every document is an object with sorted keys, integer entries only, and a
// trailing newline. Module generators are dense row lists; differentials and
// augmentations are stored sparsely as [row, col, value] triples.

#include <cstdint>
#include <optional>
#include <string>

#include "permres/complex.hpp"
#include "permres/module.hpp"
#include "permres/permutation.hpp"

namespace permres
{

struct RunConfig
{
    Caps caps;
    std::uint64_t seed = 0;
    int trials = 64;
    std::optional<std::string> out;
};

enum class FileKind
{
    Module,
    Descriptor,
    Complex
};

std::string serialize_module(const Module& m);
/// Parses and validates; invalid actions raise InvalidInput naming the failed invariant.
Module parse_module(const std::string& text, const Caps& caps = {});

std::string serialize_descriptor(const PermutationDescriptor& d);
PermutationDescriptor parse_descriptor(const std::string& text, const Caps& caps = {});

struct ComplexFile
{
    Complex complex;
    std::optional<int> m;
    std::string digest;   // as stored in the file
};

/// Tagged terms are stored by their tag only and rebuilt on parse.
std::string serialize_complex(const Complex& c, std::optional<int> m);
ComplexFile parse_complex(const std::string& text, const Caps& caps = {});

/// FNV-1a over the canonical document with an empty digest field.
std::string complex_digest(const Complex& c, std::optional<int> m);

FileKind detect_kind(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/**
 * A random submodule of (kE)^t of exactly the requested dimension, with
 * t <= dim drawn per attempt. Each attempt grows the submodule from seeded
 * vectors drawn from random radical layers; an attempt that stalls for 100
 * draws restarts with the next seed offset.
 */
Module random_module(const GroupSpec& group, std::size_t dim, std::uint64_t seed);

std::string module_info(const Module& m);
std::string descriptor_info(const PermutationDescriptor& d);
std::string complex_info(const Complex& c, std::optional<int> m);

}   // namespace permres
