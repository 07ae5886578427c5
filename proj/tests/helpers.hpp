#pragma once

#include <random>

#include "permres/field.hpp"
#include "permres/module.hpp"
#include "oracles.hpp"

namespace testing_support
{

inline permres::Matrix random_matrix(const permres::FieldSpec& f, Eigen::Index rows, Eigen::Index cols,
                                     std::mt19937_64& rng)
{
    permres::Matrix out(f, rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            out.set(r, c, static_cast<long long>(rng() % static_cast<std::uint64_t>(f.p())));
    return out;
}

inline std::vector<oracle::Mat> generator_mats(const permres::Module& m)
{
    std::vector<oracle::Mat> out;
    for (int i = 0; i < m.rank(); ++i)
        out.push_back(oracle::to_mat(m.generator(i)));
    return out;
}

}   // namespace testing_support
