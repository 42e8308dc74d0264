#pragma once

#include <span>
#include <vector>

#include "wrc/error.hpp"

namespace wrc {

/// Two joint rankings reduced to canonical form: observations are arranged by
/// increasing x, so the x-ranks are 1..n implicitly and s[i] is the y-rank of
/// the observation with x-rank i+1.  s is always a permutation of {1..n}.
struct RankPairing {
    std::vector<int> s;

    int n() const { return static_cast<int>(s.size()); }

    /// Wrap an explicit permutation of {1..n}; validates permutation-ness and n >= 2.
    static RankPairing from_permutation(std::vector<int> s);

    static RankPairing identity(int n);
    static RankPairing reversal(int n);

    /// Swap the roles of x and y (the inverse permutation).
    RankPairing inverted() const;
    /// Replace every y-rank s_i by n+1-s_i.
    RankPairing y_flipped() const;
    /// Reverse the x-order: s_i -> s_{n+1-i}.
    RankPairing x_reversed() const;
};

/// Rank raw bivariate data.  Both columns must be tie-free (the statistics
/// here assume continuous distributions; ties are an error, never midranked).
RankPairing prepare_pairing(std::span<const double> x, std::span<const double> y);

}  // namespace wrc
