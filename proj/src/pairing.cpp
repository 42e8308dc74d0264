#include "wrc/pairing.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wrc {

namespace {

// Ranks of a tie-free column; throws TiesPresent naming the column and the
// offending value if two entries compare equal.
std::vector<int> ranks_of(std::span<const double> col, const char* name) {
    const int n = static_cast<int>(col.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return col[a] < col[b]; });
    for (int k = 1; k < n; ++k) {
        if (col[idx[k - 1]] == col[idx[k]]) {
            std::ostringstream msg;
            msg << "ties present in column " << name << ": value " << col[idx[k]] << " occurs at rows "
                << idx[k - 1] + 1 << " and " << idx[k] + 1;
            throw Error(ErrorCode::TiesPresent, msg.str());
        }
    }
    std::vector<int> rank(n);
    for (int k = 0; k < n; ++k) rank[idx[k]] = k + 1;
    return rank;
}

}  // namespace

RankPairing RankPairing::from_permutation(std::vector<int> s) {
    const int n = static_cast<int>(s.size());
    if (n < 2) throw Error(ErrorCode::DegenerateSize, "a rank pairing needs at least two observations");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int v : s) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v - 1)])
            throw Error(ErrorCode::ParameterOutOfDomain, "sequence is not a permutation of 1..n");
        seen[static_cast<size_t>(v - 1)] = 1;
    }
    return RankPairing{std::move(s)};
}

RankPairing RankPairing::identity(int n) {
    if (n < 2) throw Error(ErrorCode::DegenerateSize, "a rank pairing needs at least two observations");
    std::vector<int> s(static_cast<size_t>(n));
    std::iota(s.begin(), s.end(), 1);
    return RankPairing{std::move(s)};
}

RankPairing RankPairing::reversal(int n) {
    RankPairing r = identity(n);
    std::reverse(r.s.begin(), r.s.end());
    return r;
}

RankPairing RankPairing::inverted() const {
    std::vector<int> inv(s.size());
    for (int i = 0; i < n(); ++i) inv[static_cast<size_t>(s[static_cast<size_t>(i)] - 1)] = i + 1;
    return RankPairing{std::move(inv)};
}

RankPairing RankPairing::y_flipped() const {
    std::vector<int> f(s.size());
    for (size_t i = 0; i < s.size(); ++i) f[i] = n() + 1 - s[i];
    return RankPairing{std::move(f)};
}

RankPairing RankPairing::x_reversed() const {
    std::vector<int> r(s.rbegin(), s.rend());
    return RankPairing{std::move(r)};
}

RankPairing prepare_pairing(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw Error(ErrorCode::LengthMismatch, "x and y must have the same length");
    const int n = static_cast<int>(x.size());
    if (n < 2) throw Error(ErrorCode::DegenerateSize, "need at least two observations");

    std::vector<int> xr = ranks_of(x, "x");
    std::vector<int> yr = ranks_of(y, "y");

    // s[k] = y-rank of the observation whose x-rank is k+1.
    std::vector<int> s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) s[static_cast<size_t>(xr[static_cast<size_t>(i)] - 1)] = yr[static_cast<size_t>(i)];
    return RankPairing{std::move(s)};
}

}  // namespace wrc
