#pragma once

#include <string>

#include "wrc/error.hpp"

namespace wrc {

/// Which tail of the ranking the weights emphasise.  Lower weights the top
/// ranks (rank 1 counts most), Upper weights the bottom ranks.
enum class Tail { Lower, Upper };

/// A member of the weighted rank correlation family: tail, whether the
/// statistic is symmetrised over the two orderings, and the weight exponent p.
struct WrcVariant {
    Tail tail = Tail::Lower;
    bool symmetrized = false;
    int p = 1;

    static WrcVariant lower(int p, bool sym = false) { return {Tail::Lower, sym, p}; }
    static WrcVariant upper(int p, bool sym = false) { return {Tail::Upper, sym, p}; }
    static WrcVariant spearman() { return {Tail::Lower, false, 1}; }

    bool operator==(const WrcVariant&) const = default;
};

inline void validate(const WrcVariant& v) {
    if (v.p < 1) throw Error(ErrorCode::ParameterOutOfDomain, "weight exponent p must be >= 1");
}

/// Canonical short name: lower, upper, sym-lower, sym-upper.
inline std::string variant_name(const WrcVariant& v) {
    std::string base = v.tail == Tail::Lower ? "lower" : "upper";
    return v.symmetrized ? "sym-" + base : base;
}

/// A statistic usable in tests and power studies: either a WRC family member
/// or Kendall's tau (which has no variant parameters).
struct Statistic {
    enum class Kind { Wrc, Kendall };
    Kind kind = Kind::Wrc;
    WrcVariant variant{};

    static Statistic wrc(const WrcVariant& v) { return {Kind::Wrc, v}; }
    static Statistic spearman() { return {Kind::Wrc, WrcVariant::spearman()}; }
    static Statistic kendall() { return {Kind::Kendall, {}}; }

    bool operator==(const Statistic&) const = default;
};

inline std::string statistic_name(const Statistic& s) {
    if (s.kind == Statistic::Kind::Kendall) return "kendall";
    if (s.variant == WrcVariant::spearman()) return "spearman";
    return variant_name(s.variant);
}

}  // namespace wrc
