#pragma once

#include <cstdint>

#include "uorbits/field.hpp"
#include "uorbits/geometry.hpp"

namespace uorbits {

struct Budgets {
    std::uint64_t group = 1u << 21;      // max |U| for full enumeration
    std::uint64_t charspace = 1u << 21;  // max |V| for partitions and expansions
    std::uint64_t orbit = 1u << 20;      // max single orbit size
    std::uint64_t superclass = 1u << 22; // max matrix biorbit closure
    std::uint64_t probe = 1u << 16;      // elements inspected by the sign probe
};

/// one group configuration: U(X_n) over F_q with its position combinatorics
struct Context {
    TypeParams tp;
    FieldCtx fq;
    Regions reg;
    Budgets budgets;

    int N() const { return tp.N; }
    std::uint32_t q() const { return fq.q(); }
    int m() const { return static_cast<int>(reg.pUP.size()); }

    std::uint64_t group_order() const {
        std::uint64_t r = 1;
        for (int i = 0; i < m(); ++i) r *= fq.q();
        return r;
    }
};

inline Context make_context(LieType t, int n, int p, int k = 1, Budgets budgets = {},
                            int theta_scale = 1) {
    TypeParams tp = TypeParams::make(t, n);
    return Context{tp, FieldCtx(p, k, FieldCtx::kDefaultBound, theta_scale),
                   region_sets(tp), budgets};
}

} // namespace uorbits
