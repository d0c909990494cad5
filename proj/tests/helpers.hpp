#pragma once

#include <vector>

#include "fps/heisenberg.hpp"
#include "fps/matrix.hpp"
#include "fps/random.hpp"
#include "fps/zn.hpp"

namespace testutil {

using namespace fps;

// Brute-force membership: point p lies on the frequency line fl.
inline bool on_frequency_line(const FrequencyLine& fl, point p) {
    for (i64 t = 0; t < fl.N; ++t)
        if (mod_reduce(fl.c * t, fl.N) == p.x && mod_reduce(-fl.a * t, fl.N) == p.z) return true;
    return false;
}

// Independent N^2 x N^2 check that a list of lines covers the full grid.
inline bool covers_grid(const std::vector<FrequencyLine>& lines, i64 n) {
    for (i64 x = 0; x < n; ++x)
        for (i64 z = 0; z < n; ++z) {
            bool hit = false;
            for (const auto& fl : lines)
                if (on_frequency_line(fl, {x, z})) { hit = true; break; }
            if (!hit) return false;
        }
    return true;
}

inline std::vector<Sl2> all_l1(i64 n) {
    std::vector<Sl2> out;
    for (const auto& m : all_sl2(n))
        if (l1_check(m)) out.push_back(m);
    return out;
}

} // namespace testutil
