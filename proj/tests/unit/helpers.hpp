#pragma once

#include <cmath>
#include <doctest.h>
#include <numbers>
#include <vector>

#include "symqual/error.hpp"
#include "symqual/graph.hpp"

namespace symqual::test {

inline constexpr double kPi = std::numbers::pi;

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e, "p" + std::to_string(n));
}

inline std::vector<Vec2> regular_polygon(int k, double r = 1.0, double phase = 0.0, Vec2 c = {}) {
    std::vector<Vec2> p;
    for (int j = 0; j < k; ++j) {
        double a = phase + 2.0 * kPi * j / k;
        p.push_back(c + Vec2{r * std::cos(a), r * std::sin(a)});
    }
    return p;
}

template <class F>
ErrorCode error_code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::IoError;
}

}  // namespace symqual::test
