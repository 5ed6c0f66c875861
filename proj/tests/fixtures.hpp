// The two worked examples: the quadric cone with a rank-2 subtorus, and the
// plane with the hyperbolic C* action.
#pragma once

#include "tgit/action.hpp"
#include "tgit/toric.hpp"

namespace tgit::testing {

inline Fan quadric_fan() { return Fan::validate({3, {{1, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}}, {{0, 1, 2, 3}}}); }
inline SubtorusAction quadric_action() { return SubtorusAction(IntMatrix{{2, 0}, {1, 2}, {1, 1}}); }
inline ToricDivisor quadric_divisor() { return {{-1, 0, 4, 7}}; }
inline SubfanLocus quadric_target() { return SubfanLocus({{}, {0}, {2}}); }

inline Fan plane_fan() { return Fan::validate({2, {{1, 0}, {0, 1}}, {{0, 1}}}); }
inline SubtorusAction hyperbolic_action() { return SubtorusAction(IntMatrix{{1}, {-1}}); }
inline ToricDivisor plane_divisor() { return {{1, 0}}; }

}  // namespace tgit::testing
