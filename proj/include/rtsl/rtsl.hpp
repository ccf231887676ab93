#pragma once

#include "rtsl/cocycle.hpp"
#include "rtsl/decomposition.hpp"
#include "rtsl/experiments.hpp"
#include "rtsl/jacobi.hpp"
#include "rtsl/linalg.hpp"
#include "rtsl/lyapunov.hpp"
#include "rtsl/parallel.hpp"
#include "rtsl/random.hpp"
#include "rtsl/tree.hpp"

namespace rtsl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rtsl
