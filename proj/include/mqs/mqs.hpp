#pragma once

#include "bounds.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "interpolant.hpp"
#include "kernel.hpp"
#include "mn.hpp"
#include "simplex.hpp"
#include "special_math.hpp"
#include "weighted_space.hpp"

namespace mqs {

inline constexpr const char* version = "0.1.0";

}  // namespace mqs
