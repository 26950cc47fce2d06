#pragma once

// Umbrella header for the effect-algebra toolkit.

#include "qea/numerics.hpp"
#include "qea/effects.hpp"
#include "qea/observables.hpp"
#include "qea/incompat.hpp"
#include "qea/models.hpp"
#include "qea/generators.hpp"
#include "qea/io.hpp"

namespace qea {
inline constexpr const char* kToolkitVersion = "0.1.0";
}
