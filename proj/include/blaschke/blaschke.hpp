// Umbrella header.

#pragma once

#include "airy.hpp"
#include "annular.hpp"
#include "asym.hpp"
#include "core.hpp"
#include "exact.hpp"
#include "norms.hpp"
#include "saddle.hpp"
