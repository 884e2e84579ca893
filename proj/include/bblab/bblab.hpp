#pragma once
// Umbrella header.

#include "core.hpp"
#include "quantities.hpp"
#include "restriction.hpp"
#include "search.hpp"
#include "transform.hpp"
#include "verify.hpp"
