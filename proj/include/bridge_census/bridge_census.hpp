#pragma once

// Umbrella header.

#include "bridge_census/bignum.hpp"
#include "bridge_census/cf.hpp"
#include "bridge_census/enumerate.hpp"
#include "bridge_census/errors.hpp"
#include "bridge_census/formulas.hpp"
#include "bridge_census/io.hpp"
#include "bridge_census/memo.hpp"
#include "bridge_census/verify.hpp"
