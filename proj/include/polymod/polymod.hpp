#pragma once

#include "polymod/errors.hpp"
#include "polymod/rational.hpp"
#include "polymod/combinatorics.hpp"
#include "polymod/chambers.hpp"
#include "polymod/poincare.hpp"
#include "polymod/strata.hpp"
#include "polymod/realize.hpp"
#include "polymod/stable.hpp"
#include "polymod/cone.hpp"
