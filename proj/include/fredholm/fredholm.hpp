#pragma once

#include "fredholm/csv.hpp"
#include "fredholm/errors.hpp"
#include "fredholm/grid.hpp"
#include "fredholm/kernel.hpp"
#include "fredholm/manufactured.hpp"
#include "fredholm/mfbm.hpp"
#include "fredholm/product_integration.hpp"
#include "fredholm/quadrature.hpp"
#include "fredholm/solver.hpp"
#include "fredholm/special_functions.hpp"
