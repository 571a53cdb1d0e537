// Umbrella header for the Hubbell rectangular-source integral library.
#pragma once

#include "hubbell/appell_f2.hpp"
#include "hubbell/hubbell.hpp"
#include "hubbell/quadrature.hpp"
#include "hubbell/series.hpp"
#include "hubbell/special.hpp"
#include "hubbell/tables.hpp"
