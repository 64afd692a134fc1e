#pragma once

#include "dotd/config.hpp"
#include "dotd/constants.hpp"
#include "dotd/dteg.hpp"
#include "dotd/error.hpp"
#include "dotd/geometry.hpp"
#include "dotd/link_budget.hpp"
#include "dotd/orbital.hpp"
#include "dotd/plus_grid.hpp"
#include "dotd/report.hpp"
#include "dotd/routing.hpp"
#include "dotd/time.hpp"
#include "dotd/tle.hpp"
#include "dotd/tle_fetch.hpp"
#include "dotd/topology.hpp"
#include "dotd/vec3.hpp"
#include "dotd/walker.hpp"
