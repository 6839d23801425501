// tmsf.hpp: umbrella header

#pragma once

#include "tmsf/amplitude.hpp"
#include "tmsf/bell.hpp"
#include "tmsf/errors.hpp"
#include "tmsf/fieldsim.hpp"
#include "tmsf/filters.hpp"
#include "tmsf/gaussian.hpp"
#include "tmsf/nelder_mead.hpp"
#include "tmsf/recipes.hpp"
#include "tmsf/report.hpp"
#include "tmsf/svg.hpp"
#include "tmsf/sweep.hpp"
#include "tmsf/thermal.hpp"
#include "tmsf/tmsv.hpp"
