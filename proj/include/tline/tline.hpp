#pragma once

#include "tline/analytic.hpp"
#include "tline/bounce.hpp"
#include "tline/compare.hpp"
#include "tline/config.hpp"
#include "tline/emit.hpp"
#include "tline/error.hpp"
#include "tline/fdtd.hpp"
#include "tline/grid.hpp"
#include "tline/model.hpp"
#include "tline/presets.hpp"
#include "tline/run.hpp"
#include "tline/sdomain.hpp"
