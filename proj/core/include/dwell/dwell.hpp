#pragma once

#include "dwell/analytic.hpp"
#include "dwell/eigen.hpp"
#include "dwell/errors.hpp"
#include "dwell/observables.hpp"
#include "dwell/potential.hpp"
#include "dwell/spectral.hpp"
#include "dwell/toymodel.hpp"
