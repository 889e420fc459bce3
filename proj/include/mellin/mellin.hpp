#pragma once

#include "mellin/boundary.hpp"
#include "mellin/diagnostics.hpp"
#include "mellin/error.hpp"
#include "mellin/fft.hpp"
#include "mellin/greeks.hpp"
#include "mellin/grid.hpp"
#include "mellin/oracles.hpp"
#include "mellin/pricer.hpp"
#include "mellin/series.hpp"
#include "mellin/spec.hpp"
#include "mellin/special.hpp"
#include "mellin/transforms.hpp"
