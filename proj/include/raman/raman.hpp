// raman.hpp - umbrella header for the three-level Raman library

#pragma once

#include "raman/analysis.hpp"
#include "raman/lippmann_schwinger.hpp"
#include "raman/model.hpp"
#include "raman/numerics.hpp"
#include "raman/propagators.hpp"
