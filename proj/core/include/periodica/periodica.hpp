#pragma once

#include "periodica/diagram.hpp"
#include "periodica/errors.hpp"
#include "periodica/estimators.hpp"
#include "periodica/noise.hpp"
#include "periodica/odometry.hpp"
#include "periodica/persistence.hpp"
#include "periodica/seed.hpp"
#include "periodica/signal.hpp"
