#pragma once

#include "capamp/bounds.hpp"
#include "capamp/capacity.hpp"
#include "capamp/channels.hpp"
#include "capamp/density_operator.hpp"
#include "capamp/errors.hpp"
#include "capamp/matcore.hpp"
#include "capamp/states.hpp"
#include "capamp/thresholds.hpp"
