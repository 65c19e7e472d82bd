#pragma once

// Umbrella header: path-dependent portfolio risk diagnostics.

#include "pathlens/capture.hpp"
#include "pathlens/config.hpp"
#include "pathlens/dates.hpp"
#include "pathlens/episodes.hpp"
#include "pathlens/errors.hpp"
#include "pathlens/json_io.hpp"
#include "pathlens/metric.hpp"
#include "pathlens/pathcalc.hpp"
#include "pathlens/protocol.hpp"
#include "pathlens/recovery.hpp"
#include "pathlens/render.hpp"
#include "pathlens/scenarios.hpp"
#include "pathlens/series.hpp"
