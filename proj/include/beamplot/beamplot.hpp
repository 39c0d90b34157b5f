#pragma once

#include "beamplot/beam_model.hpp"
#include "beamplot/error.hpp"
#include "beamplot/format.hpp"
#include "beamplot/metrics.hpp"
#include "beamplot/record.hpp"
#include "beamplot/svg_render.hpp"
#include "beamplot/wos_ingest.hpp"
