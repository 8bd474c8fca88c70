#pragma once

#include "airline/edge_source.hpp"
#include "airline/error.hpp"
#include "airline/geometry.hpp"
#include "airline/image_io.hpp"
#include "airline/line_param.hpp"
#include "airline/metrics.hpp"
#include "airline/orientation.hpp"
#include "airline/pipeline.hpp"
#include "airline/raster.hpp"
#include "airline/region_grow.hpp"
#include "airline/segment_json.hpp"
#include "airline/synth.hpp"
