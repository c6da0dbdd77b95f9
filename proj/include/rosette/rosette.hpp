#pragma once

#include "rosette/complex.hpp"
#include "rosette/complex_io.hpp"
#include "rosette/csm.hpp"
#include "rosette/delaunay.hpp"
#include "rosette/demos.hpp"
#include "rosette/design.hpp"
#include "rosette/dump.hpp"
#include "rosette/error.hpp"
#include "rosette/geometry.hpp"
#include "rosette/motif.hpp"
#include "rosette/packing.hpp"
#include "rosette/patch.hpp"
#include "rosette/pipeline.hpp"
#include "rosette/render.hpp"
