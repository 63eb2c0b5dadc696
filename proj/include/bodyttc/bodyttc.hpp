#pragma once

#include "bodyttc/coarsen.hpp"
#include "bodyttc/components.hpp"
#include "bodyttc/contact.hpp"
#include "bodyttc/dataset.hpp"
#include "bodyttc/distance.hpp"
#include "bodyttc/error.hpp"
#include "bodyttc/geometry.hpp"
#include "bodyttc/hull.hpp"
#include "bodyttc/io/manifest.hpp"
#include "bodyttc/io/mask_io.hpp"
#include "bodyttc/io/png.hpp"
#include "bodyttc/io/text.hpp"
#include "bodyttc/mask.hpp"
#include "bodyttc/metrics.hpp"
#include "bodyttc/morphology.hpp"
#include "bodyttc/parallel.hpp"
#include "bodyttc/polygon.hpp"
#include "bodyttc/probability.hpp"
#include "bodyttc/raster.hpp"
#include "bodyttc/rng.hpp"
#include "bodyttc/scenario.hpp"
#include "bodyttc/sweep.hpp"
#include "bodyttc/ttc.hpp"
