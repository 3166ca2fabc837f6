#pragma once

#include "qhc/rational.hpp"
#include "qhc/puiseux.hpp"
#include "qhc/mono_tri_map.hpp"
#include "qhc/connection.hpp"
#include "qhc/linalg.hpp"
#include "qhc/killing.hpp"
#include "qhc/catalog.hpp"
#include "qhc/affine_model.hpp"
#include "qhc/geodesics.hpp"
#include "qhc/gluing.hpp"
#include "qhc/example_torus.hpp"
