#pragma once

// Lattice toolkit: exact geometry for Babai (nearest-plane) decoding, the
// distributed protocol that reproduces it from quantized sensor messages,
// and error-probability analysis in two, three and higher dimensions.

#include "latbab/babai.hpp"
#include "latbab/bounds.hpp"
#include "latbab/catalog.hpp"
#include "latbab/dbp.hpp"
#include "latbab/error_analysis.hpp"
#include "latbab/errors.hpp"
#include "latbab/lattice.hpp"
#include "latbab/lattice_io.hpp"
#include "latbab/linalg.hpp"
#include "latbab/polyhedron.hpp"
#include "latbab/rate.hpp"
#include "latbab/rational.hpp"
#include "latbab/reduction.hpp"
#include "latbab/rng.hpp"
#include "latbab/scalar_expr.hpp"
#include "latbab/source_spec.hpp"
#include "latbab/sweeps.hpp"
#include "latbab/voronoi.hpp"
