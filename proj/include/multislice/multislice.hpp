#pragma once

#include "multislice/certificate.hpp"
#include "multislice/certify.hpp"
#include "multislice/coarsening.hpp"
#include "multislice/core/composition.hpp"
#include "multislice/core/energy.hpp"
#include "multislice/core/graph.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/error.hpp"
#include "multislice/limits.hpp"
#include "multislice/linalg/exact.hpp"
#include "multislice/operators/dirichlet.hpp"
#include "multislice/operators/functions.hpp"
#include "multislice/operators/kmatrix.hpp"
#include "multislice/operators/laplacian.hpp"
#include "multislice/operators/projection.hpp"
#include "multislice/report.hpp"
#include "multislice/scalar.hpp"
#include "multislice/spectral/gap.hpp"
#include "multislice/spectral/operator_spectra.hpp"
#include "multislice/spectral/spectrum.hpp"
#include "multislice/spectral/symmetry.hpp"
#include "multislice/walk.hpp"
