#pragma once

// Umbrella header for the quatkit quaternion linear algebra toolkit.

#include "quatkit/quaternion.hpp"
#include "quatkit/quat_matrix.hpp"
#include "quatkit/embeddings.hpp"
#include "quatkit/rng.hpp"
#include "quatkit/io.hpp"

#include "quatkit/decomp/qr.hpp"
#include "quatkit/decomp/lu.hpp"
#include "quatkit/decomp/qsvd.hpp"
#include "quatkit/decomp/hessenberg.hpp"
#include "quatkit/decomp/tridiagonalize.hpp"
#include "quatkit/decomp/eig.hpp"
#include "quatkit/decomp/chol.hpp"
#include "quatkit/decomp/nullspace.hpp"

#include "quatkit/solvers/newton_schulz.hpp"
#include "quatkit/solvers/triangular.hpp"
#include "quatkit/solvers/qgmres.hpp"

#include "quatkit/restore/image.hpp"
#include "quatkit/restore/psf.hpp"
#include "quatkit/restore/qslst.hpp"
#include "quatkit/restore/metrics.hpp"

#include "quatkit/qtraj/qtraj.hpp"

#include "quatkit/optiq/optiq.hpp"
