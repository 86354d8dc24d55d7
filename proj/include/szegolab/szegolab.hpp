#pragma once

// Umbrella header: kernels and invariant metrics on model domains, the SK
// invariant, the Fefferman boundary measure, automorphism transformation-law
// checks, quadrature-built kernels, and the annulus limit experiments.

#include "szegolab/asymptotics.hpp"
#include "szegolab/biholomorphism.hpp"
#include "szegolab/boundaryquad.hpp"
#include "szegolab/errors.hpp"
#include "szegolab/fd.hpp"
#include "szegolab/fefferman.hpp"
#include "szegolab/format.hpp"
#include "szegolab/kahan.hpp"
#include "szegolab/kernels.hpp"
#include "szegolab/lawsuite.hpp"
#include "szegolab/linalg.hpp"
#include "szegolab/metrics.hpp"
#include "szegolab/quadkernel.hpp"
#include "szegolab/rng.hpp"
#include "szegolab/types.hpp"
#include "szegolab/variational.hpp"
