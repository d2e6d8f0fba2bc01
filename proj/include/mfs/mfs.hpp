#pragma once

// Umbrella header.

#include "mfs/config.hpp"
#include "mfs/dft.hpp"
#include "mfs/errbound.hpp"
#include "mfs/errors.hpp"
#include "mfs/mfs_core.hpp"
#include "mfs/problem.hpp"
#include "mfs/specfun.hpp"
#include "mfs/spectral.hpp"
#include "mfs/sweep.hpp"
#include "mfs/verify.hpp"
