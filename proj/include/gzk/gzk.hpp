#pragma once

#include "gzk/config.hpp"
#include "gzk/coupled.hpp"
#include "gzk/diagnostics.hpp"
#include "gzk/evolve.hpp"
#include "gzk/experiments.hpp"
#include "gzk/fft.hpp"
#include "gzk/field.hpp"
#include "gzk/grid.hpp"
#include "gzk/ground_state.hpp"
#include "gzk/interpolate.hpp"
#include "gzk/manifest.hpp"
#include "gzk/norms.hpp"
#include "gzk/parallel.hpp"
#include "gzk/probes.hpp"
#include "gzk/propagator.hpp"
#include "gzk/random_field.hpp"
#include "gzk/snapshot.hpp"
#include "gzk/solver.hpp"
#include "gzk/spectral_ops.hpp"
#include "gzk/split.hpp"
#include "gzk/verdict.hpp"
