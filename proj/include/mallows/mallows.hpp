#pragma once

// Umbrella header for the whole library.

#include "mallows/bigint.hpp"
#include "mallows/bounds.hpp"
#include "mallows/chain.hpp"
#include "mallows/coupling.hpp"
#include "mallows/diagnostics.hpp"
#include "mallows/fenwick.hpp"
#include "mallows/gof.hpp"
#include "mallows/hitrun.hpp"
#include "mallows/lattice.hpp"
#include "mallows/metropolis.hpp"
#include "mallows/model.hpp"
#include "mallows/oracle.hpp"
#include "mallows/permutation.hpp"
#include "mallows/report.hpp"
#include "mallows/restricted.hpp"
#include "mallows/rng.hpp"
#include "mallows/statistics.hpp"
#include "mallows/twisted.hpp"
