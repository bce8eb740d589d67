#pragma once

#include "starclt/analytic.hpp"
#include "starclt/check_result.hpp"
#include "starclt/clt.hpp"
#include "starclt/errors.hpp"
#include "starclt/gram.hpp"
#include "starclt/group_algebra.hpp"
#include "starclt/gue.hpp"
#include "starclt/gue_sampler.hpp"
#include "starclt/pairing_stats.hpp"
#include "starclt/permutation.hpp"
#include "starclt/rational.hpp"
#include "starclt/series.hpp"
#include "starclt/set_partition.hpp"
#include "starclt/verify.hpp"
