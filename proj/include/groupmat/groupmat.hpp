#pragma once

// Umbrella header: exact partition-stable matrix algebra, grouped matrices,
// finite-time consensus certificates, and averaging schedules on graphs.

#include "groupmat/chain.hpp"
#include "groupmat/degroot.hpp"
#include "groupmat/distributed.hpp"
#include "groupmat/errors.hpp"
#include "groupmat/graph.hpp"
#include "groupmat/json_io.hpp"
#include "groupmat/matrix.hpp"
#include "groupmat/partition.hpp"
#include "groupmat/rational.hpp"
#include "groupmat/stability.hpp"
