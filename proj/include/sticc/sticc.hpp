#pragma once
// Umbrella header for the whole library.

#include "sticc/assigner.hpp"
#include "sticc/baselines.hpp"
#include "sticc/cli.hpp"
#include "sticc/dataset.hpp"
#include "sticc/em.hpp"
#include "sticc/interpret.hpp"
#include "sticc/metrics.hpp"
#include "sticc/model.hpp"
#include "sticc/rng.hpp"
#include "sticc/serialize.hpp"
#include "sticc/synthgen.hpp"
#include "sticc/text.hpp"
#include "sticc/tgl.hpp"
#include "sticc/version.hpp"
