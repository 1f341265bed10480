#pragma once

// Umbrella header.

#include "cex/draft.hpp"
#include "cex/enumerate.hpp"
#include "cex/error.hpp"
#include "cex/io.hpp"
#include "cex/mechanism.hpp"
#include "cex/model.hpp"
#include "cex/partition.hpp"
#include "cex/random.hpp"
#include "cex/repro.hpp"
#include "cex/serial.hpp"
#include "cex/trading.hpp"
#include "cex/verifier.hpp"
