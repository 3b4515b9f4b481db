#pragma once

#include "swapmatch/bitvec.hpp"
#include "swapmatch/model.hpp"
#include "swapmatch/masks.hpp"
#include "swapmatch/engines.hpp"
#include "swapmatch/rng.hpp"
#include "swapmatch/verify.hpp"
#include "swapmatch/bench.hpp"
