#pragma once

#include "boxes.hpp"
#include "cycle.hpp"
#include "engine.hpp"
#include "families.hpp"
#include "io.hpp"
#include "numeric.hpp"
#include "partition.hpp"
#include "sequence.hpp"
#include "solve.hpp"
