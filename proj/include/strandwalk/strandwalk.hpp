#pragma once

#include "strandwalk/diagram.hpp"
#include "strandwalk/engine.hpp"
#include "strandwalk/finitetype.hpp"
#include "strandwalk/hseries.hpp"
#include "strandwalk/laurent.hpp"
#include "strandwalk/markov.hpp"
#include "strandwalk/matrix.hpp"
#include "strandwalk/moves.hpp"
#include "strandwalk/numbers.hpp"
#include "strandwalk/ratfun.hpp"
#include "strandwalk/tangle_format.hpp"
