#pragma once

// Finite multi-sorted structures and two independent brute-force evaluators.

#include "agape/finmodel/componenttoy.hpp"
#include "agape/finmodel/eval.hpp"
#include "agape/finmodel/structure.hpp"
