#pragma once

// Multi-sorted first-order logic kernel: signatures, hash-consed formula
// DAG, sort checking, capture-avoiding substitution, named-definition
// expansion, statistics and the textual format.

#include "agape/folcore/defs.hpp"
#include "agape/folcore/freevars.hpp"
#include "agape/folcore/sexpr.hpp"
#include "agape/folcore/signature.hpp"
#include "agape/folcore/sortcheck.hpp"
#include "agape/folcore/stats.hpp"
#include "agape/folcore/store.hpp"
#include "agape/folcore/subst.hpp"
#include "agape/folcore/text.hpp"
