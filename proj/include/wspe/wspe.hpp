#pragma once

#include "wspe/error.hpp"
#include "wspe/vertex_set.hpp"
#include "wspe/game.hpp"
#include "wspe/graph.hpp"
#include "wspe/formula.hpp"
#include "wspe/path_oracle.hpp"
#include "wspe/reductions.hpp"
#include "wspe/fixpoint.hpp"
#include "wspe/witness.hpp"
#include "wspe/strategy.hpp"
