#pragma once

#include "hgsparse/copositivity.hpp"
#include "hgsparse/generate.hpp"
#include "hgsparse/hypergraph.hpp"
#include "hgsparse/io.hpp"
#include "hgsparse/ordered_graph.hpp"
#include "hgsparse/random.hpp"
#include "hgsparse/solvers.hpp"
#include "hgsparse/sparsify.hpp"
#include "hgsparse/verify.hpp"
