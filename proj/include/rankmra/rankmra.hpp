#pragma once

#include "rankmra/chain.hpp"
#include "rankmra/combinatorics.hpp"
#include "rankmra/invariants.hpp"
#include "rankmra/io.hpp"
#include "rankmra/item_set.hpp"
#include "rankmra/marginals.hpp"
#include "rankmra/mra.hpp"
#include "rankmra/parallel.hpp"
#include "rankmra/permutation.hpp"
#include "rankmra/wavelets.hpp"
#include "rankmra/word.hpp"
#include "rankmra/young.hpp"
