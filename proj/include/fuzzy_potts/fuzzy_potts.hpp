#ifndef FUZZY_POTTS_FUZZY_POTTS_HPP
#define FUZZY_POTTS_FUZZY_POTTS_HPP

#include "fuzzy_potts/mc.hpp"
#include "fuzzy_potts/mf_exact.hpp"
#include "fuzzy_potts/mf_limit.hpp"
#include "fuzzy_potts/model.hpp"
#include "fuzzy_potts/numeric.hpp"
#include "fuzzy_potts/rng.hpp"
#include "fuzzy_potts/tree.hpp"

#endif
