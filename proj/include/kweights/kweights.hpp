#pragma once

#include "kweights/checks.hpp"
#include "kweights/error.hpp"
#include "kweights/feasibility.hpp"
#include "kweights/groups.hpp"
#include "kweights/io.hpp"
#include "kweights/latin.hpp"
#include "kweights/patterns.hpp"
#include "kweights/plex_search.hpp"
#include "kweights/survey.hpp"
#include "kweights/weights.hpp"
