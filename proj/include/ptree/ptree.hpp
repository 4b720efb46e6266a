#pragma once

#include "ptree/asymptotics.hpp"
#include "ptree/counting.hpp"
#include "ptree/enumeration.hpp"
#include "ptree/numeric.hpp"
#include "ptree/properties.hpp"
#include "ptree/sampler.hpp"
#include "ptree/series.hpp"
#include "ptree/stats.hpp"
#include "ptree/toll.hpp"
#include "ptree/tree.hpp"
#include "ptree/verify.hpp"
#include "ptree/version.hpp"
