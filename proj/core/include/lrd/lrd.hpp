#ifndef LRD_LRD_HPP
#define LRD_LRD_HPP

#include "lrd/calendar.hpp"
#include "lrd/error.hpp"
#include "lrd/generators.hpp"
#include "lrd/mfdfa.hpp"
#include "lrd/seasonal.hpp"
#include "lrd/serialize.hpp"
#include "lrd/series.hpp"
#include "lrd/spectral.hpp"
#include "lrd/stats.hpp"

#endif  // LRD_LRD_HPP
