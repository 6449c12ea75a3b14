#pragma once

#include "sprt/design.hpp"
#include "sprt/efficiency.hpp"
#include "sprt/inequality.hpp"
#include "sprt/normal.hpp"
#include "sprt/philox.hpp"
#include "sprt/simulate.hpp"
