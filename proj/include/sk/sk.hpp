#pragma once

#include "sk/kernels.hpp"
#include "sk/infofield.hpp"
#include "sk/search.hpp"
#include "sk/oracles.hpp"
#include "sk/efficiency.hpp"
#include "sk/sizer.hpp"
#include "sk/report.hpp"
