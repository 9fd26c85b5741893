#pragma once

#include "cadence/cadence_detect.hpp"
#include "cadence/error.hpp"
#include "cadence/gadgets.hpp"
#include "cadence/index_math.hpp"
#include "cadence/lr_detect.hpp"
#include "cadence/oracle.hpp"
#include "cadence/slp.hpp"
#include "cadence/slp_io.hpp"
#include "cadence/string_view.hpp"
#include "cadence/witness.hpp"
