/*!
  \file mulsynth.hpp
  \brief Umbrella header
*/

#pragma once

#include "netlist.hpp"
#include "blocks.hpp"
#include "school.hpp"
#include "karatsuba.hpp"
#include "bounds.hpp"
#include "verify.hpp"
