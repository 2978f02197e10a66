#ifndef ODDCOLOR_ODDCOLOR_HPP
#define ODDCOLOR_ODDCOLOR_HPP

#include "oddcolor/audit.hpp"
#include "oddcolor/colorers.hpp"
#include "oddcolor/generators.hpp"
#include "oddcolor/graph.hpp"
#include "oddcolor/group_coloring.hpp"
#include "oddcolor/harness.hpp"
#include "oddcolor/layer_plan.hpp"
#include "oddcolor/parity.hpp"
#include "oddcolor/subroutine.hpp"
#include "oddcolor/verify.hpp"

#endif  // ODDCOLOR_ODDCOLOR_HPP
