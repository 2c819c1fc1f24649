#pragma once

#include "tribound/errors.hpp"
#include "tribound/util.hpp"
#include "tribound/diagram.hpp"
#include "tribound/coloring.hpp"
#include "tribound/poly.hpp"
#include "tribound/cochain.hpp"
#include "tribound/invariant.hpp"
#include "tribound/fixtures.hpp"
#include "tribound/reproduce.hpp"
