#pragma once

#include "envelopes/error.hpp"
#include "envelopes/expr.hpp"
#include "envelopes/family.hpp"
#include "envelopes/geom.hpp"
#include "envelopes/hyperbolic.hpp"
#include "envelopes/numrange.hpp"
#include "envelopes/oracle.hpp"
