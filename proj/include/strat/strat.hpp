#pragma once

#include "strat/dsl.hpp"
#include "strat/effects.hpp"
#include "strat/error.hpp"
#include "strat/onelayer.hpp"
#include "strat/rules.hpp"
#include "strat/schemes.hpp"
#include "strat/sexpr.hpp"
#include "strat/signature.hpp"
#include "strat/stack.hpp"
#include "strat/strategy.hpp"
#include "strat/term.hpp"
#include "strat/value.hpp"
