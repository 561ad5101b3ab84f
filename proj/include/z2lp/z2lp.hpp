#pragma once

// Littlewood-Paley analysis on the 2-adic integers at finite resolution.

#include "z2lp/counterexample.hpp"
#include "z2lp/dyadic.hpp"
#include "z2lp/function_io.hpp"
#include "z2lp/harness.hpp"
#include "z2lp/littlewood_paley.hpp"
#include "z2lp/norms.hpp"
#include "z2lp/padic.hpp"
#include "z2lp/report_io.hpp"
#include "z2lp/step_function.hpp"
