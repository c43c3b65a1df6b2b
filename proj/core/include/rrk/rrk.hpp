#pragma once

#include "rrk/analysis.hpp"
#include "rrk/errors.hpp"
#include "rrk/grid.hpp"
#include "rrk/io.hpp"
#include "rrk/problem.hpp"
#include "rrk/problems.hpp"
#include "rrk/rng.hpp"
#include "rrk/solver.hpp"
#include "rrk/study.hpp"
#include "rrk/trajectory.hpp"
