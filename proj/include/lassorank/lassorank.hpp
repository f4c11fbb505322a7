#pragma once

#include "lassorank/checker.hpp"
#include "lassorank/core.hpp"
#include "lassorank/corpus.hpp"
#include "lassorank/farkas.hpp"
#include "lassorank/intprep.hpp"
#include "lassorank/linear_system.hpp"
#include "lassorank/lp.hpp"
#include "lassorank/parser.hpp"
#include "lassorank/pipeline.hpp"
#include "lassorank/rational.hpp"
#include "lassorank/transform.hpp"
