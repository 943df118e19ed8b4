#pragma once

#include "splitlab/analysis.hpp"
#include "splitlab/corpus.hpp"
#include "splitlab/error.hpp"
#include "splitlab/generator.hpp"
#include "splitlab/geometry.hpp"
#include "splitlab/metrics.hpp"
#include "splitlab/record.hpp"
#include "splitlab/session.hpp"
#include "splitlab/stats.hpp"
