#pragma once

#include "qseries/catalog.hpp"
#include "qseries/claims.hpp"
#include "qseries/errors.hpp"
#include "qseries/evaluate.hpp"
#include "qseries/expr.hpp"
#include "qseries/parser.hpp"
#include "qseries/partitions.hpp"
#include "qseries/report.hpp"
#include "qseries/rings.hpp"
#include "qseries/series.hpp"
#include "qseries/special.hpp"
