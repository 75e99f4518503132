#pragma once

#include "hoeffding/bound.hpp"
#include "hoeffding/error.hpp"
#include "hoeffding/gain.hpp"
#include "hoeffding/params.hpp"
#include "hoeffding/quantile_sketch.hpp"
#include "hoeffding/serialize.hpp"
#include "hoeffding/stream/bundle.hpp"
#include "hoeffding/stream/csv.hpp"
#include "hoeffding/stream/mem_report.hpp"
#include "hoeffding/stream/prequential.hpp"
#include "hoeffding/stream/synthetic.hpp"
