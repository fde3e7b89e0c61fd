#pragma once

// Umbrella header for the library. The command line layer lives in
// twcurve/cli/ and additionally needs the vendored JSON header.

#include "twcurve/errors.hpp"
#include "twcurve/rational.hpp"
#include "twcurve/upoly.hpp"
#include "twcurve/number_field.hpp"
#include "twcurve/nth_root.hpp"
#include "twcurve/linear_algebra.hpp"
#include "twcurve/integer_matrix.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/rational_function.hpp"
#include "twcurve/laurent_series.hpp"
#include "twcurve/curve_reduction.hpp"
#include "twcurve/puiseux.hpp"
#include "twcurve/series_eval.hpp"
#include "twcurve/semigroup.hpp"
#include "twcurve/normal_forms.hpp"
#include "twcurve/generator_system.hpp"
#include "twcurve/relation.hpp"
#include "twcurve/tschirnhaus.hpp"
#include "twcurve/tw_curve.hpp"
#include "twcurve/function_field.hpp"
#include "twcurve/scaling.hpp"
#include "twcurve/expression_parser.hpp"
#include "twcurve/jobspec.hpp"
