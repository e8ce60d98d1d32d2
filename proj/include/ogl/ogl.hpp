#pragma once

// Everything at once: expressions, classifier, integrator, growth, catalog, reports.

#include "ogl/catalog.hpp"
#include "ogl/classifier.hpp"
#include "ogl/commands.hpp"
#include "ogl/equation.hpp"
#include "ogl/expr.hpp"
#include "ogl/growth.hpp"
#include "ogl/indicator.hpp"
#include "ogl/integrator.hpp"
#include "ogl/liouville.hpp"
#include "ogl/log_polar.hpp"
#include "ogl/ode_checks.hpp"
#include "ogl/parser.hpp"
#include "ogl/polynomial.hpp"
#include "ogl/report.hpp"
