// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "algexpr/check.hpp"
#include "algexpr/error.hpp"
#include "algexpr/evaluate.hpp"
#include "algexpr/expr.hpp"
#include "algexpr/framework.hpp"
#include "algexpr/generate.hpp"
#include "algexpr/graph.hpp"
#include "algexpr/normalize.hpp"
#include "algexpr/oracle.hpp"
#include "algexpr/params.hpp"
#include "algexpr/parse.hpp"
#include "algexpr/paths.hpp"
#include "algexpr/print.hpp"
#include "algexpr/shortest_paths.hpp"
#include "algexpr/triangles.hpp"
#include "algexpr/validate.hpp"
#include "algexpr/weights_io.hpp"
