/*
 * Copyright 2026 The decdirac Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <decdirac/builtin_cases.hpp>
#include <decdirac/cochain.hpp>
#include <decdirac/convergence.hpp>
#include <decdirac/dual.hpp>
#include <decdirac/error.hpp>
#include <decdirac/fields.hpp>
#include <decdirac/geometry.hpp>
#include <decdirac/mesh.hpp>
#include <decdirac/mesh_io.hpp>
#include <decdirac/quadrature.hpp>
#include <decdirac/solver.hpp>
#include <decdirac/svg_plot.hpp>
