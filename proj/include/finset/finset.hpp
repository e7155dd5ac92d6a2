/*
 * Copyright 2026 The finset Authors
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

#include "finset/analysis/constant.hpp"
#include "finset/analysis/obstruction.hpp"
#include "finset/analysis/paths.hpp"
#include "finset/error.hpp"
#include "finset/fset.hpp"
#include "finset/generators.hpp"
#include "finset/hausdorff.hpp"
#include "finset/io.hpp"
#include "finset/line.hpp"
#include "finset/metric_space.hpp"
#include "finset/transforms.hpp"
#include "finset/ultra.hpp"
