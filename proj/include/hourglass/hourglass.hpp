// Copyright 2026 The Hourglass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOURGLASS_HOURGLASS_HPP
#define HOURGLASS_HOURGLASS_HPP

#include "hourglass/bigcount.hpp"
#include "hourglass/centrality.hpp"
#include "hourglass/core.hpp"
#include "hourglass/error.hpp"
#include "hourglass/generative.hpp"
#include "hourglass/graph.hpp"
#include "hourglass/io.hpp"
#include "hourglass/metrics.hpp"
#include "hourglass/report.hpp"

#endif // HOURGLASS_HOURGLASS_HPP
