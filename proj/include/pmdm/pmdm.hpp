// Copyright 2026 The pmdm Authors
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

// Everything except the JSON helpers in pmdm/io.hpp.

#ifndef PMDM_PMDM_HPP_
#define PMDM_PMDM_HPP_

#include "pmdm/bench.hpp"
#include "pmdm/core.hpp"
#include "pmdm/errors.hpp"
#include "pmdm/exact.hpp"
#include "pmdm/heuristic.hpp"
#include "pmdm/hypergraph.hpp"
#include "pmdm/index.hpp"
#include "pmdm/reductions.hpp"

#endif  // PMDM_PMDM_HPP_
