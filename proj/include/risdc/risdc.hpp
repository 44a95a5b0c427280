// SPDX-License-Identifier: Apache-2.0
//
// risdc - RIS passive beamforming by cascaded-channel decoupling
// Copyright (C) 2026 The risdc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISDC_RISDC_HPP
#define RISDC_RISDC_HPP

#include "channel.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "linalg.hpp"
#include "matrix_json.hpp"
#include "random.hpp"
#include "regulation.hpp"
#include "solve.hpp"
#include "solvers.hpp"
#include "sweep.hpp"

#endif
