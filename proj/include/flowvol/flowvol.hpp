/*
 * Copyright 2026 The flowvol Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Umbrella header.

#pragma once

#include "flowvol/common.hpp"
#include "flowvol/counters.hpp"
#include "flowvol/dwpss.hpp"
#include "flowvol/estimator.hpp"
#include "flowvol/fast.hpp"
#include "flowvol/hhh.hpp"
#include "flowvol/sketches.hpp"
#include "flowvol/sos.hpp"
#include "flowvol/stream.hpp"
#include "flowvol/stream_summary.hpp"
#include "flowvol/trace_io.hpp"
#include "flowvol/wfast.hpp"
