// Copyright 2026 The leslie-game Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the library (everything except the CLI).

#pragma once

#include "leslie/errors.hpp"
#include "leslie/game.hpp"
#include "leslie/leslie.hpp"
#include "leslie/report.hpp"
#include "leslie/scenario.hpp"
#include "leslie/scenario_io.hpp"
