// Copyright 2026 The Gallant Authors
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

#pragma once

#include "gallant/core.hpp"
#include "gallant/equilibrium.hpp"
#include "gallant/fast_solver.hpp"
#include "gallant/generator.hpp"
#include "gallant/group.hpp"
#include "gallant/orders.hpp"
#include "gallant/spec_format.hpp"
