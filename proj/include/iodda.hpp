// Copyright 2026 The IODDA Authors
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

#pragma once

#include "iodda/correlation.hpp"
#include "iodda/decision_table.hpp"
#include "iodda/discovery.hpp"
#include "iodda/docel.hpp"
#include "iodda/docel_io.hpp"
#include "iodda/export.hpp"
#include "iodda/generators.hpp"
#include "iodda/pipeline.hpp"
#include "iodda/ml/forest.hpp"
#include "iodda/ml/rules.hpp"
#include "iodda/shift_index.hpp"

