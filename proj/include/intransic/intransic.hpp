// Copyright 2026 The Intransic Authors.
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

#ifndef INTRANSIC_INTRANSIC_HPP_
#define INTRANSIC_INTRANSIC_HPP_

#include "intransic/checkpoint.hpp"
#include "intransic/common.hpp"
#include "intransic/dataset.hpp"
#include "intransic/dataset_io.hpp"
#include "intransic/evaluation.hpp"
#include "intransic/intransitivity.hpp"
#include "intransic/metrics.hpp"
#include "intransic/models.hpp"
#include "intransic/synth.hpp"
#include "intransic/training.hpp"

#endif  // INTRANSIC_INTRANSIC_HPP_
