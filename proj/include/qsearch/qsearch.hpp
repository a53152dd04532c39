// Copyright 2026 The qsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qsearch/algorithms.hpp"
#include "qsearch/circuit.hpp"
#include "qsearch/dense_matrix.hpp"
#include "qsearch/dense_oracle.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/executor.hpp"
#include "qsearch/gates.hpp"
#include "qsearch/noise.hpp"
#include "qsearch/noise_model.hpp"
#include "qsearch/qasm.hpp"
#include "qsearch/random_circuit.hpp"
#include "qsearch/report.hpp"
#include "qsearch/rng.hpp"
#include "qsearch/statevec.hpp"
#include "qsearch/verify.hpp"
