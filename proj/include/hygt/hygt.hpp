/*
Copyright 2026 The hygt authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

/// Umbrella header for the whole library.

#pragma once

#include "hygt/bundle.hpp"
#include "hygt/dataset.hpp"
#include "hygt/errors.hpp"
#include "hygt/evaluation.hpp"
#include "hygt/fixedpoint.hpp"
#include "hygt/givens.hpp"
#include "hygt/hypercube.hpp"
#include "hygt/io.hpp"
#include "hygt/matrix.hpp"
#include "hygt/model.hpp"
#include "hygt/optimizer.hpp"
#include "hygt/rng.hpp"
#include "hygt/statistics.hpp"
#include "hygt/transform.hpp"
