// Copyright 2026 jt2 contributors
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

#include "jt2/canonical.hpp"
#include "jt2/classify.hpp"
#include "jt2/effects.hpp"
#include "jt2/formspec.hpp"
#include "jt2/linearize.hpp"
#include "jt2/mat2.hpp"
#include "jt2/proofcheck.hpp"
#include "jt2/sampling.hpp"
#include "jt2/spin.hpp"
