// Copyright 2026 The jccat Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JCCAT_JCCAT_HPP
#define JCCAT_JCCAT_HPP

#include "jccat/catalyst.hpp"
#include "jccat/config.hpp"
#include "jccat/errors.hpp"
#include "jccat/hilbert.hpp"
#include "jccat/jc_core.hpp"
#include "jccat/lindblad.hpp"
#include "jccat/linalg.hpp"
#include "jccat/parallel.hpp"
#include "jccat/protocols.hpp"
#include "jccat/run.hpp"
#include "jccat/version.hpp"
#include "jccat/witness.hpp"

#endif  // JCCAT_JCCAT_HPP
