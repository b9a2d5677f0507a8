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

#ifndef JCCAT_VERSION_HPP
#define JCCAT_VERSION_HPP

namespace jccat {

inline constexpr const char* kVersion = "1.0.0";
// Revision of the config keys and CSV schemas.
inline constexpr int kInterfaceRevision = 1;

}  // namespace jccat

#endif  // JCCAT_VERSION_HPP
