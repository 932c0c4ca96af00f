// Copyright (C) 2026 The knnapt authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance
// with the License. You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace knnapt {

/// Static chunking of [0, n) across `threads` workers; fn(i) is called once
/// per index. Each item must write only to its own output slot — results are
/// then independent of scheduling, which is what keeps file outputs
/// byte-identical across thread counts. First exception wins and is rethrown.
void
parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn);

}  // namespace knnapt
