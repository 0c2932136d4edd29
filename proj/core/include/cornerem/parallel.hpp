// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace cornerem {

// Worker count used by the library's parallel loops. 0 selects
// std::thread::hardware_concurrency(). Results never depend on this value:
// every loop writes into per-index slots that are reduced in index order.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(i) for i in [0, n). Exceptions thrown by body are rethrown on the
// calling thread (the first one by index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cornerem
