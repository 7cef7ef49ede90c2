// Copyright 2026 The lpplab Authors.
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

#ifndef LPPLAB_HUGE_ALLOCATOR_HPP_
#define LPPLAB_HUGE_ALLOCATOR_HPP_

#include <cstddef>
#include <new>

namespace lpp {

// Allocator for large sweep buffers. Blocks of at least 2 MiB are aligned
// to 2 MiB and marked as transparent huge page candidates, so filling a
// fresh buffer takes a few hundred page faults instead of tens of
// thousands. Smaller blocks go through plain operator new.
namespace detail {
void* huge_allocate(std::size_t bytes);
void huge_deallocate(void* p, std::size_t bytes) noexcept;
}  // namespace detail

template <class T>
struct HugeAllocator {
  using value_type = T;

  HugeAllocator() = default;
  template <class U>
  HugeAllocator(const HugeAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    if (n > static_cast<std::size_t>(-1) / sizeof(T)) throw std::bad_array_new_length();
    return static_cast<T*>(detail::huge_allocate(n * sizeof(T)));
  }
  void deallocate(T* p, std::size_t n) noexcept {
    detail::huge_deallocate(p, n * sizeof(T));
  }

  template <class U>
  bool operator==(const HugeAllocator<U>&) const noexcept {
    return true;
  }
};

}  // namespace lpp

#endif  // LPPLAB_HUGE_ALLOCATOR_HPP_
