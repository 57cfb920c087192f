#pragma once

// Runs a callable on a thread with a large stack.  Traversals recurse once
// per term level, so deep terms need more than the default 8 MiB.

#include <pthread.h>

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <type_traits>

namespace strat {

inline constexpr std::size_t default_stack_bytes = std::size_t{4} << 30; // 4 GiB, reserved lazily

template <class F>
auto with_stack(std::size_t bytes, F&& fn) -> std::invoke_result_t<F&> {
  using R = std::invoke_result_t<F&>;
  struct Job {
    F* fn;
    std::exception_ptr error;
    std::conditional_t<std::is_void_v<R>, bool, std::optional<R>> result{};
  } job{&fn, nullptr};

  auto entry = [](void* p) -> void* {
    auto* j = static_cast<Job*>(p);
    try {
      if constexpr (std::is_void_v<R>)
        (*j->fn)();
      else
        j->result.emplace((*j->fn)());
    } catch (...) {
      j->error = std::current_exception();
    }
    return nullptr;
  };

  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, entry, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) throw std::runtime_error("cannot start traversal thread");
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
  if constexpr (!std::is_void_v<R>) return std::move(*job.result);
}

} // namespace strat
