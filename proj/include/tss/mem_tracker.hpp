#pragma once

#include <atomic>
#include <cstddef>

// Allocator high-water instrumentation. A binary opts in by expanding
// TSS_MEM_TRACKER_DEFINE_GLOBALS in exactly one translation unit, which
// replaces global new/delete with counting versions. Library code only reads
// the counters; without the overrides they stay at 0.

namespace tss::mem {

inline std::atomic<std::size_t> g_current{0};
inline std::atomic<std::size_t> g_peak{0};

inline std::size_t current_bytes() { return g_current.load(std::memory_order_relaxed); }
inline std::size_t peak_bytes() { return g_peak.load(std::memory_order_relaxed); }

/// Resets the high-water mark to the current live size.
inline void reset_peak() {
  g_peak.store(g_current.load(std::memory_order_relaxed), std::memory_order_relaxed);
}

inline void on_alloc(std::size_t sz) {
  std::size_t cur = g_current.fetch_add(sz, std::memory_order_relaxed) + sz;
  std::size_t peak = g_peak.load(std::memory_order_relaxed);
  while (cur > peak &&
         !g_peak.compare_exchange_weak(peak, cur, std::memory_order_relaxed)) {
  }
}

inline void on_free(std::size_t sz) {
  g_current.fetch_sub(sz, std::memory_order_relaxed);
}

}  // namespace tss::mem

#define TSS_MEM_TRACKER_DEFINE_GLOBALS                                        \
  void* operator new(std::size_t sz) {                                        \
    void* p = std::malloc(sz ? sz : 1);                                       \
    if (!p) throw std::bad_alloc();                                           \
    ::tss::mem::on_alloc(malloc_usable_size(p));                              \
    return p;                                                                 \
  }                                                                           \
  void* operator new[](std::size_t sz) { return ::operator new(sz); }         \
  void operator delete(void* p) noexcept {                                    \
    if (!p) return;                                                           \
    ::tss::mem::on_free(malloc_usable_size(p));                               \
    std::free(p);                                                             \
  }                                                                           \
  void operator delete[](void* p) noexcept { ::operator delete(p); }          \
  void operator delete(void* p, std::size_t) noexcept { ::operator delete(p); } \
  void operator delete[](void* p, std::size_t) noexcept { ::operator delete(p); }
