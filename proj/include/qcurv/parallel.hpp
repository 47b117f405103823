// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace qcurv {

/// Worker cap from QCURV_THREADS: unset -> 1 (sequential), "0" -> hardware
/// concurrency, k -> k threads.
inline unsigned worker_count() {
    const char* env = std::getenv("QCURV_THREADS");
    if (!env) return 1;
    long v = std::atol(env);
    if (v < 0) return 1;
    if (v == 0) {
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1;
    }
    return static_cast<unsigned>(v);
}

/// Runs fn(i) for i in [0, count); results are written by the callee into
/// preassigned slots, so the assembly is deterministic regardless of the
/// schedule. The first exception, if any, is rethrown.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         unsigned threads = 0) {
    if (threads == 0) threads = worker_count();
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(threads);
    std::size_t nthreads = std::min<std::size_t>(threads, count);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t i = t; i < count; i += nthreads) fn(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace qcurv
