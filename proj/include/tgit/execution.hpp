#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace tgit {

/// How per-face and per-cell loops run. Results never depend on the choice.
enum class Execution { serial, parallel };

namespace detail {

/// Calls body(i) for i in [0, count). Exceptions are rethrown on the calling
/// thread, lowest index first.
template <class Body>
void for_each_index(std::size_t count, Execution ex, Body&& body) {
    if (ex == Execution::serial || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    const long long n = static_cast<long long>(count);
#if defined(TGIT_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

}  // namespace tgit
