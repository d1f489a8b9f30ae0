#include "tracekit/util/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace tracekit {
namespace {

int initial_threads() {
    if (const char* env = std::getenv("TRACEKIT_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (...) {
        }
    }
    return 1;
}

std::atomic<int>& threads() {
    static std::atomic<int> n{initial_threads()};
    return n;
}

}  // namespace

int thread_count() { return threads().load(); }

void set_thread_count(int n) { threads().store(n < 1 ? 1 : n); }

}  // namespace tracekit
