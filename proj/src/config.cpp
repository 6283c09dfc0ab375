#include "edsw/config.hpp"

#include <atomic>

namespace edsw::config {

namespace {
std::atomic<bool> g_gcd_reduction{true};
}

bool gcd_reduction() { return g_gcd_reduction.load(std::memory_order_relaxed); }
void set_gcd_reduction(bool on) { g_gcd_reduction.store(on, std::memory_order_relaxed); }

}  // namespace edsw::config
