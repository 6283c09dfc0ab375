#pragma once

namespace edsw::config {

// Performance knob: cancel polynomial GCDs when normalizing rational
// expressions. Semantics (zero tests, equality) never depend on it.
bool gcd_reduction();
void set_gcd_reduction(bool on);

}  // namespace edsw::config
