#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace edsw {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

std::string rat_str(const Rat& r);

// Exact r^e for integer e (e < 0 inverts; zero base with e <= 0 is an error).
Rat rat_pow(const Rat& base, long e);

// Exact q-th root if the rational is a perfect q-th power.
bool try_exact_root(const Rat& base, unsigned q, Rat& out);

// -1 / 0 / +1 three-way comparison.
int rat_cmp(const Rat& a, const Rat& b);

double rat_to_double(const Rat& r);

}  // namespace edsw
