#include "edsw/rational.hpp"

#include "edsw/errors.hpp"

namespace edsw {

std::string rat_str(const Rat& r) {
    return r.str();
}

Rat rat_pow(const Rat& base, long e) {
    if (e == 0)
        return Rat(1);
    if (base == 0) {
        if (e > 0)
            return Rat(0);
        throw PoleError("0 raised to a non-positive power");
    }
    bool inv = e < 0;
    unsigned long n = static_cast<unsigned long>(inv ? -e : e);
    Int np = boost::multiprecision::pow(rat_num(base), static_cast<unsigned>(n));
    Int dp = boost::multiprecision::pow(rat_den(base), static_cast<unsigned>(n));
    return inv ? Rat(dp, np) : Rat(np, dp);
}

namespace {

// integer q-th root if exact
bool int_root(const Int& v, unsigned q, Int& out) {
    if (v < 0)
        return false;
    if (v == 0 || v == 1) {
        out = v;
        return true;
    }
    // bisection on [1, v]
    Int lo = 1, hi = v;
    while (lo <= hi) {
        Int mid = (lo + hi) / 2;
        Int p = boost::multiprecision::pow(mid, q);
        if (p == v) {
            out = mid;
            return true;
        }
        if (p < v)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return false;
}

}  // namespace

bool try_exact_root(const Rat& base, unsigned q, Rat& out) {
    if (q == 0)
        return false;
    if (base < 0)
        return false;
    Int rn, rd;
    if (!int_root(rat_num(base), q, rn) || !int_root(rat_den(base), q, rd))
        return false;
    out = Rat(rn, rd);
    return true;
}

int rat_cmp(const Rat& a, const Rat& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

double rat_to_double(const Rat& r) {
    return r.convert_to<double>();
}

}  // namespace edsw
