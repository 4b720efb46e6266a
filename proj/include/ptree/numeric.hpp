#pragma once

#include <cmath>
#include <type_traits>

#include <gmpxx.h>

namespace ptree {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void merge(const CompensatedSum& o) {
        add(o.sum_);
        add(o.comp_);
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Exact for rationals, compensated for doubles.
template <class Scalar>
class Accumulator {
public:
    void add(const Scalar& x) {
        if constexpr (std::is_same_v<Scalar, double>) c_.add(x);
        else s_ += x;
    }
    Scalar value() const {
        if constexpr (std::is_same_v<Scalar, double>) return c_.value();
        else return s_;
    }

private:
    CompensatedSum c_;
    Scalar s_ = 0;
};

template <class Scalar>
Scalar ipow(const Scalar& base, unsigned long e) {
    Scalar r = 1;
    Scalar b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline double to_double(double x) { return x; }
inline double to_double(const mpq_class& x) { return x.get_d(); }

}  // namespace ptree
