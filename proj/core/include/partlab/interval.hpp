#pragma once

#include <mpfr.h>

#include "partlab/rational.hpp"

namespace partlab {

inline constexpr mpfr_prec_t kBasePrecision = 96;

// Closed interval [lo, hi] with directed-rounding MPFR endpoints. Every
// operation returns an enclosure of the exact real result, so comparisons
// through certainly_* are rounding-safe.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = kBasePrecision);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    static Interval of_int(const Int& v, mpfr_prec_t prec = kBasePrecision);
    static Interval of_rational(const Rational& q, mpfr_prec_t prec = kBasePrecision);
    static Interval of_ulong(unsigned long v, mpfr_prec_t prec = kBasePrecision);
    static Interval of_double(double v, mpfr_prec_t prec = kBasePrecision);
    static Interval pi(mpfr_prec_t prec = kBasePrecision);
    static Interval log_of_2(mpfr_prec_t prec = kBasePrecision);  // natural log

    mpfr_prec_t precision() const { return prec_; }
    double lo_double() const;  // rounded down
    double hi_double() const;  // rounded up

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval operator/(const Interval& o) const;  // requires o.lo > 0
    Interval operator-() const;

    Interval sqrt() const;  // requires lo >= 0
    Interval log2() const;  // requires lo > 0
    Interval ln() const;    // requires lo > 0
    Interval exp2() const;

    bool certainly_less(const Interval& o) const;     // hi <  o.lo
    bool certainly_leq(const Interval& o) const;      // hi <= o.lo
    bool certainly_greater(const Interval& o) const;  // lo >  o.hi
    bool certainly_geq(const Interval& o) const;      // lo >= o.hi

    bool is_positive() const;  // lo > 0
    double width() const;      // hi - lo, rounded up

private:
    mpfr_t lo_;
    mpfr_t hi_;
    mpfr_prec_t prec_;

    Interval result_for(const Interval& o) const;  // blank at max precision
};

} // namespace partlab
