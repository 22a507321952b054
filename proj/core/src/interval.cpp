#include "partlab/interval.hpp"

#include <algorithm>
#include <cassert>

#include "partlab/errors.hpp"

namespace partlab {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec_);
        mpfr_set_prec(hi_, other.prec_);
        prec_ = other.prec_;
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        std::swap(prec_, other.prec_);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::of_int(const Int& v, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_set_z(out.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(out.hi_, v.get_mpz_t(), MPFR_RNDU);
    return out;
}

Interval Interval::of_rational(const Rational& q, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_set_q(out.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi_, q.get_mpq_t(), MPFR_RNDU);
    return out;
}

Interval Interval::of_ulong(unsigned long v, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_set_ui(out.lo_, v, MPFR_RNDD);
    mpfr_set_ui(out.hi_, v, MPFR_RNDU);
    return out;
}

Interval Interval::of_double(double v, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_set_d(out.lo_, v, MPFR_RNDD);
    mpfr_set_d(out.hi_, v, MPFR_RNDU);
    return out;
}

Interval Interval::pi(mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_const_pi(out.lo_, MPFR_RNDD);
    mpfr_const_pi(out.hi_, MPFR_RNDU);
    return out;
}

Interval Interval::log_of_2(mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_const_log2(out.lo_, MPFR_RNDD);
    mpfr_const_log2(out.hi_, MPFR_RNDU);
    return out;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

Interval Interval::result_for(const Interval& o) const {
    return Interval(std::max(prec_, o.prec_));
}

Interval Interval::operator+(const Interval& o) const {
    Interval out = result_for(o);
    mpfr_add(out.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, hi_, o.hi_, MPFR_RNDU);
    return out;
}

Interval Interval::operator-(const Interval& o) const {
    Interval out = result_for(o);
    mpfr_sub(out.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, hi_, o.lo_, MPFR_RNDU);
    return out;
}

Interval Interval::operator*(const Interval& o) const {
    // Min/max over the four endpoint products, each with outward rounding.
    Interval out = result_for(o);
    mpfr_t cand;
    mpfr_init2(cand, out.prec_);
    mpfr_mul(out.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(cand, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(out.lo_, out.lo_, cand, MPFR_RNDD);
    mpfr_mul(cand, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(out.lo_, out.lo_, cand, MPFR_RNDD);
    mpfr_mul(cand, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(out.lo_, out.lo_, cand, MPFR_RNDD);

    mpfr_mul(out.hi_, lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(cand, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(out.hi_, out.hi_, cand, MPFR_RNDU);
    mpfr_mul(cand, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(out.hi_, out.hi_, cand, MPFR_RNDU);
    mpfr_mul(cand, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(out.hi_, out.hi_, cand, MPFR_RNDU);
    mpfr_clear(cand);
    return out;
}

Interval Interval::operator/(const Interval& o) const {
    if (!(mpfr_sgn(o.lo_) > 0))
        throw DomainError("interval division requires a positive divisor");
    Interval out = result_for(o);
    mpfr_t cand;
    mpfr_init2(cand, out.prec_);
    mpfr_div(out.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_div(cand, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(out.lo_, out.lo_, cand, MPFR_RNDD);

    mpfr_div(out.hi_, hi_, o.lo_, MPFR_RNDU);
    mpfr_div(cand, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(out.hi_, out.hi_, cand, MPFR_RNDU);
    mpfr_clear(cand);
    return out;
}

Interval Interval::operator-() const {
    Interval out(prec_);
    mpfr_neg(out.lo_, hi_, MPFR_RNDD);
    mpfr_neg(out.hi_, lo_, MPFR_RNDU);
    return out;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw DomainError("interval sqrt of a negative lower bound");
    Interval out(prec_);
    mpfr_sqrt(out.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(out.hi_, hi_, MPFR_RNDU);
    return out;
}

Interval Interval::log2() const {
    if (!(mpfr_sgn(lo_) > 0)) throw DomainError("interval log2 needs lo > 0");
    Interval out(prec_);
    mpfr_log2(out.lo_, lo_, MPFR_RNDD);
    mpfr_log2(out.hi_, hi_, MPFR_RNDU);
    return out;
}

Interval Interval::ln() const {
    if (!(mpfr_sgn(lo_) > 0)) throw DomainError("interval ln needs lo > 0");
    Interval out(prec_);
    mpfr_log(out.lo_, lo_, MPFR_RNDD);
    mpfr_log(out.hi_, hi_, MPFR_RNDU);
    return out;
}

Interval Interval::exp2() const {
    Interval out(prec_);
    mpfr_exp2(out.lo_, lo_, MPFR_RNDD);
    mpfr_exp2(out.hi_, hi_, MPFR_RNDU);
    return out;
}

bool Interval::certainly_less(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
bool Interval::certainly_leq(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }
bool Interval::certainly_greater(const Interval& o) const { return mpfr_cmp(lo_, o.hi_) > 0; }
bool Interval::certainly_geq(const Interval& o) const { return mpfr_cmp(lo_, o.hi_) >= 0; }

bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }

double Interval::width() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const double out = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return out;
}

} // namespace partlab
