#include "moelab/interval.hpp"

#include <algorithm>
#include <sstream>

#include "moelab/errors.hpp"

namespace moelab {

void IntervalReal::init(mpfr_prec_t precision) {
  if (precision < MPFR_PREC_MIN || precision > 1 << 24)
    throw DomainError("unreasonable interval precision: " + std::to_string(precision));
  precision_ = precision;
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

IntervalReal::IntervalReal(mpfr_prec_t precision) { init(precision); }

IntervalReal::IntervalReal(const IntervalReal& other) {
  init(other.precision_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

IntervalReal::IntervalReal(IntervalReal&& other) noexcept {
  precision_ = other.precision_;
  mpfr_init2(lo_, other.precision_);
  mpfr_init2(hi_, other.precision_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

IntervalReal& IntervalReal::operator=(const IntervalReal& other) {
  if (this == &other) return *this;
  mpfr_set_prec(lo_, other.precision_);
  mpfr_set_prec(hi_, other.precision_);
  precision_ = other.precision_;
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

IntervalReal& IntervalReal::operator=(IntervalReal&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  std::swap(precision_, other.precision_);
  return *this;
}

IntervalReal::~IntervalReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

IntervalReal IntervalReal::exact(long value, mpfr_prec_t precision) {
  IntervalReal out(precision);
  mpfr_set_si(out.lo_, value, MPFR_RNDD);
  mpfr_set_si(out.hi_, value, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::exact(const BigInt& value, mpfr_prec_t precision) {
  IntervalReal out(precision);
  // Directed rounding keeps the enclosure honest even when `value` carries
  // more bits than the working precision (e.g. 10^84 at 64 bits).
  mpfr_set_z(out.lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_, value.get_mpz_t(), MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::exact(double value, mpfr_prec_t precision) {
  IntervalReal out(precision);
  mpfr_set_d(out.lo_, value, MPFR_RNDD);
  mpfr_set_d(out.hi_, value, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::from_decimal(const std::string& text, mpfr_prec_t precision) {
  IntervalReal out(precision);
  if (mpfr_set_str(out.lo_, text.c_str(), 10, MPFR_RNDD) != 0)
    throw ValidationError("unparseable decimal literal: " + text);
  mpfr_set_str(out.hi_, text.c_str(), 10, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::hull(double lo, double hi, mpfr_prec_t precision) {
  if (!(lo <= hi)) throw DomainError("hull endpoints out of order");
  IntervalReal out(precision);
  mpfr_set_d(out.lo_, lo, MPFR_RNDD);
  mpfr_set_d(out.hi_, hi, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::max(const IntervalReal& a, const IntervalReal& b) {
  IntervalReal out(std::max(a.precision_, b.precision_));
  mpfr_max(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::operator+(const IntervalReal& o) const {
  IntervalReal out(std::max(precision_, o.precision_));
  mpfr_add(out.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, hi_, o.hi_, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::operator-(const IntervalReal& o) const {
  IntervalReal out(std::max(precision_, o.precision_));
  mpfr_sub(out.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, hi_, o.lo_, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::operator*(const IntervalReal& o) const {
  IntervalReal out(std::max(precision_, o.precision_));
  mpfr_t cand;
  mpfr_init2(cand, out.precision_);
  bool first = true;
  const mpfr_srcptr as[2] = {lo_, hi_};
  const mpfr_srcptr bs[2] = {o.lo_, o.hi_};
  for (auto a : as)
    for (auto b : bs) {
      mpfr_mul(cand, a, b, MPFR_RNDD);
      if (first || mpfr_cmp(cand, out.lo_) < 0) mpfr_set(out.lo_, cand, MPFR_RNDD);
      mpfr_mul(cand, a, b, MPFR_RNDU);
      if (first || mpfr_cmp(cand, out.hi_) > 0) mpfr_set(out.hi_, cand, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(cand);
  return out;
}

IntervalReal IntervalReal::operator/(const IntervalReal& o) const {
  if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0)
    throw DomainError("interval division by an interval containing zero");
  IntervalReal out(std::max(precision_, o.precision_));
  mpfr_t cand;
  mpfr_init2(cand, out.precision_);
  bool first = true;
  const mpfr_srcptr as[2] = {lo_, hi_};
  const mpfr_srcptr bs[2] = {o.lo_, o.hi_};
  for (auto a : as)
    for (auto b : bs) {
      mpfr_div(cand, a, b, MPFR_RNDD);
      if (first || mpfr_cmp(cand, out.lo_) < 0) mpfr_set(out.lo_, cand, MPFR_RNDD);
      mpfr_div(cand, a, b, MPFR_RNDU);
      if (first || mpfr_cmp(cand, out.hi_) > 0) mpfr_set(out.hi_, cand, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(cand);
  return out;
}

IntervalReal IntervalReal::operator-() const {
  IntervalReal out(precision_);
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw DomainError("sqrt of an interval reaching below zero");
  IntervalReal out(precision_);
  mpfr_sqrt(out.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, hi_, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::ln() const {
  if (mpfr_sgn(lo_) <= 0) throw DomainError("log of an interval reaching <= 0");
  IntervalReal out(precision_);
  mpfr_log(out.lo_, lo_, MPFR_RNDD);
  mpfr_log(out.hi_, hi_, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::log1p() const {
  if (mpfr_cmp_si(lo_, -1) <= 0) throw DomainError("log1p of an interval reaching <= -1");
  IntervalReal out(precision_);
  mpfr_log1p(out.lo_, lo_, MPFR_RNDD);
  mpfr_log1p(out.hi_, hi_, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::exp() const {
  IntervalReal out(precision_);
  mpfr_exp(out.lo_, lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, hi_, MPFR_RNDU);
  return out;
}

IntervalReal IntervalReal::expm1() const {
  IntervalReal out(precision_);
  mpfr_expm1(out.lo_, lo_, MPFR_RNDD);
  mpfr_expm1(out.hi_, hi_, MPFR_RNDU);
  return out;
}

bool IntervalReal::strictly_less(const IntervalReal& o) const {
  return mpfr_cmp(hi_, o.lo_) < 0;
}

bool IntervalReal::certainly_leq(const IntervalReal& o) const {
  return mpfr_cmp(hi_, o.lo_) <= 0;
}

bool IntervalReal::strictly_greater(const IntervalReal& o) const {
  return mpfr_cmp(lo_, o.hi_) > 0;
}

bool IntervalReal::contains(double x) const {
  return mpfr_cmp_d(lo_, x) <= 0 && mpfr_cmp_d(hi_, x) >= 0;
}

bool IntervalReal::is_positive() const { return mpfr_sgn(lo_) > 0; }

double IntervalReal::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double IntervalReal::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double IntervalReal::midpoint() const {
  mpfr_t mid;
  mpfr_init2(mid, precision_ + 1);
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  const double out = mpfr_get_d(mid, MPFR_RNDN);
  mpfr_clear(mid);
  return out;
}

double IntervalReal::width() const {
  mpfr_t w;
  mpfr_init2(w, precision_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const double out = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return out;
}

namespace {
std::string format_endpoint(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*R*g", digits, rnd, x);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}
}  // namespace

std::string IntervalReal::to_string(int digits) const {
  return "[" + format_endpoint(lo_, digits, MPFR_RNDD) + ", " +
         format_endpoint(hi_, digits, MPFR_RNDU) + "]";
}

}  // namespace moelab
