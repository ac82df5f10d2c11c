#pragma once

#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace slicelab {

// Value-semantic owner of an mpfr_t. Arithmetic is done through the raw
// handle with an explicit rounding mode at each call site.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 128) { mpfr_init2(v_, precision); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }
  // Scientific notation with `digits` significant digits, rounded in the
  // given direction so that printed bounds stay valid bounds.
  std::string to_string(int digits, mpfr_rnd_t rnd) const;

  int compare(const mpz_class& z) const { return mpfr_cmp_z(v_, z.get_mpz_t()); }
  int compare(double d) const { return mpfr_cmp_d(v_, d); }
  int compare(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }

 private:
  mpfr_t v_;
};

inline std::string BigFloat::to_string(int digits, mpfr_rnd_t rnd) const {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*R*e", digits - 1, rnd, v_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

}  // namespace slicelab
