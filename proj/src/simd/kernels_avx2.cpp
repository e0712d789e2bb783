// Compiled with -mavx2 -mfma; only entered after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "fieldforge/simd/kernels.hpp"

namespace fieldforge::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d horner(__m256d x, const double* c, int n) {
  __m256d acc = _mm256_set1_pd(c[0]);
  for (int i = 1; i < n; ++i) acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(c[i]));
  return acc;
}

// Cephes rational approximation of log(1 + m) on [sqrt(1/2) - 1, sqrt(2) - 1] plus e ln 2.
// Valid for positive normal inputs.
inline __m256d log_pd(__m256d x) {
  static constexpr double kP[] = {1.01875663804580931796e-4, 4.97494994976747001425e-1,
                                  4.70579119878881725854e0,  1.44989225341610930846e1,
                                  1.79368678507819816313e1,  7.70838733755885391666e0};
  static constexpr double kQ[] = {1.0,
                                  1.12873587189167450590e1, 4.52279145837532221105e1,
                                  8.29875266912776603211e1, 7.11544750618563894466e1,
                                  2.31251620126765340583e1};
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i magic_i = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256d magic_d = _mm256_castsi256_pd(magic_i);
  const __m256i ebits = _mm256_srli_epi64(bits, 52);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(ebits, magic_i)), magic_d);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1022.0));

  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i half_bits = _mm256_set1_epi64x(0x3FE0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), half_bits));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d small = _mm256_cmp_pd(m, _mm256_set1_pd(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(small, one));
  m = _mm256_add_pd(_mm256_sub_pd(m, one), _mm256_and_pd(small, m));

  const __m256d z = _mm256_mul_pd(m, m);
  const __m256d p = horner(m, kP, 6);
  const __m256d q = horner(m, kQ, 6);
  __m256d y = _mm256_mul_pd(m, _mm256_div_pd(_mm256_mul_pd(z, p), q));
  y = _mm256_fmadd_pd(e, _mm256_set1_pd(-2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, y);
  __m256d r = _mm256_add_pd(m, y);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);
}

}  // namespace

void log4(const double* in, double* out) { _mm256_storeu_pd(out, log_pd(_mm256_loadu_pd(in))); }

Vec3 field_sum(const FieldSegments& s, const Vec3& p) {
  const std::size_t n = s.size();
  const std::size_t full = n - n % kLaneWidth;
  const __m256d px = _mm256_set1_pd(p.x);
  const __m256d py = _mm256_set1_pd(p.y);
  const __m256d pz = _mm256_set1_pd(p.z);
  __m256d sx = _mm256_setzero_pd();
  __m256d sy = _mm256_setzero_pd();
  __m256d sz = _mm256_setzero_pd();
  for (std::size_t i = 0; i < full; i += kLaneWidth) {
    const __m256d ax = _mm256_sub_pd(_mm256_loadu_pd(&s.ax[i]), px);
    const __m256d ay = _mm256_sub_pd(_mm256_loadu_pd(&s.ay[i]), py);
    const __m256d az = _mm256_sub_pd(_mm256_loadu_pd(&s.az[i]), pz);
    const __m256d bx = _mm256_sub_pd(_mm256_loadu_pd(&s.bx[i]), px);
    const __m256d by = _mm256_sub_pd(_mm256_loadu_pd(&s.by[i]), py);
    const __m256d bz = _mm256_sub_pd(_mm256_loadu_pd(&s.bz[i]), pz);
    const __m256d na = _mm256_sqrt_pd(_mm256_fmadd_pd(ax, ax, _mm256_fmadd_pd(ay, ay, _mm256_mul_pd(az, az))));
    const __m256d nb = _mm256_sqrt_pd(_mm256_fmadd_pd(bx, bx, _mm256_fmadd_pd(by, by, _mm256_mul_pd(bz, bz))));
    const __m256d nab = _mm256_mul_pd(na, nb);
    const __m256d ab = _mm256_fmadd_pd(ax, bx, _mm256_fmadd_pd(ay, by, _mm256_mul_pd(az, bz)));
    const __m256d f = _mm256_div_pd(_mm256_mul_pd(_mm256_loadu_pd(&s.scale[i]), _mm256_add_pd(na, nb)),
                                    _mm256_mul_pd(nab, _mm256_add_pd(nab, ab)));
    const __m256d cx = _mm256_fmsub_pd(ay, bz, _mm256_mul_pd(az, by));
    const __m256d cy = _mm256_fmsub_pd(az, bx, _mm256_mul_pd(ax, bz));
    const __m256d cz = _mm256_fmsub_pd(ax, by, _mm256_mul_pd(ay, bx));
    sx = _mm256_fmadd_pd(f, cx, sx);
    sy = _mm256_fmadd_pd(f, cy, sy);
    sz = _mm256_fmadd_pd(f, cz, sz);
  }
  Vec3 acc{hsum(sx), hsum(sy), hsum(sz)};
  if (full < n) {
    FieldSegments rest;
    for (std::size_t i = full; i < n; ++i) {
      rest.add({s.ax[i], s.ay[i], s.az[i]}, {s.bx[i], s.by[i], s.bz[i]}, s.scale[i]);
    }
    acc += scalar::field_sum(rest, p);
  }
  return acc;
}

double neumann_sum(const QuadratureNodes& q, const NeumannSegments& s, double reg2) {
  const std::size_t n = s.size();
  const std::size_t full = n - n % kLaneWidth;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d vreg2 = _mm256_set1_pd(reg2);
  __m256d total = zero;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const __m256d px = _mm256_set1_pd(q.px[k]);
    const __m256d py = _mm256_set1_pd(q.py[k]);
    const __m256d pz = _mm256_set1_pd(q.pz[k]);
    const __m256d qwx = _mm256_set1_pd(q.wx[k]);
    const __m256d qwy = _mm256_set1_pd(q.wy[k]);
    const __m256d qwz = _mm256_set1_pd(q.wz[k]);
    for (std::size_t i = 0; i < full; i += kLaneWidth) {
      const __m256d tx = _mm256_loadu_pd(&s.tx[i]);
      const __m256d ty = _mm256_loadu_pd(&s.ty[i]);
      const __m256d tz = _mm256_loadu_pd(&s.tz[i]);
      const __m256d wx = _mm256_sub_pd(px, _mm256_loadu_pd(&s.sx[i]));
      const __m256d wy = _mm256_sub_pd(py, _mm256_loadu_pd(&s.sy[i]));
      const __m256d wz = _mm256_sub_pd(pz, _mm256_loadu_pd(&s.sz[i]));
      const __m256d u = _mm256_fmadd_pd(wx, tx, _mm256_fmadd_pd(wy, ty, _mm256_mul_pd(wz, tz)));
      const __m256d ex = _mm256_fnmadd_pd(u, tx, wx);
      const __m256d ey = _mm256_fnmadd_pd(u, ty, wy);
      const __m256d ez = _mm256_fnmadd_pd(u, tz, wz);
      const __m256d r2 = _mm256_fmadd_pd(ex, ex, _mm256_fmadd_pd(ey, ey, _mm256_fmadd_pd(ez, ez, vreg2)));
      const __m256d a0 = _mm256_sub_pd(zero, u);
      const __m256d b0 = _mm256_sub_pd(_mm256_loadu_pd(&s.len[i]), u);
      const __m256d behind = _mm256_cmp_pd(b0, zero, _CMP_LE_OQ);
      const __m256d a = _mm256_blendv_pd(a0, _mm256_sub_pd(zero, b0), behind);
      const __m256d b = _mm256_blendv_pd(b0, _mm256_sub_pd(zero, a0), behind);
      const __m256d ha = _mm256_sqrt_pd(_mm256_fmadd_pd(a, a, r2));
      const __m256d hb = _mm256_sqrt_pd(_mm256_fmadd_pd(b, b, r2));
      const __m256d num = _mm256_add_pd(b, hb);
      const __m256d ahead = _mm256_cmp_pd(a, zero, _CMP_GE_OQ);
      const __m256d den = _mm256_blendv_pd(_mm256_div_pd(r2, _mm256_sub_pd(ha, a)), _mm256_add_pd(a, ha), ahead);
      const __m256d val = log_pd(_mm256_div_pd(num, den));
      const __m256d dt = _mm256_fmadd_pd(qwx, tx, _mm256_fmadd_pd(qwy, ty, _mm256_mul_pd(qwz, tz)));
      total = _mm256_fmadd_pd(_mm256_mul_pd(dt, _mm256_loadu_pd(&s.scale[i])), val, total);
    }
  }
  double result = hsum(total);
  if (full < n) {
    NeumannSegments rest;
    for (std::size_t i = full; i < n; ++i) {
      rest.sx.push_back(s.sx[i]);
      rest.sy.push_back(s.sy[i]);
      rest.sz.push_back(s.sz[i]);
      rest.tx.push_back(s.tx[i]);
      rest.ty.push_back(s.ty[i]);
      rest.tz.push_back(s.tz[i]);
      rest.len.push_back(s.len[i]);
      rest.scale.push_back(s.scale[i]);
    }
    result += scalar::neumann_sum(q, rest, reg2);
  }
  return result;
}

}  // namespace fieldforge::simd::avx2
