#pragma once

namespace mfsr {

/// Maps any integer index onto [0, n) by half-sample symmetric reflection
/// (..., 1, 0 | 0, 1, ..., n-1 | n-1, n-2, ...). The extension is periodic
/// with period 2n, so arbitrarily distant indices stay well defined.
constexpr int reflect(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

}  // namespace mfsr
