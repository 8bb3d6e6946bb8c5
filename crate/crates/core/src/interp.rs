//! Cubic Hermite interpolation on a single step and bracketed root refinement.

/// Cubic through `(t0, y0)`, `(t1, y1)` with slopes `d0`, `d1`.
#[derive(Debug, Clone, Copy)]
pub struct Hermite {
    pub t0: f64,
    pub t1: f64,
    pub y0: f64,
    pub y1: f64,
    pub d0: f64,
    pub d1: f64,
}

impl Hermite {
    pub fn value(&self, t: f64) -> f64 {
        let h = self.t1 - self.t0;
        let s = (t - self.t0) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.y0 + h10 * h * self.d0 + h01 * self.y1 + h11 * h * self.d1
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let h = self.t1 - self.t0;
        let s = (t - self.t0) / h;
        let s2 = s * s;
        let h00 = 6.0 * s2 - 6.0 * s;
        let h10 = 3.0 * s2 - 4.0 * s + 1.0;
        let h01 = -6.0 * s2 + 6.0 * s;
        let h11 = 3.0 * s2 - 2.0 * s;
        (h00 * self.y0 + h01 * self.y1) / h + h10 * self.d0 + h11 * self.d1
    }

    /// Time in `[t0, t1]` where the cubic equals `level`; the endpoint values
    /// must bracket it. Bisection down to adjacent floats.
    pub fn solve(&self, level: f64) -> f64 {
        let (mut lo, mut hi) = (self.t0, self.t1);
        let f_lo = self.y0 - level;
        if f_lo == 0.0 {
            return lo;
        }
        if self.y1 - level == 0.0 {
            return hi;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let f_mid = self.value(mid) - level;
            if f_mid == 0.0 {
                return mid;
            }
            if (f_mid < 0.0) == (f_lo < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}
