use crate::error::Error;

/// Iteration cap for [`find_root`].
pub const MAX_ITERATIONS: usize = 200;

/// An interval `[lo, hi]` whose endpoint values enclose a sign change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends. The result may still violate the sign
    /// invariant; [`find_root`] reports that as `NoSignChange`.
    pub fn new<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Self {
        Bracket {
            lo,
            hi,
            f_lo: f(lo),
            f_hi: f(hi),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.lo < self.hi && self.f_lo * self.f_hi <= 0.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Brent's method: bisection safeguarded inverse quadratic interpolation.
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol_abs: f64) -> Result<f64, Error> {
    find_root_with(f, bracket, tol_abs, MAX_ITERATIONS)
}

pub fn find_root_with<F: Fn(f64) -> f64>(
    f: F,
    bracket: Bracket,
    tol_abs: f64,
    max_iter: usize,
) -> Result<f64, Error> {
    if !bracket.is_valid() || !(tol_abs > 0.0) {
        return Err(Error::NoSignChange {
            lo: bracket.lo,
            hi: bracket.hi,
            f_lo: bracket.f_lo,
            f_hi: bracket.f_hi,
        });
    }
    if bracket.f_lo == 0.0 {
        return Ok(bracket.lo);
    }
    if bracket.f_hi == 0.0 {
        return Ok(bracket.hi);
    }

    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    let (mut c, mut fc) = (b, fb);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol_abs;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                // secant step
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
    }
    Err(Error::MaxIterations(max_iter))
}

/// Every cell of the uniform `n`-point grid on `[lo, hi]` across which `f`
/// changes sign, in ascending order. A grid value that is exactly zero is
/// reported once, in the cell to its left.
pub fn bracket_scan<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Vec<Bracket> {
    let mut out = Vec::new();
    if !(lo < hi) || n < 2 {
        return out;
    }
    let step = (hi - lo) / (n - 1) as f64;
    let grid = |i: usize| {
        if i == n - 1 {
            hi
        } else {
            lo + step * i as f64
        }
    };
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..n {
        let x1 = grid(i);
        let f1 = f(x1);
        let crosses = (f0 < 0.0 && f1 > 0.0)
            || (f0 > 0.0 && f1 < 0.0)
            || (f1 == 0.0 && f0 != 0.0)
            || (i == 1 && f0 == 0.0);
        if crosses && f0.is_finite() && f1.is_finite() {
            out.push(Bracket {
                lo: x0,
                hi: x1,
                f_lo: f0,
                f_hi: f1,
            });
        }
        x0 = x1;
        f0 = f1;
    }
    out
}
