//! Bessel, modified Bessel and Riccati-Bessel functions of integer order.
//!
//! `J_n` is evaluated for every order at once by Miller's backward
//! recurrence normalised with `J_0 + 2 sum J_2k = 1`. `K_0`/`K_1` come from
//! Temme's series (x < 2) or Steed's continued fraction (x >= 2), higher
//! orders from the (stable) forward recurrence. The Riccati function
//! `psi_n(x) = x j_n(x)` uses a backward recurrence normalised against
//! `psi_0` or `psi_1`; `chi_n(x) = -x y_n(x)` uses the forward recurrence.

use crate::error::Error;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const RESCALE_AT: f64 = 1e250;

fn miller_start(n: usize, x: f64) -> usize {
    let top = n.max(x.ceil() as usize);
    let m = top + 24 + (6.0 * (top as f64).sqrt()) as usize;
    m + (m & 1)
}

/// `J_0(x) ..= J_nmax(x)` for `x >= 0`.
fn bessel_j_seq_nonneg(nmax: usize, x: f64) -> Vec<f64> {
    let mut vals = vec![0.0; nmax + 1];
    if x == 0.0 {
        vals[0] = 1.0;
        return vals;
    }
    let m = miller_start(nmax, x);
    let two_over_x = 2.0 / x;
    let mut j_next = 0.0;
    let mut j = 1e-30;
    let mut sum = 0.0;
    for k in (1..=m).rev() {
        if k <= nmax {
            vals[k] = j;
        }
        if k % 2 == 0 {
            sum += 2.0 * j;
        }
        let j_prev = k as f64 * two_over_x * j - j_next;
        j_next = j;
        j = j_prev;
        if j.abs() > RESCALE_AT {
            j /= RESCALE_AT;
            j_next /= RESCALE_AT;
            sum /= RESCALE_AT;
            for v in vals.iter_mut() {
                *v /= RESCALE_AT;
            }
        }
    }
    vals[0] = j;
    sum += j;
    for v in vals.iter_mut() {
        *v /= sum;
    }
    vals
}

/// `J_0(x) ..= J_nmax(x)` for any real `x`.
pub fn bessel_j_seq(nmax: usize, x: f64) -> Vec<f64> {
    let mut vals = bessel_j_seq_nonneg(nmax, x.abs());
    if x < 0.0 {
        for (k, v) in vals.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -*v;
            }
        }
    }
    vals
}

/// Bessel function of the first kind `J_n(x)`.
pub fn bessel_j(n: usize, x: f64) -> f64 {
    bessel_j_seq(n, x)[n]
}

/// `dJ_n/dx`.
pub fn bessel_j_prime(n: usize, x: f64) -> f64 {
    let v = bessel_j_seq(n + 1, x);
    if n == 0 {
        -v[1]
    } else {
        0.5 * (v[n - 1] - v[n + 1])
    }
}

/// `(e^x K_0(x), e^x K_1(x))` for `x > 0`.
fn bessel_k01_scaled(x: f64) -> (f64, f64) {
    if x < 2.0 {
        // Temme's series at order zero
        let half = 0.5 * x;
        let d = -half.ln();
        let mut ff = d - EULER_GAMMA;
        let mut sum = ff;
        let mut p = 0.5;
        let mut q = 0.5;
        let mut c = 1.0;
        let dd = half * half;
        let mut sum1 = p;
        for i in 1..500 {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi);
            c *= dd / fi;
            p /= fi;
            q /= fi;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * f64::EPSILON {
                break;
            }
        }
        let scale = x.exp();
        (sum * scale, sum1 * 2.0 / x * scale)
    } else {
        // Steed's continued fraction
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..10_000 {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < f64::EPSILON {
                break;
            }
        }
        h *= a1;
        let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() / s;
        let k1 = k0 * (x + 0.5 - h) / x;
        (k0, k1)
    }
}

fn check_positive(x: f64, what: &str) -> Result<(), Error> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!(
            "{what} requires x > 0, got {x}"
        )))
    }
}

/// `e^x K_n(x)`: the exponentially scaled modified Bessel function of the
/// second kind.
pub fn bessel_k_mod_scaled(n: usize, x: f64) -> Result<f64, Error> {
    check_positive(x, "bessel_k_mod")?;
    let (k0, k1) = bessel_k01_scaled(x);
    if n == 0 {
        return Ok(k0);
    }
    let (mut km, mut k) = (k0, k1);
    for i in 1..n {
        let kp = km + 2.0 * i as f64 / x * k;
        km = k;
        k = kp;
    }
    Ok(k)
}

/// Modified Bessel function of the second kind `K_n(x)`, `x > 0`.
pub fn bessel_k_mod(n: usize, x: f64) -> Result<f64, Error> {
    Ok(bessel_k_mod_scaled(n, x)? * (-x).exp())
}

/// `psi_0(x) ..= psi_nmax(x)` for `x > 0`.
fn riccati_psi_seq(nmax: usize, x: f64) -> Vec<f64> {
    let m = miller_start(nmax + 1, x);
    let mut vals = vec![0.0; nmax + 1];
    let mut p_next = 0.0;
    let mut p = 1e-30;
    // p holds psi_k on entry to iteration k
    let mut psi1 = 0.0;
    for k in (1..=m).rev() {
        if k <= nmax {
            vals[k] = p;
        }
        if k == 1 {
            psi1 = p;
        }
        let p_prev = (2 * k + 1) as f64 / x * p - p_next;
        p_next = p;
        p = p_prev;
        if p.abs() > RESCALE_AT {
            p /= RESCALE_AT;
            p_next /= RESCALE_AT;
            psi1 /= RESCALE_AT;
            for v in vals.iter_mut() {
                *v /= RESCALE_AT;
            }
        }
    }
    vals[0] = p;
    let (s, c) = x.sin_cos();
    let true0 = s;
    let true1 = s / x - c;
    let scale = if true0.abs() >= true1.abs() {
        true0 / p
    } else {
        true1 / psi1
    };
    for v in vals.iter_mut() {
        *v *= scale;
    }
    vals
}

/// Riccati-Bessel `psi_nu(x) = x j_nu(x)` and its derivative.
pub fn riccati_psi(nu: usize, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, if nu == 0 { 1.0 } else { 0.0 });
    }
    if x < 0.0 {
        let (v, d) = riccati_psi(nu, -x);
        return if nu.is_multiple_of(2) {
            (-v, d)
        } else {
            (v, -d)
        };
    }
    if nu == 0 {
        return (x.sin(), x.cos());
    }
    let seq = riccati_psi_seq(nu, x);
    let v = seq[nu];
    (v, seq[nu - 1] - nu as f64 * v / x)
}

/// Riccati-Bessel `chi_nu(x) = -x y_nu(x)` and its derivative, `x > 0`.
pub fn riccati_chi(nu: usize, x: f64) -> Result<(f64, f64), Error> {
    check_positive(x, "riccati_chi")?;
    let (s, c) = x.sin_cos();
    if nu == 0 {
        return Ok((c, -s));
    }
    let mut prev = c;
    let mut cur = c / x + s;
    for k in 1..nu {
        let next = (2 * k + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok((cur, prev - nu as f64 * cur / x))
}
