use crate::error::Error;

/// Default number of RK4 steps across an integration interval.
pub const DEFAULT_ODE_STEPS: usize = 20_000;

/// State of a second-order radial ODE: abscissa, value and first derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeState {
    pub r: f64,
    pub y: f64,
    pub yp: f64,
}

impl OdeState {
    pub fn new(r: f64, y: f64, yp: f64) -> Self {
        OdeState { r, y, yp }
    }

    pub fn is_finite(&self) -> bool {
        self.r.is_finite() && self.y.is_finite() && self.yp.is_finite()
    }
}

#[inline]
fn rk4_step<F: Fn(f64, f64, f64) -> f64>(rhs: &F, s: OdeState, h: f64) -> OdeState {
    let OdeState { r, y, yp } = s;
    let k1y = yp;
    let k1p = rhs(r, y, yp);
    let hh = 0.5 * h;
    let k2y = yp + hh * k1p;
    let k2p = rhs(r + hh, y + hh * k1y, yp + hh * k1p);
    let k3y = yp + hh * k2p;
    let k3p = rhs(r + hh, y + hh * k2y, yp + hh * k2p);
    let k4y = yp + h * k3p;
    let k4p = rhs(r + h, y + h * k3y, yp + h * k3p);
    OdeState {
        r: r + h,
        y: y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
        yp: yp + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
    }
}

/// Classical fixed-step RK4 for `y'' = rhs(r, y, y')` from `start.r` to
/// `r_end`. The last step is shortened so the result lands on `r_end`.
pub fn integrate_radial<F: Fn(f64, f64, f64) -> f64>(
    rhs: F,
    start: OdeState,
    r_end: f64,
    step: f64,
) -> Result<OdeState, Error> {
    check_args(&start, r_end, step)?;
    let span = r_end - start.r;
    let full = (span / step).floor() as usize;
    let mut s = start;
    for i in 0..full {
        s = rk4_step(&rhs, s, step);
        // pin the abscissa to the grid so long runs do not drift
        s.r = start.r + step * (i + 1) as f64;
        if !s.is_finite() {
            return Err(Error::NonFinite(s.r));
        }
    }
    let rest = r_end - s.r;
    if rest > 0.0 {
        s = rk4_step(&rhs, s, rest);
    }
    s.r = r_end;
    if !s.is_finite() {
        return Err(Error::NonFinite(r_end));
    }
    Ok(s)
}

/// Like [`integrate_radial`], but records the state at every abscissa in
/// `samples` (ascending, all within `[start.r, r_end]`).
pub fn integrate_radial_trace<F: Fn(f64, f64, f64) -> f64>(
    rhs: F,
    start: OdeState,
    samples: &[f64],
    step: f64,
) -> Result<Vec<OdeState>, Error> {
    let mut out = Vec::with_capacity(samples.len());
    let mut s = start;
    for &r in samples {
        if r > s.r {
            s = integrate_radial(&rhs, s, r, step)?;
        }
        out.push(s);
    }
    Ok(out)
}

fn check_args(start: &OdeState, r_end: f64, step: f64) -> Result<(), Error> {
    if !(step > 0.0) {
        return Err(Error::DomainError(format!(
            "step must be positive, got {step}"
        )));
    }
    if !(start.r < r_end) {
        return Err(Error::DomainError(format!(
            "integration interval [{}, {}] is empty",
            start.r, r_end
        )));
    }
    if !start.is_finite() {
        return Err(Error::NonFinite(start.r));
    }
    Ok(())
}
