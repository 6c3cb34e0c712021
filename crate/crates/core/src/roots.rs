//! Derivative-free root finding for monotone scalar functions.

/// Why a root search gave up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootError {
    /// `f(lo)` and `f(hi)` have the same strict sign.
    NoSignChange { lo: f64, hi: f64 },
    /// Geometric expansion reached its limit without a sign change; `at` is
    /// the last point probed in the direction of the root.
    BracketExhausted { at: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub evaluations: usize,
}

/// Brent's method on a bracket `[lo, hi]` with a sign change.
///
/// Stops when `|f(x)| <= ftol` or the bracket has shrunk to a few ulps.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, ftol: f64) -> Result<Root, RootError> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    let mut evaluations = 2;
    if fa.abs() <= ftol {
        return Ok(Root { x: a, fx: fa, evaluations });
    }
    if fb.abs() <= ftol {
        return Ok(Root { x: b, fx: fb, evaluations });
    }
    if (fa > 0.0) == (fb > 0.0) {
        return Err(RootError::NoSignChange { lo, hi });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    loop {
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
        let tol = 2.0 * f64::EPSILON * b.abs().max(1e-300);
        let m = 0.5 * (c - b);
        if fb.abs() <= ftol || m.abs() <= tol || fb == 0.0 {
            return Ok(Root { x: b, fx: fb, evaluations });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        evaluations += 1;
    }
}

/// Finds a sign-changing bracket for an increasing `f` by stepping away from
/// `start` with doubling steps, at most `max_doublings` times.
pub fn expand_bracket<F: FnMut(f64) -> f64>(
    mut f: F,
    start: f64,
    max_doublings: u32,
) -> Result<(f64, f64), RootError> {
    let f0 = f(start);
    if f0 == 0.0 {
        return Ok((start, start));
    }
    let dir = if f0 < 0.0 { 1.0 } else { -1.0 };
    let mut prev = start;
    let mut step = 1.0;
    for _ in 0..=max_doublings {
        let next = start + dir * step;
        let fx = f(next);
        if (fx > 0.0) != (f0 > 0.0) || fx == 0.0 {
            return Ok(if dir > 0.0 { (prev, next) } else { (next, prev) });
        }
        prev = next;
        step *= 2.0;
    }
    Err(RootError::BracketExhausted { at: prev })
}

/// Zero of an increasing function: expands a bracket around `start`, then
/// refines it with [`brent`].
pub fn root_find_monotone<F: FnMut(f64) -> f64>(
    mut f: F,
    start: f64,
    ftol: f64,
    max_doublings: u32,
) -> Result<Root, RootError> {
    let (lo, hi) = expand_bracket(&mut f, start, max_doublings)?;
    if lo == hi {
        return Ok(Root { x: lo, fx: 0.0, evaluations: 1 });
    }
    brent(f, lo, hi, ftol)
}
