//! Fixed-point complex balls and certified simultaneous root isolation.
//!
//! A value is `(re + i im) * 2^-bits` with integer mantissas plus an absolute
//! error radius kept as an `f64` that is always rounded upward.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Slack applied to every radius computation to absorb f64 rounding.
const SLACK: f64 = 1.0 + 1e-12;

/// Upper bound on `|m| * 2^-bits` as an f64 (may be infinite).
fn mag_upper(m: &BigInt, bits: u32) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let shift = (m.bits() as i64 - 60).max(0);
    let top = (m.magnitude() >> shift as usize).to_f64().unwrap_or(f64::INFINITY) + 1.0;
    top * 2f64.powi((shift - bits as i64) as i32) * SLACK
}

/// Lower bound on `|m| * 2^-bits`.
fn mag_lower(m: &BigInt, bits: u32) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let shift = (m.bits() as i64 - 60).max(0);
    let top = (m.magnitude() >> shift as usize).to_f64().unwrap_or(f64::MAX);
    (top * 2f64.powi((shift - bits as i64) as i32)) / SLACK
}

fn to_f64(m: &BigInt, bits: u32) -> f64 {
    let v = mag_lower(m, bits) * SLACK;
    if m.sign() == Sign::Minus {
        -v
    } else {
        v
    }
}

fn hypot_upper(a: f64, b: f64) -> f64 {
    a.hypot(b) * SLACK
}

/// Fixed-point precision context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prec {
    pub bits: u32,
}

impl Prec {
    pub fn new(bits: u32) -> Self {
        Self { bits }
    }

    /// Rounding error of one fixed-point complex product or quotient.
    fn ulp(&self) -> f64 {
        4.0 * 2f64.powi(-(self.bits as i32))
    }

    fn round_div(&self, num: &BigInt, den: &BigInt) -> BigInt {
        // floor division is enough: the error term covers one unit
        num / den
    }

    pub fn from_rational(&self, q: &BigRational) -> Ball {
        let num = q.numer() << self.bits as usize;
        Ball {
            c: Cfx {
                re: self.round_div(&num, q.denom()),
                im: BigInt::zero(),
            },
            rad: if q.denom() == &BigInt::from(1) { 0.0 } else { self.ulp() },
        }
    }

    pub fn from_f64(&self, re: f64, im: f64) -> Cfx {
        let scale = |v: f64| -> BigInt {
            if !v.is_finite() {
                return BigInt::zero();
            }
            let (mant, exp, sign) = num_traits::float::FloatCore::integer_decode(v);
            let m = BigInt::from(mant) * BigInt::from(sign);
            let e = exp as i64 + self.bits as i64;
            if e >= 0 {
                m << e as usize
            } else {
                m >> (-e) as usize
            }
        };
        Cfx {
            re: scale(re),
            im: scale(im),
        }
    }

    pub fn cmul(&self, a: &Cfx, b: &Cfx) -> Cfx {
        let s = self.bits as usize;
        Cfx {
            re: (&a.re * &b.re - &a.im * &b.im) >> s,
            im: (&a.re * &b.im + &a.im * &b.re) >> s,
        }
    }

    /// `None` when the divisor's center is zero.
    pub fn cdiv(&self, a: &Cfx, b: &Cfx) -> Option<Cfx> {
        let den = &b.re * &b.re + &b.im * &b.im;
        if den.is_zero() {
            return None;
        }
        let s = self.bits as usize;
        let re = (&a.re * &b.re + &a.im * &b.im) << s;
        let im = (&a.im * &b.re - &a.re * &b.im) << s;
        Some(Cfx {
            re: re / &den,
            im: im / &den,
        })
    }

    pub fn mul(&self, a: &Ball, b: &Ball) -> Ball {
        let c = self.cmul(&a.c, &b.c);
        let am = a.c.abs_upper(self.bits);
        let bm = b.c.abs_upper(self.bits);
        let rad = (am * b.rad + bm * a.rad + a.rad * b.rad + self.ulp()) * SLACK;
        Ball { c, rad }
    }

    pub fn add(&self, a: &Ball, b: &Ball) -> Ball {
        Ball {
            c: Cfx {
                re: &a.c.re + &b.c.re,
                im: &a.c.im + &b.c.im,
            },
            rad: (a.rad + b.rad) * SLACK,
        }
    }

    pub fn sub(&self, a: &Ball, b: &Ball) -> Ball {
        self.add(a, &b.neg())
    }

    pub fn zero(&self) -> Ball {
        Ball::exact(Cfx::zero())
    }

    pub fn one(&self) -> Ball {
        Ball::exact(Cfx {
            re: BigInt::from(1) << self.bits as usize,
            im: BigInt::zero(),
        })
    }

    /// Horner evaluation of rational coordinates against a ball point.
    pub fn eval_rational(&self, coeffs: &[BigRational], z: &Ball) -> Ball {
        coeffs.iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, z), &self.from_rational(c))
        })
    }

    pub fn eval(&self, coeffs: &[Ball], z: &Ball) -> Ball {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, z), c))
    }
}

/// Fixed-point complex center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfx {
    pub re: BigInt,
    pub im: BigInt,
}

impl Cfx {
    pub fn zero() -> Self {
        Self {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub fn abs_upper(&self, bits: u32) -> f64 {
        hypot_upper(mag_upper(&self.re, bits), mag_upper(&self.im, bits))
    }

    pub fn abs_lower(&self, bits: u32) -> f64 {
        mag_lower(&self.re, bits).hypot(mag_lower(&self.im, bits)) / SLACK
    }

    pub fn to_complex64(&self, bits: u32) -> Complex64 {
        Complex64::new(to_f64(&self.re, bits), to_f64(&self.im, bits))
    }

    pub fn sub(&self, o: &Cfx) -> Cfx {
        Cfx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn conj(&self) -> Cfx {
        Cfx {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
}

/// Complex ball: center plus certified absolute error radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub c: Cfx,
    pub rad: f64,
}

impl Ball {
    pub fn exact(c: Cfx) -> Self {
        Self { c, rad: 0.0 }
    }

    pub fn neg(&self) -> Self {
        Self {
            c: Cfx {
                re: -&self.c.re,
                im: -&self.c.im,
            },
            rad: self.rad,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            c: self.c.conj(),
            rad: self.rad,
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Self {
            c: Cfx {
                re: &self.c.re * k,
                im: &self.c.im * k,
            },
            rad: self.rad * (k.unsigned_abs() as f64) * SLACK,
        }
    }

    /// Twice the real part, as a ball with zero imaginary part.
    pub fn twice_real(&self) -> Self {
        Self {
            c: Cfx {
                re: &self.c.re * 2,
                im: BigInt::zero(),
            },
            rad: 2.0 * self.rad * SLACK,
        }
    }

    /// The imaginary part is certainly nonzero.
    pub fn certainly_nonreal(&self, bits: u32) -> bool {
        mag_lower(&self.c.im, bits) > self.rad
    }

    pub fn re_f64(&self, bits: u32) -> f64 {
        to_f64(&self.c.re, bits)
    }

    pub fn im_f64(&self, bits: u32) -> f64 {
        to_f64(&self.c.im, bits)
    }

    /// Lower bound on the distance between the two centers minus both radii.
    pub fn disjoint_from(&self, o: &Ball, bits: u32) -> bool {
        self.c.sub(&o.c).abs_lower(bits) > (self.rad + o.rad) * SLACK
    }

    pub fn overlaps(&self, o: &Ball, bits: u32) -> bool {
        !self.disjoint_from(o, bits)
    }
}

/// Outcome of testing whether a ball contains an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegerTest {
    /// The only integer the ball can contain.
    Candidate(BigInt),
    /// The ball certainly contains no integer.
    Rejected,
    /// The ball is too wide to decide.
    Undecided,
}

/// Tests a ball for containing an integer (on the real axis).
pub fn integer_test(b: &Ball, bits: u32) -> IntegerTest {
    if b.rad.is_nan() || b.rad >= 0.25 {
        return IntegerTest::Undecided;
    }
    if mag_lower(&b.c.im, bits) > b.rad {
        return IntegerTest::Rejected;
    }
    let half = BigInt::from(1) << (bits as usize - 1);
    let nearest = (&b.c.re + &half) >> bits as usize;
    let diff = &b.c.re - (&nearest << bits as usize);
    if mag_lower(&diff, bits) > b.rad {
        IntegerTest::Rejected
    } else {
        IntegerTest::Candidate(nearest)
    }
}

/// Aberth iteration in f64 for starting points; `None` if the data is not
/// representable.
fn aberth_f64(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return None;
    }
    let radius = (0..n)
        .map(|i| coeffs[i].norm().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 1.1;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..800 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for c in coeffs.iter().rev() {
                dp = dp * z[i] + p;
                p = p * z[i] + c;
            }
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * s);
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z.iter().all(|c| c.re.is_finite() && c.im.is_finite()).then_some(z)
}

/// Isolates all roots of a monic polynomial with ball coefficients
/// (lowest degree first; leading coefficient exactly one).
///
/// Returns one ball per root; the balls are pairwise disjoint and each holds
/// exactly one root of every polynomial inside the coefficient balls. `None`
/// when certification fails at this precision.
pub fn isolate_roots(prec: Prec, coeffs: &[Ball]) -> Option<Vec<Ball>> {
    let n = coeffs.len().checked_sub(1)?;
    if n == 0 {
        return Some(Vec::new());
    }
    if n == 1 {
        let c = coeffs[0].neg();
        return Some(vec![c]);
    }
    let bits = prec.bits;
    let approx: Vec<Complex64> = coeffs.iter().map(|c| c.c.to_complex64(bits)).collect();
    let start = aberth_f64(&approx).unwrap_or_else(|| {
        (0..n)
            .map(|k| Complex64::from_polar(1.0, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
            .collect()
    });
    let mut z: Vec<Cfx> = start.iter().map(|c| prec.from_f64(c.re, c.im)).collect();
    let centers: Vec<Cfx> = coeffs.iter().map(|c| c.c.clone()).collect();
    let tol = 2f64.powi(-(bits as i32) + 16);
    for _ in 0..(60 + bits / 4) {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (mut p, mut dp) = (Cfx::zero(), Cfx::zero());
            for c in centers.iter().rev() {
                let t = prec.cmul(&dp, &z[i]);
                dp = Cfx {
                    re: t.re + &p.re,
                    im: t.im + &p.im,
                };
                let t = prec.cmul(&p, &z[i]);
                p = Cfx {
                    re: t.re + &c.re,
                    im: t.im + &c.im,
                };
            }
            if p.re.is_zero() && p.im.is_zero() {
                continue;
            }
            let Some(ratio) = prec.cdiv(&p, &dp) else {
                continue;
            };
            let one = prec.one().c;
            let mut s = Cfx::zero();
            for j in (0..n).filter(|&j| j != i) {
                if let Some(inv) = prec.cdiv(&one, &z[i].sub(&z[j])) {
                    s.re += inv.re;
                    s.im += inv.im;
                }
            }
            let rs = prec.cmul(&ratio, &s);
            let denom = one.sub(&rs);
            let Some(step) = prec.cdiv(&ratio, &denom) else {
                continue;
            };
            let rel = step.abs_upper(bits) / (1.0 + z[i].abs_lower(bits));
            z[i] = z[i].sub(&step);
            max_step = max_step.max(rel);
        }
        if max_step < tol {
            break;
        }
    }
    certify(prec, coeffs, &z)
}

/// Weierstrass inclusion: disks `D(z_i, n |W_i|)` with
/// `W_i = p(z_i) / prod_{j != i} (z_i - z_j)`; pairwise disjoint disks each
/// contain exactly one root.
fn certify(prec: Prec, coeffs: &[Ball], z: &[Cfx]) -> Option<Vec<Ball>> {
    let n = z.len();
    let bits = prec.bits;
    let mut balls = Vec::with_capacity(n);
    for i in 0..n {
        let zi = Ball::exact(z[i].clone());
        let value = prec.eval(coeffs, &zi);
        let num = value.c.abs_upper(bits) + value.rad;
        let mut den = prec.one();
        for j in (0..n).filter(|&j| j != i) {
            den = prec.mul(&den, &Ball::exact(z[i].sub(&z[j])));
        }
        let den_lower = den.c.abs_lower(bits) - den.rad;
        if den_lower <= 0.0 || !num.is_finite() {
            return None;
        }
        let rad = n as f64 * (num / den_lower) * SLACK * SLACK;
        if !rad.is_finite() {
            return None;
        }
        balls.push(Ball {
            c: z[i].clone(),
            rad,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            if balls[i].overlaps(&balls[j], bits) {
                return None;
            }
        }
    }
    Some(balls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::int;

    fn monic_balls(prec: Prec, c: &[i64]) -> Vec<Ball> {
        c.iter().map(|&x| prec.from_rational(&int(x))).collect()
    }

    #[test]
    fn sqrt_two() {
        let prec = Prec::new(128);
        let roots = isolate_roots(prec, &monic_balls(prec, &[-2, 0, 1])).unwrap();
        let mut re: Vec<f64> = roots.iter().map(|b| b.re_f64(128)).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + std::f64::consts::SQRT_2).abs() < 1e-14);
        assert!((re[1] - std::f64::consts::SQRT_2).abs() < 1e-14);
        assert!(roots.iter().all(|b| b.rad < 1e-30));
    }

    #[test]
    fn x4_plus_1_on_unit_circle() {
        let prec = Prec::new(160);
        let roots = isolate_roots(prec, &monic_balls(prec, &[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(roots.len(), 4);
        for b in &roots {
            let c = b.c.to_complex64(160);
            assert!((c.norm() - 1.0).abs() < 1e-14);
            let arg = c.arg().to_degrees().abs();
            assert!((arg - 45.0).abs() < 1e-9 || (arg - 135.0).abs() < 1e-9);
        }
    }

    #[test]
    fn integer_test_cases() {
        let prec = Prec::new(64);
        let b = prec.from_rational(&int(7));
        assert_eq!(integer_test(&b, 64), IntegerTest::Candidate(BigInt::from(7)));
        let half = prec.from_rational(&crate::arith::field::rat(1, 2));
        assert_eq!(integer_test(&half, 64), IntegerTest::Rejected);
        let wide = Ball { rad: 1.0, ..half };
        assert_eq!(integer_test(&wide, 64), IntegerTest::Undecided);
    }
}
