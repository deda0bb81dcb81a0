//! Exact arithmetic in cyclotomic fields `Q(z_N)`.
//!
//! A [`CycloScalar`] stores its coordinates in the power basis
//! `1, z, ..., z^(phi(N)-1)` reduced modulo the `N`-th cyclotomic polynomial,
//! so equality of scalars with the same conductor is coefficient-wise.
//! Scalars of different conductors are lifted to the lcm conductor before
//! any binary operation.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    fn parse_int(t: &str, allow_sign: bool) -> Option<BigInt> {
        let digits = if allow_sign {
            t.strip_prefix('-').unwrap_or(t)
        } else {
            t
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        t.parse().ok()
    }
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = parse_int(p, true)?;
            let q = parse_int(q, false)?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => parse_int(s, true).map(Rational::from_integer),
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn euler_phi(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

// Integer polynomials, low degree first.
fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().expect("nonempty divisor");
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1] / lead;
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

fn cyclotomic_int(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_exact_div(&p, &cyclotomic_int(d));
        }
    }
    p
}

/// The `n`-th cyclotomic polynomial, coefficients from the constant term up.
pub fn cyclotomic_polynomial(n: u32) -> Vec<Rational> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    cyclotomic_int(n).into_iter().map(int).collect()
}

struct Field {
    phi: usize,
    /// `powers[k]` is `z^k` in the power basis, `0 <= k < n`.
    powers: Vec<Vec<i64>>,
    modulus: Vec<i64>,
}

impl Field {
    fn new(n: u32) -> Self {
        let modulus = cyclotomic_int(n);
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by z, then replace z^phi by -(modulus minus leading term)
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] -= top * modulus[j];
                }
            }
        }
        Field {
            phi,
            powers,
            modulus,
        }
    }
}

fn field(n: u32) -> Arc<Field> {
    static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let cache = FIELDS.get_or_init(Default::default);
    if let Some(f) = cache.read().expect("field cache poisoned").get(&n) {
        return f.clone();
    }
    let f = Arc::new(Field::new(n));
    cache
        .write()
        .expect("field cache poisoned")
        .entry(n)
        .or_insert(f)
        .clone()
}

/// Exact element of `Q(z_N)`.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    n: u32,
    c: Vec<Rational>,
}

impl CycloScalar {
    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(r: Rational) -> Self {
        CycloScalar { n: 1, c: vec![r] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::rational(int(k))
    }

    /// `z_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let f = field(n);
        CycloScalar {
            n,
            c: f.powers[e].iter().map(|&x| int(x)).collect(),
        }
    }

    /// Builds `sum_k coeffs[k] z_n^k` for any number of coefficients, reducing
    /// exponents modulo `n` and then modulo the cyclotomic polynomial.
    pub fn from_exponent_coeffs(n: u32, coeffs: &[Rational]) -> Self {
        assert!(n >= 1);
        let f = field(n);
        let mut out = vec![Rational::zero(); f.phi];
        for (k, ck) in coeffs.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            add_scaled_power(&mut out, &f.powers[k % n as usize], ck);
        }
        CycloScalar { n, c: out }
    }

    /// Power-basis coordinates; must have exactly `phi(n)` entries.
    pub fn from_basis_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::schema("N", "conductor must be positive"));
        }
        let phi = euler_phi(n);
        if coeffs.len() != phi {
            return Err(Error::schema(
                "c",
                format!("expected {phi} coefficients for conductor {n}, got {}", coeffs.len()),
            ));
        }
        Ok(CycloScalar { n, c: coeffs })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.c[0].clone())
    }

    /// Re-expresses `self` in `Q(z_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.n), "cannot lift conductor {} to {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let f = field(m);
        let step = (m / self.n) as usize;
        let mut out = vec![Rational::zero(); f.phi];
        for (k, ck) in self.c.iter().enumerate() {
            if !ck.is_zero() {
                add_scaled_power(&mut out, &f.powers[(k * step) % m as usize], ck);
            }
        }
        CycloScalar { n: m, c: out }
    }

    fn coerce<'a>(a: &'a Self, b: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.n == b.n {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let m = a.n.lcm(&b.n);
            let la = if a.n == m { Cow::Borrowed(a) } else { Cow::Owned(a.lift(m)) };
            let lb = if b.n == m { Cow::Borrowed(b) } else { Cow::Owned(b.lift(m)) };
            (la, lb)
        }
    }

    /// Addition without automatic coercion.
    pub fn strict_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ConductorMismatch(self.n, other.n));
        }
        Ok(self + other)
    }

    /// Multiplication without automatic coercion.
    pub fn strict_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ConductorMismatch(self.n, other.n));
        }
        Ok(self * other)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloScalar {
            n: self.n,
            c: self.c.iter().map(|x| x * r).collect(),
        }
    }

    /// Complex conjugation, the Galois map `z -> z^(N-1)`.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let f = field(self.n);
        let n = self.n as usize;
        let mut out = vec![Rational::zero(); f.phi];
        for (k, ck) in self.c.iter().enumerate() {
            if !ck.is_zero() {
                add_scaled_power(&mut out, &f.powers[(n - k) % n], ck);
            }
        }
        CycloScalar { n: self.n, c: out }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::rational(r.recip()));
        }
        let f = field(self.n);
        let modulus: Vec<Rational> = f.modulus.iter().map(|&x| int(x)).collect();
        let u = poly_inverse_mod(&self.c, &modulus)
            .ok_or_else(|| Error::Internal("element not invertible modulo cyclotomic polynomial".into()))?;
        let mut c = u;
        c.resize(f.phi, Rational::zero());
        Ok(CycloScalar { n: self.n, c })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Evaluates the power-basis expression at `exp(2 pi i / N)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.n as f64;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }
}

fn add_scaled_power(out: &mut [Rational], power: &[i64], c: &Rational) {
    for (o, &p) in out.iter_mut().zip(power) {
        match p {
            0 => {}
            1 => *o += c,
            -1 => *o -= c,
            _ => *o += c * int(p),
        }
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = degree(den).expect("division by zero polynomial");
    let mut rem = num.to_vec();
    let mut quot = vec![Rational::zero(); num.len().saturating_sub(dd).max(1)];
    let lead = den[dd].clone();
    while let Some(dr) = degree(&rem) {
        if dr < dd {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - dd;
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[shift + j] -= t;
        }
        quot[shift] += c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Extended Euclid: `u` with `a u = 1 (mod m)`, or `None` if `gcd(a, m) != 1`.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![Rational::zero()];
    let mut s1 = vec![Rational::one()];
    while degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let lead = r0[0].clone();
    let (_, u) = poly_divmod(&s0.iter().map(|x| x / &lead).collect::<Vec<_>>(), m);
    Some(u)
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::coerce(self, other);
        a.c == b.c
    }
}

impl Eq for CycloScalar {}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &'a CycloScalar) -> CycloScalar {
        let (a, b) = CycloScalar::coerce(self, rhs);
        CycloScalar {
            n: a.n,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &'a CycloScalar) -> CycloScalar {
        let (a, b) = CycloScalar::coerce(self, rhs);
        CycloScalar {
            n: a.n,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &'a CycloScalar) -> CycloScalar {
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        let (a, b) = CycloScalar::coerce(self, rhs);
        let n = a.n as usize;
        let f = field(a.n);
        let mut acc = vec![Rational::zero(); n];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    acc[(i + j) % n] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = acc[..f.phi].to_vec();
        for (k, ck) in acc.iter().enumerate().skip(f.phi) {
            if !ck.is_zero() {
                add_scaled_power(&mut out, &f.powers[k], ck);
            }
        }
        CycloScalar { n: a.n, c: out }
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        if self.n == rhs.n {
            for (x, y) in self.c.iter_mut().zip(&rhs.c) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl From<Rational> for CycloScalar {
    fn from(r: Rational) -> Self {
        CycloScalar::rational(r)
    }
}

impl From<i64> for CycloScalar {
    fn from(k: i64) -> Self {
        CycloScalar::from_int(k)
    }
}

/// Renders as e.g. `-1 - z3` or `1/2 + 3*z12^5`.
impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.c[0]));
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let root = match k {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, k),
            };
            if k == 0 {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&root)?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), root)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycloScalar {
        CycloScalar::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_int(1), vec![-1, 1]);
        assert_eq!(cyclotomic_int(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_int(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_int(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12).len(), 5);
    }

    #[test]
    fn phi_matches_degree() {
        for n in 1..40 {
            assert_eq!(euler_phi(n), cyclotomic_int(n).len() - 1, "n = {n}");
        }
    }

    #[test]
    fn small_identities() {
        assert_eq!(&z(3, 1) + &z(3, 2), CycloScalar::from_int(-1));
        assert_eq!(&z(4, 1) * &z(4, 1), CycloScalar::from_int(-1));
        assert_eq!(z(4, 1).conj(), -z(4, 1));
        assert_eq!(CycloScalar::rational(rat(3, 2)).conj(), CycloScalar::rational(rat(3, 2)));
        let c = z(3, 1).conj();
        assert_eq!(c.coeffs(), &[int(-1), int(-1)]);
        assert_eq!(c, z(3, 2));
    }

    #[test]
    fn inverse_of_one_plus_z5() {
        let a = &CycloScalar::one() + &z(5, 1);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        // (1+z)(1 - z + z^2 - z^3 + z^4) = 1 + z^5 = 2, and z^4 = -1 - z - z^2 - z^3
        assert_eq!(b.coeffs(), &[int(0), int(-1), int(0), int(-1)]);
        assert_eq!(CycloScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=24u32 {
            let mut s = CycloScalar::zero();
            for k in 0..n {
                s += &z(n, k as i64);
            }
            assert!(s.is_zero(), "n = {n}");
            assert!(z(n, 1).pow(n).is_one());
        }
    }

    #[test]
    fn mixed_conductors_coerce() {
        let i = z(4, 1);
        let w = z(3, 1);
        let p = &i * &w;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, z(12, 7));
        assert_eq!(z(12, 4), w);
        assert_eq!(i.strict_add(&w), Err(Error::ConductorMismatch(4, 3)));
    }

    #[test]
    fn complex_embedding() {
        let h = CycloScalar::rational(rat(1, 2)).to_complex();
        assert!((h.re - 0.5).abs() < 1e-15 && h.im == 0.0);
        let i = z(4, 1).to_complex();
        assert!(i.re.abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
        let x = (&CycloScalar::one() + &z(3, 1)).to_complex();
        assert!((x.re - 0.5).abs() < 1e-12 && (x.im - 0.8660254037844386).abs() < 1e-12);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/2"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("+3"), None);
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&int(4)), "4");
    }

    #[test]
    fn display() {
        assert_eq!(z(3, 2).to_string(), "-1 - z3");
        assert_eq!(CycloScalar::from_exponent_coeffs(12, &[rat(1, 2), int(0), int(3)]).to_string(), "1/2 + 3*z12^2");
    }
}
