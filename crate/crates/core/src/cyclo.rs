//! Exact arithmetic in cyclotomic fields Q(ζ_e).
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(e)-1}` of its
//! conductor `e`, as a vector of integer numerators over one positive common
//! denominator. The representation is canonical: two equal elements at the
//! same conductor have identical storage. Arithmetic between different
//! conductors promotes both operands to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Largest conductor accepted by the field routines.
pub const CONDUCTOR_BOUND: u32 = 2520;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("conductor {0} exceeds the bound {CONDUCTOR_BOUND}")]
    ConductorOverflow(u64),
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse cyclotomic `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

/// Power-basis data for one conductor.
#[derive(Debug)]
pub struct Basis {
    conductor: u32,
    /// Coefficients of the monic cyclotomic polynomial, lowest degree first.
    poly: Vec<i64>,
}

impl Basis {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Dimension φ(e) of the field over Q.
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    /// Reduces an integer polynomial (lowest degree first) modulo Φ_e in place.
    fn reduce(&self, v: &mut Vec<BigInt>) {
        let phi = self.degree();
        for i in (phi..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[i]);
            let base = i - phi;
            for (j, &pj) in self.poly[..phi].iter().enumerate() {
                if pj != 0 {
                    v[base + j] -= &c * pj;
                }
            }
        }
        v.truncate(phi);
        v.resize(phi, BigInt::zero());
    }
}

fn cyclotomic_poly_cache() -> &'static Mutex<HashMap<u32, Arc<Basis>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Basis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Exact division of integer polynomials where `den` is monic.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem: Vec<i128> = num.iter().map(|&c| c as i128).collect();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        quot[i] = c as i64;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn compute_poly(e: u32) -> Vec<i64> {
    // Φ_e = (x^e - 1) / ∏_{d | e, d < e} Φ_d
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in 1..e {
        if e.is_multiple_of(d) {
            let phi_d = basis(d).expect("divisor conductor in range");
            num = poly_div_exact(&num, &phi_d.poly);
        }
    }
    num
}

/// Returns the (cached) basis data for conductor `e`.
pub fn basis(e: u32) -> Result<Arc<Basis>, CycloError> {
    if e == 0 {
        return Err(CycloError::ZeroConductor);
    }
    if e > CONDUCTOR_BOUND {
        return Err(CycloError::ConductorOverflow(e as u64));
    }
    if let Some(b) = cyclotomic_poly_cache().lock().unwrap().get(&e) {
        return Ok(b.clone());
    }
    let poly = compute_poly(e);
    let b = Arc::new(Basis { conductor: e, poly });
    let mut cache = cyclotomic_poly_cache().lock().unwrap();
    Ok(cache.entry(e).or_insert(b).clone())
}

fn lcm_conductor(a: u32, b: u32) -> Result<u32, CycloError> {
    let l = (a as u64).lcm(&(b as u64));
    if l > CONDUCTOR_BOUND as u64 {
        return Err(CycloError::ConductorOverflow(l));
    }
    Ok(l as u32)
}

/// An exact element of Q(ζ_e).
#[derive(Clone)]
pub struct Cyclotomic {
    basis: Arc<Basis>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero_at(e: u32) -> Result<Self, CycloError> {
        let basis = basis(e)?;
        let phi = basis.degree();
        Ok(Cyclotomic {
            basis,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        })
    }

    pub fn zero() -> Self {
        Self::zero_at(1).unwrap()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let basis = basis(1).unwrap();
        Cyclotomic {
            basis,
            num: vec![q.numer().clone()],
            den: q.denom().clone(),
        }
    }

    /// The rational `q` viewed inside Q(ζ_e).
    pub fn rational_at(q: BigRational, e: u32) -> Result<Self, CycloError> {
        let mut z = Self::zero_at(e)?;
        z.num[0] = q.numer().clone();
        z.den = q.denom().clone();
        Ok(z)
    }

    /// ζ_e^k, with `k` taken modulo `e`.
    pub fn root_of_unity(e: u32, k: i64) -> Result<Self, CycloError> {
        let mut exps = vec![BigInt::zero(); e as usize];
        exps[k.rem_euclid(e as i64) as usize] = BigInt::one();
        Self::from_exponent_coeffs(e, exps)
    }

    /// Builds Σ c_k ζ_e^k from integer coefficients indexed by exponent `k < e`.
    pub fn from_exponent_coeffs(e: u32, mut coeffs: Vec<BigInt>) -> Result<Self, CycloError> {
        let basis = basis(e)?;
        coeffs.resize(e as usize, BigInt::zero());
        basis.reduce(&mut coeffs);
        Ok(Cyclotomic {
            basis,
            num: coeffs,
            den: BigInt::one(),
        })
    }

    /// Same as [`from_exponent_coeffs`](Self::from_exponent_coeffs) with
    /// machine-sized multiplicities, as produced by eigenvalue counting.
    pub fn from_exponent_counts(e: u32, counts: &[u64]) -> Result<Self, CycloError> {
        Self::from_exponent_coeffs(e, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn conductor(&self) -> u32 {
        self.basis.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_rational() && self.den.is_one() {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    /// Coefficient of ζ^k in the power basis (`k < φ(e)`).
    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num[k].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|k| self.coeff(k)).collect()
    }

    fn normalize(mut self) -> Self {
        if self.den.is_one() {
            return self;
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
        self
    }

    /// Re-expresses the element in Q(ζ_m) for a multiple `m` of its conductor.
    pub fn promote(&self, m: u32) -> Result<Self, CycloError> {
        let e = self.conductor();
        if m == e {
            return Ok(self.clone());
        }
        assert!(
            m.is_multiple_of(e),
            "promotion target {m} is not a multiple of {e}"
        );
        let step = (m / e) as usize;
        let mut v = vec![BigInt::zero(); m as usize];
        for (k, c) in self.num.iter().enumerate() {
            v[k * step] = c.clone();
        }
        let mut z = Self::from_exponent_coeffs(m, v)?;
        z.den = self.den.clone();
        Ok(z)
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self), CycloError> {
        let l = lcm_conductor(self.conductor(), other.conductor())?;
        Ok((self.promote(l)?, other.promote(l)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycloError> {
        if self.conductor() != other.conductor() {
            let (a, b) = self.aligned(other)?;
            return a.try_add(&b);
        }
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a + b)
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a * &other.den + b * &self.den)
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Ok(Cyclotomic {
            basis: self.basis.clone(),
            num,
            den,
        }
        .normalize())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycloError> {
        if self.conductor() != other.conductor() {
            let (a, b) = self.aligned(other)?;
            return a.try_mul(&b);
        }
        let phi = self.num.len();
        if self.is_zero() || other.is_zero() {
            return Self::zero_at(self.conductor());
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.basis.reduce(&mut prod);
        let den = if self.den.is_one() {
            other.den.clone()
        } else if other.den.is_one() {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Ok(Cyclotomic {
            basis: self.basis.clone(),
            num: prod,
            den,
        }
        .normalize())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Cyclotomic {
            basis: self.basis.clone(),
            num,
            den: &self.den * q.denom(),
        }
        .normalize()
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Image under the Galois automorphism ζ ↦ ζ^j (`j` coprime to the conductor).
    pub fn galois(&self, j: i64) -> Self {
        let e = self.conductor() as i64;
        let mut v = vec![BigInt::zero(); e as usize];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let idx = (k as i64 * j).rem_euclid(e) as usize;
                v[idx] += c;
            }
        }
        let mut z = Self::from_exponent_coeffs(e as u32, v).unwrap();
        z.den = self.den.clone();
        z.normalize()
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse, computed as the product of the non-trivial
    /// Galois conjugates divided by the (rational) field norm.
    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let e = self.conductor() as i64;
        let mut others = Self::rational_at(BigRational::one(), self.conductor())?;
        for j in 2..e.max(2) {
            if j.gcd(&e) == 1 {
                others = others.try_mul(&self.galois(j))?;
            }
        }
        let norm = self
            .try_mul(&others)?
            .as_rational()
            .expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycloError> {
        self.try_mul(&other.inverse()?)
    }

    /// A deterministic total-order key: the conductor, then the power-basis
    /// coefficients in order.
    pub fn order_key(&self) -> (u32, Vec<BigRational>) {
        (self.conductor(), self.coeffs())
    }

    /// Display-only floating-point approximation (re, im).
    pub fn approx(&self) -> (f64, f64) {
        let e = self.conductor() as f64;
        let den = bigint_to_f64(&self.den);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            let c = bigint_to_f64(c) / den;
            let t = 2.0 * std::f64::consts::PI * k as f64 / e;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    /// Parses the textual form produced by `Display`. The result has the
    /// least conductor covering every `z(e)` that appears (1 if none).
    pub fn parse(text: &str) -> Result<Self, CycloError> {
        parse_rendering(text)
    }

    /// Parses and promotes to conductor `e`.
    pub fn parse_at(text: &str, e: u32) -> Result<Self, CycloError> {
        let z = parse_rendering(text)?;
        if !e.is_multiple_of(z.conductor()) {
            return Err(CycloError::Parse {
                text: text.to_string(),
                reason: format!("conductor {} does not divide {e}", z.conductor()),
            });
        }
        z.promote(e)
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_string().parse().unwrap_or(f64::NAN)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.den == other.den && self.num == other.num;
        }
        match self.aligned(other) {
            Ok((a, b)) => a == b,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.conductor();
        let mut first = true;
        for k in 0..self.num.len() {
            if self.num[k].is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let c = self.coeff(k);
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z({e})^{k}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn parse_rendering(text: &str) -> Result<Cyclotomic, CycloError> {
    let err = |reason: &str| CycloError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let parse_int = |s: &str| -> Result<BigInt, CycloError> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| err(&format!("bad integer `{s}`")))
    };
    let mut terms: Vec<(BigRational, u32, u32)> = Vec::new();
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(err("empty input"));
    }
    for raw in trimmed.split(" + ") {
        let raw = raw.trim();
        let (coef_text, root) = match raw.find("z(") {
            Some(pos) => {
                let head = raw[..pos].trim_end();
                let head = head.strip_suffix('*').unwrap_or(head).trim();
                (head, Some(&raw[pos..]))
            }
            None => (raw, None),
        };
        let coef = if coef_text.is_empty() {
            BigRational::one()
        } else if coef_text == "-" {
            -BigRational::one()
        } else if let Some((n, d)) = coef_text.split_once('/') {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            BigRational::new(parse_int(n)?, d)
        } else {
            BigRational::from_integer(parse_int(coef_text)?)
        };
        let (e, k) = match root {
            None => (1u32, 0u32),
            Some(r) => {
                let body = r.strip_prefix("z(").ok_or_else(|| err("expected z("))?;
                let (e_text, rest) = body.split_once(')').ok_or_else(|| err("unclosed z("))?;
                let e: u32 = e_text.trim().parse().map_err(|_| err("bad conductor"))?;
                let rest = rest.trim();
                let k: u32 = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or_else(|| err("expected ^"))?
                        .trim()
                        .parse()
                        .map_err(|_| err("bad exponent"))?
                };
                if e == 0 {
                    return Err(err("zero conductor"));
                }
                (e, k)
            }
        };
        terms.push((coef, e, k));
    }
    let mut conductor = 1u32;
    for (_, e, _) in &terms {
        conductor = lcm_conductor(conductor, *e)?;
    }
    let mut acc = Cyclotomic::zero_at(conductor)?;
    for (c, e, k) in terms {
        let root = Cyclotomic::root_of_unity(e, k as i64)?;
        acc = acc.try_add(&root.scale(&c))?;
    }
    acc.promote(conductor)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$impl_fn(rhs).expect("cyclotomic conductor overflow")
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

impl Cyclotomic {
    pub fn try_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.try_add(&-other)
    }
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            basis: self.basis.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}
