//! Coefficient rings.
//!
//! A [`Ring`] is a cheap, shareable descriptor for one of ℤ, ℚ, a prime field
//! F_p, or a truncation `base[t]/(t^m)` of one of those. Ring elements are
//! plain [`Coeff`] values in canonical form (reduced fractions, residues in
//! `[0, p)`, fixed-length layer vectors), so equality is structural.
//!
//! The dual-number ring `base[t]/(t^2)` is the truncation with `m = 2`;
//! [`Ring::dual`] and [`Ring::truncated`] with `m = 2` build the same
//! descriptor.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField(BigInt),
    /// `base[t]/(t^len)`; the base is never itself truncated.
    Truncated {
        base: Ring,
        len: usize,
    },
}

/// Descriptor of a coefficient ring.
#[derive(Clone, Debug, Eq)]
pub struct Ring(Arc<RingKind>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

/// A ring element in canonical form. Which variant is valid depends on the
/// ring: `Int` for ℤ and F_p, `Rat` for ℚ, `Layers` for truncations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    /// Coefficients of `1, t, …, t^(m-1)` over the base ring.
    Layers(Vec<Coeff>),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(n) => n.is_zero(),
            Coeff::Rat(q) => q.is_zero(),
            Coeff::Layers(v) => v.iter().all(Coeff::is_zero),
        }
    }

    /// True for negative integers and rationals; residues and layer vectors
    /// carry no sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coeff::Int(n) => n.is_negative(),
            Coeff::Rat(q) => q.is_negative(),
            Coeff::Layers(_) => false,
        }
    }
}

impl Ring {
    fn from_kind(kind: RingKind) -> Self {
        Ring(Arc::new(kind))
    }

    pub fn integers() -> Self {
        Self::from_kind(RingKind::Integers)
    }

    pub fn rationals() -> Self {
        Self::from_kind(RingKind::Rationals)
    }

    /// F_p; fails with `NotPrime` unless `p` is prime.
    pub fn prime_field(p: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Self::from_kind(RingKind::PrimeField(p)))
    }

    /// `base[t]/(t^len)`.
    pub fn truncated(base: &Ring, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidRing(
                "truncation length must be positive".into(),
            ));
        }
        if base.is_truncated() {
            return Err(Error::InvalidRing(format!(
                "cannot adjoin a second nilpotent generator to {base}"
            )));
        }
        Ok(Self::from_kind(RingKind::Truncated {
            base: base.clone(),
            len,
        }))
    }

    /// `base[t]/(t^2)`.
    pub fn dual(base: &Ring) -> Result<Self> {
        Self::truncated(base, 2)
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    pub fn is_truncated(&self) -> bool {
        matches!(*self.0, RingKind::Truncated { .. })
    }

    pub fn is_dual(&self) -> bool {
        matches!(*self.0, RingKind::Truncated { len: 2, .. })
    }

    pub fn is_field(&self) -> bool {
        matches!(*self.0, RingKind::Rationals | RingKind::PrimeField(_))
    }

    /// Fields and truncations of fields (local rings with residue field).
    pub fn is_local(&self) -> bool {
        self.base().is_field()
    }

    /// Base ring of a truncation; the ring itself otherwise.
    pub fn base(&self) -> &Ring {
        match &*self.0 {
            RingKind::Truncated { base, .. } => base,
            _ => self,
        }
    }

    /// Nilpotency length `m` of `t` (1 for rings without `t`).
    pub fn nil_len(&self) -> usize {
        match &*self.0 {
            RingKind::Truncated { len, .. } => *len,
            _ => 1,
        }
    }

    /// Characteristic of the residue field when it is a prime field.
    pub fn residue_prime(&self) -> Option<&BigInt> {
        match &*self.base().0 {
            RingKind::PrimeField(p) => Some(p),
            _ => None,
        }
    }

    /// Whether every positive integer is invertible.
    pub fn contains_rationals(&self) -> bool {
        matches!(*self.base().0, RingKind::Rationals)
    }

    pub fn zero(&self) -> Coeff {
        match &*self.0 {
            RingKind::Integers | RingKind::PrimeField(_) => Coeff::Int(BigInt::zero()),
            RingKind::Rationals => Coeff::Rat(BigRational::zero()),
            RingKind::Truncated { base, len } => Coeff::Layers(vec![base.zero(); *len]),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_int(1)
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> Coeff {
        let n = n.into();
        match &*self.0 {
            RingKind::Integers => Coeff::Int(n),
            RingKind::PrimeField(p) => Coeff::Int(n.mod_floor(p)),
            RingKind::Rationals => Coeff::Rat(BigRational::from_integer(n)),
            RingKind::Truncated { base, .. } => self.embed_base(&base.from_int(n)),
        }
    }

    /// Image of a rational number, when it has one.
    pub fn from_rational(&self, q: &BigRational) -> Result<Coeff> {
        match &*self.0 {
            RingKind::Rationals => Ok(Coeff::Rat(q.clone())),
            RingKind::Integers => {
                if q.is_integer() {
                    Ok(Coeff::Int(q.to_integer()))
                } else {
                    Err(Error::NotInRing {
                        value: q.to_string(),
                        ring: self.to_string(),
                    })
                }
            }
            RingKind::PrimeField(p) => rational_mod_p(q, p),
            RingKind::Truncated { base, .. } => Ok(self.embed_base(&base.from_rational(q)?)),
        }
    }

    /// The nilpotent generator `t`.
    pub fn generator(&self) -> Result<Coeff> {
        match &*self.0 {
            RingKind::Truncated { base, len } => {
                let mut layers = vec![base.zero(); *len];
                if *len > 1 {
                    layers[1] = base.one();
                }
                Ok(Coeff::Layers(layers))
            }
            _ => Err(Error::InvalidRing(format!(
                "{self} has no nilpotent generator t"
            ))),
        }
    }

    /// `t^k` (zero once `k >= m`).
    pub fn generator_pow(&self, k: usize) -> Result<Coeff> {
        match &*self.0 {
            RingKind::Truncated { base, len } => {
                let mut layers = vec![base.zero(); *len];
                if k < *len {
                    layers[k] = base.one();
                }
                Ok(Coeff::Layers(layers))
            }
            _ if k == 0 => Ok(self.one()),
            _ => Err(Error::InvalidRing(format!(
                "{self} has no nilpotent generator t"
            ))),
        }
    }

    /// Constant embedding of a base element into a truncation.
    pub fn embed_base(&self, c: &Coeff) -> Coeff {
        match &*self.0 {
            RingKind::Truncated { base, len } => {
                let mut layers = vec![base.zero(); *len];
                layers[0] = c.clone();
                Coeff::Layers(layers)
            }
            _ => c.clone(),
        }
    }

    /// Coefficient of `t^k` (the element itself for rings without `t`).
    pub fn layer(&self, c: &Coeff, k: usize) -> Coeff {
        match (&*self.0, c) {
            (RingKind::Truncated { base, .. }, Coeff::Layers(v)) => {
                v.get(k).cloned().unwrap_or_else(|| base.zero())
            }
            _ if k == 0 => c.clone(),
            _ => self.zero(),
        }
    }

    /// Inverse of [`Ring::layer`]: builds `Σ layers[k] t^k`, dropping
    /// layers at or beyond `m`.
    pub fn from_layers(&self, layers: Vec<Coeff>) -> Coeff {
        match &*self.0 {
            RingKind::Truncated { base, len } => {
                let mut v = layers;
                v.resize(*len, base.zero());
                Coeff::Layers(v)
            }
            _ => layers.into_iter().next().unwrap_or_else(|| self.zero()),
        }
    }

    /// Whether `c` is a canonical element of this ring.
    pub fn contains(&self, c: &Coeff) -> bool {
        match (&*self.0, c) {
            (RingKind::Integers, Coeff::Int(_)) => true,
            (RingKind::PrimeField(p), Coeff::Int(n)) => !n.is_negative() && n < p,
            (RingKind::Rationals, Coeff::Rat(q)) => q.denom().is_positive(),
            (RingKind::Truncated { base, len }, Coeff::Layers(v)) => {
                v.len() == *len && v.iter().all(|x| base.contains(x))
            }
            _ => false,
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        *c == self.one()
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (&*self.0, a, b) {
            (RingKind::Integers, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (RingKind::PrimeField(p), Coeff::Int(x), Coeff::Int(y)) => {
                let s = x + y;
                Coeff::Int(if &s >= p { s - p } else { s })
            }
            (RingKind::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (RingKind::Truncated { base, .. }, Coeff::Layers(x), Coeff::Layers(y)) => {
                Coeff::Layers(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => self.mismatch(a),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (&*self.0, a) {
            (RingKind::Integers, Coeff::Int(x)) => Coeff::Int(-x),
            (RingKind::PrimeField(p), Coeff::Int(x)) => {
                Coeff::Int(if x.is_zero() { x.clone() } else { p - x })
            }
            (RingKind::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (RingKind::Truncated { base, .. }, Coeff::Layers(x)) => {
                Coeff::Layers(x.iter().map(|u| base.neg(u)).collect())
            }
            _ => self.mismatch(a),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (&*self.0, a, b) {
            (RingKind::Integers, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (RingKind::PrimeField(p), Coeff::Int(x), Coeff::Int(y)) => Coeff::Int((x * y) % p),
            (RingKind::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (RingKind::Truncated { base, len }, Coeff::Layers(x), Coeff::Layers(y)) => {
                let mut out = vec![base.zero(); *len];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, yj) in y.iter().take(len - i).enumerate() {
                        if yj.is_zero() {
                            continue;
                        }
                        out[i + j] = base.add(&out[i + j], &base.mul(xi, yj));
                    }
                }
                Coeff::Layers(out)
            }
            _ => self.mismatch(a),
        }
    }

    /// Multiplication by an integer.
    pub fn mul_int(&self, a: &Coeff, n: i64) -> Coeff {
        self.mul(a, &self.from_int(n))
    }

    pub fn pow(&self, a: &Coeff, mut e: u32) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_unit(&self, a: &Coeff) -> bool {
        match (&*self.0, a) {
            (RingKind::Integers, Coeff::Int(x)) => x.abs().is_one(),
            (RingKind::PrimeField(_), Coeff::Int(x)) => !x.is_zero(),
            (RingKind::Rationals, Coeff::Rat(x)) => !x.is_zero(),
            (RingKind::Truncated { base, .. }, Coeff::Layers(x)) => base.is_unit(&x[0]),
            _ => false,
        }
    }

    /// Multiplicative inverse. In a truncation `c₀(1 + n)` with `n`
    /// nilpotent inverts to `c₀⁻¹ Σ_{k<m} (−n)^k`.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit(self.format_coeff(a)));
        }
        Ok(match (&*self.0, a) {
            (RingKind::Integers, Coeff::Int(x)) => Coeff::Int(x.clone()),
            (RingKind::PrimeField(p), Coeff::Int(x)) => Coeff::Int(x.modpow(&(p - 2u32), p)),
            (RingKind::Rationals, Coeff::Rat(x)) => Coeff::Rat(x.recip()),
            (RingKind::Truncated { base, len }, Coeff::Layers(x)) => {
                let c0_inv = self.embed_base(&base.inv(&x[0])?);
                // a·c₀⁻¹ = 1 + n
                let normalized = self.mul(a, &c0_inv);
                let minus_n = self.sub(&self.one(), &normalized);
                let mut term = self.one();
                let mut sum = self.one();
                for _ in 1..*len {
                    term = self.mul(&term, &minus_n);
                    sum = self.add(&sum, &term);
                }
                self.mul(&sum, &c0_inv)
            }
            _ => unreachable!("is_unit rejected foreign element"),
        })
    }

    /// Exact quotient `a / b` for a unit `b`.
    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn format_coeff(&self, c: &Coeff) -> String {
        match c {
            Coeff::Int(n) => n.to_string(),
            Coeff::Rat(q) => q.to_string(),
            Coeff::Layers(v) => {
                let base = self.base();
                let mut out = String::new();
                for (k, x) in v.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let neg = x.is_negative();
                    let mag = if neg { base.neg(x) } else { x.clone() };
                    let text = base.format_coeff(&mag);
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    match k {
                        0 => out.push_str(&text),
                        _ => {
                            if !base.is_one(&mag) {
                                out.push_str(&text);
                                out.push('*');
                            }
                            out.push('t');
                            if k > 1 {
                                out.push_str(&format!("^{k}"));
                            }
                        }
                    }
                }
                if out.is_empty() {
                    out.push('0');
                }
                out
            }
        }
    }

    fn mismatch(&self, a: &Coeff) -> ! {
        panic!("coefficient {a:?} does not belong to {self}")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RingKind::Integers => write!(f, "ZZ"),
            RingKind::Rationals => write!(f, "QQ"),
            RingKind::PrimeField(p) => write!(f, "GF({p})"),
            RingKind::Truncated { base, len } => write!(f, "{base}[t]/(t^{len})"),
        }
    }
}

fn rational_mod_p(q: &BigRational, p: &BigInt) -> Result<Coeff> {
    let den = q.denom().mod_floor(p);
    if den.is_zero() {
        return Err(Error::DenominatorDivisibleByP {
            value: q.to_string(),
            p: p.to_string(),
        });
    }
    let num = q.numer().mod_floor(p);
    let den_inv = den.modpow(&(p - 2u32), p);
    Ok(Coeff::Int((num * den_inv) % p))
}

/// An element together with its ring; arithmetic is checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    value: Coeff,
}

impl RingElement {
    pub fn new(ring: &Ring, value: Coeff) -> Result<Self> {
        if !ring.contains(&value) {
            return Err(Error::NotInRing {
                value: format!("{value:?}"),
                ring: ring.to_string(),
            });
        }
        Ok(Self {
            ring: ring.clone(),
            value,
        })
    }

    pub fn from_int(ring: &Ring, n: impl Into<BigInt>) -> Self {
        Self {
            ring: ring.clone(),
            value: ring.from_int(n),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Coeff {
        &self.value
    }

    pub fn into_value(self) -> Coeff {
        self.value
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }

    fn with(&self, value: Coeff) -> Self {
        Self {
            ring: self.ring.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.ring.neg(&self.value))
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.value)
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.ring.inv(&self.value)?))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_coeff(&self.value))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Route {
    Identity,
    IntegersToField(BigInt),
    IntegersToRationals,
    RationalsToField(BigInt),
    /// Apply `base` layer-wise, keeping the first `keep` layers. `keep == 0`
    /// means the target has no `t` (only the constant layer survives).
    Layers {
        base: Box<Hom>,
        keep: usize,
    },
}

/// A canonical ring homomorphism: reductions ℤ→F_p, ℚ→F_p (partial),
/// truncation maps, and the inclusion ℤ→ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    source: Ring,
    target: Ring,
    route: Route,
}

/// Canonical map `source → target`, if one exists.
pub fn reduce_hom(source: &Ring, target: &Ring) -> Result<Hom> {
    let route = if source == target {
        Route::Identity
    } else {
        match (source.kind(), target.kind()) {
            (RingKind::Integers, RingKind::PrimeField(p)) => Route::IntegersToField(p.clone()),
            (RingKind::Integers, RingKind::Rationals) => Route::IntegersToRationals,
            (RingKind::Rationals, RingKind::PrimeField(p)) => Route::RationalsToField(p.clone()),
            (
                RingKind::Truncated { base: sb, len: sl },
                RingKind::Truncated { base: tb, len: tl },
            ) if tl <= sl => Route::Layers {
                base: Box::new(reduce_hom(sb, tb)?),
                keep: *tl,
            },
            (RingKind::Truncated { base: sb, .. }, _) if !target.is_truncated() => Route::Layers {
                base: Box::new(reduce_hom(sb, target)?),
                keep: 0,
            },
            _ => {
                return Err(Error::NoCanonicalMap(
                    source.to_string(),
                    target.to_string(),
                ));
            }
        }
    };
    Ok(Hom {
        source: source.clone(),
        target: target.clone(),
        route,
    })
}

impl Hom {
    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn apply(&self, c: &Coeff) -> Result<Coeff> {
        match (&self.route, c) {
            (Route::Identity, _) => Ok(c.clone()),
            (Route::IntegersToField(p), Coeff::Int(n)) => Ok(Coeff::Int(n.mod_floor(p))),
            (Route::IntegersToRationals, Coeff::Int(n)) => {
                Ok(Coeff::Rat(BigRational::from_integer(n.clone())))
            }
            (Route::RationalsToField(p), Coeff::Rat(q)) => rational_mod_p(q, p),
            (Route::Layers { base, keep }, Coeff::Layers(v)) => {
                if *keep == 0 {
                    base.apply(&v[0])
                } else {
                    let layers = v[..*keep]
                        .iter()
                        .map(|x| base.apply(x))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Coeff::Layers(layers))
                }
            }
            _ => Err(Error::NotInRing {
                value: format!("{c:?}"),
                ring: self.source.to_string(),
            }),
        }
    }
}

/// Primality test: deterministic Miller–Rabin below 2⁶⁴, Miller–Rabin with
/// the first twelve prime bases above.
pub fn is_prime(n: &BigInt) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < &BigInt::from(2) {
        return false;
    }
    for &b in &BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    if let Some(small) = n.to_u64() {
        return BASES.iter().all(|&a| miller_rabin_u64(small, a));
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'bases: for &a in &BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_u64(n: u64, a: u64) -> bool {
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mut x = pow(a, d);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul(x, x);
        if x == n - 1 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Coeff {
        Coeff::Rat(BigRational::new(n.into(), d.into()))
    }

    fn f(p: u32) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = f(5);
        assert_eq!(f5.mul(&f5.from_int(2), &f5.from_int(3)), f5.from_int(1));
        assert_eq!(f5.from_int(-1), Coeff::Int(4.into()));
        // brute force inverse of 2 over residues
        let inv = (0..5)
            .find(|&x| f5.mul(&f5.from_int(2), &f5.from_int(x)) == f5.one())
            .unwrap();
        assert_eq!(inv, 3);
        assert_eq!(f5.inv(&f5.from_int(2)).unwrap(), f5.from_int(3));
        assert!(matches!(f5.inv(&f5.zero()), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn primality_is_checked() {
        assert!(Ring::prime_field(7).is_ok());
        assert!(matches!(Ring::prime_field(9), Err(Error::NotPrime(_))));
        assert!(matches!(Ring::prime_field(1), Err(Error::NotPrime(_))));
        let trial = |n: u64| {
            n >= 2
                && (2..n)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        for n in 0..2000u64 {
            assert_eq!(is_prime(&BigInt::from(n)), trial(n), "n = {n}");
        }
        // 2^61 - 1 and 2^89 - 1 are Mersenne primes
        assert!(is_prime(&BigInt::from((1u64 << 61) - 1)));
        assert!(is_prime(&((BigInt::one() << 89) - 1)));
        assert!(!is_prime(&((BigInt::one() << 89) + 1)));
    }

    #[test]
    fn dual_product_drops_t_squared() {
        let r = Ring::dual(&Ring::rationals()).unwrap();
        let a = r.from_layers(vec![q(2, 1), q(3, 1)]);
        let b = r.from_layers(vec![q(5, 1), q(7, 1)]);
        // (2+3t)(5+7t) = 10 + (14+15)t
        assert_eq!(r.mul(&a, &b), r.from_layers(vec![q(10, 1), q(29, 1)]));
    }

    #[test]
    fn truncated_cube_product() {
        let r = Ring::truncated(&Ring::rationals(), 3).unwrap();
        let a = r.from_layers(vec![q(1, 1), q(1, 1)]);
        let b = r.from_layers(vec![q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(
            r.mul(&a, &b),
            r.from_layers(vec![q(1, 1), q(2, 1), q(2, 1)])
        );
    }

    #[test]
    fn dual_inverse_formula() {
        let r = Ring::dual(&Ring::rationals()).unwrap();
        let (a, b) = (
            BigRational::new(3.into(), 2.into()),
            BigRational::from_integer(5.into()),
        );
        let x = r.from_layers(vec![Coeff::Rat(a.clone()), Coeff::Rat(b.clone())]);
        let expected = r.from_layers(vec![
            Coeff::Rat(a.recip()),
            Coeff::Rat(-(a.recip() * a.recip()) * b),
        ]);
        assert_eq!(r.inv(&x).unwrap(), expected);
        assert_eq!(r.mul(&x, &expected), r.one());
    }

    #[test]
    fn generator_is_not_a_unit() {
        let r = Ring::dual(&f(2)).unwrap();
        assert!(!r.is_unit(&r.generator().unwrap()));
        assert!(r.is_unit(&r.add(&r.one(), &r.generator().unwrap())));
    }

    #[test]
    fn dual_and_truncated_two_coincide() {
        let a = Ring::dual(&f(3)).unwrap();
        let b = Ring::truncated(&f(3), 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "GF(3)[t]/(t^2)");
    }

    #[test]
    fn nested_truncation_rejected() {
        let d = Ring::dual(&Ring::rationals()).unwrap();
        assert!(matches!(Ring::dual(&d), Err(Error::InvalidRing(_))));
    }

    #[test]
    fn reductions() {
        let z = Ring::integers();
        let qq = Ring::rationals();
        let f3 = f(3);
        let f5 = f(5);
        assert_eq!(
            reduce_hom(&z, &f3).unwrap().apply(&z.from_int(7)).unwrap(),
            f3.from_int(1)
        );
        let h = reduce_hom(&qq, &f5).unwrap();
        assert_eq!(h.apply(&q(2, 3)).unwrap(), f5.from_int(4));
        assert!(matches!(
            h.apply(&q(1, 5)),
            Err(Error::DenominatorDivisibleByP { .. })
        ));
        assert!(matches!(
            reduce_hom(&f5, &f3),
            Err(Error::NoCanonicalMap(..))
        ));
        assert!(matches!(
            reduce_hom(&f5, &qq),
            Err(Error::NoCanonicalMap(..))
        ));

        let t3 = Ring::truncated(&qq, 3).unwrap();
        let d5 = Ring::dual(&f5).unwrap();
        let lift = reduce_hom(&t3, &d5).unwrap();
        let x = t3.from_layers(vec![q(1, 2), q(2, 3), q(7, 1)]);
        assert_eq!(
            lift.apply(&x).unwrap(),
            d5.from_layers(vec![f5.from_int(3), f5.from_int(4)])
        );
        let kill_t = reduce_hom(&t3, &qq).unwrap();
        assert_eq!(kill_t.apply(&x).unwrap(), q(1, 2));
        assert!(reduce_hom(&d5, &t3).is_err());
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let a = RingElement::from_int(&f(5), 2);
        let b = RingElement::from_int(&f(7), 2);
        assert!(matches!(a.add(&b), Err(Error::MixedRings(..))));
        assert!(matches!(a.mul(&b), Err(Error::MixedRings(..))));
        let c = RingElement::from_int(&f(5), 3);
        assert_eq!(a.mul(&c).unwrap(), RingElement::from_int(&f(5), 1));
    }

    #[test]
    fn element_formatting() {
        let r = Ring::truncated(&Ring::rationals(), 3).unwrap();
        let x = r.from_layers(vec![q(1, 1), q(-1, 2), q(1, 1)]);
        assert_eq!(r.format_coeff(&x), "1 - 1/2*t + t^2");
    }
}
