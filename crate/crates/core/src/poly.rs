//! Sparse bivariate polynomials over a [`Ring`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], ordered graded
//! lexicographically with `X > Y`, so iteration order (and hence text
//! output) is canonical. Zero coefficients are never stored.
//!
//! The arithmetic operators (`+`, `-`, `*` on references) panic when the
//! operands live in different rings; the `try_*` methods report
//! [`Error::MixedRings`] instead.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{Coeff, Hom, Ring};

/// Exponent pair `X^x Y^y`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.y + other.y)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly2 {
    ring: Ring,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly2 {
    pub fn zero(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        Self::monomial(ring, c, 0, 0)
    }

    pub fn monomial(ring: &Ring, c: Coeff, x: u32, y: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(x, y), c);
        }
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn x(ring: &Ring) -> Self {
        Self::monomial(ring, ring.one(), 1, 0)
    }

    pub fn y(ring: &Ring) -> Self {
        Self::monomial(ring, ring.one(), 0, 1)
    }

    /// Sums the given terms; repeated monomials accumulate.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: u32, y: u32) -> Coeff {
        self.terms
            .get(&Monomial::new(x, y))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(0, 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// Whether only powers of `Y` occur.
    pub fn is_univariate_in_y(&self) -> bool {
        self.terms.keys().all(|m| m.x == 0)
    }

    pub fn is_univariate_in_x(&self) -> bool {
        self.terms.keys().all(|m| m.y == 0)
    }

    fn add_term(&mut self, m: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = self.ring.add(existing, c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_ring(&self, other: &Poly2) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly2) -> Result<Poly2> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly2) -> Result<Poly2> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly2) -> Result<Poly2> {
        self.check_ring(other)?;
        if self.ring.is_truncated() {
            return Ok(self.mul_layered(other));
        }
        let ring = &self.ring;
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ring.mul(ca, cb);
                if prod.is_zero() {
                    continue;
                }
                acc.entry(ma.times(mb))
                    .and_modify(|e| *e = ring.add(e, &prod))
                    .or_insert(prod);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Poly2 {
            ring: ring.clone(),
            terms: acc,
        })
    }

    /// Product over a truncated ring, one pair of t-layers at a time, so
    /// that pairs landing beyond the truncation are never formed.
    fn mul_layered(&self, other: &Poly2) -> Poly2 {
        let len = self.ring.nil_len();
        let a: Vec<Poly2> = (0..len).map(|k| self.layer(k)).collect();
        let b: Vec<Poly2> = (0..len).map(|k| other.layer(k)).collect();
        let base = self.ring.base();
        let mut layers: BTreeMap<Monomial, Vec<Coeff>> = BTreeMap::new();
        for r in 0..len {
            let mut sum = Poly2::zero(base);
            for i in 0..=r {
                if a[i].is_zero() || b[r - i].is_zero() {
                    continue;
                }
                sum = &sum + &(&a[i] * &b[r - i]);
            }
            for (m, c) in sum.terms {
                layers.entry(m).or_insert_with(|| vec![base.zero(); len])[r] = c;
            }
        }
        Poly2 {
            ring: self.ring.clone(),
            terms: layers
                .into_iter()
                .map(|(m, v)| (m, self.ring.from_layers(v)))
                .collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Coeff) -> Poly2 {
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (*m, self.ring.mul(x, c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Poly2 {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly2 {
        let mut base = self.clone();
        let mut acc = Poly2::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal `∂/∂X`; exponents act through their image in the ring.
    pub fn partial_x(&self) -> Poly2 {
        Poly2::from_terms(
            &self.ring,
            self.terms.iter().filter(|(m, _)| m.x > 0).map(|(m, c)| {
                (
                    Monomial::new(m.x - 1, m.y),
                    self.ring.mul_int(c, m.x as i64),
                )
            }),
        )
    }

    pub fn partial_y(&self) -> Poly2 {
        Poly2::from_terms(
            &self.ring,
            self.terms.iter().filter(|(m, _)| m.y > 0).map(|(m, c)| {
                (
                    Monomial::new(m.x, m.y - 1),
                    self.ring.mul_int(c, m.y as i64),
                )
            }),
        )
    }

    /// `self(f, g)`: powers of `g` are shared across rows, then Horner in `f`.
    pub fn substitute(&self, f: &Poly2, g: &Poly2) -> Result<Poly2> {
        self.check_ring(f)?;
        self.check_ring(g)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        let max_y = self.degree_y() as usize;
        let mut g_pows = Vec::with_capacity(max_y + 1);
        g_pows.push(Poly2::one(&self.ring));
        for j in 1..=max_y {
            let next = &g_pows[j - 1] * g;
            g_pows.push(next);
        }
        let mut rows: BTreeMap<u32, Poly2> = BTreeMap::new();
        for (m, c) in &self.terms {
            let row = rows.entry(m.x).or_insert_with(|| Poly2::zero(&self.ring));
            let piece = g_pows[m.y as usize].scale(c);
            *row = &*row + &piece;
        }
        let max_x = self.degree_x();
        let mut acc = Poly2::zero(&self.ring);
        for i in (0..=max_x).rev() {
            if !acc.is_zero() {
                acc = &acc * f;
            }
            if let Some(row) = rows.get(&i) {
                acc = &acc + row;
            }
        }
        Ok(acc)
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .next_back()
            .map(|m| m.degree() as i64)
            .unwrap_or(-1)
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    /// Largest term in the graded order.
    pub fn leading_term(&self) -> Option<(Monomial, &Coeff)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Sum of the terms of top total degree.
    pub fn leading_form(&self) -> Result<Poly2> {
        let d = self.total_degree();
        if d < 0 {
            return Err(Error::ZeroPolynomial);
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() as i64 == d)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Ok(Poly2 {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly2 {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Poly2 {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Coefficient-wise image under a ring homomorphism.
    pub fn map_coeffs(&self, hom: &Hom) -> Result<Poly2> {
        if *hom.source() != self.ring {
            return Err(Error::MixedRings(
                hom.source().to_string(),
                self.ring.to_string(),
            ));
        }
        let mut out = Poly2::zero(hom.target());
        for (m, c) in &self.terms {
            out.add_term(*m, &hom.apply(c)?);
        }
        Ok(out)
    }

    /// Embeds a polynomial over the base of `ring` as a t-free polynomial.
    pub fn embed_into(&self, ring: &Ring) -> Result<Poly2> {
        if self.ring == *ring {
            return Ok(self.clone());
        }
        if *ring.base() != self.ring {
            return Err(Error::MixedRings(self.ring.to_string(), ring.to_string()));
        }
        Ok(Poly2 {
            ring: ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, ring.embed_base(c)))
                .collect(),
        })
    }

    /// Coefficient of `t^k`, as a polynomial over the base ring.
    pub fn layer(&self, k: usize) -> Poly2 {
        let base = self.ring.base();
        Poly2::from_terms(
            base,
            self.terms.iter().map(|(m, c)| (*m, self.ring.layer(c, k))),
        )
    }

    /// Lowest `k` with a nonzero `t^k` layer (`None` for zero).
    pub fn valuation(&self) -> Option<usize> {
        (0..self.ring.nil_len()).find(|&k| !self.layer(k).is_zero())
    }
}

impl Add for &Poly2 {
    type Output = Poly2;

    fn add(self, rhs: &Poly2) -> Poly2 {
        self.try_add(rhs).expect("polynomials over different rings")
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;

    fn sub(self, rhs: &Poly2) -> Poly2 {
        self.try_sub(rhs).expect("polynomials over different rings")
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;

    fn mul(self, rhs: &Poly2) -> Poly2 {
        self.try_mul(rhs).expect("polynomials over different rings")
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;

    fn neg(self) -> Poly2 {
        Poly2 {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, self.ring.neg(c)))
                .collect(),
        }
    }
}

/// `∂F/∂X·∂G/∂Y − ∂F/∂Y·∂G/∂X`.
pub fn jacobian_det(f: &Poly2, g: &Poly2) -> Result<Poly2> {
    JacobianMatrix::new(f, g).map(|j| j.det())
}

/// Matrix of first partials of `(F, G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianMatrix {
    pub entries: [[Poly2; 2]; 2],
}

impl JacobianMatrix {
    pub fn new(f: &Poly2, g: &Poly2) -> Result<Self> {
        f.check_ring(g)?;
        Ok(Self {
            entries: [
                [f.partial_x(), f.partial_y()],
                [g.partial_x(), g.partial_y()],
            ],
        })
    }

    pub fn det(&self) -> Poly2 {
        let [[a, b], [c, d]] = &self.entries;
        &(a * d) - &(b * c)
    }
}

impl fmt::Display for Poly2 {
    /// Layer by layer in `t`, each layer in descending monomial order,
    /// e.g. `X + t*X^2*Y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let base = self.ring.base();
        let mut first = true;
        for k in 0..self.ring.nil_len() {
            for (m, c) in self.terms.iter().rev() {
                let layer = self.ring.layer(c, k);
                if layer.is_zero() {
                    continue;
                }
                let neg = layer.is_negative();
                let mag = if neg { base.neg(&layer) } else { layer };
                if first {
                    if neg {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                first = false;
                let mut parts: Vec<String> = Vec::new();
                let bare = k == 0 && *m == Monomial::ONE;
                if bare || !base.is_one(&mag) {
                    parts.push(base.format_coeff(&mag));
                }
                match k {
                    0 => {}
                    1 => parts.push("t".into()),
                    _ => parts.push(format!("t^{k}")),
                }
                match m.x {
                    0 => {}
                    1 => parts.push("X".into()),
                    e => parts.push(format!("X^{e}")),
                }
                match m.y {
                    0 => {}
                    1 => parts.push("Y".into()),
                    e => parts.push(format!("Y^{e}")),
                }
                f.write_str(&parts.join("*"))?;
            }
        }
        Ok(())
    }
}
