//! Polynomial maps of the plane as group elements.
//!
//! An [`AutoMap`] `(F, G)` acts by substitution `h ↦ h(F, G)`. Composition
//! follows the usual convention: `outer ∘ inner = (F₁(F₂, G₂), G₁(F₂, G₂))`,
//! and a factor list `[f₁, …, fₙ]` denotes `f₁ ∘ ⋯ ∘ fₙ`, so the leftmost
//! factor is applied last.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{jacobian_det, Poly2};
use crate::ring::{reduce_hom, Coeff, Hom, Ring, RingElement, RingKind};
use crate::tame_field::jvdk_decompose;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoMap {
    ring: Ring,
    f: Poly2,
    g: Poly2,
}

impl AutoMap {
    pub fn new(f: Poly2, g: Poly2) -> Result<Self> {
        if f.ring() != g.ring() {
            return Err(Error::MixedRings(
                f.ring().to_string(),
                g.ring().to_string(),
            ));
        }
        Ok(Self {
            ring: f.ring().clone(),
            f,
            g,
        })
    }

    pub fn identity(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            f: Poly2::x(ring),
            g: Poly2::y(ring),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn f(&self) -> &Poly2 {
        &self.f
    }

    pub fn g(&self) -> &Poly2 {
        &self.g
    }

    pub fn into_parts(self) -> (Poly2, Poly2) {
        (self.f, self.g)
    }

    pub fn is_identity(&self) -> bool {
        self.f == Poly2::x(&self.ring) && self.g == Poly2::y(&self.ring)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AutoMap) -> Result<AutoMap> {
        if self.ring != inner.ring {
            return Err(Error::MixedRings(
                self.ring.to_string(),
                inner.ring.to_string(),
            ));
        }
        Ok(AutoMap {
            ring: self.ring.clone(),
            f: self.f.substitute(&inner.f, &inner.g)?,
            g: self.g.substitute(&inner.f, &inner.g)?,
        })
    }

    /// `h(F, G)`.
    pub fn apply(&self, h: &Poly2) -> Result<Poly2> {
        h.substitute(&self.f, &self.g)
    }

    pub fn jacobian_det(&self) -> Poly2 {
        jacobian_det(&self.f, &self.g).expect("coordinates share a ring")
    }

    /// Jacobian determinant exactly 1.
    pub fn is_special(&self) -> bool {
        self.jacobian_det() == Poly2::one(&self.ring)
    }

    /// Jacobian determinant a constant unit.
    pub fn unit_jacobian(&self) -> bool {
        let det = self.jacobian_det();
        det.is_constant() && self.ring.is_unit(&det.constant_term())
    }

    /// Largest total degree of the two coordinates.
    pub fn degree(&self) -> i64 {
        self.f.total_degree().max(self.g.total_degree())
    }

    pub fn map_coeffs(&self, hom: &Hom) -> Result<AutoMap> {
        AutoMap::new(self.f.map_coeffs(hom)?, self.g.map_coeffs(hom)?)
    }

    /// Image under the canonical map to `target`.
    pub fn reduce(&self, target: &Ring) -> Result<AutoMap> {
        self.map_coeffs(&reduce_hom(&self.ring, target)?)
    }

    /// Embeds a map over the base of `ring` into `ring`.
    pub fn embed_into(&self, ring: &Ring) -> Result<AutoMap> {
        AutoMap::new(self.f.embed_into(ring)?, self.g.embed_into(ring)?)
    }

    /// Recognizes maps that are a single factor, or an affine map.
    pub fn as_factors(&self) -> Option<Vec<Factor>> {
        let ring = &self.ring;
        let x = Poly2::x(ring);
        let y = Poly2::y(ring);
        if self.g == y {
            let f = &self.f - &x;
            if f.is_univariate_in_y() {
                return Some(vec![Factor::ElementaryX(f)]);
            }
        }
        if self.f == x {
            let g = &self.g - &y;
            if g.is_univariate_in_x() {
                return Some(vec![Factor::ElementaryY(g)]);
            }
        }
        if self.degree() <= 1 {
            let m = Matrix2::new(
                ring,
                [
                    [self.f.coeff(1, 0), self.f.coeff(0, 1)],
                    [self.g.coeff(1, 0), self.g.coeff(0, 1)],
                ],
            );
            let shift = Shift::new(ring, self.f.constant_term(), self.g.constant_term());
            let mut out = Vec::new();
            if !shift.is_identity() {
                out.push(Factor::AffineShift(shift));
            }
            if !m.is_identity() {
                out.push(Factor::Linear(m));
            }
            return Some(out);
        }
        None
    }
}

impl fmt::Display for AutoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.g)
    }
}

/// 2×2 matrix `[[a, b], [c, d]]`, acting as `(aX + bY, cX + dY)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    ring: Ring,
    entries: [[Coeff; 2]; 2],
}

impl Matrix2 {
    pub fn new(ring: &Ring, entries: [[Coeff; 2]; 2]) -> Self {
        Self {
            ring: ring.clone(),
            entries,
        }
    }

    pub fn from_ints(ring: &Ring, e: [[i64; 2]; 2]) -> Self {
        Self::new(
            ring,
            [
                [ring.from_int(e[0][0]), ring.from_int(e[0][1])],
                [ring.from_int(e[1][0]), ring.from_int(e[1][1])],
            ],
        )
    }

    pub fn identity(ring: &Ring) -> Self {
        Self::from_ints(ring, [[1, 0], [0, 1]])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn entries(&self) -> &[[Coeff; 2]; 2] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Coeff {
        &self.entries[i][j]
    }

    pub fn det(&self) -> Coeff {
        let r = &self.ring;
        let [[a, b], [c, d]] = &self.entries;
        r.sub(&r.mul(a, d), &r.mul(b, c))
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix2::identity(&self.ring)
    }

    pub fn mul(&self, other: &Matrix2) -> Matrix2 {
        let r = &self.ring;
        let e = |i: usize, j: usize| {
            r.add(
                &r.mul(&self.entries[i][0], &other.entries[0][j]),
                &r.mul(&self.entries[i][1], &other.entries[1][j]),
            )
        };
        Matrix2::new(r, [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn inverse(&self) -> Result<Matrix2> {
        let r = &self.ring;
        let det_inv = r.inv(&self.det())?;
        let [[a, b], [c, d]] = &self.entries;
        let s = |x: &Coeff| r.mul(x, &det_inv);
        Ok(Matrix2::new(
            r,
            [[s(d), s(&r.neg(b))], [s(&r.neg(c)), s(a)]],
        ))
    }

    pub fn map_coeffs(&self, hom: &Hom) -> Result<Matrix2> {
        let m = |x: &Coeff| hom.apply(x);
        let [[a, b], [c, d]] = &self.entries;
        Ok(Matrix2::new(hom.target(), [[m(a)?, m(b)?], [m(c)?, m(d)?]]))
    }

    pub fn embed_into(&self, ring: &Ring) -> Matrix2 {
        let [[a, b], [c, d]] = &self.entries;
        let e = |x: &Coeff| ring.embed_base(x);
        Matrix2::new(ring, [[e(a), e(b)], [e(c), e(d)]])
    }

    pub fn to_map(&self) -> AutoMap {
        let r = &self.ring;
        let row = |i: usize| {
            &Poly2::monomial(r, self.entries[i][0].clone(), 1, 0)
                + &Poly2::monomial(r, self.entries[i][1].clone(), 0, 1)
        };
        AutoMap::new(row(0), row(1)).expect("same ring")
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |x: &Coeff| self.ring.format_coeff(x);
        let [[a, b], [cc, d]] = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", c(a), c(b), c(cc), c(d))
    }
}

/// Translation `(X + a, Y + b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shift {
    ring: Ring,
    pub a: Coeff,
    pub b: Coeff,
}

impl Shift {
    pub fn new(ring: &Ring, a: Coeff, b: Coeff) -> Self {
        Self {
            ring: ring.clone(),
            a,
            b,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            self.ring.format_coeff(&self.a),
            self.ring.format_coeff(&self.b)
        )
    }
}

/// Generator of the tame group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `(X + f(Y), Y)`; `f` involves `Y` only.
    ElementaryX(Poly2),
    /// `(X, Y + f(X))`; `f` involves `X` only.
    ElementaryY(Poly2),
    Linear(Matrix2),
    AffineShift(Shift),
}

impl Factor {
    pub fn elementary_x(f: Poly2) -> Result<Self> {
        if !f.is_univariate_in_y() {
            return Err(Error::InvalidFactor(format!(
                "{f} is not a polynomial in Y alone"
            )));
        }
        Ok(Factor::ElementaryX(f))
    }

    pub fn elementary_y(f: Poly2) -> Result<Self> {
        if !f.is_univariate_in_x() {
            return Err(Error::InvalidFactor(format!(
                "{f} is not a polynomial in X alone"
            )));
        }
        Ok(Factor::ElementaryY(f))
    }

    pub fn linear(m: Matrix2) -> Result<Self> {
        if !m.ring().is_unit(&m.det()) {
            return Err(Error::InvalidFactor(format!(
                "linear part {m} has non-unit determinant"
            )));
        }
        Ok(Factor::Linear(m))
    }

    pub fn ring(&self) -> &Ring {
        match self {
            Factor::ElementaryX(f) | Factor::ElementaryY(f) => f.ring(),
            Factor::Linear(m) => m.ring(),
            Factor::AffineShift(s) => s.ring(),
        }
    }

    pub fn is_elementary(&self) -> bool {
        matches!(self, Factor::ElementaryX(_) | Factor::ElementaryY(_))
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Factor::ElementaryX(f) | Factor::ElementaryY(f) => f.is_zero(),
            Factor::Linear(m) => m.is_identity(),
            Factor::AffineShift(s) => s.is_identity(),
        }
    }

    /// Short tag used in certificate files.
    pub fn kind(&self) -> &'static str {
        match self {
            Factor::ElementaryX(_) => "elemX",
            Factor::ElementaryY(_) => "elemY",
            Factor::Linear(_) => "linear",
            Factor::AffineShift(_) => "shift",
        }
    }

    /// Payload text used in certificate files.
    pub fn data(&self) -> String {
        match self {
            Factor::ElementaryX(f) | Factor::ElementaryY(f) => f.to_string(),
            Factor::Linear(m) => m.to_string(),
            Factor::AffineShift(s) => s.to_string(),
        }
    }

    pub fn to_map(&self) -> AutoMap {
        self.apply_after(&AutoMap::identity(self.ring()))
            .expect("factor applied to identity over its own ring")
    }

    /// `self ∘ inner`, without general substitution.
    pub fn apply_after(&self, inner: &AutoMap) -> Result<AutoMap> {
        if self.ring() != inner.ring() {
            return Err(Error::MixedRings(
                self.ring().to_string(),
                inner.ring().to_string(),
            ));
        }
        let (f, g) = (inner.f(), inner.g());
        let ring = inner.ring();
        let (nf, ng) = match self {
            Factor::ElementaryX(p) => (f + &p.substitute(f, g)?, g.clone()),
            Factor::ElementaryY(p) => (f.clone(), g + &p.substitute(f, g)?),
            Factor::Linear(m) => {
                let [[a, b], [c, d]] = m.entries();
                (&f.scale(a) + &g.scale(b), &f.scale(c) + &g.scale(d))
            }
            Factor::AffineShift(s) => (
                f + &Poly2::constant(ring, s.a.clone()),
                g + &Poly2::constant(ring, s.b.clone()),
            ),
        };
        AutoMap::new(nf, ng)
    }

    pub fn inverse(&self) -> Result<Factor> {
        Ok(match self {
            Factor::ElementaryX(f) => Factor::ElementaryX(-f),
            Factor::ElementaryY(f) => Factor::ElementaryY(-f),
            Factor::Linear(m) => Factor::Linear(
                m.inverse()
                    .map_err(|_| Error::NotInvertible(format!("linear part {m} is singular")))?,
            ),
            Factor::AffineShift(s) => {
                Factor::AffineShift(Shift::new(s.ring(), s.ring().neg(&s.a), s.ring().neg(&s.b)))
            }
        })
    }

    pub fn map_coeffs(&self, hom: &Hom) -> Result<Factor> {
        Ok(match self {
            Factor::ElementaryX(f) => Factor::ElementaryX(f.map_coeffs(hom)?),
            Factor::ElementaryY(f) => Factor::ElementaryY(f.map_coeffs(hom)?),
            Factor::Linear(m) => Factor::Linear(m.map_coeffs(hom)?),
            Factor::AffineShift(s) => {
                Factor::AffineShift(Shift::new(hom.target(), hom.apply(&s.a)?, hom.apply(&s.b)?))
            }
        })
    }

    /// Embeds a factor over the base of `ring` into `ring`.
    pub fn embed_into(&self, ring: &Ring) -> Result<Factor> {
        if self.ring() == ring {
            return Ok(self.clone());
        }
        Ok(match self {
            Factor::ElementaryX(f) => Factor::ElementaryX(f.embed_into(ring)?),
            Factor::ElementaryY(f) => Factor::ElementaryY(f.embed_into(ring)?),
            Factor::Linear(m) => {
                if ring.base() != m.ring() {
                    return Err(Error::MixedRings(m.ring().to_string(), ring.to_string()));
                }
                Factor::Linear(m.embed_into(ring))
            }
            Factor::AffineShift(s) => {
                if ring.base() != s.ring() {
                    return Err(Error::MixedRings(s.ring().to_string(), ring.to_string()));
                }
                Factor::AffineShift(Shift::new(
                    ring,
                    ring.embed_base(&s.a),
                    ring.embed_base(&s.b),
                ))
            }
        })
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind(), self.data())
    }
}

/// `factors[0] ∘ factors[1] ∘ ⋯`; the identity for an empty list.
pub fn apply_factor_list(ring: &Ring, factors: &[Factor]) -> Result<AutoMap> {
    let mut acc = AutoMap::identity(ring);
    for factor in factors.iter().rev() {
        acc = factor.apply_after(&acc)?;
    }
    Ok(acc)
}

/// Factor list of the inverse map.
pub fn invert_factors(factors: &[Factor]) -> Result<Vec<Factor>> {
    factors.iter().rev().map(Factor::inverse).collect()
}

/// Merges adjacent factors of the same kind and drops identities.
pub fn simplify_factors(factors: Vec<Factor>) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::with_capacity(factors.len());
    for factor in factors {
        if factor.is_identity() {
            continue;
        }
        let merged = match (out.last(), &factor) {
            (Some(Factor::ElementaryX(a)), Factor::ElementaryX(b)) => {
                Some(Factor::ElementaryX(a + b))
            }
            (Some(Factor::ElementaryY(a)), Factor::ElementaryY(b)) => {
                Some(Factor::ElementaryY(a + b))
            }
            (Some(Factor::Linear(a)), Factor::Linear(b)) => Some(Factor::Linear(a.mul(b))),
            (Some(Factor::AffineShift(a)), Factor::AffineShift(b)) => {
                let r = a.ring();
                Some(Factor::AffineShift(Shift::new(
                    r,
                    r.add(&a.a, &b.a),
                    r.add(&a.b, &b.b),
                )))
            }
            _ => None,
        };
        match merged {
            Some(m) => {
                out.pop();
                if !m.is_identity() {
                    out.push(m);
                }
            }
            None => out.push(factor),
        }
    }
    out
}

/// A factor list claimed to compose to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: AutoMap,
    pub factors: Vec<Factor>,
}

impl Certificate {
    pub fn new(target: AutoMap, factors: Vec<Factor>) -> Self {
        Self { target, factors }
    }

    pub fn ring(&self) -> &Ring {
        self.target.ring()
    }

    /// Exact check that the factors compose to the target.
    pub fn verify(&self) -> bool {
        if self.factors.iter().any(|f| f.ring() != self.ring()) {
            return false;
        }
        apply_factor_list(self.ring(), &self.factors)
            .map(|m| m == self.target)
            .unwrap_or(false)
    }

    pub fn is_elementary(&self) -> bool {
        self.factors.iter().all(Factor::is_elementary)
    }
}

pub fn verify_certificate(cert: &Certificate) -> bool {
    cert.verify()
}

/// Inverse of `phi`, checked on both sides before it is returned.
pub fn try_invert(phi: &AutoMap) -> Result<AutoMap> {
    let psi = invert_candidate(phi)?;
    let id = AutoMap::identity(phi.ring());
    if phi.compose(&psi)? != id || psi.compose(phi)? != id {
        return Err(Error::NotInvertible(
            "candidate inverse failed verification".into(),
        ));
    }
    Ok(psi)
}

fn invert_candidate(phi: &AutoMap) -> Result<AutoMap> {
    let ring = phi.ring();
    if let Some(factors) = phi.as_factors() {
        return apply_factor_list(ring, &invert_factors(&factors)?);
    }
    if ring.is_field() {
        let cert = jvdk_decompose(phi).map_err(|e| match e {
            Error::NotAnAutomorphism(reason) => Error::NotInvertible(reason),
            other => other,
        })?;
        return apply_factor_list(ring, &invert_factors(&cert.factors)?);
    }
    if *ring.kind() == RingKind::Integers {
        let qq = Ring::rationals();
        let over_q = try_invert(&phi.map_coeffs(&reduce_hom(ring, &qq)?)?)?;
        let back = |p: &Poly2| -> Result<Poly2> {
            let mut terms = Vec::with_capacity(p.len());
            for (m, c) in p.terms() {
                match c {
                    Coeff::Rat(q) if q.is_integer() => terms.push((*m, Coeff::Int(q.to_integer()))),
                    _ => {
                        return Err(Error::NotInvertible(format!(
                            "inverse has the non-integral coefficient {}",
                            qq.format_coeff(c)
                        )))
                    }
                }
            }
            Ok(Poly2::from_terms(ring, terms))
        };
        return AutoMap::new(back(over_q.f())?, back(over_q.g())?);
    }
    if ring.is_truncated() {
        let base = ring.base();
        let reduced = phi.reduce(base)?;
        let reduced_inv = try_invert(&reduced).map_err(|e| match e {
            Error::UnsupportedRing { .. } => e,
            other => Error::NotInvertible(format!("reduction mod t is not invertible: {other}")),
        })?;
        let mut psi = reduced_inv.embed_into(ring)?;
        let x = Poly2::x(ring);
        let y = Poly2::y(ring);
        // Each correction ψ ← (X − δ₁, Y − δ₂)∘ψ, where ψ∘φ = (X + δ₁, Y + δ₂),
        // doubles the t-adic order of the error.
        for _ in 0..=ring.nil_len() {
            let rho = psi.compose(phi)?;
            let d1 = rho.f() - &x;
            let d2 = rho.g() - &y;
            if d1.is_zero() && d2.is_zero() {
                return Ok(psi);
            }
            let c1 = d1.substitute(psi.f(), psi.g())?;
            let c2 = d2.substitute(psi.f(), psi.g())?;
            psi = AutoMap::new(psi.f() - &c1, psi.g() - &c2)?;
        }
        return Err(Error::NotInvertible(
            "correction of the lifted inverse did not converge".into(),
        ));
    }
    Err(Error::unsupported(
        ring,
        "no general inversion algorithm over this ring",
    ))
}

/// `(X − 2Yw − rw², Y + rw)` with `w = rX + Y²`.
pub fn nagata(r: &RingElement) -> AutoMap {
    let ring = r.ring();
    let rc = Poly2::constant(ring, r.value().clone());
    let x = Poly2::x(ring);
    let y = Poly2::y(ring);
    let w = &(&rc * &x) + &y.pow(2);
    let two = Poly2::constant(ring, ring.from_int(2));
    let f = &(&x - &(&(&two * &y) * &w)) - &(&rc * &w.pow(2));
    let g = &y + &(&rc * &w);
    AutoMap::new(f, g).expect("same ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn qq() -> Ring {
        Ring::rationals()
    }

    fn poly(ring: &Ring, terms: &[(i64, u32, u32)]) -> Poly2 {
        Poly2::from_terms(
            ring,
            terms
                .iter()
                .map(|&(c, x, y)| (crate::Monomial::new(x, y), ring.from_int(c))),
        )
    }

    fn map(ring: &Ring, f: &[(i64, u32, u32)], g: &[(i64, u32, u32)]) -> AutoMap {
        AutoMap::new(poly(ring, f), poly(ring, g)).unwrap()
    }

    #[test]
    fn elementary_inverse_pair() {
        let r = qq();
        let a = map(&r, &[(1, 1, 0), (1, 0, 2)], &[(1, 0, 1)]);
        let b = map(&r, &[(1, 1, 0), (-1, 0, 2)], &[(1, 0, 1)]);
        assert!(a.compose(&b).unwrap().is_identity());
    }

    #[test]
    fn linear_elementary_product() {
        // (X + aY, Y)∘(X, Y + bX) = (X + aY + abX, Y + bX) with a = 2, b = 3
        let r = qq();
        let outer = map(&r, &[(1, 1, 0), (2, 0, 1)], &[(1, 0, 1)]);
        let inner = map(&r, &[(1, 1, 0)], &[(1, 0, 1), (3, 1, 0)]);
        let expected = map(&r, &[(7, 1, 0), (2, 0, 1)], &[(1, 0, 1), (3, 1, 0)]);
        assert_eq!(outer.compose(&inner).unwrap(), expected);
    }

    #[test]
    fn integer_inverse_goes_through_rationals() {
        let z = Ring::integers();
        let a = map(&z, &[(1, 1, 0), (1, 0, 2)], &[(1, 0, 1)]);
        let b = map(&z, &[(1, 1, 0)], &[(1, 0, 1), (1, 2, 0)]);
        let phi = a.compose(&b).unwrap();
        let inv = try_invert(&phi).unwrap();
        assert!(phi.compose(&inv).unwrap().is_identity());
        let half = map(&z, &[(2, 1, 0), (1, 0, 2)], &[(1, 0, 1)]);
        assert!(matches!(try_invert(&half), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn dual_perturbations_add() {
        let base = Ring::prime_field(3).unwrap();
        let r = Ring::dual(&base).unwrap();
        let t = Poly2::constant(&r, r.generator().unwrap());
        let (x, y) = (Poly2::x(&r), Poly2::y(&r));
        let p = &x.pow(2) * &y;
        let q = &y.pow(3) + &x;
        let a = AutoMap::new(&x + &(&t * &p), &y + &(&t * &q)).unwrap();
        let b = AutoMap::new(&x + &(&t * &q), &y - &(&t * &x)).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab, b.compose(&a).unwrap());
        assert_eq!(
            ab,
            AutoMap::new(&x + &(&t * &(&p + &q)), &y + &(&t * &(&q - &x))).unwrap()
        );
    }

    #[test]
    fn dual_inverse_flips_sign() {
        let base = Ring::prime_field(2).unwrap();
        let r = Ring::dual(&base).unwrap();
        let t = Poly2::constant(&r, r.generator().unwrap());
        let (x, y) = (Poly2::x(&r), Poly2::y(&r));
        let p = &x.pow(2) * &y;
        let q = &x * &y.pow(2);
        let phi = AutoMap::new(&x + &(&t * &p), &y + &(&t * &q)).unwrap();
        let inv = try_invert(&phi).unwrap();
        assert_eq!(inv, AutoMap::new(&x - &(&t * &p), &y - &(&t * &q)).unwrap());
        let id = AutoMap::identity(&r);
        assert_eq!(try_invert(&id).unwrap(), id);
    }

    #[test]
    fn nagata_inverse_over_rationals() {
        let r = qq();
        let phi = nagata(&RingElement::from_int(&r, 1));
        let inv = try_invert(&phi).unwrap();
        assert!(phi.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn integer_nagata_inverts() {
        let r = Ring::integers();
        let phi = nagata(&RingElement::from_int(&r, 1));
        let inv = try_invert(&phi).unwrap();
        assert!(inv.compose(&phi).unwrap().is_identity());
        let e = map(&r, &[(1, 1, 0), (5, 0, 3)], &[(1, 0, 1)]);
        assert!(try_invert(&e).is_ok());
    }

    #[test]
    fn special_and_unit_jacobian() {
        let r = qq();
        let d = map(&r, &[(2, 1, 0)], &[(1, 0, 1)]);
        assert!(!d.is_special());
        assert!(d.unit_jacobian());
        let sq = map(&r, &[(1, 2, 0)], &[(1, 0, 1)]);
        assert!(!sq.is_special());
        assert!(!sq.unit_jacobian());
        for p in [2u32, 3, 5, 7] {
            let base = Ring::prime_field(p).unwrap();
            let dr = Ring::dual(&base).unwrap();
            let f = &Poly2::x(&dr) + &Poly2::monomial(&dr, dr.generator().unwrap(), p, p - 1);
            let phi = AutoMap::new(f, Poly2::y(&dr)).unwrap();
            assert!(phi.is_special());
        }
    }

    #[test]
    fn nagata_examples() {
        let r = qq();
        let zero = nagata(&RingElement::from_int(&r, 0));
        assert_eq!(zero, map(&r, &[(1, 1, 0), (-2, 0, 3)], &[(1, 0, 1)]));
        for n in [1i64, 2, -3] {
            let re = RingElement::from_int(&r, n);
            let phi = nagata(&re);
            assert!(phi.is_special());
            let w = poly(&r, &[(n, 1, 0), (1, 0, 2)]);
            assert_eq!(phi.apply(&w).unwrap(), w);
        }
        let half = RingElement::new(
            &r,
            Coeff::Rat(BigRational::new(BigInt::from(1), BigInt::from(2))),
        )
        .unwrap();
        assert!(nagata(&half).is_special());
    }

    #[test]
    fn factor_lists() {
        let r = qq();
        assert!(apply_factor_list(&r, &[]).unwrap().is_identity());
        let fs = vec![
            Factor::ElementaryX(poly(&r, &[(1, 0, 2)])),
            Factor::ElementaryY(poly(&r, &[(3, 1, 0)])),
            Factor::Linear(Matrix2::from_ints(&r, [[0, -1], [1, 0]])),
            Factor::AffineShift(Shift::new(&r, r.from_int(1), r.from_int(-2))),
        ];
        let phi = apply_factor_list(&r, &fs).unwrap();
        let by_compose = fs
            .iter()
            .map(Factor::to_map)
            .reduce(|a, b| a.compose(&b).unwrap())
            .unwrap();
        assert_eq!(phi, by_compose);
        let inv = apply_factor_list(&r, &invert_factors(&fs).unwrap()).unwrap();
        assert!(phi.compose(&inv).unwrap().is_identity());

        let cert = Certificate::new(phi.clone(), fs.clone());
        assert!(cert.verify());
        let mut bad = fs;
        bad[1] = Factor::ElementaryY(poly(&r, &[(-3, 1, 0)]));
        assert!(!Certificate::new(phi, bad).verify());
    }

    #[test]
    fn simplification_merges_neighbours() {
        let r = qq();
        let a = Factor::ElementaryX(poly(&r, &[(1, 0, 2)]));
        let b = Factor::ElementaryX(poly(&r, &[(-1, 0, 2)]));
        let c = Factor::ElementaryY(poly(&r, &[(1, 1, 0)]));
        assert_eq!(
            simplify_factors(vec![c.clone(), a.clone(), b.clone(), c.clone()]),
            vec![Factor::ElementaryY(poly(&r, &[(2, 1, 0)]))]
        );
        assert_eq!(simplify_factors(vec![a.clone(), c.clone()]), vec![a, c]);
    }

    #[test]
    fn factor_form_detection() {
        let r = qq();
        let aff = map(
            &r,
            &[(2, 1, 0), (1, 0, 1), (3, 0, 0)],
            &[(1, 1, 0), (1, 0, 1)],
        );
        let fs = aff.as_factors().unwrap();
        assert_eq!(apply_factor_list(&r, &fs).unwrap(), aff);
        assert!(nagata(&RingElement::from_int(&r, 1)).as_factors().is_none());
    }
}
