//! Potentials and the maps `φ^(h) = (X + t·∂h/∂Y, Y − t·∂h/∂X)`.
//!
//! Over `k[t]/(t^m)` with `k ⊇ ℚ`, every special map splits into
//! elementary factors: decompose the reduction mod `t`, then clear the
//! remaining nilpotent layers one power of `t` at a time. Each layer is
//! `φ^(t^j·p)` for a potential `p`, whose monomials are rewritten as sums
//! of powers of linear forms and realized as conjugated elementary maps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::autmap::{
    apply_factor_list, invert_factors, simplify_factors, AutoMap, Certificate, Factor,
};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Monomial, Poly2};
use crate::ring::{reduce_hom, Coeff, Ring, RingKind};
use crate::tame_field::{embed_factors, sa_to_ea_factors};

/// A polynomial together with its two partial derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    h: Poly2,
    hx: Poly2,
    hy: Poly2,
}

impl Potential {
    pub fn new(h: Poly2) -> Self {
        let hx = h.partial_x();
        let hy = h.partial_y();
        Self { h, hx, hy }
    }

    pub fn h(&self) -> &Poly2 {
        &self.h
    }

    pub fn h_x(&self) -> &Poly2 {
        &self.hx
    }

    pub fn h_y(&self) -> &Poly2 {
        &self.hy
    }

    pub fn ring(&self) -> &Ring {
        self.h.ring()
    }

    pub fn add(&self, other: &Potential) -> Result<Potential> {
        Ok(Potential::new(self.h.try_add(&other.h)?))
    }
}

/// `Σ c·t^k·p` for a polynomial `p` over the base of `ring`.
fn times_t(ring: &Ring, p: &Poly2, k: usize) -> Result<Poly2> {
    let tk = Poly2::constant(ring, ring.generator_pow(k)?);
    Ok(&p.embed_into(ring)? * &tk)
}

/// `(X + r·∂h/∂Y, Y − r·∂h/∂X)` for `h` over the base of `r`'s ring.
fn perturbation(ring: &Ring, r: &Coeff, h: &Poly2) -> Result<AutoMap> {
    let rp = Poly2::constant(ring, r.clone());
    let hy = &h.partial_y().embed_into(ring)? * &rp;
    let hx = &h.partial_x().embed_into(ring)? * &rp;
    AutoMap::new(&Poly2::x(ring) + &hy, &Poly2::y(ring) - &hx)
}

/// `φ^(h)` over a dual-number ring; the partials of `h` are reduced into
/// its base ring.
pub fn phi_of(h: &Potential, ring: &Ring) -> Result<AutoMap> {
    if !ring.is_dual() {
        return Err(Error::InvalidRing(format!(
            "{ring} is not a dual-number ring base[t]/(t^2)"
        )));
    }
    let hom = reduce_hom(h.ring(), ring.base())?;
    let hy = h.h_y().map_coeffs(&hom)?;
    let hx = h.h_x().map_coeffs(&hom)?;
    let phi = AutoMap::new(
        &Poly2::x(ring) + &times_t(ring, &hy, 1)?,
        &Poly2::y(ring) - &times_t(ring, &hx, 1)?,
    )?;
    if !phi.is_special() {
        return Err(Error::Internal(format!("{phi} is not special")));
    }
    Ok(phi)
}

/// The potential `h(f, g)` with `α⁻¹∘φ^(h)∘α = φ^(h(f, g))` for
/// `α = (f, g)` of Jacobian determinant 1.
pub fn conjugate_phi(h: &Potential, alpha: &AutoMap) -> Result<Potential> {
    if !alpha.is_special() {
        return Err(Error::NotSpecial(alpha.jacobian_det().to_string()));
    }
    Ok(Potential::new(alpha.apply(h.h())?))
}

/// `p` with `∂p/∂Y = g` and `∂p/∂X = −h`, given `∂g/∂X + ∂h/∂Y = 0`:
/// `p = −∫₀^X h dX + ∫₀^Y g(0, s) ds`.
pub fn find_potential(g: &Poly2, h: &Poly2) -> Result<Potential> {
    let ring = g.ring();
    let div = g.partial_x().try_add(&h.partial_y())?;
    if !div.is_zero() {
        return Err(Error::NotClosed(div.to_string()));
    }
    let integrate = |m: Monomial, c: &Coeff, in_x: bool| -> Result<(Monomial, Coeff)> {
        let e = if in_x { m.x + 1 } else { m.y + 1 };
        let inv = ring.inv(&ring.from_int(e)).map_err(|_| {
            Error::CharacteristicObstruction(format!("exponent {e} is not invertible in {ring}"))
        })?;
        let mono = if in_x {
            Monomial::new(m.x + 1, m.y)
        } else {
            Monomial::new(m.x, m.y + 1)
        };
        Ok((mono, ring.mul(c, &inv)))
    };
    let mut terms = Vec::new();
    for (m, c) in h.terms() {
        let (mono, c) = integrate(*m, c, true)?;
        terms.push((mono, ring.neg(&c)));
    }
    for (m, c) in g.terms().filter(|(m, _)| m.x == 0) {
        terms.push(integrate(*m, c, false)?);
    }
    let p = Potential::new(Poly2::from_terms(ring, terms));
    if p.h_y() != g || p.h_x() != &-h {
        return Err(Error::Internal(
            "integrated potential fails its partials".into(),
        ));
    }
    Ok(p)
}

/// Writes `X^n Y^m` as `Σ c·(X + aY)^(n+m)` with nodes `a = 0, 1, …, n+m`;
/// pairs with `c = 0` are omitted.
pub fn monomial_to_powers(n: u32, m: u32) -> Vec<(BigRational, BigRational)> {
    let k = n + m;
    let qq = Ring::rationals();
    let rat = |x: BigInt| Coeff::Rat(BigRational::from_integer(x));
    // Σ_a c_a a^j = δ_{j,m} / C(k, m),  j = 0..k
    let rows: Vec<Vec<Coeff>> = (0..=k)
        .map(|j| (0..=k).map(|a| rat(BigInt::from(a).pow(j))).collect())
        .collect();
    let rhs: Vec<Coeff> = (0..=k)
        .map(|j| {
            if j == m {
                Coeff::Rat(BigRational::new(
                    BigInt::one(),
                    binomial(BigInt::from(k), BigInt::from(m)),
                ))
            } else {
                qq.zero()
            }
        })
        .collect();
    let sol = linalg::solve(&qq, &rows, &rhs)
        .expect("rational solve")
        .expect("Vandermonde system is regular");
    let out: Vec<(BigRational, BigRational)> = sol
        .into_iter()
        .enumerate()
        .filter_map(|(a, c)| match c {
            Coeff::Rat(c) if !c.is_zero() => Some((BigRational::from_integer(a.into()), c)),
            _ => None,
        })
        .collect();
    debug_assert!(powers_expand_to(&out, n, m));
    out
}

fn powers_expand_to(pairs: &[(BigRational, BigRational)], n: u32, m: u32) -> bool {
    let qq = Ring::rationals();
    let mut sum = Poly2::zero(&qq);
    for (a, c) in pairs {
        let lin = &Poly2::x(&qq) + &Poly2::monomial(&qq, Coeff::Rat(a.clone()), 0, 1);
        sum = &sum + &lin.pow(n + m).scale(&Coeff::Rat(c.clone()));
    }
    sum == Poly2::monomial(&qq, qq.one(), n, m)
}

/// Elementary factors of `φ^(r·X^n Y^m) = (X + r·∂/∂Y, Y − r·∂/∂X)` for
/// `r` with `r² = 0` in a truncation of ℚ.
pub fn factor_phi_monomial(r: &crate::RingElement, n: u32, m: u32) -> Result<Certificate> {
    let ring = r.ring();
    if !ring.is_truncated() {
        return Err(Error::InvalidRing(format!(
            "{ring} has no nilpotent generator"
        )));
    }
    if !ring.contains_rationals() {
        return Err(Error::CharacteristicObstruction(format!(
            "{ring} does not contain the rationals"
        )));
    }
    let rv = r.value();
    if !ring.mul(rv, rv).is_zero() {
        return Err(Error::NotSquareZero(r.to_string()));
    }
    let base = ring.base();
    let h = Poly2::monomial(base, base.one(), n, m);
    let target = perturbation(ring, rv, &h)?;
    let factors = potential_factors(ring, &h, rv)?;
    let cert = Certificate::new(target, factors);
    if !cert.verify() {
        return Err(Error::Internal(
            "monomial factorization does not recompose".into(),
        ));
    }
    Ok(cert)
}

/// Elementary factors whose product agrees with `(X + s·p_Y, Y − s·p_X)`
/// up to terms in `s²`. Homogeneous parts of `p` are expanded in powers of
/// `X + aY`, node coefficients are pooled per degree, and each node
/// contributes `(X − aY, Y)∘(X, Y − k·s·d·X^(k−1))∘(X + aY, Y)`; pure powers
/// of `Y` become a single `(X + k·s·d·Y^(k−1), Y)`.
fn potential_factors(ring: &Ring, p: &Poly2, s: &Coeff) -> Result<Vec<Factor>> {
    let units = potential_units(ring.base(), p)?;
    let scaled = |c: &Coeff| ring.mul(&ring.embed_base(c), s);
    let mut factors = Vec::new();
    for u in &units {
        match u {
            Unit::YPower { k, c } => {
                factors.push(Factor::ElementaryX(Poly2::monomial(
                    ring,
                    scaled(c),
                    0,
                    k - 1,
                )));
            }
            Unit::Node { a, k, c } => {
                let beta = Factor::ElementaryY(Poly2::monomial(ring, scaled(c), k - 1, 0));
                if a.is_zero() {
                    factors.push(beta);
                    continue;
                }
                let ac = ring.embed_base(a);
                factors.push(Factor::ElementaryX(Poly2::monomial(
                    ring,
                    ring.neg(&ac),
                    0,
                    1,
                )));
                factors.push(beta);
                factors.push(Factor::ElementaryX(Poly2::monomial(ring, ac, 0, 1)));
            }
        }
    }
    Ok(simplify_factors(factors))
}

/// One near-identity piece of a layer, `id + s·e` with `e` over the base.
enum Unit {
    /// `(X + s·c·Y^(k−1), Y)`.
    YPower { k: u32, c: Coeff },
    /// `(X − aY, Y)∘(X, Y + s·c·X^(k−1))∘(X + aY, Y)`.
    Node { a: Coeff, k: u32, c: Coeff },
}

impl Unit {
    /// `e`, so that the unit is `id + s·e`.
    fn deviation(&self, base: &Ring) -> (Poly2, Poly2) {
        match self {
            Unit::YPower { k, c } => (
                Poly2::monomial(base, c.clone(), 0, k - 1),
                Poly2::zero(base),
            ),
            Unit::Node { a, k, c } => {
                let l = &Poly2::x(base) + &Poly2::monomial(base, a.clone(), 0, 1);
                let w = l.pow(k - 1).scale(c);
                (w.scale(&base.neg(a)), w)
            }
        }
    }

    /// `De·v` for the Jacobian matrix `De` of the deviation.
    fn derivative_along(&self, base: &Ring, v: &(Poly2, Poly2)) -> (Poly2, Poly2) {
        match self {
            Unit::YPower { k, c } => {
                if *k < 2 {
                    return (Poly2::zero(base), Poly2::zero(base));
                }
                let d = Poly2::monomial(base, base.mul_int(c, (k - 1) as i64), 0, k - 2);
                (&d * &v.1, Poly2::zero(base))
            }
            Unit::Node { a, k, c } => {
                if *k < 2 {
                    return (Poly2::zero(base), Poly2::zero(base));
                }
                // e = (−a, 1)·w(X + aY), so De·v = (−a, 1)·w'(X + aY)·(v₁ + a·v₂).
                let l = &Poly2::x(base) + &Poly2::monomial(base, a.clone(), 0, 1);
                let dw = l.pow(k - 2).scale(&base.mul_int(c, (k - 1) as i64));
                let along = &dw * &(&v.0 + &v.1.scale(a));
                (along.scale(&base.neg(a)), along)
            }
        }
    }
}

/// Units in factor-list order whose deviations sum to `(p_Y, −p_X)`.
fn potential_units(base: &Ring, p: &Poly2) -> Result<Vec<Unit>> {
    // degree → (Y-power coefficient, node → pooled coefficient)
    let mut by_degree: BTreeMap<u32, (Coeff, BTreeMap<BigInt, Coeff>)> = BTreeMap::new();
    for (mono, c) in p.terms() {
        let k = mono.degree();
        if k == 0 {
            continue;
        }
        let entry = by_degree
            .entry(k)
            .or_insert_with(|| (base.zero(), BTreeMap::new()));
        if mono.x == 0 {
            entry.0 = base.add(&entry.0, c);
            continue;
        }
        for (a, w) in monomial_to_powers(mono.x, mono.y) {
            let w = base.from_rational(&w)?;
            let slot = entry.1.entry(a.to_integer()).or_insert_with(|| base.zero());
            *slot = base.add(slot, &base.mul(c, &w));
        }
    }
    let mut units = Vec::new();
    for (k, (ycoef, nodes)) in by_degree {
        if !ycoef.is_zero() {
            units.push(Unit::YPower {
                k,
                c: base.mul_int(&ycoef, k as i64),
            });
        }
        for (a, d) in nodes {
            if d.is_zero() {
                continue;
            }
            units.push(Unit::Node {
                a: base.from_int(a),
                k,
                c: base.neg(&base.mul_int(&d, k as i64)),
            });
        }
    }
    Ok(units)
}

/// Second-order part `C` of `u₁∘⋯∘uₙ = id + s·Σeᵢ + s²·C`, valid when
/// `s³ = 0`: `C = Σ_{i<j} Deᵢ·eⱼ`.
fn second_order(base: &Ring, units: &[Unit]) -> (Poly2, Poly2) {
    let mut tail = (Poly2::zero(base), Poly2::zero(base));
    let mut c = (Poly2::zero(base), Poly2::zero(base));
    for u in units.iter().rev() {
        let (d1, d2) = u.derivative_along(base, &tail);
        c = (&c.0 + &d1, &c.1 + &d2);
        let (e1, e2) = u.deviation(base);
        tail = (&tail.0 + &e1, &tail.1 + &e2);
    }
    c
}

/// All-elementary certificate for a special map over `ℚ[t]/(t^m)`.
pub fn lift_decompose(phi: &AutoMap) -> Result<Certificate> {
    let ring = phi.ring();
    let len = match ring.kind() {
        RingKind::Truncated { base, len } => match base.kind() {
            RingKind::Rationals => *len,
            RingKind::PrimeField(p) => {
                return Err(Error::CharacteristicObstruction(format!(
                    "residue field GF({p}) has positive characteristic"
                )))
            }
            _ => return Err(Error::unsupported(ring, "residue ring must be QQ")),
        },
        _ => {
            return Err(Error::unsupported(
                ring,
                "expected a truncation QQ[t]/(t^m)",
            ))
        }
    };
    if !phi.is_special() {
        return Err(Error::NotSpecial(phi.jacobian_det().to_string()));
    }
    let base = ring.base();
    let prefix = sa_to_ea_factors(&phi.reduce(base)?)?;
    let mut factors = embed_factors(ring, &prefix.factors)?;
    let mut residual = peel(phi, &factors)?;
    let x = Poly2::x(ring);
    let y = Poly2::y(ring);
    for j in 1..len {
        let g1 = (residual.f() - &x).layer(j);
        let g2 = (residual.g() - &y).layer(j);
        if g1.is_zero() && g2.is_zero() {
            continue;
        }
        let p = find_potential(&g1, &g2)?;
        let tj = ring.generator_pow(j)?;
        let layer = potential_factors(ring, p.h(), &tj)?;
        let middle_clear = (j + 1..2 * j)
            .all(|r| residual.f().layer(r).is_zero() && residual.g().layer(r).is_zero());
        residual = if 2 * j >= len {
            // Maps that are the identity mod t^j compose additively mod t^2j,
            // so the layer factors only remove layer j.
            let tj = Poly2::constant(ring, tj);
            AutoMap::new(
                residual.f() - &(&g1.embed_into(ring)? * &tj),
                residual.g() - &(&g2.embed_into(ring)? * &tj),
            )?
        } else if len <= 3 * j && middle_clear {
            // With residual = id + t^j·A + t^2j·B and layer product
            // L = id + t^j·A + t^2j·C, one gets L⁻¹∘residual = id + t^2j·(B − C).
            let (c1, c2) = second_order(ring.base(), &potential_units(ring.base(), p.h())?);
            let tj = Poly2::constant(ring, tj);
            let t2j = Poly2::constant(ring, ring.generator_pow(2 * j)?);
            AutoMap::new(
                &(residual.f() - &(&g1.embed_into(ring)? * &tj)) - &(&c1.embed_into(ring)? * &t2j),
                &(residual.g() - &(&g2.embed_into(ring)? * &tj)) - &(&c2.embed_into(ring)? * &t2j),
            )?
        } else {
            peel(&residual, &layer)?
        };
        factors.extend(layer);
    }
    if !residual.is_identity() {
        return Err(Error::Internal(format!(
            "residual {residual} survives lifting"
        )));
    }
    let cert = Certificate::new(phi.clone(), factors);
    if !cert.verify() {
        return Err(Error::Internal(
            "lifted factorization does not recompose".into(),
        ));
    }
    Ok(cert)
}

/// `(f₁∘⋯∘fₙ)⁻¹∘φ`.
fn peel(phi: &AutoMap, factors: &[Factor]) -> Result<AutoMap> {
    let mut acc = phi.clone();
    for f in factors {
        acc = f.inverse()?.apply_after(&acc)?;
    }
    Ok(acc)
}

/// Which coordinate of its witness map a power term's `f` is.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Coordinate {
    First,
    Second,
}

/// `(a/m)·f^m`, with `origin` a factor list whose composite has `f` as its
/// `coordinate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerTerm {
    pub a: Coeff,
    pub m: u32,
    pub f: Poly2,
    pub origin: Vec<Factor>,
    pub coordinate: Coordinate,
}

/// `H = Σ (aᵢ/mᵢ)·fᵢ^mᵢ` over a coefficient ring; only the partials of `H`
/// are formed, so `mᵢ` need not be invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumOfPowersForm {
    pub ring: Ring,
    pub terms: Vec<PowerTerm>,
}

impl SumOfPowersForm {
    pub fn new(ring: &Ring, terms: Vec<PowerTerm>) -> Result<Self> {
        for term in &terms {
            if term.m == 0 {
                return Err(Error::InvalidFactor("power must be positive".into()));
            }
            let witness = apply_factor_list(ring, &term.origin)?;
            let coord = match term.coordinate {
                Coordinate::First => witness.f(),
                Coordinate::Second => witness.g(),
            };
            if *coord != term.f {
                return Err(Error::InvalidFactor(format!(
                    "{} is not the recorded coordinate of its witness",
                    term.f
                )));
            }
        }
        Ok(Self {
            ring: ring.clone(),
            terms,
        })
    }

    /// `(∂H/∂X, ∂H/∂Y)`.
    pub fn partials(&self) -> (Poly2, Poly2) {
        let mut hx = Poly2::zero(&self.ring);
        let mut hy = Poly2::zero(&self.ring);
        for term in &self.terms {
            let base = term.f.pow(term.m - 1).scale(&term.a);
            hx = &hx + &(&base * &term.f.partial_x());
            hy = &hy + &(&base * &term.f.partial_y());
        }
        (hx, hy)
    }

    /// `(X + t·∂H/∂Y, Y − t·∂H/∂X)` over `ring`, a dual ring over `self.ring`.
    pub fn phi(&self, ring: &Ring) -> Result<AutoMap> {
        let (hx, hy) = self.partials();
        AutoMap::new(
            &Poly2::x(ring) + &times_t(ring, &hy, 1)?,
            &Poly2::y(ring) - &times_t(ring, &hx, 1)?,
        )
    }

    /// Per term `α⁻¹∘ε∘α` with `α` the witness map and `ε` the elementary
    /// map `(X, Y − t·a·X^(m−1))` or `(X + t·a·Y^(m−1), Y)`.
    pub fn certificate_factors(&self, ring: &Ring) -> Result<Vec<Factor>> {
        let t = ring.generator()?;
        let mut out = Vec::new();
        for term in &self.terms {
            let origin = embed_factors(ring, &term.origin)?;
            let ta = ring.mul(&t, &ring.embed_base(&term.a));
            let eps = match term.coordinate {
                Coordinate::First => {
                    Factor::ElementaryY(Poly2::monomial(ring, ring.neg(&ta), term.m - 1, 0))
                }
                Coordinate::Second => Factor::ElementaryX(Poly2::monomial(ring, ta, 0, term.m - 1)),
            };
            out.extend(invert_factors(&origin)?);
            out.push(eps);
            out.extend(origin);
        }
        Ok(out)
    }
}
