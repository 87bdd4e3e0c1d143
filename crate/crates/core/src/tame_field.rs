//! Tame decomposition over fields and elementary factorization of SL₂ over
//! local rings.

use crate::autmap::{simplify_factors, AutoMap, Certificate, Factor, Matrix2};
use crate::error::{Error, Result};
use crate::phih::lift_decompose;
use crate::poly::Poly2;
use crate::ring::{Coeff, Ring};

/// One degree-lowering elementary step of [`jvdk_decompose_traced`].
/// Degrees are `deg F + deg G` before and after the step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub factor: Factor,
    pub degree_before: i64,
    pub degree_after: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn is_strictly_decreasing(&self) -> bool {
        self.steps.iter().all(|s| s.degree_after < s.degree_before)
            && self
                .steps
                .windows(2)
                .all(|w| w[1].degree_before <= w[0].degree_after)
    }
}

pub fn jvdk_decompose(phi: &AutoMap) -> Result<Certificate> {
    jvdk_decompose_traced(phi).map(|(cert, _)| cert)
}

/// Degree reduction over a field. While some coordinate has degree above
/// one, the coordinate of larger degree (`F` on ties) must have leading
/// form `c·lf(other)^k`, and loses `c·other^k`. The affine remainder splits
/// into a translation and a linear map.
pub fn jvdk_decompose_traced(phi: &AutoMap) -> Result<(Certificate, ReductionTrace)> {
    let ring = phi.ring();
    if !ring.is_field() {
        return Err(Error::unsupported(ring, "degree reduction needs a field"));
    }
    let mut factors = Vec::new();
    let mut trace = ReductionTrace::default();
    let (mut f, mut g) = (phi.f().clone(), phi.g().clone());
    while f.total_degree().max(g.total_degree()) > 1 {
        if f.total_degree() <= 0 || g.total_degree() <= 0 {
            return Err(Error::NotAnAutomorphism(format!(
                "a coordinate of {phi} reduces to a constant"
            )));
        }
        let reduce_f = f.total_degree() >= g.total_degree();
        let (hi, lo) = if reduce_f { (&f, &g) } else { (&g, &f) };
        let (dh, dl) = (hi.total_degree(), lo.total_degree());
        if dh % dl != 0 {
            return Err(Error::NotAnAutomorphism(format!(
                "degree {dl} does not divide degree {dh}"
            )));
        }
        let k = (dh / dl) as u32;
        let lf = hi.leading_form()?;
        let lo_lf = lo.leading_form()?;
        let c = leading_ratio(ring, &lf, &lo_lf.pow(k)).ok_or_else(|| {
            Error::NotAnAutomorphism(format!(
                "leading form {lf} is not a multiple of ({lo_lf})^{k}"
            ))
        })?;
        let reduced = hi - &lo.pow(k).scale(&c);
        let after = reduced.total_degree() + dl;
        let step = if reduce_f {
            f = reduced;
            Factor::ElementaryX(Poly2::monomial(ring, c, 0, k))
        } else {
            g = reduced;
            Factor::ElementaryY(Poly2::monomial(ring, c, k, 0))
        };
        trace.steps.push(ReductionStep {
            factor: step.clone(),
            degree_before: dh + dl,
            degree_after: after,
        });
        factors.push(step);
    }
    let m = Matrix2::new(
        ring,
        [
            [f.coeff(1, 0), f.coeff(0, 1)],
            [g.coeff(1, 0), g.coeff(0, 1)],
        ],
    );
    if !ring.is_unit(&m.det()) {
        return Err(Error::NotAnAutomorphism(format!(
            "linear part {m} is singular"
        )));
    }
    let shift = crate::autmap::Shift::new(ring, f.constant_term(), g.constant_term());
    if !shift.is_identity() {
        factors.push(Factor::AffineShift(shift));
    }
    if !m.is_identity() {
        factors.push(Factor::Linear(m));
    }
    let cert = Certificate::new(phi.clone(), factors);
    if !cert.verify() {
        return Err(Error::Internal(
            "degree reduction does not recompose".into(),
        ));
    }
    Ok((cert, trace))
}

/// `c` with `lf = c·target`, if it exists.
fn leading_ratio(ring: &Ring, lf: &Poly2, target: &Poly2) -> Option<Coeff> {
    let (m1, c1) = lf.leading_term()?;
    let (m2, c2) = target.leading_term()?;
    if m1 != m2 {
        return None;
    }
    let c = ring.div(c1, c2).ok()?;
    (target.scale(&c) == *lf).then_some(c)
}

/// `Upper(r) = [[1, r], [0, 1]]`, `Lower(r) = [[1, 0], [r, 1]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryMatrix {
    Upper(Coeff),
    Lower(Coeff),
}

impl ElementaryMatrix {
    pub fn to_matrix(&self, ring: &Ring) -> Matrix2 {
        match self {
            ElementaryMatrix::Upper(r) => {
                Matrix2::new(ring, [[ring.one(), r.clone()], [ring.zero(), ring.one()]])
            }
            ElementaryMatrix::Lower(r) => {
                Matrix2::new(ring, [[ring.one(), ring.zero()], [r.clone(), ring.one()]])
            }
        }
    }

    /// The corresponding elementary map: `(X + rY, Y)` or `(X, Y + rX)`.
    pub fn to_factor(&self, ring: &Ring) -> Factor {
        match self {
            ElementaryMatrix::Upper(r) => {
                Factor::ElementaryX(Poly2::monomial(ring, r.clone(), 0, 1))
            }
            ElementaryMatrix::Lower(r) => {
                Factor::ElementaryY(Poly2::monomial(ring, r.clone(), 1, 0))
            }
        }
    }
}

/// Product of a list of elementary matrices, left to right.
pub fn elementary_product(ring: &Ring, list: &[ElementaryMatrix]) -> Matrix2 {
    list.iter().fold(Matrix2::identity(ring), |acc, e| {
        acc.mul(&e.to_matrix(ring))
    })
}

/// Writes a determinant-one matrix over a local ring as a product of
/// elementary matrices. The first unit among the entries (1,1), (1,2),
/// (2,1), (2,2) clears its row and column; off-diagonal pivots are moved
/// with `[[0, 1], [−1, 0]] = U(1)·L(−1)·U(1)` and the remaining
/// `diag(a, a⁻¹)` expands as `U(a)·L(−a⁻¹)·U(a−1)·L(1)·U(−1)`.
pub fn sl2_to_elementary(m: &Matrix2) -> Result<Vec<ElementaryMatrix>> {
    let ring = m.ring();
    if !ring.is_local() {
        return Err(Error::unsupported(
            ring,
            "elementary factorization needs a local ring",
        ));
    }
    let det = m.det();
    if !ring.is_one(&det) {
        return Err(Error::DeterminantNotOne(ring.format_coeff(&det)));
    }
    let rotation = || {
        vec![
            ElementaryMatrix::Upper(ring.one()),
            ElementaryMatrix::Lower(ring.from_int(-1)),
            ElementaryMatrix::Upper(ring.one()),
        ]
    };
    let w_inv = Matrix2::from_ints(ring, [[0, -1], [1, 0]]);
    let [[a, b], [c, d]] = m.entries();
    let mut out = Vec::new();
    if ring.is_unit(a) {
        push_nonzero(&mut out, ElementaryMatrix::Lower(ring.div(c, a)?));
        out.extend(diagonal(ring, a)?);
        push_nonzero(&mut out, ElementaryMatrix::Upper(ring.div(b, a)?));
    } else if ring.is_unit(b) {
        out.extend(sl2_to_elementary(&m.mul(&w_inv))?);
        out.extend(rotation());
    } else if ring.is_unit(c) {
        out.extend(rotation());
        out.extend(sl2_to_elementary(&w_inv.mul(m))?);
    } else if ring.is_unit(d) {
        push_nonzero(&mut out, ElementaryMatrix::Upper(ring.div(b, d)?));
        out.extend(diagonal(ring, &ring.inv(d)?)?);
        push_nonzero(&mut out, ElementaryMatrix::Lower(ring.div(c, d)?));
    } else {
        return Err(Error::NoUnitEntry);
    }
    Ok(out)
}

fn push_nonzero(out: &mut Vec<ElementaryMatrix>, e: ElementaryMatrix) {
    let (ElementaryMatrix::Upper(r) | ElementaryMatrix::Lower(r)) = &e;
    if !r.is_zero() {
        out.push(e);
    }
}

/// Five-factor expansion of `diag(a, a⁻¹)`; empty for `a = 1`.
fn diagonal(ring: &Ring, a: &Coeff) -> Result<Vec<ElementaryMatrix>> {
    if ring.is_one(a) {
        return Ok(Vec::new());
    }
    Ok(vec![
        ElementaryMatrix::Upper(a.clone()),
        ElementaryMatrix::Lower(ring.neg(&ring.inv(a)?)),
        ElementaryMatrix::Upper(ring.sub(a, &ring.one())),
        ElementaryMatrix::Lower(ring.one()),
        ElementaryMatrix::Upper(ring.from_int(-1)),
    ])
}

/// All-elementary certificate for a map with Jacobian determinant 1.
///
/// Over a field this is degree reduction followed by elementary expansion
/// of the linear and translation parts. Over a truncation, t-free maps are
/// handled over the base field; maps with a nilpotent part need residue
/// field ℚ and go through [`lift_decompose`].
pub fn sa_to_ea_factors(phi: &AutoMap) -> Result<Certificate> {
    let ring = phi.ring();
    if !phi.is_special() {
        return Err(Error::NotSpecial(phi.jacobian_det().to_string()));
    }
    if ring.is_field() {
        let cert = jvdk_decompose(phi)?;
        let mut factors = Vec::new();
        for factor in cert.factors {
            match factor {
                Factor::Linear(m) => {
                    factors.extend(sl2_to_elementary(&m)?.iter().map(|e| e.to_factor(ring)))
                }
                Factor::AffineShift(s) => {
                    factors.push(Factor::ElementaryX(Poly2::constant(ring, s.a.clone())));
                    factors.push(Factor::ElementaryY(Poly2::constant(ring, s.b.clone())));
                }
                other => factors.push(other),
            }
        }
        let cert = Certificate::new(phi.clone(), simplify_factors(factors));
        if !cert.verify() {
            return Err(Error::Internal(
                "elementary expansion does not recompose".into(),
            ));
        }
        return Ok(cert);
    }
    if ring.is_truncated() && ring.base().is_field() {
        let base = ring.base();
        let reduced = phi.reduce(base)?;
        if reduced.embed_into(ring)? == *phi {
            let inner = sa_to_ea_factors(&reduced)?;
            let factors = inner
                .factors
                .iter()
                .map(|f| f.embed_into(ring))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Certificate::new(phi.clone(), factors));
        }
        if ring.contains_rationals() {
            return lift_decompose(phi);
        }
    }
    Err(Error::unsupported(
        ring,
        "elementary factorization is available over fields and over truncations of QQ",
    ))
}

/// Lifts factors over the base of `ring` and recomposes them.
pub(crate) fn embed_factors(ring: &Ring, factors: &[Factor]) -> Result<Vec<Factor>> {
    factors.iter().map(|f| f.embed_into(ring)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autmap::nagata;
    use crate::ring::RingElement;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn poly(ring: &Ring, terms: &[(i64, u32, u32)]) -> Poly2 {
        Poly2::from_terms(
            ring,
            terms
                .iter()
                .map(|&(c, x, y)| (crate::Monomial::new(x, y), ring.from_int(c))),
        )
    }

    #[test]
    fn rotation_gives_three_factors() {
        let r = Ring::rationals();
        let w = Matrix2::from_ints(&r, [[0, 1], [-1, 0]]);
        let list = sl2_to_elementary(&w).unwrap();
        assert_eq!(
            list,
            vec![
                ElementaryMatrix::Upper(r.one()),
                ElementaryMatrix::Lower(r.from_int(-1)),
                ElementaryMatrix::Upper(r.one()),
            ]
        );
        assert_eq!(elementary_product(&r, &list), w);
        assert!(sl2_to_elementary(&Matrix2::identity(&r))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn diagonal_gives_five_factors() {
        let f5 = Ring::prime_field(5).unwrap();
        for a in [2i64, 3, 4] {
            let ai = f5.inv(&f5.from_int(a)).unwrap();
            let m = Matrix2::new(&f5, [[f5.from_int(a), f5.zero()], [f5.zero(), ai]]);
            let list = sl2_to_elementary(&m).unwrap();
            assert_eq!(list.len(), 5);
            assert_eq!(elementary_product(&f5, &list), m);
        }
    }

    #[test]
    fn determinant_checked() {
        let r = Ring::rationals();
        let m = Matrix2::from_ints(&r, [[2, 0], [0, 1]]);
        assert!(matches!(
            sl2_to_elementary(&m),
            Err(Error::DeterminantNotOne(_))
        ));
    }

    #[test]
    fn every_pivot_position() {
        let f7 = Ring::prime_field(7).unwrap();
        for e in [
            [[0, 1], [-1, 3]],
            [[0, 2], [3, 0]],
            [[0, 3], [2, 5]],
            [[1, 2], [3, 0]],
        ] {
            let m = Matrix2::from_ints(&f7, e);
            if !f7.is_one(&m.det()) {
                continue;
            }
            assert_eq!(elementary_product(&f7, &sl2_to_elementary(&m).unwrap()), m);
        }
    }

    #[test]
    fn decompose_products() {
        let r = Ring::rationals();
        let phi = AutoMap::new(poly(&r, &[(1, 1, 0)]), poly(&r, &[(1, 0, 1), (1, 2, 0)]))
            .unwrap()
            .compose(
                &AutoMap::new(poly(&r, &[(1, 1, 0), (1, 0, 1)]), poly(&r, &[(1, 0, 1)])).unwrap(),
            )
            .unwrap();
        let (cert, trace) = jvdk_decompose_traced(&phi).unwrap();
        assert!(cert.verify());
        assert!(trace.is_strictly_decreasing());

        let sq = AutoMap::new(poly(&r, &[(1, 2, 0)]), poly(&r, &[(1, 0, 1)])).unwrap();
        assert!(matches!(
            jvdk_decompose(&sq),
            Err(Error::NotAnAutomorphism(_))
        ));
        let xx = AutoMap::new(poly(&r, &[(1, 1, 0)]), poly(&r, &[(1, 1, 0)])).unwrap();
        assert!(matches!(
            jvdk_decompose(&xx),
            Err(Error::NotAnAutomorphism(_))
        ));

        let n = nagata(&RingElement::from_int(&r, 1));
        assert!(jvdk_decompose(&n).unwrap().verify());
    }

    #[test]
    fn elementary_certificates() {
        let r = Ring::rationals();
        let rot = AutoMap::new(poly(&r, &[(1, 0, 1)]), poly(&r, &[(-1, 1, 0)])).unwrap();
        let cert = sa_to_ea_factors(&rot).unwrap();
        assert_eq!(cert.factors.len(), 3);
        assert!(cert.is_elementary() && cert.verify());
        assert!(sa_to_ea_factors(&AutoMap::identity(&r))
            .unwrap()
            .factors
            .is_empty());
        let scaled = AutoMap::new(poly(&r, &[(2, 1, 0)]), poly(&r, &[(1, 0, 1)])).unwrap();
        assert!(matches!(
            sa_to_ea_factors(&scaled),
            Err(Error::NotSpecial(_))
        ));

        let third = Coeff::Rat(BigRational::new(BigInt::from(7), BigInt::from(3)));
        let m = Matrix2::new(
            &r,
            [
                [third.clone(), r.zero()],
                [r.zero(), r.inv(&third).unwrap()],
            ],
        );
        let list = sl2_to_elementary(&m).unwrap();
        assert_eq!(list.len(), 5);
        assert_eq!(elementary_product(&r, &list), m);
    }
}
