//! Reference maps and identities with known answers.
//!
//! * `(X + t·X^p·Y^(p−1), Y)` over `F_p[t]/(t^2)` is special but not tame.
//! * `(X + t·X²·Y, Y − t·X·Y²)` over `F_2[t]/(t^2)` is tame, with an
//!   explicit twelve-term potential `(1/2)·X²Y²` and factor list.
//! * A 35-term sum of powers of coordinates equals `(2/3)·X³Y³`, which
//!   yields tame certificates for `φ^((p+1)/3·X³Y³)` at odd primes.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::autmap::{AutoMap, Factor};
use crate::error::Result;
use crate::phih::{Coordinate, PowerTerm, SumOfPowersForm};
use crate::poly::Poly2;
use crate::ring::{reduce_hom, Coeff, Ring};

/// `(X + t·X^p·Y^(p−1), Y)` over `GF(p)[t]/(t^2)`.
pub fn nontame_family(p: u32) -> Result<AutoMap> {
    let ring = Ring::dual(&Ring::prime_field(p)?)?;
    let f = &Poly2::x(&ring) + &Poly2::monomial(&ring, ring.generator()?, p, p - 1);
    AutoMap::new(f, Poly2::y(&ring))
}

/// `(X + t·X²·Y, Y − t·X·Y²)` over the given truncated ring.
pub fn companion_map(ring: &Ring) -> Result<AutoMap> {
    let t = ring.generator()?;
    AutoMap::new(
        &Poly2::x(ring) + &Poly2::monomial(ring, t.clone(), 2, 1),
        &Poly2::y(ring) - &Poly2::monomial(ring, t, 1, 2),
    )
}

/// Coordinate of an integer elementary map.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    X,
    Y,
    /// `X + a·Y`.
    XPlusY(i64),
    /// `X + Y^j`.
    XPlusYPow(u32),
    /// `Y + X^j`.
    YPlusXPow(u32),
}

impl Shape {
    /// The coordinate, its witness factor list and which coordinate it is.
    pub fn realize(&self, ring: &Ring) -> (Poly2, Vec<Factor>, Coordinate) {
        let x = Poly2::x(ring);
        let y = Poly2::y(ring);
        match *self {
            Shape::X => (x, vec![], Coordinate::First),
            Shape::Y => (y, vec![], Coordinate::Second),
            Shape::XPlusY(a) => {
                let s = Poly2::monomial(ring, ring.from_int(a), 0, 1);
                (&x + &s, vec![Factor::ElementaryX(s)], Coordinate::First)
            }
            Shape::XPlusYPow(j) => {
                let s = Poly2::monomial(ring, ring.one(), 0, j);
                (&x + &s, vec![Factor::ElementaryX(s)], Coordinate::First)
            }
            Shape::YPlusXPow(j) => {
                let s = Poly2::monomial(ring, ring.one(), j, 0);
                (&y + &s, vec![Factor::ElementaryY(s)], Coordinate::Second)
            }
        }
    }
}

/// `c·f^k` with rational `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPower {
    pub c: BigRational,
    pub shape: Shape,
    pub k: u32,
}

impl ScaledPower {
    fn new(num: i64, den: i64, shape: Shape, k: u32) -> Self {
        Self {
            c: BigRational::new(BigInt::from(num), BigInt::from(den)),
            shape,
            k,
        }
    }
}

/// Expands `Σ c·f^k` over ℚ.
pub fn expand(terms: &[ScaledPower]) -> Poly2 {
    let qq = Ring::rationals();
    terms.iter().fold(Poly2::zero(&qq), |acc, t| {
        let (f, _, _) = t.shape.realize(&qq);
        &acc + &f.pow(t.k).scale(&Coeff::Rat(t.c.clone()))
    })
}

/// `Σ scale·c·f^k` as a sum-of-powers form over `F_p`, with `a = k·scale·c`
/// reduced mod p.
pub fn to_sum_of_powers(
    terms: &[ScaledPower],
    scale: &BigRational,
    field: &Ring,
) -> Result<SumOfPowersForm> {
    let qq = Ring::rationals();
    let hom = reduce_hom(&qq, field)?;
    let mut out = Vec::new();
    for t in terms {
        let a = &t.c * scale * BigRational::from_integer(BigInt::from(t.k));
        let (f, origin, coordinate) = t.shape.realize(field);
        out.push(PowerTerm {
            a: hom.apply(&Coeff::Rat(a))?,
            m: t.k,
            f,
            origin,
            coordinate,
        });
    }
    SumOfPowersForm::new(field, out)
}

/// Twelve terms summing to `(1/2)·X²Y²`.
pub fn companion_combination() -> Vec<ScaledPower> {
    use Shape::*;
    vec![
        ScaledPower::new(1, 4, XPlusY(1), 4),
        ScaledPower::new(-1, 3, YPlusXPow(2), 3),
        ScaledPower::new(1, 2, YPlusXPow(4), 2),
        ScaledPower::new(-1, 2, YPlusXPow(3), 2),
        ScaledPower::new(-1, 2, XPlusYPow(3), 2),
        ScaledPower::new(-1, 2, X, 8),
        ScaledPower::new(5, 6, X, 6),
        ScaledPower::new(1, 2, Y, 6),
        ScaledPower::new(-1, 4, X, 4),
        ScaledPower::new(-1, 4, Y, 4),
        ScaledPower::new(1, 3, Y, 3),
        ScaledPower::new(1, 2, X, 2),
    ]
}

/// Explicit factor list over `ℤ[t]/(t^2)` composing to
/// `(X + t·X²·Y, Y − t·X·Y²)`: `ε₀` followed by five conjugates
/// `α⁻¹∘ε∘α`.
pub fn companion_factors() -> Result<Vec<Factor>> {
    let ring = Ring::dual(&Ring::integers())?;
    let t = ring.generator()?;
    let ty = |terms: &[(i64, u32)], in_y: bool| {
        Poly2::from_terms(
            &ring,
            terms.iter().map(|&(c, e)| {
                let m = if in_y {
                    crate::Monomial::new(0, e)
                } else {
                    crate::Monomial::new(e, 0)
                };
                (m, ring.mul(&t, &ring.from_int(c)))
            }),
        )
    };
    let plain = |c: i64, e: u32, in_y: bool| {
        if in_y {
            Poly2::monomial(&ring, ring.from_int(c), 0, e)
        } else {
            Poly2::monomial(&ring, ring.from_int(c), e, 0)
        }
    };
    let ex = Factor::ElementaryX;
    let ey = Factor::ElementaryY;
    let conj = |alpha: Factor, eps: Factor| -> Result<Vec<Factor>> {
        Ok(vec![alpha.inverse()?, eps, alpha])
    };
    let mut out = vec![
        ex(ty(&[(1, 2), (-1, 3), (3, 5)], true)),
        ey(ty(&[(-1, 1), (1, 3), (-5, 5), (4, 7)], false)),
    ];
    out.extend(conj(ex(plain(1, 1, true)), ey(ty(&[(-1, 3)], false)))?);
    out.extend(conj(ey(plain(1, 2, false)), ex(ty(&[(-1, 2)], true)))?);
    out.extend(conj(ey(plain(1, 4, false)), ex(ty(&[(1, 1)], true)))?);
    out.extend(conj(ey(plain(1, 3, false)), ex(ty(&[(-1, 1)], true)))?);
    out.extend(conj(ex(plain(1, 3, true)), ey(ty(&[(1, 1)], false)))?);
    Ok(out)
}

/// Thirty-five terms summing to `(2/3)·X³Y³`.
pub fn cubic_identity() -> Vec<ScaledPower> {
    use Shape::*;
    vec![
        ScaledPower::new(-1, 6, XPlusY(1), 6),
        ScaledPower::new(1, 1, YPlusXPow(3), 4),
        ScaledPower::new(5, 4, XPlusYPow(2), 4),
        ScaledPower::new(5, 4, YPlusXPow(2), 4),
        ScaledPower::new(-2, 1, YPlusXPow(6), 3),
        ScaledPower::new(-5, 3, XPlusYPow(4), 3),
        ScaledPower::new(-5, 3, YPlusXPow(4), 3),
        ScaledPower::new(-5, 3, XPlusYPow(3), 3),
        ScaledPower::new(-5, 3, YPlusXPow(3), 3),
        ScaledPower::new(3, 1, YPlusXPow(12), 2),
        ScaledPower::new(-2, 1, YPlusXPow(9), 2),
        ScaledPower::new(5, 2, XPlusYPow(8), 2),
        ScaledPower::new(5, 2, YPlusXPow(8), 2),
        ScaledPower::new(1, 2, XPlusYPow(5), 2),
        ScaledPower::new(1, 2, YPlusXPow(5), 2),
        ScaledPower::new(-3, 1, X, 24),
        ScaledPower::new(4, 1, X, 18),
        ScaledPower::new(-5, 2, X, 16),
        ScaledPower::new(-5, 2, Y, 16),
        ScaledPower::new(2, 3, X, 12),
        ScaledPower::new(5, 3, Y, 12),
        ScaledPower::new(-1, 2, X, 10),
        ScaledPower::new(-1, 2, Y, 10),
        ScaledPower::new(5, 3, X, 9),
        ScaledPower::new(5, 3, Y, 9),
        ScaledPower::new(-5, 4, X, 8),
        ScaledPower::new(-5, 4, Y, 8),
        ScaledPower::new(1, 6, X, 6),
        ScaledPower::new(1, 6, Y, 6),
        ScaledPower::new(-5, 4, X, 4),
        ScaledPower::new(-9, 4, Y, 4),
        ScaledPower::new(10, 3, X, 3),
        ScaledPower::new(16, 3, Y, 3),
        ScaledPower::new(-3, 1, X, 2),
        ScaledPower::new(-4, 1, Y, 2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autmap::apply_factor_list;

    #[test]
    fn identities_expand() {
        let qq = Ring::rationals();
        let half = Coeff::Rat(BigRational::new(1.into(), 2.into()));
        assert_eq!(
            expand(&companion_combination()),
            Poly2::monomial(&qq, half, 2, 2)
        );
        let two_thirds = Coeff::Rat(BigRational::new(2.into(), 3.into()));
        assert_eq!(
            expand(&cubic_identity()),
            Poly2::monomial(&qq, two_thirds, 3, 3)
        );
    }

    #[test]
    fn companion_factor_list_composes() {
        let ring = Ring::dual(&Ring::integers()).unwrap();
        let phi = apply_factor_list(&ring, &companion_factors().unwrap()).unwrap();
        assert_eq!(phi, companion_map(&ring).unwrap());
    }
}
