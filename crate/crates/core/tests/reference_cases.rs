use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use tame2::catalog::{
    companion_combination, companion_factors, companion_map, cubic_identity, expand,
    nontame_family, to_sum_of_powers,
};
use tame2::{
    apply_factor_list, decide_tameness, phi_of, Certificate, Coeff, Obstruction, Poly2, Potential,
    Ring, SearchBounds, TamenessVerdict,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn nontame_family_is_rejected_with_monomial_witness() {
    for p in [2u32, 3, 5, 7] {
        let phi = nontame_family(p).unwrap();
        assert!(phi.is_special());
        match decide_tameness(&phi, &SearchBounds::default()).unwrap() {
            TamenessVerdict::NotTame(Obstruction::Monomial(w)) => {
                assert_eq!(w.monomial, (p, p));
                assert!(w.recheck());
            }
            other => panic!("p = {p}: {other:?}"),
        }
    }
}

#[test]
fn companion_map_is_tame() {
    let qq = Ring::rationals();
    assert_eq!(
        expand(&companion_combination()),
        Poly2::monomial(&qq, Coeff::Rat(rat(1, 2)), 2, 2)
    );
    let z2 = Ring::dual(&Ring::integers()).unwrap();
    let composed = apply_factor_list(&z2, &companion_factors().unwrap()).unwrap();
    let d2 = Ring::dual(&Ring::prime_field(2).unwrap()).unwrap();
    assert_eq!(composed.reduce(&d2).unwrap(), companion_map(&d2).unwrap());

    let form = to_sum_of_powers(
        &companion_combination(),
        &rat(1, 1),
        &Ring::prime_field(2).unwrap(),
    )
    .unwrap();
    let cert = Certificate::new(
        companion_map(&d2).unwrap(),
        form.certificate_factors(&d2).unwrap(),
    );
    assert!(cert.verify());

    match decide_tameness(&companion_map(&d2).unwrap(), &SearchBounds::default()).unwrap() {
        TamenessVerdict::Tame(cert) => assert!(cert.verify() && cert.is_elementary()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn cubic_identity_certificates() {
    let qq = Ring::rationals();
    assert_eq!(
        expand(&cubic_identity()),
        Poly2::monomial(&qq, Coeff::Rat(rat(2, 3)), 3, 3)
    );
    for p in [3u32, 5] {
        let field = Ring::prime_field(p).unwrap();
        let dual = Ring::dual(&field).unwrap();
        let scale = rat(p as i64 + 1, 2);
        let h = Poly2::monomial(&qq, Coeff::Rat(&scale * rat(2, 3)), 3, 3);
        let phi = phi_of(&Potential::new(h), &dual).unwrap();
        let form = to_sum_of_powers(&cubic_identity(), &scale, &field).unwrap();
        let cert = Certificate::new(phi.clone(), form.certificate_factors(&dual).unwrap());
        assert!(cert.verify(), "p = {p}");

        let start = Instant::now();
        let verdict = decide_tameness(&phi, &SearchBounds::default()).unwrap();
        eprintln!("p = {p}: {:?}", start.elapsed());
        match verdict {
            TamenessVerdict::Tame(cert) => assert!(cert.verify()),
            other => panic!("p = {p}: {other:?}"),
        }
    }
    let dual = Ring::dual(&Ring::prime_field(2).unwrap()).unwrap();
    let h = Poly2::monomial(&qq, Coeff::Rat(rat(1, 3)), 3, 3);
    let phi = phi_of(&Potential::new(h), &dual).unwrap();
    let start = Instant::now();
    let verdict = decide_tameness(&phi, &SearchBounds::default()).unwrap();
    eprintln!("p = 2: {:?}", start.elapsed());
    assert!(
        matches!(verdict, TamenessVerdict::Inconclusive { .. }),
        "{verdict:?}"
    );
}
