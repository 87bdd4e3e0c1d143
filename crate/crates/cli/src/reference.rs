//! Replays the catalogued computations with known answers.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use tame2::catalog::{
    companion_combination, companion_factors, companion_map, cubic_identity, expand,
    nontame_family, to_sum_of_powers,
};
use tame2::{
    apply_factor_list, decide_tameness, phi_of, Certificate, Coeff, Obstruction, Poly2, Potential,
    Ring, SearchBounds, TamenessVerdict,
};

use crate::Report;

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn check(name: impl Into<String>, f: impl FnOnce() -> tame2::Result<(bool, String)>) -> Check {
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn nontame(p: u32) -> Check {
    check(format!("nontame family p={p}"), || {
        let phi = nontame_family(p)?;
        Ok(match decide_tameness(&phi, &SearchBounds::default())? {
            TamenessVerdict::NotTame(Obstruction::Monomial(w)) => (
                w.monomial == (p, p) && w.recheck(),
                format!("not_tame, witness X^{}*Y^{}", w.monomial.0, w.monomial.1),
            ),
            other => (false, format!("verdict {}", other.label())),
        })
    })
}

fn companion() -> Vec<Check> {
    let qq = Ring::rationals();
    vec![
        check("companion combination = 1/2*X^2*Y^2", || {
            let sum = expand(&companion_combination());
            Ok((
                sum == Poly2::monomial(&qq, Coeff::Rat(rat(1, 2)), 2, 2),
                format!("{} terms expand to {sum}", companion_combination().len()),
            ))
        }),
        check("companion factors over ZZ[t]/(t^2), mod 2", || {
            let z2 = Ring::dual(&Ring::integers())?;
            let d2 = Ring::dual(&Ring::prime_field(2u32)?)?;
            let factors = companion_factors()?;
            let composed = apply_factor_list(&z2, &factors)?.reduce(&d2)?;
            Ok((
                composed == companion_map(&d2)?,
                format!("{} factors reduce to {composed}", factors.len()),
            ))
        }),
        check("companion map tame at p=2", || {
            let d2 = Ring::dual(&Ring::prime_field(2u32)?)?;
            Ok(
                match decide_tameness(&companion_map(&d2)?, &SearchBounds::default())? {
                    TamenessVerdict::Tame(cert) => (
                        cert.verify(),
                        format!("tame, {} factors", cert.factors.len()),
                    ),
                    other => (false, format!("verdict {}", other.label())),
                },
            )
        }),
    ]
}

fn cubic() -> Vec<Check> {
    let qq = Ring::rationals();
    let mut out = vec![check("cubic identity = 2/3*X^3*Y^3", || {
        let sum = expand(&cubic_identity());
        Ok((
            sum == Poly2::monomial(&qq, Coeff::Rat(rat(2, 3)), 3, 3),
            format!("{} terms expand to {sum}", cubic_identity().len()),
        ))
    })];
    for p in [3u32, 5] {
        out.push(check(format!("cubic certificate p={p}"), || {
            let field = Ring::prime_field(p)?;
            let dual = Ring::dual(&field)?;
            let scale = rat(p as i64 + 1, 2);
            let h = Poly2::monomial(&qq, Coeff::Rat(&scale * rat(2, 3)), 3, 3);
            let phi = phi_of(&Potential::new(h), &dual)?;
            let form = to_sum_of_powers(&cubic_identity(), &scale, &field)?;
            let explicit = Certificate::new(phi.clone(), form.certificate_factors(&dual)?);
            let searched = match decide_tameness(&phi, &SearchBounds::default())? {
                TamenessVerdict::Tame(cert) => cert.verify(),
                _ => false,
            };
            Ok((
                explicit.verify() && searched,
                format!(
                    "{} explicit factors, search agrees: {searched}",
                    explicit.factors.len()
                ),
            ))
        }));
    }
    out.push(check("cubic potential p=2", || {
        let dual = Ring::dual(&Ring::prime_field(2u32)?)?;
        let h = Poly2::monomial(&qq, Coeff::Rat(rat(1, 3)), 3, 3);
        let phi = phi_of(&Potential::new(h), &dual)?;
        let verdict = decide_tameness(&phi, &SearchBounds::default())?;
        Ok((
            matches!(verdict, TamenessVerdict::Inconclusive { .. }),
            format!("verdict {}", verdict.label()),
        ))
    }));
    out
}

pub(crate) fn run() -> Report {
    let mut checks: Vec<Check> = [2, 3, 5, 7].into_iter().map(nontame).collect();
    checks.extend(companion());
    checks.extend(cubic());
    let passed = checks.iter().filter(|c| c.passed).count();
    let total = checks.len();
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut human = String::new();
    for c in &checks {
        human.push_str(&format!(
            "{}  {:<width$}  {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    human.push_str(&format!("{passed}/{total} checks passed\n"));
    let value = json!({
        "checks": checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect::<Value>(),
        "passed": passed,
        "total": total,
    });
    Report {
        code: if passed == total { 0 } else { 1 },
        value,
        human,
    }
}
