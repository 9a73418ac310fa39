//! Symbolic verification of the integration theory axioms for one sequence.

use std::fmt;

use cut_dga::{two_cuts, Sequence};
use exact_kernel::{q, FieldElement};

use crate::cycle::{admissible_check, differential, ext, is_external, product, Cycle};
use crate::theory::Engine;
use crate::CycleError;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub theory: String,
    pub sequence: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {}", self.theory, self.sequence)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {mark} {}", c.name)?;
            } else {
                writeln!(f, "  {mark} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

fn equality(name: String, lhs: &Cycle, rhs: &Cycle) -> Check {
    let passed = lhs == rhs;
    let detail = if passed {
        String::new()
    } else {
        format!("lhs = {lhs}; rhs = {rhs}")
    };
    Check {
        name,
        passed,
        detail,
    }
}

/// `dρ_k(A) = -δρ_{k+1}(A) + (-1)^k Σ ρ_k(A')δρ₁(A'')`, both sides.
pub fn condition_three(
    engine: &Engine,
    a: &Sequence,
    k: usize,
) -> Result<(Cycle, Cycle), CycleError> {
    let lhs = differential(&engine.rho_k(a, k)?)?;
    let mut rhs = -&engine.delta_rho(a, k + 1)?;
    let sign = if k.is_multiple_of(2) { q(1) } else { q(-1) };
    for (outer, inner) in two_cuts(a) {
        if inner.is_loop() || outer.n() < k {
            continue;
        }
        let term = product(&engine.rho_k(&outer, k)?, &engine.rho(&inner)?);
        rhs.add_scaled(&term, &sign);
    }
    Ok((lhs, rhs))
}

/// `d(δρ_k(A)) = (-1)^k Σ δρ_k(A')δρ₁(A'')`, both sides.
pub fn delta_differential(
    engine: &Engine,
    a: &Sequence,
    k: usize,
) -> Result<(Cycle, Cycle), CycleError> {
    let lhs = differential(&engine.delta_rho(a, k)?)?;
    let mut rhs = Cycle::zero();
    let sign = if k.is_multiple_of(2) { q(1) } else { q(-1) };
    for (outer, inner) in two_cuts(a) {
        if inner.is_loop() || outer.n() < k {
            continue;
        }
        let term = product(&engine.delta_rho(&outer, k)?, &engine.rho(&inner)?);
        rhs.add_scaled(&term, &sign);
    }
    Ok((lhs, rhs))
}

/// Whether `ρ_n(A)` is a single `Alt(c₁(s₁-a₁),…,c_n(s_n-a_n))`.
fn top_shape(z: &Cycle, a: &Sequence) -> Result<(), String> {
    let n = a.n();
    let mut terms = z.terms();
    let (Some((t, _)), None) = (terms.next(), terms.next()) else {
        return Err(format!("expected one term, got {z}"));
    };
    let mut oriented = vec![None; n];
    for f in t.coords() {
        let mut found = false;
        for (j, slot) in oriented.iter_mut().enumerate() {
            let lin = &FieldElement::var(&ext(j + 1)) - &a.interior()[j];
            for (g, inverted) in [(f.clone(), false), (f.inv().map_err(|e| e.to_string())?, true)] {
                let ratio = g.checked_div(&lin).map_err(|e| e.to_string())?;
                if slot.is_none() && !ratio.is_zero() && ratio.vars().iter().all(|v| !is_external(v)) {
                    *slot = Some((g, inverted));
                    found = true;
                    break;
                }
            }
            if found {
                break;
            }
        }
        if !found {
            return Err(format!("coordinate {f} is not linear in one s_j"));
        }
    }
    let coords: Vec<FieldElement> = oriented.into_iter().map(|x| x.unwrap().0).collect();
    let expect = Cycle::from_coords(coords, &[], q(1));
    if expect != *z {
        return Err(format!("{z} differs from {expect}"));
    }
    Ok(())
}

fn attempt(name: String, f: impl FnOnce() -> Result<Check, CycleError>) -> Check {
    f().unwrap_or_else(|e| Check {
        name,
        passed: false,
        detail: e.to_string(),
    })
}

fn admissible(name: String, z: Result<Cycle, CycleError>) -> Check {
    attempt(name.clone(), || {
        let v = admissible_check(&z?);
        Ok(Check {
            name,
            passed: v.is_empty(),
            detail: v.first().map(|x| x.to_string()).unwrap_or_default(),
        })
    })
}

/// Checks the axioms for `A` and, where the theory claims them, base point
/// freeness and the permuting identities. Failures of individual checks,
/// including improper faces met along the way, are recorded in the report.
pub fn verify_theory(engine: &Engine, a: &Sequence) -> Result<Report, CycleError> {
    engine.check(a)?;
    let n = a.n();
    let mut checks = Vec::new();
    let beyond = engine.rho_k(a, n + 1)?;
    checks.push(Check {
        name: format!("rho_{} vanishes", n + 1),
        passed: beyond.is_zero(),
        detail: if beyond.is_zero() { String::new() } else { beyond.to_string() },
    });
    let shape = top_shape(&engine.rho_k(a, n)?, a);
    checks.push(Check {
        name: format!("rho_{n} is Alt(c_i(s_i - a_i))"),
        passed: shape.is_ok(),
        detail: shape.err().unwrap_or_default(),
    });
    for k in 1..=n {
        let name = format!("d rho_{k} = -delta rho_{} + cuts", k + 1);
        checks.push(attempt(name.clone(), || {
            let (lhs, rhs) = condition_three(engine, a, k)?;
            Ok(equality(name, &lhs, &rhs))
        }));
    }
    for k in 1..=n {
        if (k, n) == (1, 1) {
            continue;
        }
        checks.push(admissible(format!("rho_{k} admissible"), engine.rho_k(a, k)));
        checks.push(admissible(format!("delta rho_{k} admissible"), engine.delta_rho(a, k)));
    }
    for k in 1..=n {
        let name = format!("d delta rho_{k} = cuts");
        checks.push(attempt(name.clone(), || {
            let (lhs, rhs) = delta_differential(engine, a, k)?;
            Ok(equality(name, &lhs, &rhs))
        }));
    }
    if engine.theory().base_point_free() {
        let moved = Sequence::new(
            FieldElement::var("p_start"),
            a.interior().to_vec(),
            FieldElement::var("p_end"),
        )
        .expect("nonempty");
        let fresh = engine.fresh();
        let mut same = true;
        for k in 1..=n {
            same &= fresh.rho_k(&moved, k)? == engine.rho_k(a, k)?;
        }
        checks.push(Check {
            name: "base point free".into(),
            passed: same,
            detail: String::new(),
        });
    }
    if engine.theory().permuting() && n <= 3 {
        let w = a.interior();
        let (start, end) = (a.start().clone(), a.end().clone());
        let rho1 = |word: Vec<FieldElement>| -> Result<Cycle, CycleError> {
            engine.rho1(&Sequence::new(start.clone(), word, end.clone()).expect("nonempty"))
        };
        for split in 1..n {
            let mut sum = Cycle::zero();
            for word in cut_dga::shuffle_words(&w[..split], &w[split..]) {
                sum.add_scaled(&rho1(word)?, &q(1));
            }
            checks.push(equality(format!("shuffle sum at {split}"), &sum, &Cycle::zero()));
        }
        let mut rev = w.to_vec();
        rev.reverse();
        let sign = if n % 2 == 1 { q(1) } else { q(-1) };
        checks.push(equality(
            "reversal".into(),
            &rho1(rev)?.scale(&sign),
            &engine.rho1(a)?,
        ));
    }
    Ok(Report {
        theory: engine.theory().to_string(),
        sequence: a.to_string(),
        checks,
    })
}

/// `ρ(dA) = d(ρ(A))` with `dA = -Σ A'A''`.
pub fn rho_commutes_with_d(engine: &Engine, a: &Sequence) -> Result<Check, CycleError> {
    let lhs = differential(&engine.rho(a)?)?;
    let mut rhs = Cycle::zero();
    for (outer, inner) in two_cuts(a) {
        if inner.is_loop() || outer.is_loop() {
            continue;
        }
        rhs.add_scaled(&product(&engine.rho(&outer)?, &engine.rho(&inner)?), &q(-1));
    }
    Ok(equality(format!("rho(d{a}) = d rho({a})"), &rhs, &lhs))
}
