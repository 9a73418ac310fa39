//! Regularized iterated integrals between tangential base points.
//!
//! The algebraic method rewrites the word by shuffle regularization into
//! convergent integrals and the one-letter symbols `(x; x; y)`, whose values
//! are logarithms measured from the tangent vector at `x`. The extrapolation
//! method integrates over the path cut at distance ε from its tangential
//! ends and reads off the constant term in `log ε` as ε → 0.

use cut_dga::{regularize, Sequence};
use exact_kernel::{q_to_f64, FieldElement};

use crate::path::PathSpec;
use crate::quad::integrate_words;
use crate::{Evaluation, NumericConfig, PeriodError, C64};

/// Regularized `∫_γ dt/(t - x)` for `x` the start of `γ`, measured from the
/// tangent vector there.
pub fn symbol_value(path: &PathSpec) -> C64 {
    let x = path.start();
    let v = path.vertices();
    if v.len() < 2 {
        return C64::new(0.0, 0.0);
    }
    let mut total = ((v[1] - x) / path.start_tangent()).ln();
    for w in v[1..].windows(2) {
        total += ((w[1] - x) / (w[0] - x)).ln();
    }
    total
}

fn close(a: C64, b: C64, tiny: f64) -> bool {
    (a - b).norm() <= tiny
}

/// Index of each point among the distinct points, up to `tiny`.
fn symbolic(points: &[C64], tiny: f64) -> (Vec<FieldElement>, Vec<C64>) {
    let mut reps: Vec<C64> = Vec::new();
    let mut out = Vec::with_capacity(points.len());
    for &p in points {
        let i = match reps.iter().position(|&r| close(r, p, tiny)) {
            Some(i) => i,
            None => {
                reps.push(p);
                reps.len() - 1
            }
        };
        out.push(FieldElement::var(&format!("p{i}")));
    }
    (out, reps)
}

fn algebraic(letters: &[C64], path: &PathSpec, cfg: &NumericConfig, tiny: f64) -> Result<Evaluation, PeriodError> {
    let mut points = vec![path.start(), path.end()];
    points.extend_from_slice(letters);
    let (sym, reps) = symbolic(&points, tiny);
    let value_of = |f: &FieldElement| -> C64 {
        let i: usize = f.to_string()[1..].parse().expect("point name");
        reps[i]
    };
    let seq = Sequence::new(sym[0].clone(), sym[2..].to_vec(), sym[1].clone()).expect("nonempty");
    let mut total = C64::new(0.0, 0.0);
    let mut err = 0.0;
    for (mono, c) in regularize(&seq).iter() {
        let mut prod = C64::new(q_to_f64(c), 0.0);
        for f in mono.factors() {
            let interior: Vec<C64> = f.interior().iter().map(value_of).collect();
            let (s, e) = (f.start(), f.end());
            let forward = s == seq.start() && e == seq.end();
            let backward = s == seq.end() && e == seq.start();
            let v = if f.n() == 1 && &f.interior()[0] == s && (forward || backward) {
                symbol_value(&if forward { path.clone() } else { path.reversed() })
            } else if forward && f.is_convergent() {
                let w: Vec<usize> = (0..interior.len()).collect();
                let r = integrate_words(path, &interior, &[w], C64::new(1.0, 0.0), cfg)?[0];
                err += r.error_bound;
                r.value
            } else {
                return Err(PeriodError::Config(format!("unexpected factor {f} in the regularization")));
            };
            prod *= v;
        }
        total += prod;
    }
    Ok(Evaluation::new(total, err, "shuffle regularization"))
}

/// Least squares for `A x = b`, `A` real with full column rank.
fn least_squares(a: &[Vec<f64>], b: &[C64]) -> Vec<C64> {
    let (rows, cols) = (a.len(), a[0].len());
    let norms: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j] * a[i][j]).sum::<f64>().sqrt())
        .collect();
    let mut q: Vec<Vec<f64>> = (0..cols).map(|j| (0..rows).map(|i| a[i][j] / norms[j]).collect()).collect();
    let mut r = vec![vec![0.0; cols]; cols];
    for j in 0..cols {
        for _ in 0..2 {
            for k in 0..j {
                let d: f64 = (0..rows).map(|i| q[k][i] * q[j][i]).sum();
                r[k][j] += d;
                for i in 0..rows {
                    q[j][i] -= d * q[k][i];
                }
            }
        }
        let n: f64 = q[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        r[j][j] = n;
        q[j].iter_mut().for_each(|x| *x /= n);
    }
    let qtb: Vec<C64> = (0..cols).map(|j| (0..rows).map(|i| b[i] * q[j][i]).sum()).collect();
    let mut x = vec![C64::new(0.0, 0.0); cols];
    for j in (0..cols).rev() {
        let s: C64 = (j + 1..cols).map(|k| x[k] * r[j][k]).sum();
        x[j] = (qtb[j] - s) / r[j][j];
    }
    x.iter().zip(&norms).map(|(v, n)| v / n).collect()
}

/// Fits `c + Σ_{1≤k≤order} ε^k P_k(log ε)` with `deg P_k ≤ logs` and returns `c`.
fn fit_constant(eps: &[f64], values: &[C64], logs: usize, order: usize) -> C64 {
    let a: Vec<Vec<f64>> = eps
        .iter()
        .map(|&e| {
            let l = e.ln();
            let mut row = vec![1.0];
            for k in 1..=order {
                for i in 0..=logs {
                    row.push(e.powi(k as i32) * l.powi(i as i32));
                }
            }
            row
        })
        .collect();
    least_squares(&a, values)[0]
}

/// The ε-method on the truncated paths of `cfg.eps_ladder`, with the error
/// estimated from the same fit on the smaller part of the ladder.
pub fn epsilon_extrapolate(
    letters: &[C64],
    path: &PathSpec,
    cfg: &NumericConfig,
) -> Result<Evaluation, PeriodError> {
    epsilon_extrapolate_with(letters, path, cfg, |p, e| p.truncated(e))
}

/// As [`epsilon_extrapolate`], with a caller-chosen truncation.
///
/// The cut path from `p` to `q` composes with the short pieces `s → p` and
/// `q → e`, whose regularized series are `exp(X_s log ε)` and
/// `exp(-X_e log ε)` up to `O(ε)`. Composing with them gives an estimate of
/// the regularized value whose error is `O(ε logⁿ ε)`, which is fitted away.
pub fn epsilon_extrapolate_with(
    letters: &[C64],
    path: &PathSpec,
    cfg: &NumericConfig,
    truncate: impl Fn(&PathSpec, f64) -> Result<PathSpec, PeriodError>,
) -> Result<Evaluation, PeriodError> {
    cfg.validate()?;
    let n = letters.len();
    let tiny = 1e-13 * path.vertices().iter().chain(letters).map(|z| z.norm()).fold(1.0, f64::max);
    let (ts, te) = path.tangential();
    let head = if ts { letters.iter().take_while(|&&a| close(a, path.start(), tiny)).count() } else { 0 };
    let tail = if te { letters.iter().rev().take_while(|&&a| close(a, path.end(), tiny)).count() } else { 0 };
    let mut pieces = Vec::new();
    for i in 0..=head.min(n) {
        for j in (n - tail.min(n)).max(i)..=n {
            pieces.push((i, j));
        }
    }
    let words: Vec<Vec<usize>> = pieces.iter().filter(|(i, j)| j > i).map(|&(i, j)| (i..j).collect()).collect();
    let unknowns = 1 + (n + 1) * cfg.eps_order;
    if cfg.eps_ladder.len() * 2 < 3 * (unknowns + 2) {
        return Err(PeriodError::Config(format!("ε-ladder needs at least {} entries", (3 * unknowns + 7) / 2)));
    }
    let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
    let mut values = Vec::with_capacity(cfg.eps_ladder.len());
    let mut quad_err: f64 = 0.0;
    for &e in &cfg.eps_ladder {
        let cut = truncate(path, e)?;
        let mut inner = integrate_words(&cut, letters, &words, C64::new(1.0, 0.0), cfg)?.into_iter();
        let l = e.ln();
        let mut v = C64::new(0.0, 0.0);
        for &(i, j) in &pieces {
            let mid = if j > i {
                let r = inner.next().expect("one value per word");
                quad_err = quad_err.max(r.error_bound * l.abs().powi((i + n - j) as i32));
                r.value
            } else {
                C64::new(1.0, 0.0)
            };
            v += mid * l.powi(i as i32) / fact(i) * (-l).powi((n - j) as i32) / fact(n - j);
        }
        values.push(v);
    }
    let full = fit_constant(&cfg.eps_ladder, &values, n, cfg.eps_order);
    let skip = cfg.eps_ladder.len() / 3;
    let small = fit_constant(&cfg.eps_ladder[skip..], &values[skip..], n, cfg.eps_order);
    let err = (full - small).norm() + quad_err;
    Ok(Evaluation::new(full, err, "ε-extrapolation"))
}

/// Regularized `∫_γ dt/(t - a₁)∘…∘dt/(t - a_n)` between tangential end points.
/// Convergent words are integrated directly; divergent ones by shuffle
/// regularization, cross-checked by ε-extrapolation.
pub fn regularized_iterated_integral(
    letters: &[C64],
    path: &PathSpec,
    cfg: &NumericConfig,
) -> Result<Evaluation, PeriodError> {
    cfg.validate()?;
    let tiny = 1e-13 * path.vertices().iter().chain(letters).map(|z| z.norm()).fold(1.0, f64::max);
    let (s, e) = (path.start(), path.end());
    let divergent_start = letters.first().is_some_and(|&a| close(a, s, tiny));
    let divergent_end = letters.last().is_some_and(|&a| close(a, e, tiny));
    if path.vertices().len() < 2 || !(divergent_start || divergent_end) {
        let w: Vec<usize> = (0..letters.len()).collect();
        return Ok(integrate_words(path, letters, &[w], C64::new(1.0, 0.0), cfg)?[0]);
    }
    let (ts, te) = path.tangential();
    if (divergent_start && !ts) || (divergent_end && !te) {
        return Err(PeriodError::SingularEndpoint(if divergent_start { s } else { e }.to_string()));
    }
    let extrapolated = epsilon_extrapolate(letters, path, cfg)?;
    if close(s, e, tiny) {
        return Ok(extrapolated);
    }
    let alg = algebraic(letters, path, cfg, tiny)?;
    let allowed = 10.0 * cfg.tol.max(extrapolated.error_bound);
    if (alg.value - extrapolated.value).norm() > allowed {
        return Err(PeriodError::RegularizationMismatch {
            algebraic: alg.value,
            extrapolated: extrapolated.value,
        });
    }
    Ok(Evaluation::new(alg.value, alg.error_bound, alg.method))
}
