//! Iterated integrals by local power series: each straight piece of the
//! path is short compared with the distance from its expansion point to the
//! other letters, and pieces are joined by path composition. The last piece
//! before an end point that is itself a letter is expanded around that end.

use crate::path::PathSpec;
use crate::{Evaluation, NumericConfig, PeriodError, C64};

const TERMS: usize = 64;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Values `I(c; v₁…v_j; c + u)` for `j = 1..=|v|`, `None` from the first
/// prefix that diverges at `c`, and the largest truncation estimate.
fn prefixes(c: C64, u: C64, v: &[C64], tiny: f64) -> (Vec<Option<C64>>, f64) {
    let mut f = vec![zero(); TERMS + 1];
    f[0] = C64::new(1.0, 0.0);
    let mut out = Vec::with_capacity(v.len());
    let mut err: f64 = 0.0;
    let mut alive = true;
    for &a in v {
        if !alive {
            out.push(None);
            continue;
        }
        let d = a - c;
        let mut g = vec![zero(); TERMS + 1];
        if d.norm() <= tiny {
            if f[0].norm() != 0.0 {
                alive = false;
                out.push(None);
                continue;
            }
            for m in 1..=TERMS {
                g[m] = f[m] / m as f64;
            }
        } else {
            // 1/(v - d) = -Σ v^k / d^{k+1}
            let inv = 1.0 / d;
            let mut geo = vec![zero(); TERMS];
            let mut p = -inv;
            for slot in geo.iter_mut() {
                *slot = p;
                p *= inv;
            }
            for m in 0..TERMS {
                let h: C64 = (0..=m).map(|k| f[k] * geo[m - k]).sum();
                g[m + 1] = h / (m + 1) as f64;
            }
        }
        let mut val = zero();
        let mut pow = C64::new(1.0, 0.0);
        let mut last = 0.0;
        for (m, gm) in g.iter().enumerate() {
            let t = gm * pow;
            val += t;
            if m + 3 > TERMS {
                last = f64::max(last, t.norm());
            }
            pow *= u;
        }
        err = err.max(4.0 * last);
        out.push(Some(val));
        f = g;
    }
    (out, err)
}

/// `T[i][j] = I(x; w_{i+1}…w_j; y)` for the piece from `x` to `y`, expanded
/// at `x` (forward) or at `y`. Divergent entries are NaN.
fn piece_table(x: C64, y: C64, w: &[C64], at_start: bool, tiny: f64) -> (Vec<Vec<C64>>, f64) {
    let n = w.len();
    let nan = C64::new(f64::NAN, f64::NAN);
    let mut t = vec![vec![nan; n + 1]; n + 1];
    let mut err: f64 = 0.0;
    for (i, row) in t.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    if at_start {
        for i in 0..n {
            let (vals, e) = prefixes(x, y - x, &w[i..], tiny);
            err = err.max(e);
            for (k, v) in vals.into_iter().enumerate() {
                if let Some(v) = v {
                    t[i][i + k + 1] = v;
                }
            }
        }
    } else {
        // I(x; v; y) = (-1)^{|v|} I(y; reversed v; x)
        for j in 1..=n {
            let rev: Vec<C64> = w[..j].iter().rev().copied().collect();
            let (vals, e) = prefixes(y, x - y, &rev, tiny);
            err = err.max(e);
            for (k, v) in vals.into_iter().enumerate() {
                if let Some(v) = v {
                    let sign = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
                    t[j - k - 1][j] = v * sign;
                }
            }
        }
    }
    (t, err)
}

fn radius(x: C64, letters: &[C64], tiny: f64) -> f64 {
    letters
        .iter()
        .map(|&a| (a - x).norm())
        .filter(|&d| d > tiny)
        .fold(f64::INFINITY, f64::min)
}

/// Splits `[a, b]` into `(x, y, forward)` pieces.
fn pieces(a: C64, b: C64, letters: &[C64], rho: f64, tiny: f64) -> Vec<(C64, C64, bool)> {
    let dir = (b - a) / (b - a).norm();
    let r_end = radius(b, letters, tiny);
    let mut out = Vec::new();
    let mut x = a;
    loop {
        let rem = (b - x).norm();
        if rem <= rho * r_end {
            out.push((x, b, false));
            return out;
        }
        let step = rho * radius(x, letters, tiny);
        if step >= rem {
            out.push((x, b, true));
            return out;
        }
        let y = x + dir * step;
        out.push((x, y, true));
        x = y;
    }
}

/// `∫ ω_{w₁}∘…∘ω_{w_k}` with `ω_a = scale·dt/(t - a)` by local power series.
pub fn segment_words(
    path: &PathSpec,
    letters: &[C64],
    words: &[Vec<usize>],
    scale: C64,
    cfg: &NumericConfig,
) -> Result<Vec<Evaluation>, PeriodError> {
    cfg.validate()?;
    let tiny = 1e-13 * path.vertices().iter().chain(letters).map(|z| z.norm()).fold(1.0, f64::max);
    for &c in letters {
        let nv = path.vertices().len();
        for (i, (a, b)) in path.segments().enumerate() {
            let d = crate::path::segment_distance(a, b, c);
            let at_end = (i == 0 && (c - a).norm() <= tiny) || (i + 2 == nv && (c - b).norm() <= tiny);
            if d <= tiny && !at_end {
                return Err(PeriodError::PathHitsPuncture(c.to_string()));
            }
        }
    }
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        let word: Vec<C64> = w
            .iter()
            .map(|&i| letters.get(i).copied().ok_or_else(|| PeriodError::Config(format!("letter index {i} out of range"))))
            .collect::<Result<_, _>>()?;
        let n = word.len();
        let mut v = vec![zero(); n + 1];
        v[0] = C64::new(1.0, 0.0);
        let mut err: f64 = 0.0;
        for (a, b) in path.segments() {
            for (x, y, forward) in pieces(a, b, letters, cfg.series_ratio, tiny) {
                let (t, e) = piece_table(x, y, &word, forward, tiny);
                let mut next = vec![zero(); n + 1];
                for j in 0..=n {
                    for i in 0..=j {
                        if v[i] != zero() {
                            next[j] += v[i] * t[i][j];
                        }
                    }
                }
                let mass = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
                err += e * mass.max(1.0);
                v = next;
            }
        }
        let value = v[n];
        if !value.re.is_finite() || !value.im.is_finite() {
            let end = if word.first().is_some_and(|&f| (f - path.start()).norm() <= tiny) {
                path.start()
            } else {
                path.end()
            };
            return Err(PeriodError::SingularEndpoint(end.to_string()));
        }
        let s = scale.powu(n as u32);
        out.push(Evaluation::new(value * s, err * s.norm() + 1e-15 * value.norm(), "series"));
    }
    Ok(out)
}

/// `∫_γ dt/(t - a₁)∘…∘dt/(t - a_n)` by local power series.
pub fn segment_integral(
    letters: &[C64],
    path: &PathSpec,
    cfg: &NumericConfig,
) -> Result<Evaluation, PeriodError> {
    let word: Vec<usize> = (0..letters.len()).collect();
    Ok(segment_words(path, letters, &[word], C64::new(1.0, 0.0), cfg)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::iterated_integral;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn zeta_two() {
        let v = segment_integral(&[c(1.0, 0.0), c(0.0, 0.0)], &PathSpec::unit_interval(), &NumericConfig::default())
            .unwrap();
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((v.value + z2).norm() < 1e-13, "{v:?}");
    }

    #[test]
    fn agrees_with_quadrature_off_the_real_line() {
        let cfg = NumericConfig::default();
        let path = PathSpec::new(
            vec![c(0.2, 0.0), c(0.5, 0.7), c(1.5, -0.2)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            (false, false),
        )
        .unwrap();
        let w = [c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let s = segment_integral(&w, &path, &cfg).unwrap();
        let q = iterated_integral(&w, &path, &cfg).unwrap();
        assert!((s.value - q.value).norm() < 1e-11, "{s:?} {q:?}");
    }

    #[test]
    fn divergent_end_is_refused() {
        let r = segment_integral(&[c(1.0, 0.0), c(1.0, 0.0)], &PathSpec::unit_interval(), &NumericConfig::default());
        assert!(matches!(r, Err(PeriodError::SingularEndpoint(_))));
    }
}
