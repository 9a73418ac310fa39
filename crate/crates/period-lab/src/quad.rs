//! Iterated integrals along a piecewise linear path by cumulative
//! Gauss-Legendre quadrature on panels graded towards the punctures.

use std::collections::HashMap;

use crate::path::{segment_distance, PathSpec};
use crate::{Evaluation, NumericConfig, PeriodError, C64};

/// Nodes, weights and the cumulative integration matrix on `[-1, 1]`.
struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `cumulative[i][j]`: weight of `g(x_j)` in `∫_{-1}^{x_i} g`.
    cumulative: Vec<Vec<f64>>,
}

/// `P_0(x), …, P_n(x)`.
fn legendre(n: usize, x: f64) -> Vec<f64> {
    let mut p = vec![1.0, x];
    for k in 1..n {
        let kf = k as f64;
        p.push(((2.0 * kf + 1.0) * x * p[k] - kf * p[k - 1]) / (kf + 1.0));
    }
    p.truncate(n + 1);
    p
}

impl Rule {
    fn new(n: usize) -> Self {
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = -(std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let p = legendre(n, x);
                let dp = n as f64 * (x * p[n] - p[n - 1]) / (x * x - 1.0);
                let step = p[n] / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let p = legendre(n, x);
            let dp = n as f64 * (x * p[n] - p[n - 1]) / (x * x - 1.0);
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        // ∫_{-1}^x P_k = (P_{k+1}(x) - P_{k-1}(x)) / (2k + 1), and x + 1 for k = 0.
        let at_nodes: Vec<Vec<f64>> = nodes.iter().map(|&x| legendre(n, x)).collect();
        let cumulative = nodes
            .iter()
            .map(|&x| {
                let p = legendre(n, x);
                let antider: Vec<f64> = (0..n)
                    .map(|k| if k == 0 { x + 1.0 } else { (p[k + 1] - p[k - 1]) / (2 * k + 1) as f64 })
                    .collect();
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| (2 * k + 1) as f64 / 2.0 * weights[j] * at_nodes[j][k] * antider[k])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Rule { nodes, weights, cumulative }
    }
}

/// Bisects each segment until every panel is short compared with its
/// distance to the letters.
fn panels(path: &PathSpec, letters: &[C64], ratio: f64) -> Vec<(C64, C64)> {
    let scale = path.vertices().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let h_min = 1e-11 * scale;
    let mut out = Vec::new();
    for (a, b) in path.segments() {
        let mut stack = vec![(a, b)];
        while let Some((x, y)) = stack.pop() {
            let len = (y - x).norm();
            let dist = letters.iter().map(|&c| segment_distance(x, y, c)).fold(f64::INFINITY, f64::min);
            if len <= ratio * dist || len <= h_min {
                out.push((x, y));
            } else {
                let m = (x + y) * 0.5;
                stack.push((m, y));
                stack.push((x, m));
            }
        }
    }
    out
}

/// Prefix tree of the requested words: `(parent, letter)` per node, node 0
/// being the empty word.
fn prefix_tree(words: &[Vec<usize>]) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(Vec::new(), 0);
    let mut nodes = vec![(0, 0)];
    let mut targets = Vec::with_capacity(words.len());
    for w in words {
        let mut parent = 0;
        for k in 1..=w.len() {
            let key = w[..k].to_vec();
            parent = *index.entry(key).or_insert_with(|| {
                nodes.push((parent, w[k - 1]));
                nodes.len() - 1
            });
        }
        targets.push(parent);
    }
    (nodes, targets)
}

fn run(
    rule: &Rule,
    panels: &[(C64, C64)],
    letters: &[C64],
    nodes: &[(usize, usize)],
    scale: C64,
) -> Vec<C64> {
    let p = rule.nodes.len();
    let mut start = vec![C64::new(0.0, 0.0); nodes.len()];
    start[0] = C64::new(1.0, 0.0);
    let mut vals = vec![vec![C64::new(0.0, 0.0); p]; nodes.len()];
    vals[0] = vec![C64::new(1.0, 0.0); p];
    for &(a, b) in panels {
        let half = (b - a) * 0.5;
        let mid = (a + b) * 0.5;
        let xs: Vec<C64> = rule.nodes.iter().map(|&t| mid + half * t).collect();
        let forms: Vec<Vec<C64>> = letters
            .iter()
            .map(|&c| xs.iter().map(|&x| half * scale / (x - c)).collect())
            .collect();
        for k in 1..nodes.len() {
            let (parent, letter) = nodes[k];
            let g: Vec<C64> = (0..p).map(|j| forms[letter][j] * vals[parent][j]).collect();
            let row: Vec<C64> = (0..p)
                .map(|i| start[k] + (0..p).map(|j| g[j] * rule.cumulative[i][j]).sum::<C64>())
                .collect();
            let total: C64 = (0..p).map(|j| g[j] * rule.weights[j]).sum();
            vals[k] = row;
            start[k] += total;
        }
    }
    start
}

/// `∫ ω_{w₁}∘…∘ω_{w_k}` for each word, `ω_a = scale·dt/(t - a)`, the first
/// letter integrated first. Letters may only meet the path at its ends, and
/// no word may start with the starting point or end with the end point.
pub fn integrate_words(
    path: &PathSpec,
    letters: &[C64],
    words: &[Vec<usize>],
    scale: C64,
    cfg: &NumericConfig,
) -> Result<Vec<Evaluation>, PeriodError> {
    cfg.validate()?;
    let tiny = 1e-13 * path.vertices().iter().chain(letters).map(|z| z.norm()).fold(1.0, f64::max);
    let (s, e) = (path.start(), path.end());
    for &c in letters {
        for (i, (a, b)) in path.segments().enumerate() {
            let d = segment_distance(a, b, c);
            let at_end = (i == 0 && (c - a).norm() <= tiny)
                || (i + 1 == path.vertices().len() - 1 && (c - b).norm() <= tiny);
            if d <= tiny && !at_end {
                return Err(PeriodError::PathHitsPuncture(c.to_string()));
            }
        }
    }
    for w in words {
        if let Some(&i) = w.iter().find(|&&i| i >= letters.len()) {
            return Err(PeriodError::Config(format!("letter index {i} out of range")));
        }
        if path.segments().next().is_none() {
            continue;
        }
        if let (Some(&f), Some(&l)) = (w.first(), w.last()) {
            if (letters[f] - s).norm() <= tiny {
                return Err(PeriodError::SingularEndpoint(s.to_string()));
            }
            if (letters[l] - e).norm() <= tiny {
                return Err(PeriodError::SingularEndpoint(e.to_string()));
            }
        }
    }
    let rule = Rule::new(cfg.nodes);
    let (nodes, targets) = prefix_tree(words);
    let mut ratio = cfg.panel_ratio;
    let mut coarse = run(&rule, &panels(path, letters, ratio), letters, &nodes, scale);
    let mut err = Vec::new();
    for _ in 0..4 {
        ratio /= 2.0;
        let fine = run(&rule, &panels(path, letters, ratio), letters, &nodes, scale);
        err = targets.iter().map(|&t| (fine[t] - coarse[t]).norm()).collect();
        coarse = fine;
        if err.iter().all(|&x| x <= cfg.tol) {
            break;
        }
    }
    Ok(targets
        .iter()
        .zip(err)
        .map(|(&t, e)| Evaluation::new(coarse[t], e, "quadrature"))
        .collect())
}

/// `∫_γ dt/(t - a₁)∘…∘dt/(t - a_n)` along `path`.
pub fn iterated_integral(
    letters: &[C64],
    path: &PathSpec,
    cfg: &NumericConfig,
) -> Result<Evaluation, PeriodError> {
    let word: Vec<usize> = (0..letters.len()).collect();
    let out = integrate_words(path, letters, &[word], C64::new(1.0, 0.0), cfg)?;
    Ok(out[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn rule_integrates_polynomials() {
        let r = Rule::new(12);
        let total: f64 = r.weights.iter().zip(&r.nodes).map(|(w, x)| w * x.powi(10)).sum();
        assert!((total - 2.0 / 11.0).abs() < 1e-14);
        for (i, &x) in r.nodes.iter().enumerate() {
            let cum: f64 = (0..12).map(|j| r.cumulative[i][j] * r.nodes[j].powi(3)).sum();
            assert!((cum - (x.powi(4) - 1.0) / 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn logarithm() {
        let path = PathSpec::straight(c(0.0), c(0.5), vec![]).unwrap();
        let v = iterated_integral(&[c(1.0)], &path, &NumericConfig::default()).unwrap();
        assert!((v.value - c(0.5f64.ln())).norm() < 1e-12, "{v:?}");
    }

    #[test]
    fn constant_path_and_empty_word() {
        let cfg = NumericConfig::default();
        let path = PathSpec::constant(c(0.3), vec![c(0.0)]).unwrap();
        assert_eq!(iterated_integral(&[c(1.0)], &path, &cfg).unwrap().value, c(0.0));
        let path = PathSpec::unit_interval();
        assert_eq!(iterated_integral(&[], &path, &cfg).unwrap().value, c(1.0));
    }

    #[test]
    fn divergent_ends_are_refused() {
        let path = PathSpec::unit_interval();
        let cfg = NumericConfig::default();
        assert!(matches!(iterated_integral(&[c(0.0)], &path, &cfg), Err(PeriodError::SingularEndpoint(_))));
        assert!(matches!(iterated_integral(&[c(1.0)], &path, &cfg), Err(PeriodError::SingularEndpoint(_))));
        let path = PathSpec::straight(c(-1.0), c(1.0), vec![]).unwrap();
        assert!(matches!(iterated_integral(&[c(0.0)], &path, &cfg), Err(PeriodError::PathHitsPuncture(_))));
    }
}
