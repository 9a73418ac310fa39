use crate::path::PathSpec;
use crate::segment::segment_words;
use crate::{Evaluation, NumericConfig, PeriodError, C64};

/// Beyond this modulus the nested sum is abandoned for local series.
const DIRECT_RADIUS: f64 = 0.8;

/// The word in the letters `0, 1` whose iterated integral from 0 to `z` is
/// `(-1)^k Li_{n₁,…,n_k}(z)`: `1 0^{n₁-1} … 1 0^{n_k-1}`.
pub fn li_word(exponents: &[u32]) -> Vec<u8> {
    exponents
        .iter()
        .flat_map(|&n| std::iter::once(1).chain(std::iter::repeat_n(0, n as usize - 1)))
        .collect()
}

fn nested_sum(exponents: &[u32], z: C64, cfg: &NumericConfig) -> Result<Evaluation, PeriodError> {
    let k = exponents.len();
    let r = z.norm();
    // partial[j] = Σ_{0<m₁<…<m_j≤m} Π m_i^{-n_i}, the last factor carrying z^{m_j}
    let mut partial = vec![C64::new(0.0, 0.0); k + 1];
    partial[0] = C64::new(1.0, 0.0);
    let mut zm = C64::new(1.0, 0.0);
    let top = exponents[k - 1] as i32;
    for m in 1..=cfg.max_terms {
        let mf = m as f64;
        zm *= z;
        for j in (1..=k).rev() {
            let mut t = partial[j - 1] * mf.powi(-(exponents[j - 1] as i32));
            if j == k {
                t *= zm;
            }
            partial[j] += t;
        }
        // |partial[k-1]| ≤ (1 + log m)^{k-1}; the bound on later terms
        // decreases at least by the ratio `q`.
        let lg = |x: f64| (1.0 + x.ln()).powi(k as i32 - 1);
        let next = lg(mf + 1.0) * r.powi(m as i32 + 1) / (mf + 1.0).powi(top);
        let q = r * (lg(mf + 2.0) / lg(mf + 1.0));
        if q < 1.0 {
            let tail = next / (1.0 - q);
            if tail <= cfg.tol * 1e-2 || r == 0.0 {
                return Ok(Evaluation::new(partial[k], tail, "nested sum"));
            }
        }
    }
    Err(PeriodError::Tolerance(cfg.tol))
}

/// `Li_{n₁,…,n_k}(z) = Σ_{0<m₁<…<m_k} z^{m_k} / (m₁^{n₁}⋯m_k^{n_k})`.
pub fn multiple_polylog(
    exponents: &[u32],
    z: C64,
    cfg: &NumericConfig,
) -> Result<Evaluation, PeriodError> {
    cfg.validate()?;
    if exponents.is_empty() || exponents.contains(&0) {
        return Err(PeriodError::Config("exponents must be positive and nonempty".into()));
    }
    let r = z.norm();
    if r > 1.0 + 1e-15 {
        return Err(PeriodError::DivergentSeries(format!("|z| = {r} > 1")));
    }
    let on_circle = r >= 1.0 - 1e-15;
    if on_circle && exponents[exponents.len() - 1] < 2 {
        return Err(PeriodError::DivergentSeries("last exponent 1 on the unit circle".into()));
    }
    if r <= DIRECT_RADIUS {
        return nested_sum(exponents, z, cfg);
    }
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let path = PathSpec::new(vec![zero, z], vec![zero, one], (true, z == one))?;
    let word: Vec<usize> = li_word(exponents).iter().map(|&l| l as usize).collect();
    let mut v = segment_words(&path, &[zero, one], &[word], one, cfg)?[0];
    if exponents.len() % 2 == 1 {
        v.value = -v.value;
    }
    Ok(v)
}

/// `ζ(n₁,…,n_k) = Li_{n₁,…,n_k}(1)`, increasing summation indices.
pub fn zeta(exponents: &[u32], cfg: &NumericConfig) -> Result<Evaluation, PeriodError> {
    multiple_polylog(exponents, C64::new(1.0, 0.0), cfg)
}
