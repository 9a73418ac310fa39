//! `ξ_γ(A)` and `σρ(B)` as formal symbols over the sequence algebra.
//!
//! The module `D'` is spanned by `ξ(B)·σ(B₁)⋯σ(B_r)` and `σ(B₁)⋯σ(B_r)`,
//! with `ξ` of degree 0 and each `σ` of degree 1. The sequence algebra acts
//! on the right through `σ`, and
//!
//! `dξ(A) = σ(A) + Σ_{2-cuts} ξ(A')σ(A'')`, `dσ(A) = -Σ_{2-cuts} σ(A')σ(A'')`.

use std::fmt;

use bar_complex::{Bar, BarComplex, BarWord, Dga, RightModule};
use cut_dga::{all_cut_indices, two_cuts, Cs, Mono, Sequence};
use exact_kernel::{q, Lin};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XiSymbol(pub Sequence);

/// The fundamental class `σρ(B)` of the cycle attached to `B`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigmaCycle(pub Sequence);

/// A basis element of `D'`: at most one `ξ` times a product of `σ`'s.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalGen {
    pub xi: Option<XiSymbol>,
    pub sigma: Mono,
}

impl FormalGen {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn xi(a: &Sequence) -> Self {
        FormalGen { xi: Some(XiSymbol(a.clone())), sigma: Mono::unit() }
    }

    pub fn degree(&self) -> i32 {
        self.sigma.factors().len() as i32
    }

    pub fn adams(&self) -> u32 {
        let x = self.xi.as_ref().map_or(0, |x| x.0.n() as u32);
        x + self.sigma.factors().iter().map(|s| s.n() as u32).sum::<u32>()
    }
}

impl fmt::Display for FormalGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if let Some(XiSymbol(a)) = &self.xi {
            parts.push(format!("xi({a})"));
        }
        parts.extend(self.sigma.factors().iter().map(|s| format!("sigma({s})")));
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// `D'` as a right module over the sequence algebra `cs`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FormalModule {
    pub cs: Cs,
}

impl FormalModule {
    fn vanishes(&self, a: &Sequence) -> bool {
        self.cs.kill_loops && a.is_loop()
    }

    fn times_sigma(&self, xi: &Option<XiSymbol>, factors: Vec<Sequence>) -> Lin<FormalGen> {
        self.cs.product(factors).map_keys(|m| FormalGen { xi: xi.clone(), sigma: m.clone() })
    }

    /// `dξ(A) = σ(A) + Σ ξ(A')σ(A'')`.
    pub fn d_xi(&self, a: &Sequence) -> Lin<FormalGen> {
        if self.vanishes(a) {
            return Lin::zero();
        }
        let mut out = self.times_sigma(&None, vec![a.clone()]);
        for (outer, inner) in two_cuts(a) {
            if self.vanishes(&outer) {
                continue;
            }
            out.add_scaled(&self.times_sigma(&Some(XiSymbol(outer)), vec![inner]), &q(1));
        }
        out
    }
}

impl RightModule<Cs> for FormalModule {
    type Elt = FormalGen;

    fn degree(&self, m: &FormalGen) -> i32 {
        m.degree()
    }

    fn d(&self, m: &FormalGen) -> Lin<FormalGen> {
        let mut out: Lin<FormalGen> = self.cs.d(&m.sigma).map_keys(|s| FormalGen { xi: m.xi.clone(), sigma: s.clone() });
        if let Some(XiSymbol(a)) = &m.xi {
            for (g, c) in self.d_xi(a).iter() {
                let mut factors = g.sigma.factors().to_vec();
                factors.extend(m.sigma.factors().iter().cloned());
                out.add_scaled(&self.times_sigma(&g.xi, factors), c);
            }
        }
        out
    }

    fn act(&self, dga: &Cs, m: &FormalGen, a: &Mono) -> Lin<FormalGen> {
        dga.mul(&m.sigma, a).map_keys(|s| FormalGen { xi: m.xi.clone(), sigma: s.clone() })
    }
}

/// `Z_γ(A) = Σ 1⊗[A₁|…|A_k] + Σ ξ(A₁)⊗[A₂|…|A_k]` over all cuts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGammaElement {
    pub sequence: Sequence,
    pub bar: Bar<FormalGen, Mono>,
}

impl ZGammaElement {
    /// Each term has bar degree zero.
    pub fn degrees(&self, module: &FormalModule) -> Vec<i32> {
        let b = BarComplex::new(&module.cs, module);
        self.bar.iter().map(|(w, _)| b.degree(w)).collect()
    }

    pub fn adams_degrees(&self) -> Vec<u32> {
        self.bar
            .iter()
            .map(|(w, _)| w.module.adams() + w.slots.iter().map(|m| Cs::default().adams(m)).sum::<u32>())
            .collect()
    }

    /// The terms carried by `1`, i.e. `1⊗𝕀(A)`.
    pub fn bar_part(&self) -> Bar<FormalGen, Mono> {
        self.bar.iter().filter(|(w, _)| w.module.xi.is_none()).map(|(w, c)| (w.clone(), c.clone())).collect()
    }

    pub fn xi_part(&self) -> Bar<FormalGen, Mono> {
        self.bar.iter().filter(|(w, _)| w.module.xi.is_some()).map(|(w, c)| (w.clone(), c.clone())).collect()
    }
}

impl fmt::Display for ZGammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .bar
            .iter()
            .map(|(w, c)| {
                let slots: Vec<String> = w.slots.iter().map(|m| m.to_string()).collect();
                format!("{}*{}⊗[{}]", exact_kernel::fmt_q(c), w.module, slots.join("|"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn build_z_gamma(a: &Sequence, module: &FormalModule) -> ZGammaElement {
    let mut bar = Lin::zero();
    'cuts: for cut in all_cut_indices(a.n()).iter() {
        let pieces: Vec<Sequence> = cut.iter().map(|p| a.piece(p)).collect();
        if pieces.iter().any(|p| module.vanishes(p)) {
            continue 'cuts;
        }
        let slots: Vec<Mono> = pieces.iter().map(|p| Mono::from_factors(vec![p.clone()]).expect("one factor").0).collect();
        bar.add_term(BarWord { module: FormalGen::one(), slots: slots.clone() }, q(1));
        bar.add_term(BarWord { module: FormalGen::xi(&pieces[0]), slots: slots[1..].to_vec() }, q(1));
    }
    ZGammaElement { sequence: a.clone(), bar }
}

/// `d = d_ext + d_int` on `B(D', N')`, with the rules above for `ξ` and `σ`.
pub fn formal_differential(x: &Bar<FormalGen, Mono>, module: &FormalModule) -> Bar<FormalGen, Mono> {
    BarComplex::new(&module.cs, module).d(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_letter() {
        let m = FormalModule::default();
        let a = Sequence::lit("0", &["1"], "z");
        let z = build_z_gamma(&a, &m);
        assert_eq!(z.bar.len(), 2);
        let xi_alone: Bar<FormalGen, Mono> = Lin::single(BarWord { module: FormalGen::xi(&a), slots: vec![] });
        let d = formal_differential(&xi_alone, &m);
        let sigma = FormalGen { xi: None, sigma: Mono::from_factors(vec![a.clone()]).unwrap().0 };
        assert_eq!(d, Lin::single(BarWord { module: sigma, slots: vec![] }));
        assert!(formal_differential(&z.bar, &m).is_zero());
    }

    #[test]
    fn xi_of_a_loop_vanishes() {
        let m = FormalModule::default();
        assert!(m.d_xi(&Sequence::lit("0", &["1", "z"], "0")).is_zero());
        let keep = FormalModule { cs: Cs::keeping_loops() };
        assert!(!keep.d_xi(&Sequence::lit("0", &["1", "z"], "0")).is_zero());
    }
}
