use std::collections::HashMap;

use num::One;

use super::{BasisTerm, KpElement, KpError, Scalar};
use crate::skeleton::{Degree, KGraph, Path};

fn check(g: &KGraph, x: &KpElement) -> Result<(), KpError> {
    if x.graph() == g.fingerprint() {
        Ok(())
    } else {
        Err(KpError::MixedGraphs)
    }
}

/// Minimal common extensions: the pairs `(α, β)` with `μα = νβ` and
/// `d(μα) = d(μ) ∨ d(ν)`. Inputs and outputs are normal forms.
pub fn mce(g: &KGraph, mu: &Path, nu: &Path) -> Vec<(Path, Path)> {
    if mu.range() != nu.range() {
        return Vec::new();
    }
    let sk = g.skeleton();
    let (dm, dn) = (mu.degree(sk), nu.degree(sk));
    let join = dm.join(&dn);
    let alpha_degree = join.checked_sub(&dm).expect("join dominates");
    let beta_degree = join.checked_sub(&dn).expect("join dominates");
    let mut out = Vec::new();
    for alpha in g
        .paths_with_range(mu.source(), &alpha_degree)
        .expect("source of a path is a vertex")
    {
        let whole = g.compose(mu, &alpha).expect("alpha ranges at s(mu)");
        let (head, beta) = g.factor(&whole, &beta_degree).expect("degree fits");
        if &head == nu {
            out.push((alpha, beta));
        }
    }
    out
}

type MceCache = HashMap<(Path, Path), Vec<(Path, Path)>>;

fn term_mul(g: &KGraph, x: &BasisTerm, y: &BasisTerm, cache: &mut MceCache, out: &mut KpElement, c: Scalar) {
    let key = (x.mu().clone(), y.lambda().clone());
    let pairs = cache
        .entry(key)
        .or_insert_with(|| mce(g, x.mu(), y.lambda()));
    for (alpha, beta) in pairs.iter() {
        let left = g.compose(x.lambda(), alpha).expect("alpha ranges at s(lambda)");
        let right = g.compose(y.mu(), beta).expect("beta ranges at s(rho)");
        out.add_term(BasisTerm::raw(left, right), c.clone());
    }
}

/// Bilinear product, `(t_λ t_μ*)(t_ν t_ρ*) = Σ_{(α,β) ∈ MCE(μ,ν)} t_{λα} t_{(ρβ)*}`.
pub fn kp_mul(g: &KGraph, a: &KpElement, b: &KpElement) -> Result<KpElement, KpError> {
    check(g, a)?;
    check(g, b)?;
    let mut cache = MceCache::new();
    let mut out = KpElement::zero(g);
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            term_mul(g, x, y, &mut cache, &mut out, cx * cy);
        }
    }
    Ok(out)
}

/// Left-to-right product of several factors.
pub fn kp_product(g: &KGraph, factors: &[KpElement]) -> Result<KpElement, KpError> {
    let mut acc = match factors.first() {
        Some(f) => f.clone(),
        None => return Err(KpError::EmptyProduct),
    };
    for f in &factors[1..] {
        acc = kp_mul(g, &acc, f)?;
    }
    Ok(acc)
}

pub fn kp_add(a: &KpElement, b: &KpElement) -> Result<KpElement, KpError> {
    a.add(b)
}

pub fn kp_scale(a: &KpElement, c: &Scalar) -> KpElement {
    a.scale(c)
}

pub fn kp_adjoint(a: &KpElement) -> KpElement {
    a.adjoint()
}

/// Rewrites every term to ghost degree `n` using
/// `t_λ t_μ* = Σ_{ν ∈ s(μ)Λ^{n - d(μ)}} t_{λν} t_{(μν)*}`.
pub fn expand_to(g: &KGraph, a: &KpElement, n: &Degree) -> Result<KpElement, KpError> {
    check(g, a)?;
    let sk = g.skeleton();
    let mut out = KpElement::zero(g);
    for (t, c) in a.terms() {
        let rest = n
            .checked_sub(&t.mu().degree(sk))
            .ok_or_else(|| KpError::ExpansionDegree(n.to_string()))?;
        for nu in g.paths_with_range(t.mu().source(), &rest)? {
            let left = g.compose(t.lambda(), &nu)?;
            let right = g.compose(t.mu(), &nu)?;
            out.add_term(BasisTerm::raw(left, right), c.clone());
        }
    }
    Ok(out)
}

fn ghost_join(g: &KGraph, elements: &[&KpElement]) -> Degree {
    let sk = g.skeleton();
    elements
        .iter()
        .flat_map(|e| e.terms().keys())
        .fold(Degree::zero(g.k()), |acc, t| acc.join(&t.mu().degree(sk)))
}

/// Equality in the algebra. Both sides are expanded to a common ghost degree,
/// where the basis terms are linearly independent; this needs a source-free
/// graph.
pub fn equivalent(g: &KGraph, a: &KpElement, b: &KpElement) -> Result<bool, KpError> {
    check(g, a)?;
    check(g, b)?;
    if a == b {
        return Ok(true);
    }
    if !g.is_source_free().is_source_free() {
        return Err(KpError::NotSourceFree);
    }
    let n = ghost_join(g, &[a, b]);
    Ok(expand_to(g, a, &n)? == expand_to(g, b, &n)?)
}

pub fn is_zero_in_algebra(g: &KGraph, a: &KpElement) -> Result<bool, KpError> {
    equivalent(g, a, &KpElement::zero(g))
}

/// `Σ_{λ ∈ vΛ^n} t_λ t_λ*`.
pub fn kp4_sum(g: &KGraph, v: crate::skeleton::VertexId, n: &Degree) -> Result<KpElement, KpError> {
    let mut out = KpElement::zero(g);
    for lambda in g.paths_with_range(v, n)? {
        out.add_term(BasisTerm::raw(lambda.clone(), lambda), Scalar::one());
    }
    Ok(out)
}
