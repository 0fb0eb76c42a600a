use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{BigInt, BigRational, Complex, One, Signed, Zero};

use super::KpError;
use crate::skeleton::{KGraph, Path, Skeleton};

/// Exact Gaussian rational.
pub type Scalar = Complex<BigRational>;

pub fn scalar(re: i64) -> Scalar {
    Complex::new(BigRational::from_integer(BigInt::from(re)), BigRational::zero())
}

/// `t_λ t_μ*` with both paths in normal form and `s(λ) = s(μ)`. The vertex
/// projection `p_v` is `(v, v)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisTerm {
    lambda: Path,
    mu: Path,
}

impl BasisTerm {
    pub fn new(g: &KGraph, lambda: &Path, mu: &Path) -> Result<BasisTerm, KpError> {
        if lambda.source() != mu.source() {
            let sk = g.skeleton();
            return Err(KpError::SourceMismatch {
                lambda: lambda.display(sk),
                mu: mu.display(sk),
            });
        }
        Ok(BasisTerm {
            lambda: g.normal_form(lambda),
            mu: g.normal_form(mu),
        })
    }

    /// Caller guarantees normal forms and matching sources.
    pub(crate) fn raw(lambda: Path, mu: Path) -> BasisTerm {
        debug_assert_eq!(lambda.source(), mu.source());
        BasisTerm { lambda, mu }
    }

    pub fn lambda(&self) -> &Path {
        &self.lambda
    }

    pub fn mu(&self) -> &Path {
        &self.mu
    }

    pub fn is_diagonal(&self) -> bool {
        self.lambda == self.mu
    }

    /// `d(λ) - d(μ)`.
    pub fn degree(&self, sk: &Skeleton) -> Vec<i64> {
        self.lambda.degree(sk).signed_diff(&self.mu.degree(sk))
    }

    pub fn adjoint(&self) -> BasisTerm {
        BasisTerm {
            lambda: self.mu.clone(),
            mu: self.lambda.clone(),
        }
    }

    pub fn display(&self, sk: &Skeleton) -> String {
        match (self.lambda.is_vertex(), self.mu.is_vertex()) {
            (true, true) => format!("p({})", self.lambda.display(sk)),
            (false, true) => format!("t({})", self.lambda.display(sk)),
            (true, false) => format!("t*({})", self.mu.display(sk)),
            (false, false) => {
                format!("t({}) t*({})", self.lambda.display(sk), self.mu.display(sk))
            }
        }
    }
}

/// A finite combination of basis terms over one graph. No zero coefficients
/// are stored, so `==` compares term maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KpElement {
    graph: u64,
    terms: BTreeMap<BasisTerm, Scalar>,
}

impl KpElement {
    pub fn zero(g: &KGraph) -> KpElement {
        KpElement {
            graph: g.fingerprint(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(g: &KGraph, term: BasisTerm, c: Scalar) -> KpElement {
        let mut out = KpElement::zero(g);
        out.add_term(term, c);
        out
    }

    /// `p_v`.
    pub fn vertex(g: &KGraph, v: crate::skeleton::VertexId) -> KpElement {
        let p = Path::vertex(v);
        KpElement::from_term(g, BasisTerm::raw(p.clone(), p), Scalar::one())
    }

    /// `t_λ`.
    pub fn path(g: &KGraph, lambda: &Path) -> KpElement {
        let s = Path::vertex(lambda.source());
        KpElement::from_term(g, BasisTerm::raw(g.normal_form(lambda), s), Scalar::one())
    }

    /// `t_λ*`.
    pub fn ghost(g: &KGraph, lambda: &Path) -> KpElement {
        let s = Path::vertex(lambda.source());
        KpElement::from_term(g, BasisTerm::raw(s, g.normal_form(lambda)), Scalar::one())
    }

    /// `t_λ t_μ*`.
    pub fn basis(g: &KGraph, lambda: &Path, mu: &Path) -> Result<KpElement, KpError> {
        Ok(KpElement::from_term(g, BasisTerm::new(g, lambda, mu)?, Scalar::one()))
    }

    pub fn graph(&self) -> u64 {
        self.graph
    }

    pub fn terms(&self) -> &BTreeMap<BasisTerm, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, term: BasisTerm, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(term) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub(crate) fn same_graph(&self, other: &KpElement) -> Result<(), KpError> {
        if self.graph == other.graph {
            Ok(())
        } else {
            Err(KpError::MixedGraphs)
        }
    }

    pub fn add(&self, other: &KpElement) -> Result<KpElement, KpError> {
        self.same_graph(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KpElement) -> Result<KpElement, KpError> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> KpElement {
        let mut out = KpElement {
            graph: self.graph,
            terms: BTreeMap::new(),
        };
        for (t, v) in &self.terms {
            out.add_term(t.clone(), v * c);
        }
        out
    }

    /// Conjugate-linear involution `(c t_λ t_μ*)* = c̄ t_μ t_λ*`.
    pub fn adjoint(&self) -> KpElement {
        KpElement {
            graph: self.graph,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.adjoint(), c.conj()))
                .collect(),
        }
    }

    /// Splits by `d(λ) - d(μ)`.
    pub fn graded_components(&self, g: &KGraph) -> BTreeMap<Vec<i64>, KpElement> {
        let mut out: BTreeMap<Vec<i64>, KpElement> = BTreeMap::new();
        for (t, c) in &self.terms {
            out.entry(t.degree(g.skeleton()))
                .or_insert_with(|| KpElement {
                    graph: self.graph,
                    terms: BTreeMap::new(),
                })
                .add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn display(&self, sk: &Skeleton) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let coeff = display_scalar(c);
            let (sign, body) = match coeff.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff),
            };
            if i > 0 {
                let _ = write!(out, " {sign} ");
            } else if sign == "-" {
                out.push('-');
            }
            if body != "1" {
                let _ = write!(out, "{body} ");
            }
            out.push_str(&t.display(sk));
        }
        out
    }
}

fn display_scalar(c: &Scalar) -> String {
    if c.im.is_zero() {
        return c.re.to_string();
    }
    if c.re.is_zero() {
        return format!("{}i", c.im);
    }
    let sign = if c.im.is_negative() { "-" } else { "+" };
    format!("({} {} {}i)", c.re, sign, c.im.abs())
}
