use super::{kp_product, KpElement, KpError};
use crate::limar::{copy_path, require_paired, SplitResult};
use crate::skeleton::GraphError;
use crate::skeleton::{Degree, Path, VertexId};

/// A generator of the algebra of the original graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `q_v`
    Vertex(VertexId),
    /// `s_λ`
    Path(Path),
    /// `s_λ*`
    Ghost(Path),
}

impl Generator {
    pub fn display(&self, sk: &crate::skeleton::Skeleton) -> String {
        match self {
            Generator::Vertex(v) => format!("q({})", sk.vertex_name(*v)),
            Generator::Path(p) => format!("s({})", p.display(sk)),
            Generator::Ghost(p) => format!("s*({})", p.display(sk)),
        }
    }
}

/// The image of a generator in the algebra of the split graph:
/// `q_v ↦ p_{v¹}`, `s_λ ↦ Σ_f t_{λ¹} t_{f^j} t_{f¹*}` and
/// `s_λ* ↦ Σ_f t_{f¹} t_{f^j*} t_{λ¹*}`, with `f` over the rainbow paths
/// ending at `s(λ)` and `s(λ¹) = s(λ)^j`.
pub fn psi_tilde(result: &SplitResult, generator: &Generator) -> Result<KpElement, KpError> {
    let lam = result.lambda();
    let gam = result.gamma();
    require_paired(result)?;

    let (lambda, ghost) = match generator {
        Generator::Vertex(v) => return psi_vertex(result, *v),
        Generator::Path(p) => (lam.normal_form(p), false),
        Generator::Ghost(p) => (lam.normal_form(p), true),
    };
    if lambda.is_vertex() {
        return psi_vertex(result, lambda.range());
    }
    let l1 = copy_path(result, &lambda, 1)?;
    let j = result.vertex_parent(l1.source()).1;
    let mut out = KpElement::zero(gam);
    for f in lam.paths_with_range(lambda.source(), &Degree::ones(lam.k()))? {
        let fj = copy_path(result, &f, j)?;
        let f1 = copy_path(result, &f, 1)?;
        let summand = if ghost {
            kp_product(
                gam,
                &[
                    KpElement::path(gam, &f1),
                    KpElement::ghost(gam, &fj),
                    KpElement::ghost(gam, &l1),
                ],
            )?
        } else {
            kp_product(
                gam,
                &[
                    KpElement::path(gam, &l1),
                    KpElement::path(gam, &fj),
                    KpElement::ghost(gam, &f1),
                ],
            )?
        };
        out = out.add(&summand)?;
    }
    Ok(out)
}

fn psi_vertex(result: &SplitResult, v: VertexId) -> Result<KpElement, KpError> {
    let copy = result
        .vertex_copy(v, 1)
        .ok_or_else(|| GraphError::UnknownVertex(format!("#{}", v.0)))?;
    Ok(KpElement::vertex(result.gamma(), copy))
}

/// `P_X = Σ_v p_{v¹}`.
pub fn corner_projection(result: &SplitResult) -> KpElement {
    let gam = result.gamma();
    let mut out = KpElement::zero(gam);
    for v in result.lambda().skeleton().vertex_ids() {
        let copy = result.vertex_copy(v, 1).expect("every vertex has a first copy");
        out = out
            .add(&KpElement::vertex(gam, copy))
            .expect("same graph");
    }
    out
}
