use std::collections::HashMap;
use std::fmt;


use super::{
    corner_projection, equivalent, is_zero_in_algebra, kp4_sum, kp_mul, kp_product, psi_tilde,
    Generator, KpElement, KpError,
};
use crate::limar::{copy_path, parent_path, SplitResult};
use crate::skeleton::{Color, Degree, KGraph, Path, Skeleton, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub instance: String,
    pub left: String,
    pub right: String,
}

/// One family of identities: how many instances were checked and which failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl Section {
    fn new(name: &str) -> Section {
        Section {
            name: name.to_string(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Evaluates both sides of one instance; evaluation errors count as
    /// failures of that instance.
    fn check(
        &mut self,
        g: &KGraph,
        instance: impl FnOnce() -> String,
        eval: impl FnOnce() -> Result<(KpElement, KpElement), KpError>,
    ) {
        self.checked += 1;
        let sk = g.skeleton();
        let failure = match eval().and_then(|(l, r)| Ok((equivalent(g, &l, &r)?, l, r))) {
            Ok((true, _, _)) => return,
            Ok((false, l, r)) => (l.display(sk), r.display(sk)),
            Err(e) => (format!("error: {e}"), String::new()),
        };
        self.failures.push(Failure {
            instance: instance(),
            left: failure.0,
            right: failure.1,
        });
    }

    /// The element must be nonzero in the algebra.
    fn check_not(
        &mut self,
        g: &KGraph,
        instance: impl FnOnce() -> String,
        eval: impl FnOnce() -> Result<KpElement, KpError>,
    ) {
        self.checked += 1;
        let shown = match eval().and_then(|x| Ok((is_zero_in_algebra(g, &x)?, x))) {
            Ok((false, _)) => return,
            Ok((true, x)) => x.display(g.skeleton()),
            Err(e) => format!("error: {e}"),
        };
        self.failures.push(Failure {
            instance: instance(),
            left: shown,
            right: "nonzero".into(),
        });
    }

    fn expect(&mut self, ok: bool, instance: impl FnOnce() -> (String, String, String)) {
        self.checked += 1;
        if !ok {
            let (instance, left, right) = instance();
            self.failures.push(Failure {
                instance,
                left,
                right,
            });
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub sections: Vec<Section>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(Section::passed)
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn failures(&self) -> usize {
        self.sections.iter().map(|s| s.failures.len()).sum()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sections {
            let status = if s.passed() { "ok" } else { "FAILED" };
            writeln!(f, "{}: {} ({} checked)", s.name, status, s.checked)?;
            for x in &s.failures {
                writeln!(f, "  {}", x.instance)?;
                writeln!(f, "    left:  {}", x.left)?;
                writeln!(f, "    right: {}", x.right)?;
            }
        }
        Ok(())
    }
}

/// Memoized images of generators.
struct Psi<'a> {
    result: &'a SplitResult,
    cache: HashMap<Generator, KpElement>,
}

impl<'a> Psi<'a> {
    fn new(result: &'a SplitResult) -> Psi<'a> {
        Psi {
            result,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, g: Generator) -> Result<KpElement, KpError> {
        if let Some(x) = self.cache.get(&g) {
            return Ok(x.clone());
        }
        let x = psi_tilde(self.result, &g)?;
        self.cache.insert(g, x.clone());
        Ok(x)
    }

    fn q(&mut self, v: VertexId) -> Result<KpElement, KpError> {
        self.get(Generator::Vertex(v))
    }

    fn s(&mut self, p: &Path) -> Result<KpElement, KpError> {
        self.get(Generator::Path(p.clone()))
    }

    fn s_star(&mut self, p: &Path) -> Result<KpElement, KpError> {
        self.get(Generator::Ghost(p.clone()))
    }
}

/// Degrees used for the fourth relation: every nonzero degree up to total
/// `max`, plus each basis degree and the all-ones degree.
fn kp4_degrees(k: usize, max: u32) -> Vec<Degree> {
    let mut out: Vec<Degree> = (1..=max).flat_map(|t| Degree::all_with_total(k, t)).collect();
    out.extend((0..k).map(|i| Degree::basis(k, Color(i))));
    out.push(Degree::ones(k));
    out.sort();
    out.dedup();
    out
}

fn name(sk: &Skeleton, p: &Path) -> String {
    p.display(sk)
}

/// The images of the generators form a Kumjian-Pask family in the split
/// graph's algebra.
pub fn verify_kp_family(result: &SplitResult, max_paths: u32) -> Result<VerifyReport, KpError> {
    let lam = result.lambda();
    let gam = result.gamma();
    let ls = lam.skeleton();
    let mut psi = Psi::new(result);
    let paths = lam.all_paths(1, max_paths.max(1));
    let vertices: Vec<VertexId> = ls.vertex_ids().collect();
    let zero = KpElement::zero(gam);
    let vn = |v: VertexId| ls.vertex_name(v).to_string();

    let mut kp1 = Section::new("KP1");
    let mut nonzero = Section::new("vertex images nonzero");
    for &v in &vertices {
        nonzero.check_not(gam, || format!("q({})", vn(v)), || psi.q(v));
        for &w in &vertices {
            kp1.check(gam, || format!("q({}) q({})", vn(v), vn(w)), || {
                let (qv, qw) = (psi.q(v)?, psi.q(w)?);
                let want = if v == w { qv.clone() } else { zero.clone() };
                Ok((kp_mul(gam, &qv, &qw)?, want))
            });
        }
    }

    let mut kp2 = Section::new("KP2");
    for lambda in &paths {
        let n = name(ls, lambda);
        let (r, s) = (lambda.range(), lambda.source());
        kp2.check(gam, || format!("q(r) s({n})"), || {
            let x = psi.s(lambda)?;
            Ok((kp_mul(gam, &psi.q(r)?, &x)?, x))
        });
        kp2.check(gam, || format!("s({n}) q(s)"), || {
            let x = psi.s(lambda)?;
            Ok((kp_mul(gam, &x, &psi.q(s)?)?, x))
        });
        kp2.check(gam, || format!("q(s) s*({n})"), || {
            let x = psi.s_star(lambda)?;
            Ok((kp_mul(gam, &psi.q(s)?, &x)?, x))
        });
        kp2.check(gam, || format!("s*({n}) q(r)"), || {
            let x = psi.s_star(lambda)?;
            Ok((kp_mul(gam, &x, &psi.q(r)?)?, x))
        });
        for mu in paths
            .iter()
            .filter(|m| m.range() == s && (lambda.len() + m.len()) as u32 <= max_paths)
        {
            let m = name(ls, mu);
            kp2.check(gam, || format!("s({n}) s({m})"), || {
                let whole = lam.compose(lambda, mu)?;
                Ok((kp_mul(gam, &psi.s(lambda)?, &psi.s(mu)?)?, psi.s(&whole)?))
            });
            kp2.check(gam, || format!("s*({m}) s*({n})"), || {
                let whole = lam.compose(lambda, mu)?;
                Ok((
                    kp_mul(gam, &psi.s_star(mu)?, &psi.s_star(lambda)?)?,
                    psi.s_star(&whole)?,
                ))
            });
        }
    }

    let mut kp3 = Section::new("KP3");
    for lambda in &paths {
        for mu in paths.iter().filter(|m| {
            m.degree(ls) == lambda.degree(ls) && (lambda.len() + m.len()) as u32 <= max_paths
        }) {
            kp3.check(gam, || format!("s*({}) s({})", name(ls, lambda), name(ls, mu)), || {
                let want = if lambda == mu {
                    psi.q(lambda.source())?
                } else {
                    zero.clone()
                };
                Ok((kp_mul(gam, &psi.s_star(lambda)?, &psi.s(mu)?)?, want))
            });
        }
    }

    let mut kp4 = Section::new("KP4");
    for &v in &vertices {
        for n in kp4_degrees(lam.k(), max_paths) {
            kp4.check(gam, || format!("sum over {}Λ^{n}", vn(v)), || {
                let mut sum = zero.clone();
                for lambda in lam.paths_with_range(v, &n)? {
                    sum = sum.add(&kp_mul(gam, &psi.s(&lambda)?, &psi.s_star(&lambda)?)?)?;
                }
                Ok((sum, psi.q(v)?))
            });
        }
    }

    Ok(VerifyReport {
        sections: vec![kp1, kp2, kp3, kp4, nonzero],
    })
}

/// `Σ_f t_{f^j} t_{f¹*} t_{x¹} = t_{x^j}` and its ghost form, for every edge
/// `x` and every copy index `j`.
pub fn verify_swap_identity(result: &SplitResult) -> Result<VerifyReport, KpError> {
    let lam = result.lambda();
    let gam = result.gamma();
    let ls = lam.skeleton();
    let one = Degree::ones(lam.k());
    let mut forward = Section::new("swap identity");
    let mut ghost = Section::new("swap identity (ghost)");
    for x in ls.edge_ids() {
        let xp = Path::edge(ls, x);
        let fs = lam.paths_with_range(ls.range(x), &one)?;
        for j in 1..=result.n(ls.range(x)) {
            let label = || format!("x = {}, j = {j}", ls.edge_name(x));
            let sides = |ghost: bool| -> Result<(KpElement, KpElement), KpError> {
                let x1 = copy_path(result, &xp, 1)?;
                let xj = copy_path(result, &xp, j)?;
                let mut lhs = KpElement::zero(gam);
                for f in &fs {
                    let fj = copy_path(result, f, j)?;
                    let f1 = copy_path(result, f, 1)?;
                    let factors = if ghost {
                        [
                            KpElement::ghost(gam, &x1),
                            KpElement::path(gam, &f1),
                            KpElement::ghost(gam, &fj),
                        ]
                    } else {
                        [
                            KpElement::path(gam, &fj),
                            KpElement::ghost(gam, &f1),
                            KpElement::path(gam, &x1),
                        ]
                    };
                    lhs = lhs.add(&kp_product(gam, &factors)?)?;
                }
                let rhs = if ghost {
                    KpElement::ghost(gam, &xj)
                } else {
                    KpElement::path(gam, &xj)
                };
                Ok((lhs, rhs))
            };
            forward.check(gam, label, || sides(false));
            ghost.check(gam, label, || sides(true));
        }
    }
    Ok(VerifyReport {
        sections: vec![forward, ghost],
    })
}

/// `ψ̃(s_λ) ψ̃(s_λ*) = t_{λ¹} t_{λ¹*}`, and every term of the product is
/// diagonal.
pub fn verify_diagonal(result: &SplitResult, max_len: u32) -> Result<VerifyReport, KpError> {
    let lam = result.lambda();
    let gam = result.gamma();
    let ls = lam.skeleton();
    let mut psi = Psi::new(result);
    let mut equal = Section::new("diagonal image");
    let mut diagonal = Section::new("diagonal terms");
    for lambda in lam.all_paths(0, max_len) {
        let n = name(ls, &lambda);
        let product = psi
            .s(&lambda)
            .and_then(|s| kp_mul(gam, &s, &psi.s_star(&lambda)?));
        equal.check(gam, || format!("λ = {n}"), || {
            let l1 = copy_path(result, &lambda, 1)?;
            Ok((product.clone()?, KpElement::basis(gam, &l1, &l1)?))
        });
        let ok = matches!(&product, Ok(x) if x.terms().keys().all(|t| t.is_diagonal()));
        diagonal.expect(ok, || {
            let shown = match &product {
                Ok(x) => x.display(gam.skeleton()),
                Err(e) => format!("error: {e}"),
            };
            (format!("λ = {n}"), shown, "only diagonal terms".into())
        });
    }
    Ok(VerifyReport {
        sections: vec![equal, diagonal],
    })
}

/// Corner checks for `P_X = Σ_v p_{v¹}`.
pub fn verify_corner(result: &SplitResult, max_len: u32) -> Result<VerifyReport, KpError> {
    let lam = result.lambda();
    let gam = result.gamma();
    let (ls, gs) = (lam.skeleton(), gam.skeleton());
    let mut psi = Psi::new(result);
    let px = corner_projection(result);

    let mut projection = Section::new("corner projection");
    projection.check(gam, || "P_X P_X".into(), || Ok((kp_mul(gam, &px, &px)?, px.clone())));
    let adj = px.adjoint();
    projection.expect(adj == px, || ("P_X*".into(), adj.display(gs), px.display(gs)));

    let mut generators: Vec<Generator> = ls.vertex_ids().map(Generator::Vertex).collect();
    for p in lam.all_paths(1, max_len) {
        generators.push(Generator::Path(p.clone()));
        generators.push(Generator::Ghost(p));
    }
    let mut inside = Section::new("corner contains images");
    for g in &generators {
        inside.check(gam, || g.display(ls), || {
            let x = psi.get(g.clone())?;
            Ok((kp_product(gam, &[px.clone(), x.clone(), px.clone()])?, x))
        });
    }

    let mut star = Section::new("images respect adjoints");
    for p in lam.all_paths(1, max_len) {
        star.check(gam, || format!("s({})*", name(ls, &p)), || {
            Ok((psi.s(&p)?.adjoint(), psi.s_star(&p)?))
        });
    }

    let mut surject = Section::new("corner terms are images");
    let in_x = |v: VertexId| result.vertex_parent(v).1 == 1;
    let corner_paths: Vec<Path> = gam
        .all_paths(0, max_len)
        .into_iter()
        .filter(|p| in_x(p.range()))
        .collect();
    for gamma in &corner_paths {
        for delta in corner_paths.iter().filter(|d| d.source() == gamma.source()) {
            surject.check(
                gam,
                || format!("t({}) t*({})", name(gs, gamma), name(gs, delta)),
                || {
                    let term = KpElement::basis(gam, gamma, delta)?;
                    let pg = parent_path(result, gamma);
                    let pd = parent_path(result, delta);
                    Ok((term, kp_mul(gam, &psi.s(&pg)?, &psi.s_star(&pd)?)?))
                },
            );
        }
    }
    Ok(VerifyReport {
        sections: vec![projection, inside, star, surject],
    })
}

/// `ψ̃(s_λ)` is homogeneous of degree `d(λ)` and `ψ̃(s_λ*)` of degree `-d(λ)`.
pub fn verify_grading(result: &SplitResult, max_len: u32) -> Result<VerifyReport, KpError> {
    let lam = result.lambda();
    let gam = result.gamma();
    let ls = lam.skeleton();
    let mut psi = Psi::new(result);
    let mut section = Section::new("grading");
    for p in lam.all_paths(1, max_len) {
        let d: Vec<i64> = p.degree(ls).components().iter().map(|c| i64::from(*c)).collect();
        let minus: Vec<i64> = d.iter().map(|c| -c).collect();
        for (x, want, label) in [
            (psi.s(&p), d.clone(), format!("s({})", name(ls, &p))),
            (psi.s_star(&p), minus, format!("s*({})", name(ls, &p))),
        ] {
            let got: Vec<Vec<i64>> = match &x {
                Ok(x) => x.graded_components(gam).into_keys().collect(),
                Err(_) => Vec::new(),
            };
            let ok = got == [want.clone()];
            section.expect(ok, || {
                let shown = match x {
                    Ok(_) => got.iter().map(|k| format!("{k:?}")).collect::<Vec<_>>().join(" "),
                    Err(e) => format!("error: {e}"),
                };
                (label, shown, format!("{want:?}"))
            });
        }
    }
    Ok(VerifyReport {
        sections: vec![section],
    })
}

/// The universal family `{p_v, t_e, t_e*}` of any source-free graph satisfies
/// the defining relations under the implemented product.
pub fn verify_universal_family(g: &KGraph, max: u32) -> Result<VerifyReport, KpError> {
    let sk = g.skeleton();
    let zero = KpElement::zero(g);
    let p = |v: VertexId| KpElement::vertex(g, v);
    let edges: Vec<Path> = sk.edge_ids().map(|e| Path::edge(sk, e)).collect();

    let mut kp1 = Section::new("KP1");
    for v in sk.vertex_ids() {
        for w in sk.vertex_ids() {
            let expected = if v == w { p(v) } else { zero.clone() };
            let got = kp_mul(g, &p(v), &p(w))?;
            kp1.expect(got == expected, || {
                (format!("p({}) p({})", sk.vertex_name(v), sk.vertex_name(w)), got.display(sk), expected.display(sk))
            });
        }
    }

    let mut idem = Section::new("edges absorb their endpoints");
    let mut kp2 = Section::new("KP2");
    for e in &edges {
        let t = KpElement::path(g, e);
        let ts = KpElement::ghost(g, e);
        let n = name(sk, e);
        for (label, got, want) in [
            (format!("t({n}) p(s)"), kp_mul(g, &t, &p(e.source()))?, &t),
            (format!("p(r) t({n})"), kp_mul(g, &p(e.range()), &t)?, &t),
            (format!("p(s) t*({n})"), kp_mul(g, &p(e.source()), &ts)?, &ts),
            (format!("t*({n}) p(r)"), kp_mul(g, &ts, &p(e.range()))?, &ts),
        ] {
            idem.expect(&got == want, || (label, got.display(sk), want.display(sk)));
        }
        for f in edges.iter().filter(|f| f.range() == e.source()) {
            let whole = g.compose(e, f)?;
            let got = kp_mul(g, &t, &KpElement::path(g, f))?;
            let want = KpElement::path(g, &whole);
            kp2.expect(got == want, || (format!("t({n}) t({})", name(sk, f)), got.display(sk), want.display(sk)));
            let got = kp_mul(g, &KpElement::ghost(g, f), &ts)?;
            let want = KpElement::ghost(g, &whole);
            kp2.expect(got == want, || (format!("t*({}) t*({n})", name(sk, f)), got.display(sk), want.display(sk)));
        }
    }

    let mut kp3 = Section::new("KP3");
    let mut orth = Section::new("distinct ghosts are orthogonal");
    for a in &edges {
        for b in edges.iter().filter(|b| sk.color(b.edges()[0]) == sk.color(a.edges()[0])) {
            let got = kp_mul(g, &KpElement::ghost(g, a), &KpElement::path(g, b))?;
            let want = if a == b { p(a.source()) } else { zero.clone() };
            let label = format!("t*({}) t({})", name(sk, a), name(sk, b));
            if a != b && a.range() == b.range() {
                orth.expect(got.is_zero(), || (label.clone(), got.display(sk), "0".into()));
            }
            kp3.expect(got == want, || (label, got.display(sk), want.display(sk)));
        }
    }

    let mut kp4 = Section::new("KP4");
    for v in sk.vertex_ids() {
        for n in kp4_degrees(g.k(), max) {
            kp4.check(g, || format!("sum over {}Λ^{n}", sk.vertex_name(v)), || {
                Ok((kp4_sum(g, v, &n)?, p(v)))
            });
        }
    }
    Ok(VerifyReport {
        sections: vec![kp1, kp2, idem, kp3, orth, kp4],
    })
}
