use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{ErrorKind, Result};
use crate::operators::{GradedOperator as G, MatrixCache, OperatorMatrix};
use crate::pathspace::{Chain, ElementaryPath, Space, Vertex, VertexSet, Weighting};
use crate::regular::{BracketKind, PartialBracketForm};
use crate::scalar::Scalar;
use crate::verifier::compare::{basis, run_family, Batch, Expected, Instance};
use crate::verifier::counterexample::{find_counterexample, IdentityId, SearchOutcome};
use crate::verifier::report::{CheckResult, IdentityCheck};
use crate::verifier::weightings::{random_chain, random_weighting, single_weightings, weighting_pairs, Named};
use crate::verifier::VerifyConfig;

type Pair = (Named, Named);

fn scope(vs: &VertexSet, max_degree: usize, space: Space) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("vertices".into(), json!(vs.labels()));
    m.insert("max_degree".into(), json!(max_degree));
    m.insert("space".into(), json!(space.as_str()));
    m
}

fn pair_labels(p: &Pair) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("f".into(), p.0.to_json());
    m.insert("g".into(), p.1.to_json());
    m
}

fn single_labels(f: &Named) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("f".into(), f.to_json());
    m
}

fn with_ij(base: &Map<String, Value>, i: usize, j: usize) -> Map<String, Value> {
    let mut m = base.clone();
    m.insert("i".into(), json!(i));
    m.insert("j".into(), json!(j));
    m
}

fn neg(op: G) -> Expected {
    Expected::Op(op.negate())
}

fn scaled_identity(vs: &Arc<VertexSet>, space: Space, s: Scalar) -> Expected {
    Expected::Op(G::identity(vs.clone(), space).scale(s))
}

/// `(i, j)` with both in `0..=top`.
fn square(top: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=top).flat_map(move |i| (0..=top).map(move |j| (i, j)))
}

fn rng_for(cfg: &VerifyConfig, vs: &VertexSet, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ (salt << 40) ^ ((vs.len() as u64) << 32))
}

// ---------------------------------------------------------------- main I

pub(crate) fn main1(cfg: &VerifyConfig, vs: &Arc<VertexSet>) -> Vec<IdentityCheck> {
    let pairs = weighting_pairs(vs, &mut rng_for(cfg, vs, 1), cfg.trials);
    let max = cfg.max_degree;
    let sc = || scope(vs, max, Space::Full);
    let cap = cfg.basis_cap;
    let mut out = Vec::new();

    out.push(run_family("main1.i", sc(), &pairs, cap, |p| {
        let (f, g) = (&p.0.f, &p.1.f);
        let mut b = Batch::new();
        for n in 0..=max {
            for (i, j) in square(n).filter(|(i, j)| i < j) {
                let lhs = G::weighted_face(f, i).compose(&G::weighted_face(g, j))?;
                let rhs = G::weighted_face(g, j - 1).compose(&G::weighted_face(f, i))?;
                b.push(Instance::new(n, with_ij(&pair_labels(p), i, j), lhs, neg(rhs)));
            }
        }
        Ok(b)
    }));

    let mixed = |name: &'static str, case: std::cmp::Ordering| {
        run_family(name, sc(), &pairs, cap, move |p| {
            let (f, g) = (&p.0.f, &p.1.f);
            let mut b = Batch::new();
            for n in 0..=max {
                for (i, j) in square(n + 1).filter(|(i, j)| i.cmp(j) == case) {
                    let lhs = G::weighted_face(f, i).compose(&G::weighted_coface(g, j))?;
                    let rhs = match case {
                        std::cmp::Ordering::Less => neg(G::weighted_coface(g, j - 1).compose(&G::weighted_face(f, i))?),
                        std::cmp::Ordering::Equal => scaled_identity(vs, Space::Full, f.inner(g, None)?),
                        std::cmp::Ordering::Greater => {
                            neg(G::weighted_coface(g, j).compose(&G::weighted_face(f, i - 1))?)
                        }
                    };
                    b.push(Instance::new(n, with_ij(&pair_labels(p), i, j), lhs, rhs));
                }
            }
            Ok(b)
        })
    };
    out.push(mixed("main1.ii.lower", std::cmp::Ordering::Less));
    out.push(mixed("main1.ii.diagonal", std::cmp::Ordering::Equal));
    out.push(mixed("main1.ii.upper", std::cmp::Ordering::Greater));

    out.push(run_family("main1.iii", sc(), &pairs, cap, |p| {
        let (f, g) = (&p.0.f, &p.1.f);
        let mut b = Batch::new();
        for n in 0..=max {
            for (i, j) in square(n + 1).filter(|(i, j)| i <= j) {
                let lhs = G::weighted_coface(f, i).compose(&G::weighted_coface(g, j))?;
                let rhs = G::weighted_coface(g, j + 1).compose(&G::weighted_coface(f, i))?;
                b.push(Instance::new(n, with_ij(&pair_labels(p), i, j), lhs, neg(rhs)));
            }
        }
        Ok(b)
    }));
    out
}

// --------------------------------------------------------------- main II

/// `V ∖ {v_{i−1}, v_i}` for the path `p`, ignoring positions outside it.
fn complement(vs: &VertexSet, p: &ElementaryPath, i: usize) -> Vec<Vertex> {
    let pv = p.vertices();
    let mut excluded = Vec::new();
    if i >= 1 {
        excluded.push(pv[i - 1]);
    }
    if i < pv.len() {
        excluded.push(pv[i]);
    }
    vs.vertices().filter(|v| !excluded.contains(&v.0)).collect()
}

pub(crate) fn main2(cfg: &VerifyConfig, vs: &Arc<VertexSet>) -> Vec<IdentityCheck> {
    let pairs = weighting_pairs(vs, &mut rng_for(cfg, vs, 2), cfg.trials);
    let max = cfg.max_degree;
    let cap = cfg.basis_cap;
    let sc = || scope(vs, max, Space::Regular);
    let mut out = Vec::new();

    out.push(run_family("main2.i", sc(), &pairs, cap, |p| {
        let (f, g) = (&p.0.f, &p.1.f);
        let mut b = Batch::new();
        for n in 0..=max {
            for (i, j) in square(n).filter(|(i, j)| i + 2 <= *j) {
                let lhs = G::regular_face(f, i).compose(&G::regular_face(g, j))?;
                let rhs = G::regular_face(g, j - 1).compose(&G::regular_face(f, i))?;
                b.push(Instance::new(n, with_ij(&pair_labels(p), i, j), lhs, neg(rhs)));
            }
        }
        Ok(b)
    }));

    out.push(run_family("main2.ii.lower", sc(), &pairs, cap, |p| {
        let (f, g) = (&p.0.f, &p.1.f);
        let mut b = Batch::new();
        for n in 0..=max {
            for (i, j) in square(n + 1).filter(|(i, j)| i + 2 <= *j) {
                let lhs = G::regular_face(f, i).compose(&G::regular_coface(g, j))?;
                let rhs = G::regular_coface(g, j - 1).compose(&G::regular_face(f, i))?;
                b.push(Instance::new(n, with_ij(&pair_labels(p), i, j), lhs, neg(rhs)));
            }
        }
        Ok(b)
    }));

    out.push(run_family("main2.ii.diagonal", sc(), &pairs, cap, |p| {
        let (f, g) = (&p.0.f, &p.1.f);
        let mut b = Batch::new();
        for n in 0..=max {
            let basis = basis(vs, n, Space::Regular, cap)?;
            for i in 0..=n + 1 {
                let diag = basis
                    .iter()
                    .map(|q| f.inner(g, Some(&complement(vs, &q, i))))
                    .collect::<Result<Vec<_>>>()?;
                let lhs = G::regular_face(f, i).compose(&G::regular_coface(g, i))?;
                b.push(Instance::new(
                    n,
                    with_ij(&pair_labels(p), i, i),
                    lhs,
                    Expected::Diagonal(diag),
                ));
            }
        }
        Ok(b)
    }));
    if let Some(last) = out.last_mut() {
        if let Ok(m) = middle_scalars(vs, cap) {
            last.measured = Some(m);
        }
    }

    out.push(run_family("main2.ii.upper", sc(), &pairs, cap, |p| {
        let (f, g) = (&p.0.f, &p.1.f);
        let mut b = Batch::new();
        for n in 0..=max {
            for (i, j) in square(n + 1).filter(|(i, j)| *i >= j + 2) {
                let lhs = G::regular_face(f, i).compose(&G::regular_coface(g, j))?;
                let rhs = G::regular_coface(g, j).compose(&G::regular_face(f, i - 1))?;
                b.push(Instance::new(n, with_ij(&pair_labels(p), i, j), lhs, neg(rhs)));
            }
        }
        Ok(b)
    }));

    out.push(run_family("main2.iii", sc(), &pairs, cap, |p| {
        let (f, g) = (&p.0.f, &p.1.f);
        let mut b = Batch::new();
        for n in 0..=max {
            for (i, j) in square(n + 1).filter(|(i, j)| i < j) {
                let lhs = G::regular_coface(f, i).compose(&G::regular_coface(g, j))?;
                let rhs = G::regular_coface(g, j + 1).compose(&G::regular_coface(f, i))?;
                b.push(Instance::new(n, with_ij(&pair_labels(p), i, j), lhs, neg(rhs)));
            }
        }
        Ok(b)
    }));

    out.extend(factorization(cfg, vs));

    out.push(run_family("main2.degeneracy_vanishes", sc(), &[()], cap, |_| {
        let mut b = Batch::new();
        for n in 0..=max {
            for i in 0..=n {
                let mut labels = Map::new();
                labels.insert("i".into(), json!(i));
                let lhs = G::degeneracy(vs.clone(), i).induced_regular()?;
                b.push(Instance::new(n, labels, lhs, Expected::Zero));
            }
        }
        Ok(b)
    }));

    for id in IdentityId::ALL.into_iter().filter(|id| !id.in_range()) {
        out.push(excluded_case(id, vs, max, cap));
    }
    out
}

/// `⟨1, 1⟩` restricted to `V ∖ {v_{i−1}, v_i}` for every degree-1 regular
/// path and every `i`, as observed through the operator.
fn middle_scalars(vs: &Arc<VertexSet>, cap: usize) -> Result<Value> {
    let ones = Weighting::ones(vs.clone());
    let basis = basis(vs, 1, Space::Regular, cap)?;
    let mut per_path = Map::new();
    for (c, q) in basis.iter().enumerate() {
        let mut row = Map::new();
        for i in 0..=2 {
            let op = G::regular_face(&ones, i).compose(&G::regular_coface(&ones, i))?;
            let m = OperatorMatrix::materialize(&op, 1, cap)?;
            row.insert(format!("i={i}"), json!(m.get(c, c).to_string()));
        }
        per_path.insert(q.render(vs), Value::Object(row));
    }
    Ok(json!({"f": "ones", "g": "ones", "degree": 1, "scalars": per_path}))
}

/// Closed ε-formulas against projection of the full-space operators.
pub(crate) fn factorization(cfg: &VerifyConfig, vs: &Arc<VertexSet>) -> Vec<IdentityCheck> {
    let singles = single_weightings(vs, &mut rng_for(cfg, vs, 3), cfg.trials);
    let max = cfg.max_degree;
    let sc = || scope(vs, max, Space::Regular);
    let face = run_family("main2.factorization.face", sc(), &singles, cfg.basis_cap, |f| {
        let mut b = Batch::new();
        for n in 0..=max {
            for i in 0..=n {
                let mut labels = single_labels(f);
                labels.insert("i".into(), json!(i));
                let rhs = G::weighted_face(&f.f, i).induced_regular()?;
                b.push(Instance::new(n, labels, G::regular_face(&f.f, i), Expected::Op(rhs)));
            }
        }
        Ok(b)
    });
    let coface = run_family("main2.factorization.coface", sc(), &singles, cfg.basis_cap, |f| {
        let mut b = Batch::new();
        for n in 0..=max {
            for i in 0..=n + 1 {
                let mut labels = single_labels(f);
                labels.insert("i".into(), json!(i));
                let rhs = G::weighted_coface(&f.f, i).induced_regular()?;
                b.push(Instance::new(n, labels, G::regular_coface(&f.f, i), Expected::Op(rhs)));
            }
        }
        Ok(b)
    });
    vec![face, coface]
}

/// Identities outside the asserted index range: a witness is reported as
/// a pass, absence of one as inconclusive.
fn excluded_case(id: IdentityId, vs: &Arc<VertexSet>, max: usize, cap: usize) -> IdentityCheck {
    let mut sc = scope(vs, max, Space::Regular);
    sc.insert("identity".into(), json!(id.as_str()));
    let name = format!("main2.excluded.{}", id.as_str());
    match find_counterexample(id, vs, max, cap) {
        Ok(SearchOutcome::Found(w)) => {
            let json = SearchOutcome::Found(w).to_json();
            IdentityCheck::new(name, Value::Object(sc), CheckResult::Pass).with_witness(json)
        }
        Ok(SearchOutcome::NotFound { instances, .. }) => {
            sc.insert("instances".into(), json!(instances));
            IdentityCheck::new(name, Value::Object(sc), CheckResult::Skipped)
                .with_reason("inconclusive: no counterexample in scope")
        }
        Err(e) => skipped_or_failed(name, sc, e),
    }
}

fn skipped_or_failed(name: String, sc: Map<String, Value>, e: crate::error::Error) -> IdentityCheck {
    let result = if e.kind() == ErrorKind::Resource {
        CheckResult::Skipped
    } else {
        CheckResult::Fail
    };
    IdentityCheck::new(name, Value::Object(sc), result).with_reason(e.to_string())
}

// ------------------------------------------------------------ lemmas 2.1

pub(crate) fn lemmas21(cfg: &VerifyConfig, vs: &Arc<VertexSet>) -> Vec<IdentityCheck> {
    let pairs: Vec<(Vertex, Vertex)> = vs.vertices().flat_map(|u| vs.vertices().map(move |v| (u, v))).collect();
    let max = cfg.max_degree;
    let cap = cfg.basis_cap;
    let sc = || scope(vs, max, Space::Full);
    let labels = |&(u, v): &(Vertex, Vertex), i: usize, j: usize| {
        let mut m = Map::new();
        m.insert("u".into(), json!(vs.label(u)));
        m.insert("v".into(), json!(vs.label(v)));
        with_ij(&m, i, j)
    };
    let fp = |v: Vertex, i: usize| G::face_partial(vs.clone(), v, i);
    let cf = |v: Vertex, i: usize| G::coface(vs.clone(), v, i);
    let mut out = Vec::new();

    out.push(run_family("lemmas21.faces", sc(), &pairs, cap, |uv| {
        let (u, v) = *uv;
        let mut b = Batch::new();
        for n in 0..=max {
            for (i, j) in square(n).filter(|(i, j)| i < j) {
                let lhs = fp(u, i)?.compose(&fp(v, j)?)?;
                let rhs = fp(v, j - 1)?.compose(&fp(u, i)?)?;
                b.push(Instance::new(n, labels(uv, i, j), lhs, neg(rhs)));
            }
        }
        Ok(b)
    }));

    let mixed = |name: &'static str, case: std::cmp::Ordering| {
        run_family(name, sc(), &pairs, cap, move |uv| {
            let (u, v) = *uv;
            let mut b = Batch::new();
            for n in 0..=max {
                for (i, j) in square(n + 1).filter(|(i, j)| i.cmp(j) == case) {
                    let lhs = fp(u, i)?.compose(&cf(v, j)?)?;
                    let rhs = match case {
                        std::cmp::Ordering::Less => neg(cf(v, j - 1)?.compose(&fp(u, i)?)?),
                        std::cmp::Ordering::Equal => {
                            let delta = if u == v { Scalar::one() } else { Scalar::zero() };
                            scaled_identity(vs, Space::Full, delta)
                        }
                        std::cmp::Ordering::Greater => neg(cf(v, j)?.compose(&fp(u, i - 1)?)?),
                    };
                    b.push(Instance::new(n, labels(uv, i, j), lhs, rhs));
                }
            }
            Ok(b)
        })
    };
    out.push(mixed("lemmas21.mixed.lower", std::cmp::Ordering::Less));
    out.push(mixed("lemmas21.mixed.diagonal", std::cmp::Ordering::Equal));
    out.push(mixed("lemmas21.mixed.upper", std::cmp::Ordering::Greater));

    out.push(run_family("lemmas21.cofaces", sc(), &pairs, cap, |uv| {
        let (u, v) = *uv;
        let mut b = Batch::new();
        for n in 0..=max {
            for (i, j) in square(n + 1).filter(|(i, j)| i <= j) {
                let lhs = cf(u, i)?.compose(&cf(v, j)?)?;
                let rhs = cf(v, j + 1)?.compose(&cf(u, i)?)?;
                b.push(Instance::new(n, labels(uv, i, j), lhs, neg(rhs)));
            }
        }
        Ok(b)
    }));
    out
}

// ------------------------------------------------------------ structural

pub(crate) fn structural(cfg: &VerifyConfig, vs: &Arc<VertexSet>) -> Vec<IdentityCheck> {
    let pairs = weighting_pairs(vs, &mut rng_for(cfg, vs, 4), cfg.trials);
    let singles = single_weightings(vs, &mut rng_for(cfg, vs, 5), cfg.trials);
    let max = cfg.max_degree;
    let cap = cfg.basis_cap;
    let sc = || scope(vs, max, Space::Full);
    let mut out = Vec::new();

    out.push(run_family("structural.anticommute.boundary", sc(), &pairs, cap, |p| {
        let (f, g) = (&p.0.f, &p.1.f);
        let mut b = Batch::new();
        for n in 0..=max {
            let lhs = G::boundary(f).compose(&G::boundary(g))?;
            let rhs = G::boundary(g).compose(&G::boundary(f))?;
            b.push(Instance::new(n, pair_labels(p), lhs, neg(rhs)));
        }
        Ok(b)
    }));
    out.push(run_family(
        "structural.anticommute.coboundary",
        sc(),
        &pairs,
        cap,
        |p| {
            let (f, g) = (&p.0.f, &p.1.f);
            let mut b = Batch::new();
            for n in 0..=max {
                let lhs = G::coboundary(f).compose(&G::coboundary(g))?;
                let rhs = G::coboundary(g).compose(&G::coboundary(f))?;
                b.push(Instance::new(n, pair_labels(p), lhs, neg(rhs)));
            }
            Ok(b)
        },
    ));
    out.push(run_family("structural.square.boundary", sc(), &singles, cap, |f| {
        let mut b = Batch::new();
        for n in 0..=max {
            let lhs = G::boundary(&f.f).compose(&G::boundary(&f.f))?;
            b.push(Instance::new(n, single_labels(f), lhs, Expected::Zero));
        }
        Ok(b)
    }));
    out.push(run_family("structural.square.coboundary", sc(), &singles, cap, |f| {
        let mut b = Batch::new();
        for n in 0..=max {
            let lhs = G::coboundary(&f.f).compose(&G::coboundary(&f.f))?;
            b.push(Instance::new(n, single_labels(f), lhs, Expected::Zero));
        }
        Ok(b)
    }));
    out.push(run_family("structural.adjoint", sc(), &singles, cap, |f| {
        let mut b = Batch::new();
        for n in 1..=max {
            let labels = single_labels(f);
            b.push(Instance::new(
                n - 1,
                labels,
                G::coboundary(&f.f),
                Expected::Transpose(G::boundary(&f.f)),
            ));
        }
        Ok(b)
    }));
    out.push(run_family("structural.corollary", sc(), &singles, cap, |f| {
        let mut b = Batch::new();
        for n in 0..=max {
            for i in 0..=n + 1 {
                let mut labels = single_labels(f);
                labels.insert("i".into(), json!(i));
                let lhs = G::weighted_face(&f.f, i).compose(&G::weighted_coface(&f.f, i))?;
                b.push(Instance::new(
                    n,
                    labels,
                    lhs,
                    scaled_identity(vs, Space::Full, f.f.norm2()),
                ));
            }
        }
        Ok(b)
    }));
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rule {
    Boundary,
    /// Degree-0 factors map to the empty path with coefficient `Σ f(v)ξ_v`.
    BoundaryAugmented,
    Coboundary,
    CoboundaryJunction,
}

/// Applies `op` to a homogeneous chain directly and through its matrix;
/// returns `None` if the two routes disagree.
fn apply_both(op: &G, xi: &Chain, cache: &MatrixCache) -> Result<Option<Chain>> {
    let direct = op.apply(xi)?;
    if xi.is_zero() {
        return Ok(Some(direct));
    }
    let m = cache.materialize(op, xi.degree()?)?;
    let via_matrix = m.apply(xi)?;
    Ok((direct == via_matrix).then_some(direct))
}

/// `Σ_v f(v)·v` as a chain of degree 0.
fn weighted_vertices(f: &Weighting) -> Chain {
    let terms = f.support().map(|(v, w)| (ElementaryPath::new([v]), w.clone()));
    Chain::from_terms(f.vertices().clone(), terms).expect("vertices in range")
}

type NlCase = (Chain, Chain, Weighting, usize, usize);

pub(crate) fn structural_newton_leibniz(cfg: &VerifyConfig, vs: &Arc<VertexSet>) -> Vec<IdentityCheck> {
    let mut rng = rng_for(cfg, vs, 6);
    let cases: Vec<NlCase> = (0..cfg.newton_leibniz_pairs)
        .map(|_| {
            let n = rng.gen_range(0..=2);
            let m = rng.gen_range(0..=2);
            let xi = random_chain(vs, n, &mut rng);
            let eta = random_chain(vs, m, &mut rng);
            (xi, eta, random_weighting(vs, &mut rng), n, m)
        })
        .collect();
    [
        ("structural.newton_leibniz.boundary", Rule::Boundary),
        ("structural.newton_leibniz.boundary_augmented", Rule::BoundaryAugmented),
        ("structural.newton_leibniz.coboundary", Rule::Coboundary),
        (
            "structural.newton_leibniz.coboundary_junction",
            Rule::CoboundaryJunction,
        ),
    ]
    .into_iter()
    .map(|(name, rule)| newton_leibniz_rule(name, rule, vs, &cases, cfg))
    .collect()
}

fn newton_leibniz_rule(
    name: &str,
    rule: Rule,
    vs: &Arc<VertexSet>,
    cases: &[NlCase],
    cfg: &VerifyConfig,
) -> IdentityCheck {
    let mut sc = Map::new();
    sc.insert("vertices".into(), json!(vs.labels()));
    sc.insert("pairs".into(), json!(cases.len()));
    sc.insert("max_factor_degree".into(), json!(2));
    sc.insert("seed".into(), json!(cfg.seed));
    let cache = MatrixCache::new(cfg.basis_cap);
    let mut undefined = 0;
    let mut run = || -> Result<Option<Value>> {
        for (k, (xi, eta, f, n, m)) in cases.iter().enumerate() {
            // ∂ᶠ of a vertex lands in degree −1
            if rule == Rule::Boundary && (*n == 0 || *m == 0) {
                undefined += 1;
                continue;
            }
            let op = match rule {
                Rule::Boundary | Rule::BoundaryAugmented => G::boundary(f),
                _ => G::coboundary(f),
            };
            let sign = Scalar::sign(n + 1);
            let mut pieces = Vec::new();
            for chain in [xi.join(eta)?, xi.clone(), eta.clone()] {
                match apply_both(&op, &chain, &cache)? {
                    Some(c) => pieces.push(c),
                    None => {
                        return Ok(Some(json!({
                            "pair": k,
                            "route": "direct vs matrix",
                            "chain": chain.render(),
                        })))
                    }
                }
            }
            let lhs = &pieces[0];
            let mut rhs = pieces[1].join(eta)?.try_add(&xi.join(&pieces[2])?.scale(&sign))?;
            if rule == Rule::CoboundaryJunction {
                let junction = xi.join(&weighted_vertices(f))?.join(eta)?;
                rhs = rhs.try_add(&junction.scale(&Scalar::sign(*n)))?;
            }
            if rule == Rule::BoundaryAugmented {
                let fv = weighted_vertices(f);
                if *n == 0 {
                    rhs = rhs.try_add(&eta.scale(&xi.inner(&fv)?))?;
                }
                if *m == 0 {
                    rhs = rhs.try_add(&xi.scale(&(eta.inner(&fv)? * sign.clone())))?;
                }
            }
            if *lhs != rhs {
                return Ok(Some(json!({
                    "pair": k,
                    "xi": xi.render(),
                    "eta": eta.render(),
                    "f": f.to_json(),
                    "n": n,
                    "lhs": lhs.render(),
                    "rhs": rhs.render(),
                })));
            }
        }
        Ok(None)
    };
    let outcome = run();
    if undefined > 0 {
        sc.insert("through_degree_minus_one".into(), json!(undefined));
    }
    match outcome {
        Ok(None) => IdentityCheck::new(name, Value::Object(sc), CheckResult::Pass),
        Ok(Some(w)) => {
            let check = IdentityCheck::new(name, Value::Object(sc), CheckResult::Fail).with_witness(w);
            if rule == Rule::Coboundary {
                check.with_reason(
                    "both sides insert a vertex between the two factors; the right side counts that slot twice",
                )
            } else {
                check
            }
        }
        Err(e) => skipped_or_failed(name.to_owned(), sc, e),
    }
}

// ------------------------------------------------------- usual simplicial

pub(crate) fn usual(cfg: &VerifyConfig, vs: &Arc<VertexSet>) -> Vec<IdentityCheck> {
    let max = cfg.max_degree;
    let cap = cfg.basis_cap;
    let sc = || scope(vs, max, Space::Full);
    let face = |i: usize| G::face_one(vs.clone(), i);
    let s = |i: usize| G::degeneracy(vs.clone(), i);
    let ij = |i: usize, j: usize| with_ij(&Map::new(), i, j);
    let mut out = Vec::new();

    out.push(run_family("usual.first", sc(), &[()], cap, |_| {
        let mut b = Batch::new();
        for n in 0..=max {
            for (i, j) in square(n).filter(|(i, j)| i < j) {
                let lhs = face(i).compose(&face(j))?;
                let rhs = face(j - 1).compose(&face(i))?;
                b.push(Instance::new(n, ij(i, j), lhs, neg(rhs)));
            }
        }
        Ok(b)
    }));

    let second = |n: usize, i: usize, j: usize| -> Result<Option<(G, Expected)>> {
        if j > n || i > n + 1 {
            return Ok(None);
        }
        let lhs = face(i).compose(&s(j))?;
        let rhs = if i < j {
            Expected::Op(s(j - 1).compose(&face(i))?)
        } else if i == j || i == j + 1 {
            scaled_identity(vs, Space::Full, Scalar::sign(i))
        } else {
            neg(s(j).compose(&face(i - 1))?)
        };
        Ok(Some((lhs, rhs)))
    };
    for (name, keep) in [
        (
            "usual.second.lower",
            (|i: usize, j: usize| i < j) as fn(usize, usize) -> bool,
        ),
        ("usual.second.middle", |i, j| i == j || i == j + 1),
        ("usual.second.upper", |i, j| i > j + 1),
    ] {
        let check = run_family(name, sc(), &[()], cap, |_| {
            let mut b = Batch::new();
            for n in 0..=max {
                for (i, j) in square(n + 1).filter(|&(i, j)| keep(i, j)) {
                    if let Some((lhs, rhs)) = second(n, i, j)? {
                        b.push(Instance::new(n, ij(i, j), lhs, rhs));
                    }
                }
            }
            Ok(b)
        });
        let check = if name == "usual.second.middle" {
            match measure_middle(vs, max, cap) {
                Ok(m) => check.with_measured(m),
                Err(_) => check,
            }
        } else {
            check
        };
        out.push(check);
    }

    out.push(run_family("usual.third", sc(), &[()], cap, |_| {
        let mut b = Batch::new();
        for n in 0..=max {
            for (i, j) in square(n).filter(|(i, j)| i <= j) {
                let lhs = s(i).compose(&s(j))?;
                let rhs = s(j + 1).compose(&s(i))?;
                b.push(Instance::new(n, ij(i, j), lhs, Expected::Op(rhs)));
            }
        }
        Ok(b)
    }));
    out
}

/// The scalar `c` with `∂¹ᵢ∘sⱼ = c·id` for `i ∈ {j, j+1}`, read off the
/// matrix; `null` if the map is not a multiple of the identity.
fn measure_middle(vs: &Arc<VertexSet>, max: usize, cap: usize) -> Result<Value> {
    let mut rows = Vec::new();
    let mut agree = 0;
    for n in 0..=max {
        for j in 0..=n {
            for i in [j, j + 1] {
                let op = G::face_one(vs.clone(), i).compose(&G::degeneracy(vs.clone(), j))?;
                let m = OperatorMatrix::materialize(&op, n, cap)?;
                let c = m.get(0, 0);
                let id = OperatorMatrix::identity(m.cols().clone()).scale(&c);
                let scalar = if m == id { json!(c.to_string()) } else { Value::Null };
                if c.is_one() && m == id {
                    agree += 1;
                }
                rows.push(json!({"degree": n, "i": i, "j": j, "scalar": scalar}));
            }
        }
    }
    Ok(json!({
        "stated": "id",
        "observed": "(-1)^i id",
        "instances_equal_to_id": agree,
        "instances": rows.len(),
        "scalars": rows,
    }))
}

// --------------------------------------------------------- anticommutators

pub(crate) fn anticomm(cfg: &VerifyConfig, vs: &Arc<VertexSet>) -> Vec<IdentityCheck> {
    let max = cfg.anticomm_max_degree;
    let cap = cfg.basis_cap;
    let sc = || scope(vs, max, Space::Regular);
    let vpairs: Vec<(Vertex, Vertex)> = vs.vertices().flat_map(|v| vs.vertices().map(move |u| (v, u))).collect();
    let wpairs = weighting_pairs(vs, &mut rng_for(cfg, vs, 7), cfg.trials);
    let vlabels = |&(v, u): &(Vertex, Vertex)| {
        let mut m = Map::new();
        m.insert("v".into(), json!(vs.label(v)));
        m.insert("u".into(), json!(vs.label(u)));
        m
    };
    let rp = |v: Vertex| G::reduced_partial(vs.clone(), v);
    let rd = |v: Vertex| G::reduced_diff(vs.clone(), v);
    let mut out = Vec::new();

    for (name, form) in [
        ("anticomm.partial_closed", PartialBracketForm::Symmetric),
        (
            "anticomm.partial_closed.antisymmetric",
            PartialBracketForm::Antisymmetric,
        ),
    ] {
        let mut check = run_family(name, sc(), &vpairs, cap, |vu| {
            let (v, u) = *vu;
            let mut b = Batch::new();
            for n in 0..=max {
                let lhs = G::partial_bracket(vs.clone(), v, u, form)?;
                let rhs = rp(v)?.anticommutator(&rp(u)?)?;
                b.push_lenient(Instance::new(n, vlabels(vu), lhs, Expected::Op(rhs)));
            }
            Ok(b)
        });
        if form == PartialBracketForm::Antisymmetric && check.result == CheckResult::Fail {
            check = check.with_reason(
                "δ-differences make the closed form antisymmetric in (v, u) while the anticommutator is symmetric",
            );
        }
        out.push(check);
    }

    out.push(run_family("anticomm.diff_closed", sc(), &vpairs, cap, |vu| {
        let (v, u) = *vu;
        let mut b = Batch::new();
        for n in 0..=max {
            let lhs = G::diff_bracket(vs.clone(), v, u)?;
            let rhs = rd(v)?.anticommutator(&rd(u)?)?;
            b.push_lenient(Instance::new(n, vlabels(vu), lhs, Expected::Op(rhs)));
        }
        Ok(b)
    }));

    for (name, which) in [
        ("anticomm.weighted_partial", BracketKind::Partial),
        ("anticomm.weighted_diff", BracketKind::Diff),
    ] {
        out.push(run_family(name, sc(), &wpairs, cap, |p| {
            let (f, g) = (&p.0.f, &p.1.f);
            let mut b = Batch::new();
            for n in 0..=max {
                let lhs = G::weighted_bracket(f, g, which, PartialBracketForm::Symmetric)?;
                let rhs = match which {
                    BracketKind::Partial => G::regular_boundary(f).anticommutator(&G::regular_boundary(g))?,
                    BracketKind::Diff => G::regular_coboundary(f).anticommutator(&G::regular_coboundary(g))?,
                };
                b.push_lenient(Instance::new(n, pair_labels(p), lhs, Expected::Op(rhs)));
            }
            Ok(b)
        }));
    }

    let diagonal: Vec<Vertex> = vs.vertices().collect();
    out.push(run_family("anticomm.diff_self_zero", sc(), &diagonal, cap, |v| {
        let mut b = Batch::new();
        for n in 0..=max {
            let mut labels = Map::new();
            labels.insert("v".into(), json!(vs.label(*v)));
            let lhs = rd(*v)?.anticommutator(&rd(*v)?)?;
            b.push_lenient(Instance::new(n, labels, lhs, Expected::Zero));
        }
        Ok(b)
    }));

    out.push(nonzero_witness(vs, &vpairs, &wpairs, max, cap));
    out.push(regular_squares(cfg, vs, max, cap));
    out
}

/// Looks for a pair whose anticommutator is not the zero map.
fn nonzero_witness(
    vs: &Arc<VertexSet>,
    vpairs: &[(Vertex, Vertex)],
    wpairs: &[Pair],
    max: usize,
    cap: usize,
) -> IdentityCheck {
    let mut sc = scope(vs, max, Space::Regular);
    let mut candidates: Vec<(Value, G)> = Vec::new();
    let mut build = || -> Result<()> {
        for &(v, u) in vpairs.iter().filter(|(v, u)| v != u) {
            let labels = json!({"v": vs.label(v), "u": vs.label(u)});
            let rp = |x| G::reduced_partial(vs.clone(), x);
            let rd = |x| G::reduced_diff(vs.clone(), x);
            candidates.push((
                json!({"pair": labels, "kind": "partial"}),
                rp(v)?.anticommutator(&rp(u)?)?,
            ));
            candidates.push((json!({"pair": labels, "kind": "diff"}), rd(v)?.anticommutator(&rd(u)?)?));
        }
        for p in wpairs {
            let labels = Value::Object(pair_labels(p));
            let (f, g) = (&p.0.f, &p.1.f);
            candidates.push((
                json!({"pair": labels, "kind": "weighted_partial"}),
                G::regular_boundary(f).anticommutator(&G::regular_boundary(g))?,
            ));
            candidates.push((
                json!({"pair": labels, "kind": "weighted_diff"}),
                G::regular_coboundary(f).anticommutator(&G::regular_coboundary(g))?,
            ));
        }
        Ok(())
    };
    if let Err(e) = build() {
        return skipped_or_failed("anticomm.nonzero_witness".into(), sc, e);
    }
    let mut searched = 0;
    for n in 0..=max {
        for (labels, op) in &candidates {
            searched += 1;
            let m = match OperatorMatrix::materialize(op, n, cap) {
                Ok(m) => m,
                Err(e) => return skipped_or_failed("anticomm.nonzero_witness".into(), sc, e),
            };
            if let Some(c) = (0..m.ncols()).find(|&c| !m.column_entries(c).is_empty()) {
                let image = crate::verifier::compare::column_chain(&m, c, vs);
                let w = json!({
                    "operator": labels,
                    "degree": n,
                    "path": m.cols().path_at(c).render(vs),
                    "image": image.render(),
                });
                return IdentityCheck::new("anticomm.nonzero_witness", Value::Object(sc), CheckResult::Pass)
                    .with_witness(w);
            }
        }
    }
    sc.insert("operators".into(), json!(candidates.len()));
    IdentityCheck::new("anticomm.nonzero_witness", Value::Object(sc), CheckResult::Skipped)
        .with_measured(json!({"searched": searched, "nonzero": 0}))
        .with_reason("inconclusive: every anticommutator in scope is the zero map")
}

/// Whether `∂̃ᶠ∘∂̃ᶠ` and `d̃ᶠ∘d̃ᶠ` vanish; recorded without a claim.
fn regular_squares(cfg: &VerifyConfig, vs: &Arc<VertexSet>, max: usize, cap: usize) -> IdentityCheck {
    let sc = scope(vs, max, Space::Regular);
    let singles = single_weightings(vs, &mut rng_for(cfg, vs, 8), cfg.trials);
    let measure = || -> Result<Value> {
        let mut boundary_nonzero = Vec::new();
        let mut coboundary_nonzero = Vec::new();
        for f in &singles {
            let sq = G::regular_boundary(&f.f).compose(&G::regular_boundary(&f.f))?;
            let csq = G::regular_coboundary(&f.f).compose(&G::regular_coboundary(&f.f))?;
            for n in 0..=max {
                if !OperatorMatrix::materialize(&sq, n, cap)?.is_zero() {
                    boundary_nonzero.push(json!({"f": f.name, "degree": n}));
                }
                if !OperatorMatrix::materialize(&csq, n, cap)?.is_zero() {
                    coboundary_nonzero.push(json!({"f": f.name, "degree": n}));
                }
            }
        }
        Ok(json!({
            "weightings": singles.len(),
            "boundary_square_zero": boundary_nonzero.is_empty(),
            "coboundary_square_zero": coboundary_nonzero.is_empty(),
            "boundary_square_nonzero_at": boundary_nonzero,
            "coboundary_square_nonzero_at": coboundary_nonzero,
        }))
    };
    match measure() {
        Ok(m) => IdentityCheck::new("anticomm.regular_squares", Value::Object(sc), CheckResult::Skipped)
            .with_measured(m)
            .with_reason("measurement only"),
        Err(e) => skipped_or_failed("anticomm.regular_squares".into(), sc, e),
    }
}
