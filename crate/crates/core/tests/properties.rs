use std::sync::Arc;

use proptest::prelude::*;

use pathcalc::regular::project_regular;
use pathcalc::{
    Basis, Chain, ElementaryPath, GradedOperator as G, OperatorMatrix, Scalar, Space, Vertex, VertexSet, Weighting,
};

const CAP: usize = 1 << 20;

fn vs(nv: usize) -> Arc<VertexSet> {
    Arc::new(VertexSet::alphabet(nv).unwrap())
}

fn scalar((p, q): (i64, i64)) -> Scalar {
    Scalar::from_fraction(p, q).unwrap()
}

fn ratio() -> impl Strategy<Value = (i64, i64)> {
    (-9i64..=9, prop_oneof![-9i64..=-1, 1i64..=9])
}

/// Raw terms of a homogeneous chain; vertex indices are reduced modulo #V.
type RawChain = Vec<(Vec<u32>, (i64, i64))>;

fn raw_chain(degree: usize) -> impl Strategy<Value = RawChain> {
    prop::collection::vec((prop::collection::vec(0u32..4, degree + 1), ratio()), 1..4)
}

fn chain(vs: &Arc<VertexSet>, raw: &RawChain) -> Chain {
    let k = vs.len() as u32;
    let terms = raw
        .iter()
        .map(|(p, c)| (ElementaryPath::new(p.iter().map(|v| v % k)), scalar(*c)));
    Chain::from_terms(vs.clone(), terms).unwrap()
}

/// Same as [`chain`] with repeated vertices nudged apart so every path is
/// regular. Needs at least two vertices.
fn regular_chain(vs: &Arc<VertexSet>, raw: &RawChain) -> Chain {
    let k = vs.len() as u32;
    let terms = raw.iter().map(|(p, c)| {
        let mut out: Vec<u32> = Vec::with_capacity(p.len());
        for v in p {
            let mut v = v % k;
            if out.last() == Some(&v) {
                v = (v + 1) % k;
            }
            out.push(v);
        }
        (ElementaryPath::new(out), scalar(*c))
    });
    Chain::from_terms(vs.clone(), terms).unwrap()
}

fn weighting(vs: &Arc<VertexSet>, raw: &[(i64, i64)]) -> Weighting {
    Weighting::new(vs.clone(), raw[..vs.len()].iter().map(|r| scalar(*r)).collect()).unwrap()
}

fn raw_weighting() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec(ratio(), 4)
}

fn apply(op: &G, xi: &Chain) -> Chain {
    op.apply(xi).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_is_associative(nv in 1usize..=3, a in raw_chain(1), b in raw_chain(0), c in raw_chain(2)) {
        let v = vs(nv);
        let (a, b, c) = (chain(&v, &a), chain(&v, &b), chain(&v, &c));
        prop_assert_eq!(a.join(&b).unwrap().join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
    }

    #[test]
    fn join_is_bilinear(
        nv in 1usize..=3,
        a in raw_chain(1), b in raw_chain(2), c in raw_chain(2),
        l in ratio(), m in ratio(),
    ) {
        let v = vs(nv);
        let (a, b, c) = (chain(&v, &a), chain(&v, &b), chain(&v, &c));
        let (l, m) = (scalar(l), scalar(m));
        prop_assert_eq!(a.scale(&l).join(&b.scale(&m)).unwrap(), a.join(&b).unwrap().scale(&(&l * &m)));
        let bc = b.try_add(&c).unwrap();
        prop_assert_eq!(a.join(&bc).unwrap(), a.join(&b).unwrap().try_add(&a.join(&c).unwrap()).unwrap());
        prop_assert_eq!(bc.join(&a).unwrap(), b.join(&a).unwrap().try_add(&c.join(&a).unwrap()).unwrap());
    }

    #[test]
    fn join_adds_degrees(nv in 1usize..=3, n in 0usize..3, m in 0usize..3, seed in any::<u64>()) {
        let v = vs(nv);
        let k = nv as u64;
        let p = ElementaryPath::new((0..=n as u64).map(|i| ((seed >> i) % k) as u32));
        let q = ElementaryPath::new((0..=m as u64).map(|i| ((seed >> (i + 8)) % k) as u32));
        let j = Chain::basis(v.clone(), p).unwrap().join(&Chain::basis(v, q).unwrap()).unwrap();
        prop_assert_eq!(j.degree().unwrap(), n + m + 1);
    }

    #[test]
    fn inner_product_laws(nv in 1usize..=3, a in raw_chain(2), b in raw_chain(2), c in raw_chain(2), l in ratio()) {
        let v = vs(nv);
        let (a, b, c) = (chain(&v, &a), chain(&v, &b), chain(&v, &c));
        let l = scalar(l);
        prop_assert_eq!(a.inner(&b).unwrap(), b.inner(&a).unwrap());
        prop_assert_eq!(
            a.scale(&l).try_add(&c).unwrap().inner(&b).unwrap(),
            &(&l * &a.inner(&b).unwrap()) + &c.inner(&b).unwrap()
        );
        let norm = a.inner(&a).unwrap();
        prop_assert!(!norm.is_negative());
        prop_assert_eq!(norm.is_zero(), a.is_zero());
    }

    #[test]
    fn canonical_form(nv in 1usize..=3, a in raw_chain(1), b in raw_chain(1), l in ratio()) {
        let v = vs(nv);
        let (a, b) = (chain(&v, &a), chain(&v, &b));
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_add(&b).unwrap().try_sub(&b).unwrap(), a.clone());
        prop_assert!(a.try_sub(&a).unwrap().terms().is_empty());
        let l = scalar(l);
        if !l.is_zero() {
            let back = a.scale(&l).scale(&Scalar::one().checked_div(&l).unwrap());
            prop_assert_eq!(back, a);
        }
    }

    #[test]
    fn coordinate_lemmas(nv in 1usize..=3, raw in raw_chain(3), u in 0u32..3, w in 0u32..3, i in 0usize..6, j in 0usize..6) {
        let v = vs(nv);
        let (u, w) = (Vertex(u % nv as u32), Vertex(w % nv as u32));
        let xi = chain(&v, &raw);
        let n = 3;
        let fp = |x, i| G::face_partial(v.clone(), x, i).unwrap();
        let cf = |x, i| G::coface(v.clone(), x, i).unwrap();
        if i < j && j <= n {
            let l = apply(&fp(u, i), &apply(&fp(w, j), &xi));
            let r = apply(&fp(w, j - 1), &apply(&fp(u, i), &xi));
            prop_assert_eq!(l, r.negate());
        }
        if i <= n + 1 && j <= n + 1 {
            let l = apply(&fp(u, i), &apply(&cf(w, j), &xi));
            let r = match i.cmp(&j) {
                std::cmp::Ordering::Less => apply(&cf(w, j - 1), &apply(&fp(u, i), &xi)).negate(),
                std::cmp::Ordering::Equal => if u == w { xi.clone() } else { Chain::zero(v.clone()) },
                std::cmp::Ordering::Greater => apply(&cf(w, j), &apply(&fp(u, i - 1), &xi)).negate(),
            };
            prop_assert_eq!(l, r);
        }
        if i <= j && j <= n + 1 {
            let l = apply(&cf(u, i), &apply(&cf(w, j), &xi));
            let r = apply(&cf(w, j + 1), &apply(&cf(u, i), &xi));
            prop_assert_eq!(l, r.negate());
        }
    }

    #[test]
    fn weighted_simplicial_identities(nv in 1usize..=3, raw in raw_chain(2), f in raw_weighting(), g in raw_weighting(), i in 0usize..4, j in 0usize..4) {
        let v = vs(nv);
        let (f, g) = (weighting(&v, &f), weighting(&v, &g));
        let xi = chain(&v, &raw);
        let n = 2;
        if i < j && j <= n {
            let l = apply(&G::weighted_face(&f, i), &apply(&G::weighted_face(&g, j), &xi));
            let r = apply(&G::weighted_face(&g, j - 1), &apply(&G::weighted_face(&f, i), &xi));
            prop_assert_eq!(l, r.negate());
        }
        let l = apply(&G::weighted_face(&f, i), &apply(&G::weighted_coface(&g, j), &xi));
        let r = match i.cmp(&j) {
            std::cmp::Ordering::Less => apply(&G::weighted_coface(&g, j - 1), &apply(&G::weighted_face(&f, i), &xi)).negate(),
            std::cmp::Ordering::Equal => xi.scale(&f.inner(&g, None).unwrap()),
            std::cmp::Ordering::Greater => apply(&G::weighted_coface(&g, j), &apply(&G::weighted_face(&f, i - 1), &xi)).negate(),
        };
        prop_assert_eq!(l, r);
        if i <= j {
            let l = apply(&G::weighted_coface(&f, i), &apply(&G::weighted_coface(&g, j), &xi));
            let r = apply(&G::weighted_coface(&g, j + 1), &apply(&G::weighted_coface(&f, i), &xi));
            prop_assert_eq!(l, r.negate());
        }
    }

    #[test]
    fn anticommutativity_and_adjointness(nv in 1usize..=3, a in raw_chain(2), b in raw_chain(1), f in raw_weighting(), g in raw_weighting()) {
        let v = vs(nv);
        let (f, g) = (weighting(&v, &f), weighting(&v, &g));
        let (a, b) = (chain(&v, &a), chain(&v, &b));
        let (df, dg) = (G::boundary(&f), G::boundary(&g));
        let (cf, cg) = (G::coboundary(&f), G::coboundary(&g));
        prop_assert_eq!(apply(&df, &apply(&dg, &a)), apply(&dg, &apply(&df, &a)).negate());
        prop_assert_eq!(apply(&cf, &apply(&cg, &a)), apply(&cg, &apply(&cf, &a)).negate());
        prop_assert!(apply(&df, &apply(&df, &a)).is_zero());
        prop_assert!(apply(&cf, &apply(&cf, &a)).is_zero());
        // ⟨dᶠ b, a⟩ = ⟨b, ∂ᶠ a⟩ with deg b = deg a − 1
        prop_assert_eq!(apply(&cf, &b).inner(&a).unwrap(), b.inner(&apply(&df, &a)).unwrap());
    }

    #[test]
    fn face_after_coface_is_norm(nv in 1usize..=3, raw in raw_chain(2), f in raw_weighting(), i in 0usize..4) {
        let v = vs(nv);
        let f = weighting(&v, &f);
        let xi = chain(&v, &raw);
        let l = apply(&G::weighted_face(&f, i), &apply(&G::weighted_coface(&f, i), &xi));
        prop_assert_eq!(l, xi.scale(&f.norm2()));
    }

    #[test]
    fn newton_leibniz(nv in 1usize..=3, n in 0usize..3, m in 0usize..3, a in raw_chain(2), b in raw_chain(2), f in raw_weighting()) {
        let v = vs(nv);
        let f = weighting(&v, &f);
        let trim = |raw: &RawChain, d: usize| -> RawChain {
            raw.iter().map(|(p, c)| (p[..=d].to_vec(), *c)).collect()
        };
        let xi = chain(&v, &trim(&a, n));
        let eta = chain(&v, &trim(&b, m));
        let sign = Scalar::sign(n + 1);
        let joined = xi.join(&eta).unwrap();

        // the boundary rule needs both factors to have a face to lose
        if n > 0 && m > 0 {
            let op = G::boundary(&f);
            let rhs = apply(&op, &xi).join(&eta).unwrap()
                .try_add(&xi.join(&apply(&op, &eta)).unwrap().scale(&sign)).unwrap();
            prop_assert_eq!(apply(&op, &joined), rhs);
        }

        // the co-boundary inserts at the junction from both sides
        let op = G::coboundary(&f);
        let fhat = Chain::from_terms(
            v.clone(),
            f.support().map(|(w, c)| (ElementaryPath::new([w]), c.clone())),
        ).unwrap();
        let junction = xi.join(&fhat).unwrap().join(&eta).unwrap().scale(&Scalar::sign(n));
        let rhs = apply(&op, &xi).join(&eta).unwrap()
            .try_add(&xi.join(&apply(&op, &eta)).unwrap().scale(&sign)).unwrap()
            .try_add(&junction).unwrap();
        prop_assert_eq!(apply(&op, &joined), rhs);
    }

    #[test]
    fn matrix_route_agrees(nv in 1usize..=3, raw in raw_chain(2), f in raw_weighting(), i in 0usize..3, which in 0usize..4) {
        let v = vs(nv);
        let f = weighting(&v, &f);
        let xi = chain(&v, &raw);
        let op = match which {
            0 => G::boundary(&f),
            1 => G::coboundary(&f),
            2 => G::weighted_face(&f, i),
            _ => G::degeneracy(v.clone(), i),
        };
        let m = OperatorMatrix::materialize(&op, 2, CAP).unwrap();
        prop_assert_eq!(m.apply(&xi).unwrap(), apply(&op, &xi));
    }

    #[test]
    fn regular_factorization(nv in 2usize..=4, raw in raw_chain(3), f in raw_weighting(), i in 0usize..5) {
        let v = vs(nv);
        let f = weighting(&v, &f);
        let xi = regular_chain(&v, &raw);
        if i <= 3 {
            let closed = apply(&G::regular_face(&f, i), &xi);
            prop_assert_eq!(closed, project_regular(&apply(&G::weighted_face(&f, i), &xi)).into_chain());
        }
        let closed = apply(&G::regular_coface(&f, i), &xi);
        prop_assert_eq!(closed, project_regular(&apply(&G::weighted_coface(&f, i), &xi)).into_chain());
    }

    #[test]
    fn regular_middle_case_is_path_dependent(nv in 2usize..=4, raw in raw_chain(3), f in raw_weighting(), g in raw_weighting(), i in 0usize..5) {
        let v = vs(nv);
        let (f, g) = (weighting(&v, &f), weighting(&v, &g));
        let xi = regular_chain(&v, &raw);
        let op = G::regular_face(&f, i).compose(&G::regular_coface(&g, i)).unwrap();
        let mut expected = Chain::zero(v.clone());
        for (p, c) in xi.terms() {
            let n = p.degree();
            let mut removed = Vec::new();
            if i > 0 { removed.push(p.vertex(i - 1)); }
            if i <= n { removed.push(p.vertex(i)); }
            let keep: Vec<Vertex> = v.vertices().filter(|w| !removed.contains(w)).collect();
            let s = f.inner(&g, Some(&keep)).unwrap();
            let term = Chain::basis(v.clone(), p.clone()).unwrap().scale(&(&s * c));
            expected = expected.try_add(&term).unwrap();
        }
        prop_assert_eq!(apply(&op, &xi), expected);
    }

    #[test]
    fn degeneracy_vanishes_on_regular_paths(nv in 2usize..=4, raw in raw_chain(3), i in 0usize..4) {
        let v = vs(nv);
        let xi = regular_chain(&v, &raw);
        let op = G::degeneracy(v.clone(), i).induced_regular().unwrap();
        prop_assert!(apply(&op, &xi).is_zero());
    }
}

#[test]
fn bases_are_orthonormal() {
    for nv in 1..=3 {
        let v = vs(nv);
        for n in 0..=2 {
            for space in [Space::Full, Space::Regular] {
                let basis = Basis::new(nv, n, space, CAP).unwrap();
                let chains: Vec<Chain> = basis.iter().map(|p| Chain::basis(v.clone(), p).unwrap()).collect();
                for (a, x) in chains.iter().enumerate() {
                    for (b, y) in chains.iter().enumerate() {
                        let want = if a == b { Scalar::one() } else { Scalar::zero() };
                        assert_eq!(x.inner(y).unwrap(), want);
                    }
                }
            }
        }
    }
}
