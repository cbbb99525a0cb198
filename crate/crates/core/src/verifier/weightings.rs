use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::pathspace::{Chain, ElementaryPath, VertexSet, Weighting};
use crate::scalar::Scalar;

/// A weighting with a short name for reports (`zero`, `ones`, `chi_a`,
/// `random_3`).
#[derive(Clone, Debug)]
pub(crate) struct Named {
    pub name: String,
    pub f: Weighting,
}

impl Named {
    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "values": self.f.to_json()})
    }
}

/// Zero, all-ones and every characteristic function.
pub(crate) fn edge_weightings(vs: &Arc<VertexSet>) -> Vec<Named> {
    let mut out = vec![
        Named {
            name: "zero".into(),
            f: Weighting::zero(vs.clone()),
        },
        Named {
            name: "ones".into(),
            f: Weighting::ones(vs.clone()),
        },
    ];
    for v in vs.vertices() {
        out.push(Named {
            name: format!("chi_{}", vs.label(v)),
            f: Weighting::characteristic(vs.clone(), v).expect("vertex in set"),
        });
    }
    out
}

/// A rational with numerator and denominator drawn from [−9, 9], the
/// denominator nonzero.
pub(crate) fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.gen_range(-9i64..=9);
    let mut den = 0;
    while den == 0 {
        den = rng.gen_range(-9i64..=9);
    }
    Scalar::from_fraction(num, den).expect("nonzero denominator")
}

pub(crate) fn random_weighting(vs: &Arc<VertexSet>, rng: &mut ChaCha8Rng) -> Weighting {
    let values = (0..vs.len()).map(|_| random_scalar(rng)).collect();
    Weighting::new(vs.clone(), values).expect("length matches")
}

/// All ordered pairs of edge weightings followed by `trials` random pairs.
pub(crate) fn weighting_pairs(vs: &Arc<VertexSet>, rng: &mut ChaCha8Rng, trials: usize) -> Vec<(Named, Named)> {
    let edges = edge_weightings(vs);
    let mut out = Vec::new();
    for f in &edges {
        for g in &edges {
            out.push((f.clone(), g.clone()));
        }
    }
    for t in 0..trials {
        let f = random_weighting(vs, rng);
        let g = random_weighting(vs, rng);
        out.push((
            Named {
                name: format!("random_{t}_f"),
                f,
            },
            Named {
                name: format!("random_{t}_g"),
                f: g,
            },
        ));
    }
    out
}

/// Edge weightings followed by `trials` random ones.
pub(crate) fn single_weightings(vs: &Arc<VertexSet>, rng: &mut ChaCha8Rng, trials: usize) -> Vec<Named> {
    let mut out = edge_weightings(vs);
    for t in 0..trials {
        out.push(Named {
            name: format!("random_{t}"),
            f: random_weighting(vs, rng),
        });
    }
    out
}

/// A homogeneous chain of degree `n` with one to three random terms.
pub(crate) fn random_chain(vs: &Arc<VertexSet>, n: usize, rng: &mut ChaCha8Rng) -> Chain {
    loop {
        let k = rng.gen_range(1..=3);
        let terms = (0..k).map(|_| {
            let p = ElementaryPath::new((0..=n).map(|_| rng.gen_range(0..vs.len() as u32)));
            (p, random_scalar(rng))
        });
        let terms: Vec<_> = terms.collect();
        let chain = Chain::from_terms(vs.clone(), terms).expect("vertices in range");
        if !chain.is_zero() {
            return chain;
        }
    }
}
