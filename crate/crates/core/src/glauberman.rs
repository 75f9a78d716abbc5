//! The Glauberman correspondence for a p-group acting coprimely by
//! conjugation inside an ambient group.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::ambient::{Ambient, Result};
use crate::group::{is_power_of, is_prime, Subgroup};
use crate::Error;

/// A p-group Q acting on a p′-group K ⊴ X by conjugation.
#[derive(Clone, Debug)]
pub struct CoprimeAction {
    pub x: Subgroup,
    pub k: Subgroup,
    pub q: Subgroup,
    /// C_K(Q).
    pub c: Subgroup,
    pub p: u64,
}

impl CoprimeAction {
    pub fn new(amb: &Ambient, x: &Subgroup, k: &Subgroup, q: &Subgroup, p: u64) -> Result<Self> {
        let hyp = |m: &str| Err(Error::Hypothesis(m.to_string()));
        if !is_prime(p) {
            return hyp("p is not prime");
        }
        if !amb.is_normal_in(k, x) {
            return hyp("K is not normal in X");
        }
        if !q.is_subset_of(x) || !is_power_of(q.order() as u64, p) {
            return hyp("Q is not a p-subgroup of X");
        }
        if (k.order() as u64).is_multiple_of(p) || k.order().gcd(&q.order()) != 1 {
            return hyp("|K| is not coprime to p");
        }
        let g = amb.group();
        if !g.intersection(k, q).is_trivial() || g.product_subgroup(k, q).is_none() {
            return hyp("KQ is not a subgroup with K ∩ Q = 1");
        }
        let c = g.centralizer_in(k, q)?;
        Ok(CoprimeAction {
            x: x.clone(),
            k: k.clone(),
            q: q.clone(),
            c,
            p,
        })
    }
}

/// Rows of Irr(K) fixed by Q.
pub fn invariant_characters(amb: &Ambient, action: &CoprimeAction) -> Result<Vec<usize>> {
    let n = amb.table(&action.k)?.len();
    let mut out = Vec::new();
    for i in 0..n {
        if amb.is_invariant(&action.k, i, &action.q)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// θ* together with the decomposition of θ restricted to C.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Correspondent {
    /// Row of Irr(C).
    pub index: usize,
    pub multiplicity: i64,
    /// [θ|_C, ψ] for every row ψ of Irr(C).
    pub decomposition: Vec<i64>,
}

/// The unique constituent of θ|_C whose multiplicity is prime to p.
pub fn glauberman_correspondent(
    amb: &Ambient,
    action: &CoprimeAction,
    theta: usize,
) -> Result<Correspondent> {
    if !amb.is_invariant(&action.k, theta, &action.q)? {
        return Err(Error::Hypothesis("θ is not Q-invariant".into()));
    }
    let m = amb.restriction_matrix(&action.k, &action.c)?;
    let decomposition = m[theta].clone();
    let coprime: Vec<usize> = (0..decomposition.len())
        .filter(|&i| !(decomposition[i] as u64).is_multiple_of(action.p))
        .collect();
    match coprime.as_slice() {
        [i] => Ok(Correspondent {
            index: *i,
            multiplicity: decomposition[*i],
            decomposition,
        }),
        _ => Err(Error::Inconsistent(format!(
            "{} constituents of θ|C have multiplicity prime to {}",
            coprime.len(),
            action.p
        ))),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GlaubermanAudit {
    /// (row of Irr_Q(K), row of Irr(C)).
    pub pairs: Vec<(usize, usize)>,
    /// Number of (b, θ) pairs tested for equivariance.
    pub equivariance_checks: usize,
}

/// Checks that θ ↦ θ* is a bijection Irr_Q(K) → Irr(C) and that
/// (θ^b)* = (θ*)^b for every b in `b`, which must normalize K and Q.
pub fn correspondence_audit(
    amb: &Ambient,
    action: &CoprimeAction,
    b: &Subgroup,
) -> Result<GlaubermanAudit> {
    let inv = invariant_characters(amb, action)?;
    let nc = amb.table(&action.c)?.len();
    let mut pairs = Vec::new();
    let mut hit = vec![false; nc];
    for &t in &inv {
        let star = glauberman_correspondent(amb, action, t)?;
        if hit[star.index] {
            return Err(Error::Inconsistent(format!(
                "θ* = ψ{} is hit twice",
                star.index
            )));
        }
        hit[star.index] = true;
        pairs.push((t, star.index));
    }
    if pairs.len() != nc {
        return Err(Error::Inconsistent(format!(
            "{} invariant characters but {nc} characters of C",
            pairs.len()
        )));
    }
    let g = amb.group();
    let mut checks = 0;
    for &y in b.elements() {
        if !g.normalizes(y, &action.k) || !g.normalizes(y, &action.q) {
            return Err(Error::Hypothesis(format!("{y} does not normalize K and Q")));
        }
        let pk = amb.row_permutation(&action.k, y)?;
        let pc = amb.row_permutation(&action.c, y)?;
        for &(t, s) in &pairs {
            let moved = pairs.iter().find(|&&(t2, _)| t2 == pk[t]).ok_or_else(|| {
                Error::Inconsistent("N(Q) moves a Q-invariant character off the set".into())
            })?;
            if moved.1 != pc[s] {
                return Err(Error::Inconsistent(format!(
                    "correspondence is not equivariant under {y}"
                )));
            }
            checks += 1;
        }
    }
    Ok(GlaubermanAudit {
        pairs,
        equivariance_checks: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn inversion_on_c3() {
        let amb = Ambient::new(FiniteGroup::symmetric(3).unwrap());
        let g = amb.group();
        let k = g.derived_subgroup();
        let q = g.sylow_subgroup(2).unwrap();
        let act = CoprimeAction::new(&amb, &amb.whole(), &k, &q, 2).unwrap();
        assert!(act.c.is_trivial());
        assert_eq!(invariant_characters(&amb, &act).unwrap(), vec![0]);
        let b = g.normalizer(&q).unwrap();
        let audit = correspondence_audit(&amb, &act, &b).unwrap();
        assert_eq!(audit.pairs, vec![(0, 0)]);
    }

    #[test]
    fn swap_on_c3_squared() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let c33 = FiniteGroup::direct_product(&c3, &c3).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let swap: Vec<usize> = (0..9).map(|x| (x % 3) * 3 + x / 3).collect();
        let w = FiniteGroup::semidirect_product(&c33, &c2, &[(0..9).collect(), swap]).unwrap();
        let amb = Ambient::new(w);
        let g = amb.group();
        // K = C3 × C3 sits at indices k·2
        let k = g.subgroup_unchecked(&(0..9).map(|x| 2 * x).collect::<Vec<_>>());
        let q = g.sylow_subgroup(2).unwrap();
        let act = CoprimeAction::new(&amb, &amb.whole(), &k, &q, 2).unwrap();
        assert_eq!(act.c.order(), 3);
        assert_eq!(invariant_characters(&amb, &act).unwrap().len(), 3);
        let b = g.normalizer(&q).unwrap();
        let audit = correspondence_audit(&amb, &act, &b).unwrap();
        assert_eq!(audit.pairs.len(), 3);
        for &(t, _) in &audit.pairs {
            let star = glauberman_correspondent(&amb, &act, t).unwrap();
            assert_eq!(star.multiplicity, 1);
        }
    }

    #[test]
    fn rejects_bad_hypotheses() {
        let amb = Ambient::new(FiniteGroup::cyclic(4).unwrap());
        let g = amb.group();
        let k = g.subgroup_generated(&[2]).unwrap();
        assert!(CoprimeAction::new(&amb, &amb.whole(), &k, &k, 2).is_err());
    }
}
