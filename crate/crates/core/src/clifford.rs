//! Character theory relative to a normal subgroup.
//!
//! All subgroups are subgroups of one [`Ambient`] group; the "A" of a
//! statement is any subgroup of it. Characters of a subgroup are referred to
//! by row index in that subgroup's table.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::ambient::{Ambient, QuotCtx, Result};
use crate::chartab::{self, ClassFunction};
use crate::cyclo::Cyclotomic;
use crate::group::Subgroup;
use crate::Error;

fn hyp(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

/// Resolves θ to its row index on `n`.
pub fn theta_index(amb: &Ambient, n: &Subgroup, theta: &ClassFunction) -> Result<usize> {
    let (ctx, j) = amb.row_index(theta)?;
    if ctx.subgroup() != n {
        return Err(hyp("θ is not a character of N"));
    }
    Ok(j)
}

/// Irr(G|θ) together with the inertia data of θ.
#[derive(Clone, Debug)]
pub struct OverTheta {
    pub a: Subgroup,
    pub g: Subgroup,
    pub n: Subgroup,
    pub theta: usize,
    /// Row indices of Irr(G) lying over θ.
    pub members: Vec<usize>,
    pub inertia_in_a: Subgroup,
    pub inertia_in_g: Subgroup,
    degrees: Vec<i64>,
}

impl OverTheta {
    /// Members of degree prime to `p`.
    pub fn p_prime(&self, p: u64) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&i| !(self.degrees[i] as u64).is_multiple_of(p))
            .collect()
    }

    /// Members fixed by every element of `acting` (which must normalize G).
    pub fn invariant_under(&self, amb: &Ambient, acting: &Subgroup) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for &i in &self.members {
            if amb.is_invariant(&self.g, i, acting)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Irr_A(G|θ).
    pub fn a_invariant(&self, amb: &Ambient) -> Result<Vec<usize>> {
        self.invariant_under(amb, &self.a)
    }

    pub fn theta_is_a_invariant(&self) -> bool {
        self.inertia_in_a == self.a
    }
}

/// Irr(G|θ) for N ≤ G, both normal in A.
pub fn irr_over(
    amb: &Ambient,
    a: &Subgroup,
    g: &Subgroup,
    n: &Subgroup,
    theta: &ClassFunction,
) -> Result<OverTheta> {
    let j = theta_index(amb, n, theta)?;
    irr_over_index(amb, a, g, n, j)
}

pub fn irr_over_index(
    amb: &Ambient,
    a: &Subgroup,
    g: &Subgroup,
    n: &Subgroup,
    j: usize,
) -> Result<OverTheta> {
    if !n.is_subset_of(g) {
        return Err(hyp("N is not contained in G"));
    }
    if !amb.is_normal_in(n, a) {
        return Err(hyp("N is not normal in A"));
    }
    if !amb.is_normal_in(g, a) {
        return Err(hyp("G is not normal in A"));
    }
    let members = amb.rows_over(g, n, j)?;
    let inertia_in_a = amb.stabilizer(n, j, a)?;
    let inertia_in_g = amb.group().intersection(&inertia_in_a, g);
    let degrees = amb.table(g)?.degrees();
    Ok(OverTheta {
        a: a.clone(),
        g: g.clone(),
        n: n.clone(),
        theta: j,
        members,
        inertia_in_a,
        inertia_in_g,
        degrees,
    })
}

/// |Irr_X(G|θ)|, optionally restricted to p′-degree, for N ⊴ G and X
/// normalizing G. Unlike [`irr_over`] this does not require a common
/// ambient A in which N is normal.
pub fn invariant_over(
    amb: &Ambient,
    acting: &Subgroup,
    g: &Subgroup,
    n: &Subgroup,
    j: usize,
    p: Option<u64>,
) -> Result<Vec<usize>> {
    if !amb.is_normal_in(n, g) {
        return Err(hyp("N is not normal in G"));
    }
    let degrees = amb.table(g)?.degrees();
    let mut out = Vec::new();
    for i in amb.rows_over(g, n, j)? {
        if p.is_some_and(|p| (degrees[i] as u64).is_multiple_of(p)) {
            continue;
        }
        if amb.is_invariant(g, i, acting)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Outcome of the Clifford correspondence check.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CliffordReport {
    /// (row of Irr(G_θ|θ), row of Irr(G|θ)) under induction.
    pub pairs: Vec<(usize, usize)>,
    pub equivariance_checks: usize,
}

/// Verifies that induction Irr(G_θ|θ) → Irr(G|θ) is a bijection commuting
/// with the action of A_θ.
pub fn clifford_correspondence_check(
    amb: &Ambient,
    a: &Subgroup,
    g: &Subgroup,
    n: &Subgroup,
    theta: &ClassFunction,
) -> Result<CliffordReport> {
    let over = irr_over(amb, a, g, n, theta)?;
    let gt = &over.inertia_in_g;
    let below = amb.rows_over(gt, n, over.theta)?;
    let tg = amb.table(g)?;
    let tgt = amb.table(gt)?;
    let mut pairs = Vec::new();
    let mut image = HashMap::new();
    for &i in &below {
        let ind = amb.induce(tgt.row(i), g)?;
        let k = tg.find(&ind).ok_or_else(|| {
            Error::Inconsistent(format!(
                "induced character from row {i} of G_θ is reducible"
            ))
        })?;
        if !over.members.contains(&k) {
            return Err(Error::Inconsistent(format!(
                "induced character {k} does not lie over θ"
            )));
        }
        if image.insert(k, i).is_some() {
            return Err(Error::Inconsistent(format!(
                "induction is not injective at {k}"
            )));
        }
        pairs.push((i, k));
    }
    if pairs.len() != over.members.len() {
        return Err(Error::Inconsistent(format!(
            "{} characters over θ in G_θ but {} in G",
            pairs.len(),
            over.members.len()
        )));
    }
    let mut checks = 0;
    for b in amb.group().generators(&over.inertia_in_a) {
        let pg = amb.row_permutation(g, b)?;
        let pgt = amb.row_permutation(gt, b)?;
        for &(i, k) in &pairs {
            let ib = pgt[i];
            let kb = pairs
                .iter()
                .find(|&&(x, _)| x == ib)
                .map(|&(_, y)| y)
                .ok_or_else(|| {
                    Error::Inconsistent("A_θ moves a character off Irr(G_θ|θ)".into())
                })?;
            if kb != pg[k] {
                return Err(Error::Inconsistent(format!(
                    "induction does not commute with conjugation by {b}"
                )));
            }
            checks += 1;
        }
    }
    Ok(CliffordReport {
        pairs,
        equivariance_checks: checks,
    })
}

/// Rows of Irr(U) extending row `j` of Irr(N), for N ⊴ U.
pub fn extensions_index(amb: &Ambient, n: &Subgroup, j: usize, u: &Subgroup) -> Result<Vec<usize>> {
    if !amb.is_normal_in(n, u) {
        return Err(hyp("N is not normal in U"));
    }
    let deg = amb.table(n)?.degrees()[j];
    let tu = amb.table(u)?;
    let m = amb.restriction_matrix(u, n)?;
    let degrees = tu.degrees();
    Ok((0..tu.len())
        .filter(|&i| degrees[i] == deg && m[i][j] == 1)
        .collect())
}

pub fn extensions(
    amb: &Ambient,
    theta: &ClassFunction,
    n: &Subgroup,
    u: &Subgroup,
) -> Result<Vec<ClassFunction>> {
    let j = theta_index(amb, n, theta)?;
    let tu = amb.table(u)?;
    Ok(extensions_index(amb, n, j, u)?
        .into_iter()
        .map(|i| tu.row(i).clone())
        .collect())
}

/// The unique extension of θ to U with the determinantal order of θ, for θ
/// U-invariant and gcd(|U:N|, |N|) = 1.
pub fn canonical_extension_index(
    amb: &Ambient,
    n: &Subgroup,
    j: usize,
    u: &Subgroup,
) -> Result<usize> {
    let index = u.order() / n.order();
    if index.gcd(&n.order()) != 1 {
        return Err(hyp("|U:N| is not coprime to |N|"));
    }
    if !amb.is_invariant(n, j, u)? {
        return Err(hyp("θ is not U-invariant"));
    }
    let theta = amb.character(n, j)?;
    let target = chartab::determinantal_order(&theta)?;
    let tu = amb.table(u)?;
    let mut found = Vec::new();
    for i in extensions_index(amb, n, j, u)? {
        if chartab::determinantal_order(tu.row(i))? == target {
            found.push(i);
        }
    }
    match found.as_slice() {
        [i] => Ok(*i),
        [] => Err(Error::Inconsistent(
            "no extension with the determinantal order of θ".into(),
        )),
        _ => Err(Error::Inconsistent(format!(
            "{} extensions share the determinantal order of θ",
            found.len()
        ))),
    }
}

pub fn canonical_extension(
    amb: &Ambient,
    theta: &ClassFunction,
    n: &Subgroup,
    u: &Subgroup,
) -> Result<ClassFunction> {
    let j = theta_index(amb, n, theta)?;
    let i = canonical_extension_index(amb, n, j, u)?;
    Ok(amb.table(u)?.row(i).clone())
}

/// Outcome of the Gallagher correspondence check.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GallagherReport {
    /// (row of Irr(U/N), row of Irr(U|θ)) for β ↦ ηβ.
    pub pairs: Vec<(usize, usize)>,
}

/// Verifies that β ↦ η·β is a bijection Irr(U/N) → Irr(U|θ) for an
/// extension η (row `eta` of Irr(U)) of row `j` of Irr(N).
pub fn gallagher_check(
    amb: &Ambient,
    n: &Subgroup,
    j: usize,
    u: &Subgroup,
    eta: usize,
) -> Result<GallagherReport> {
    if !extensions_index(amb, n, j, u)?.contains(&eta) {
        return Err(hyp("η is not an extension of θ"));
    }
    let q = amb.quotient(u, n)?;
    let tq = amb.quotient_table(&q)?;
    let tu = amb.table(u)?;
    let over = amb.rows_over(u, n, j)?;
    let eta_cf = tu.row(eta);
    let mut pairs = Vec::new();
    let mut hit = vec![false; tu.len()];
    for (bi, beta) in tq.rows().iter().enumerate() {
        let lifted = amb.inflate(&q, beta)?;
        let prod = chartab::product(eta_cf, &lifted)?;
        let k = tu
            .find(&prod)
            .ok_or_else(|| Error::Inconsistent(format!("η·β{bi} is reducible")))?;
        if !over.contains(&k) || hit[k] {
            return Err(Error::Inconsistent(format!(
                "η·β{bi} is not a new member of Irr(U|θ)"
            )));
        }
        hit[k] = true;
        pairs.push((bi, k));
    }
    if pairs.len() != over.len() {
        return Err(Error::Inconsistent(
            "Gallagher map is not surjective".into(),
        ));
    }
    Ok(GallagherReport { pairs })
}

/// θ-goodness of one element.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GoodnessCertificate {
    pub element: usize,
    pub verdict: bool,
    /// For a bad element: an extension η of θ to N⟨a⟩ (row index in that
    /// subgroup's table) and x ∈ D with η^x ≠ η.
    pub witness: Option<GoodnessWitness>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GoodnessWitness {
    pub extension: usize,
    pub conjugator: usize,
}

#[derive(Clone, Debug)]
struct Verdict {
    good: bool,
    witness: Option<GoodnessWitness>,
}

/// Decides θ-goodness in A for an A-invariant θ ∈ Irr(N).
///
/// Each element is decided twice: by the definition (the extensions of θ to
/// U = N⟨a⟩ are invariant under D, the preimage of C_{A/N}(Na)) and by the
/// characterization "θ extends to N⟨a, x⟩ for every x ∈ D". A disagreement
/// is an error.
pub struct GoodnessOracle<'a> {
    amb: &'a Ambient,
    pub a: Subgroup,
    pub n: Subgroup,
    pub theta: usize,
    quotient: Arc<QuotCtx>,
    cache: Mutex<HashMap<(Vec<u32>, Vec<u32>), Verdict>>,
    extends: Mutex<HashMap<Vec<u32>, bool>>,
}

impl<'a> GoodnessOracle<'a> {
    pub fn new(amb: &'a Ambient, a: &Subgroup, n: &Subgroup, theta: usize) -> Result<Self> {
        if !amb.is_normal_in(n, a) {
            return Err(hyp("N is not normal in A"));
        }
        if !amb.is_invariant(n, theta, a)? {
            return Err(hyp("θ is not A-invariant"));
        }
        let quotient = amb.quotient(a, n)?;
        Ok(GoodnessOracle {
            amb,
            a: a.clone(),
            n: n.clone(),
            theta,
            quotient,
            cache: Mutex::new(HashMap::new()),
            extends: Mutex::new(HashMap::new()),
        })
    }

    /// D = preimage in A of C_{A/N}(Na).
    pub fn centralizer_preimage(&self, x: usize) -> Subgroup {
        let q = self.quotient.group();
        let qx = self.quotient.project(x);
        let els: Vec<usize> = self
            .a
            .elements()
            .iter()
            .copied()
            .filter(|&y| {
                let qy = self.quotient.project(y);
                q.mul(qx, qy) == q.mul(qy, qx)
            })
            .collect();
        self.amb.group().subgroup_unchecked(&els)
    }

    fn theta_extends_to(&self, v: &Subgroup) -> Result<bool> {
        let key = v.key();
        if let Some(&b) = self.extends.lock().unwrap().get(&key) {
            return Ok(b);
        }
        let b = !extensions_index(self.amb, &self.n, self.theta, v)?.is_empty();
        self.extends.lock().unwrap().insert(key, b);
        Ok(b)
    }

    pub fn certificate(&self, x: usize) -> Result<GoodnessCertificate> {
        if !self.a.contains(x) {
            return Err(hyp(format!("element {x} is not in A")));
        }
        let g = self.amb.group();
        let u = g.closure(&self.n, &[x]);
        let d = self.centralizer_preimage(x);
        let key = (u.key(), d.key());
        let cached = self.cache.lock().unwrap().get(&key).cloned();
        let verdict = match cached {
            Some(v) => v,
            None => {
                let v = self.decide(&u, &d)?;
                self.cache.lock().unwrap().insert(key, v.clone());
                v
            }
        };
        Ok(GoodnessCertificate {
            element: x,
            verdict: verdict.good,
            witness: verdict.witness,
        })
    }

    pub fn is_good(&self, x: usize) -> Result<bool> {
        Ok(self.certificate(x)?.verdict)
    }

    fn decide(&self, u: &Subgroup, d: &Subgroup) -> Result<Verdict> {
        let g = self.amb.group();
        let exts = extensions_index(self.amb, &self.n, self.theta, u)?;
        let mut witness = None;
        'outer: for &eta in &exts {
            for x in g.generators(d) {
                if self.amb.row_permutation(u, x)?[eta] != eta {
                    witness = Some(GoodnessWitness {
                        extension: eta,
                        conjugator: x,
                    });
                    break 'outer;
                }
            }
        }
        let by_definition = witness.is_none();

        // Characterization through extendability to N⟨a, x⟩, x ∈ D. If θ
        // extends to V it extends to every subgroup of V containing N, so
        // elements already inside a good V need no separate test.
        let mut covered = vec![false; g.order()];
        let mut by_extension = true;
        for &x in d.elements() {
            if covered[x] {
                continue;
            }
            let v = g.closure(u, &[x]);
            if self.theta_extends_to(&v)? {
                for &y in v.elements() {
                    covered[y] = true;
                }
            } else {
                by_extension = false;
                break;
            }
        }
        if by_definition != by_extension {
            return Err(Error::Inconsistent(format!(
                "goodness characterizations disagree on N⟨a⟩ of order {}",
                u.order()
            )));
        }
        if let Some(w) = &witness {
            let tu = self.amb.table(u)?;
            let eta = tu.row(w.extension);
            if &self.amb.conjugate(eta, w.conjugator)? == eta {
                return Err(Error::Inconsistent(
                    "goodness witness does not verify".into(),
                ));
            }
        }
        Ok(Verdict {
            good: by_definition,
            witness,
        })
    }
}

/// θ-goodness certificate of one element `x` of A.
pub fn is_theta_good(
    amb: &Ambient,
    a: &Subgroup,
    n: &Subgroup,
    theta: &ClassFunction,
    x: usize,
) -> Result<GoodnessCertificate> {
    let j = theta_index(amb, n, theta)?;
    GoodnessOracle::new(amb, a, n, j)?.certificate(x)
}

/// The conjugacy classes of G/N consisting of θ-good elements in A.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GoodClasses {
    /// Each class of G/N as sorted quotient elements, in the quotient's
    /// canonical class order.
    pub classes: Vec<Vec<usize>>,
    pub good: Vec<bool>,
    /// Number of good classes.
    pub count: usize,
    /// Number of A-orbits on the good classes (recorded for comparison only).
    pub a_orbit_count: usize,
    /// Number of good classes fixed by A (recorded for comparison only).
    pub a_fixed_count: usize,
    /// Number of elements of G tested.
    pub elements_checked: usize,
}

pub fn theta_good_classes(
    amb: &Ambient,
    a: &Subgroup,
    g: &Subgroup,
    n: &Subgroup,
    theta: &ClassFunction,
) -> Result<GoodClasses> {
    let j = theta_index(amb, n, theta)?;
    let oracle = GoodnessOracle::new(amb, a, n, j)?;
    theta_good_classes_with(amb, &oracle, g)
}

/// As [`theta_good_classes`] with a prepared oracle; every element of every
/// class is tested, and goodness is required to be constant on classes of
/// G/N and on their A-orbits.
pub fn theta_good_classes_with(
    amb: &Ambient,
    oracle: &GoodnessOracle<'_>,
    g: &Subgroup,
) -> Result<GoodClasses> {
    let n = &oracle.n;
    if !n.is_subset_of(g) || !amb.is_normal_in(g, &oracle.a) {
        return Err(hyp("need N ≤ G ⊴ A"));
    }
    let q = amb.quotient(g, n)?;
    let qg = q.group();
    let elements = g.elements().to_vec();
    let verdicts: Vec<Result<bool>> = crate::par::map(&elements, |&x| oracle.is_good(x));
    let mut class_good: Vec<Option<bool>> = vec![None; qg.num_classes()];
    for (&x, v) in elements.iter().zip(verdicts) {
        let v = v?;
        let c = qg.class_of(q.project(x));
        match class_good[c] {
            None => class_good[c] = Some(v),
            Some(w) if w != v => {
                return Err(Error::Inconsistent(format!(
                    "goodness is not constant on class {c} of G/N"
                )));
            }
            _ => (),
        }
    }
    let good: Vec<bool> = class_good.into_iter().map(|v| v.unwrap_or(false)).collect();

    // Fuse classes of G/N under conjugation by A.
    let amb_g = amb.group();
    let mut parent: Vec<usize> = (0..qg.num_classes()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for s in amb_g.generators(&oracle.a) {
        for c in 0..qg.num_classes() {
            let rep = q.quotient.section[qg.class_rep(c)];
            let x = g.elements()[rep];
            let y = amb_g.conj(s, x);
            let d = qg.class_of(q.project(y));
            let (rc, rd) = (find(&mut parent, c), find(&mut parent, d));
            if rc != rd {
                parent[rc.max(rd)] = rc.min(rd);
            }
        }
    }
    let mut orbit_good: HashMap<usize, bool> = HashMap::new();
    for c in 0..qg.num_classes() {
        let r = find(&mut parent, c);
        if let Some(&w) = orbit_good.get(&r) {
            if w != good[c] {
                return Err(Error::Inconsistent(
                    "goodness is not constant on A-orbits".into(),
                ));
            }
        }
        orbit_good.insert(r, good[c]);
    }
    let mut orbit_size: HashMap<usize, usize> = HashMap::new();
    for c in 0..qg.num_classes() {
        *orbit_size.entry(find(&mut parent, c)).or_default() += 1;
    }
    let a_fixed_count = (0..qg.num_classes())
        .filter(|&c| good[c] && orbit_size[&find(&mut parent, c)] == 1)
        .count();
    let classes: Vec<Vec<usize>> = qg
        .classes()
        .iter()
        .map(|c| c.iter().map(|&x| x as usize).collect())
        .collect();
    Ok(GoodClasses {
        count: good.iter().filter(|&&b| b).count(),
        a_orbit_count: orbit_good.values().filter(|&&b| b).count(),
        a_fixed_count,
        classes,
        good,
        elements_checked: elements.len(),
    })
}

/// Result of checking that characters over θ vanish off the good elements.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VanishingReport {
    /// (element, row of Irr(A|θ)) pairs checked.
    pub checked: Vec<(usize, usize)>,
    pub bad_elements: usize,
    /// Pairs with a nonzero value.
    pub failures: Vec<(usize, usize)>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn vanishing_check(
    amb: &Ambient,
    a: &Subgroup,
    n: &Subgroup,
    theta: &ClassFunction,
) -> Result<VanishingReport> {
    let j = theta_index(amb, n, theta)?;
    let oracle = GoodnessOracle::new(amb, a, n, j)?;
    vanishing_check_with(amb, &oracle)
}

pub fn vanishing_check_with(amb: &Ambient, oracle: &GoodnessOracle<'_>) -> Result<VanishingReport> {
    let a = &oracle.a;
    let over = amb.rows_over(a, &oracle.n, oracle.theta)?;
    let ta = amb.table(a)?;
    let ctx = amb.sub(a)?;
    let mut checked = Vec::new();
    let mut failures = Vec::new();
    let mut bad = 0;
    for &x in a.elements() {
        if oracle.is_good(x)? {
            continue;
        }
        bad += 1;
        let own = ctx.emb.from_parent(x).unwrap();
        for &i in &over {
            checked.push((x, i));
            if !ta.row(i).value_at(own).is_zero() {
                failures.push((x, i));
            }
        }
    }
    Ok(VanishingReport {
        checked,
        bad_elements: bad,
        failures,
    })
}

/// Exact rank of the matrix (χ(x_k)) for rows `rows` of Irr(A) and ambient
/// elements `points`.
pub fn value_rank(amb: &Ambient, a: &Subgroup, rows: &[usize], points: &[usize]) -> Result<usize> {
    let ta = amb.table(a)?;
    let ctx = amb.sub(a)?;
    let mut m: Vec<Vec<Cyclotomic>> = rows
        .iter()
        .map(|&i| {
            points
                .iter()
                .map(|&x| ta.row(i).value_at(ctx.emb.from_parent(x).unwrap()).clone())
                .collect()
        })
        .collect();
    let ncols = points.len();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inverse()?;
        let pivot: Vec<Cyclotomic> = m[rank]
            .iter()
            .map(|v| v.try_mul(&inv))
            .collect::<std::result::Result<_, _>>()?;
        m[rank] = pivot.clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..ncols {
                    let t = f.try_mul(&pivot[k])?;
                    m[r][k] = m[r][k].try_sub(&t)?;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn faithful_row(amb: &Ambient, n: &Subgroup) -> usize {
        let t = amb.table(n).unwrap();
        (0..t.len()).find(|&i| t.row(i).is_faithful()).unwrap()
    }

    #[test]
    fn over_theta_basics() {
        let amb = Ambient::new(FiniteGroup::symmetric(3).unwrap());
        let s3 = amb.whole();
        let triv = amb.group().trivial_subgroup();
        let one = amb.character(&triv, 0).unwrap();
        let all = irr_over(&amb, &s3, &s3, &triv, &one).unwrap();
        assert_eq!(all.members.len(), 3);
        let a3 = amb.group().derived_subgroup();
        let nontriv = amb.character(&a3, 1).unwrap();
        let over = irr_over(&amb, &s3, &s3, &a3, &nontriv).unwrap();
        assert_eq!(over.members, vec![2]);
        assert_eq!(over.inertia_in_a, a3);
        let rep = clifford_correspondence_check(&amb, &s3, &s3, &a3, &nontriv).unwrap();
        assert_eq!(rep.pairs.len(), 1);
        assert!(extensions(&amb, &nontriv, &a3, &s3).unwrap().is_empty());
    }

    #[test]
    fn extensions_of_faithful_c2() {
        let amb = Ambient::new(FiniteGroup::cyclic(4).unwrap());
        let c4 = amb.whole();
        let c2 = amb.group().subgroup_generated(&[2]).unwrap();
        let j = faithful_row(&amb, &c2);
        let ext = extensions_index(&amb, &c2, j, &c4).unwrap();
        assert_eq!(ext.len(), 2);
        let rep = gallagher_check(&amb, &c2, j, &c4, ext[0]).unwrap();
        assert_eq!(rep.pairs.len(), 2);
        assert_eq!(extensions_index(&amb, &c2, j, &c2).unwrap(), vec![j]);
    }

    #[test]
    fn canonical_extensions() {
        let amb = Ambient::new(FiniteGroup::cyclic(6).unwrap());
        let c6 = amb.whole();
        let c3 = amb.group().subgroup_generated(&[2]).unwrap();
        let j = faithful_row(&amb, &c3);
        let i = canonical_extension_index(&amb, &c3, j, &c6).unwrap();
        let eta = amb.character(&c6, i).unwrap();
        assert_eq!(chartab::determinantal_order(&eta).unwrap(), 3);
        let triv = canonical_extension_index(&amb, &c3, 0, &c6).unwrap();
        assert_eq!(triv, 0);
        // |C4 : C2| = 2 is not coprime to |C2|
        let c4 = Ambient::new(FiniteGroup::cyclic(4).unwrap());
        let c2 = c4.group().subgroup_generated(&[2]).unwrap();
        assert!(canonical_extension_index(&c4, &c2, 1, &c4.whole()).is_err());
    }

    #[test]
    fn quaternion_goodness() {
        let amb = Ambient::new(FiniteGroup::dicyclic(8).unwrap());
        let q8 = amb.whole();
        let z = amb.group().center();
        let j = faithful_row(&amb, &z);
        let oracle = GoodnessOracle::new(&amb, &q8, &z, j).unwrap();
        for x in 0..8 {
            let cert = oracle.certificate(x).unwrap();
            assert_eq!(cert.verdict, z.contains(x), "element {x}");
            assert_eq!(cert.witness.is_some(), !z.contains(x));
        }
        let classes = theta_good_classes_with(&amb, &oracle, &q8).unwrap();
        assert_eq!(classes.count, 1);
        let theta = amb.character(&z, j).unwrap();
        let over = irr_over(&amb, &q8, &q8, &z, &theta).unwrap();
        assert_eq!(over.a_invariant(&amb).unwrap().len(), 1);
        let van = vanishing_check_with(&amb, &oracle).unwrap();
        assert!(van.passed());
        assert_eq!(van.bad_elements, 6);
        assert_eq!(van.checked.len(), 6);
    }

    #[test]
    fn invariance_precondition() {
        // D8 × C2 with N = C4 and θ faithful: θ is not A-invariant.
        let d8 = FiniteGroup::dihedral(8).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let amb = Ambient::new(FiniteGroup::direct_product(&d8, &c2).unwrap());
        let c4 = amb.group().subgroup_generated(&[2]).unwrap();
        assert_eq!(c4.order(), 4);
        let j = faithful_row(&amb, &c4);
        assert!(matches!(
            GoodnessOracle::new(&amb, &amb.whole(), &c4, j),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn central_rank() {
        let amb = Ambient::new(FiniteGroup::dicyclic(8).unwrap());
        let z = amb.group().center();
        let j = faithful_row(&amb, &z);
        let rows = amb.rows_over(&amb.whole(), &z, j).unwrap();
        assert_eq!(value_rank(&amb, &amb.whole(), &rows, &[0]).unwrap(), 1);
    }
}
