//! A fixed catalog group together with caches for its subgroups.
//!
//! Every group that a check touches is a subgroup of one ambient group, so
//! subgroups, their character tables, restriction data and quotients are
//! memoized here by element set. All tables use the ambient exponent as
//! conductor, which keeps arithmetic between them promotion-free.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::chartab::{self, CharError, CharacterTable, ClassFunction};
use crate::group::{Embedded, FiniteGroup, QuotientGroup, Subgroup};
use crate::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A subgroup of the ambient group realized as its own group.
pub struct SubCtx {
    pub emb: Embedded,
    table: OnceLock<std::result::Result<Arc<CharacterTable>, CharError>>,
    /// Row permutations induced by conjugation, keyed by ambient element.
    perms: Mutex<HashMap<usize, Arc<Vec<usize>>>>,
}

impl SubCtx {
    pub fn subgroup(&self) -> &Subgroup {
        &self.emb.subgroup
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.emb.group
    }

    pub fn order(&self) -> usize {
        self.emb.order()
    }
}

/// A quotient H/N of two subgroups of the ambient group.
pub struct QuotCtx {
    pub h: Subgroup,
    pub n: Subgroup,
    pub quotient: QuotientGroup,
    /// Ambient element (of H) to quotient element; `usize::MAX` outside H.
    pub projection: Vec<usize>,
    quotient_group: Arc<FiniteGroup>,
    table: OnceLock<std::result::Result<Arc<CharacterTable>, CharError>>,
}

impl QuotCtx {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.quotient_group
    }

    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }
}

pub struct Ambient {
    group: Arc<FiniteGroup>,
    conductor: u32,
    seed: u64,
    subs: Mutex<HashMap<Vec<u32>, Arc<SubCtx>>>,
    by_uid: Mutex<HashMap<u64, Arc<SubCtx>>>,
    quotients: Mutex<HashMap<(Vec<u32>, Vec<u32>), Arc<QuotCtx>>>,
    restrictions: Mutex<HashMap<(Vec<u32>, Vec<u32>), Arc<Vec<Vec<i64>>>>>,
}

impl std::fmt::Debug for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ambient")
            .field("group", &self.group)
            .finish()
    }
}

impl Ambient {
    pub fn new(group: FiniteGroup) -> Self {
        Self::with_seed(group, chartab::DEFAULT_SEED)
    }

    pub fn with_seed(group: FiniteGroup, seed: u64) -> Self {
        let conductor = group.exponent();
        Ambient {
            group: Arc::new(group),
            conductor,
            seed,
            subs: Mutex::new(HashMap::new()),
            by_uid: Mutex::new(HashMap::new()),
            quotients: Mutex::new(HashMap::new()),
            restrictions: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn whole(&self) -> Subgroup {
        self.group.whole()
    }

    pub fn sub(&self, h: &Subgroup) -> Result<Arc<SubCtx>> {
        let key = h.key();
        if let Some(ctx) = self.subs.lock().unwrap().get(&key) {
            return Ok(ctx.clone());
        }
        let emb = self.group.embed(h)?;
        let ctx = Arc::new(SubCtx {
            emb,
            table: OnceLock::new(),
            perms: Mutex::new(HashMap::new()),
        });
        let mut subs = self.subs.lock().unwrap();
        let ctx = subs.entry(key).or_insert(ctx).clone();
        self.by_uid
            .lock()
            .unwrap()
            .insert(ctx.group().uid(), ctx.clone());
        Ok(ctx)
    }

    pub fn table_of(&self, ctx: &SubCtx) -> Result<Arc<CharacterTable>> {
        ctx.table
            .get_or_init(|| {
                chartab::character_table_at(ctx.group(), self.conductor, self.seed).map(Arc::new)
            })
            .clone()
            .map_err(Error::from)
    }

    pub fn table(&self, h: &Subgroup) -> Result<Arc<CharacterTable>> {
        let ctx = self.sub(h)?;
        self.table_of(&ctx)
    }

    /// Irreducible character `i` of `h`.
    pub fn character(&self, h: &Subgroup, i: usize) -> Result<ClassFunction> {
        let t = self.table(h)?;
        t.rows().get(i).cloned().ok_or_else(|| {
            Error::Hypothesis(format!(
                "character index {i} out of range ({} rows)",
                t.len()
            ))
        })
    }

    /// The subgroup a class function lives on, if it was built here.
    pub fn ctx_of(&self, chi: &ClassFunction) -> Result<Arc<SubCtx>> {
        self.by_uid
            .lock()
            .unwrap()
            .get(&chi.group().uid())
            .cloned()
            .ok_or(Error::Char(CharError::GroupMismatch))
    }

    /// Row index of an irreducible character in its group's table.
    pub fn row_index(&self, chi: &ClassFunction) -> Result<(Arc<SubCtx>, usize)> {
        let ctx = self.ctx_of(chi)?;
        let t = self.table_of(&ctx)?;
        let i = t.find(chi).ok_or(Error::Char(CharError::NotIrreducible))?;
        Ok((ctx, i))
    }

    fn inclusion(&self, small: &SubCtx, big: &SubCtx) -> Result<Vec<usize>> {
        (0..small.order())
            .map(|i| {
                big.emb
                    .from_parent(small.emb.to_parent(i))
                    .ok_or(Error::Char(CharError::NotSubgroup))
            })
            .collect()
    }

    pub fn restrict(&self, chi: &ClassFunction, to: &Subgroup) -> Result<ClassFunction> {
        let from = self.ctx_of(chi)?;
        let to = self.sub(to)?;
        let map = self.inclusion(&to, &from)?;
        Ok(chartab::restrict_along(chi, to.group(), &map)?)
    }

    pub fn induce(&self, theta: &ClassFunction, to: &Subgroup) -> Result<ClassFunction> {
        let from = self.ctx_of(theta)?;
        let to = self.sub(to)?;
        let map = self.inclusion(&from, &to)?;
        Ok(chartab::induce_along(theta, to.group(), &map)?)
    }

    /// χ^a(g) = χ(a g a⁻¹) for an ambient element `a` normalizing χ's group.
    pub fn conjugate(&self, chi: &ClassFunction, a: usize) -> Result<ClassFunction> {
        let ctx = self.ctx_of(chi)?;
        Ok(chartab::conjugate_by(chi, &ctx.emb, &self.group, a)?)
    }

    /// Class function on `h` given per ambient element.
    pub fn class_function_from<F>(&self, h: &Subgroup, f: F) -> Result<ClassFunction>
    where
        F: Fn(usize) -> crate::cyclo::Cyclotomic,
    {
        let ctx = self.sub(h)?;
        let g = ctx.group();
        let values = (0..g.num_classes())
            .map(|c| f(ctx.emb.to_parent(g.class_rep(c))))
            .collect();
        Ok(ClassFunction::new(g.clone(), values)?)
    }

    /// Permutation of the rows of `h`'s table induced by conjugation with `a`
    /// (`perm[i] = j` when χ_i^a = χ_j).
    pub fn row_permutation(&self, h: &Subgroup, a: usize) -> Result<Arc<Vec<usize>>> {
        let ctx = self.sub(h)?;
        if let Some(p) = ctx.perms.lock().unwrap().get(&a) {
            return Ok(p.clone());
        }
        if !self.group.normalizes(a, h) {
            return Err(Error::Char(CharError::NotNormalizing(a)));
        }
        let t = self.table_of(&ctx)?;
        let g = ctx.group();
        let class_perm: Vec<usize> = (0..g.num_classes())
            .map(|c| {
                let x = ctx.emb.to_parent(g.class_rep(c));
                g.class_of(ctx.emb.from_parent(self.group.conj(a, x)).unwrap())
            })
            .collect();
        let mut perm = Vec::with_capacity(t.len());
        for row in t.rows() {
            let j = (0..t.len())
                .find(|&j| {
                    let other = t.row(j);
                    class_perm
                        .iter()
                        .enumerate()
                        .all(|(c, &pc)| other.value(c) == row.value(pc))
                })
                .ok_or_else(|| {
                    Error::Inconsistent("conjugate of an irreducible is not in the table".into())
                })?;
            perm.push(j);
        }
        let perm = Arc::new(perm);
        ctx.perms.lock().unwrap().insert(a, perm.clone());
        Ok(perm)
    }

    /// Whether row `i` of `h`'s table is fixed by every element of `acting`
    /// (checked on a generating set).
    pub fn is_invariant(&self, h: &Subgroup, i: usize, acting: &Subgroup) -> Result<bool> {
        for g in self.group.generators(acting) {
            if self.row_permutation(h, g)?[i] != i {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// {a ∈ within : χ_i^a = χ_i} for row `i` of `h`; `within` must normalize `h`.
    pub fn stabilizer(&self, h: &Subgroup, i: usize, within: &Subgroup) -> Result<Subgroup> {
        let mut els = Vec::new();
        for &a in within.elements() {
            if self.row_permutation(h, a)?[i] == i {
                els.push(a);
            }
        }
        Ok(self.group.subgroup_unchecked(&els))
    }

    /// Orbits of `acting` on the rows of `h`'s table, each sorted, ordered by
    /// least member.
    pub fn row_orbits(&self, h: &Subgroup, acting: &Subgroup) -> Result<Vec<Vec<usize>>> {
        let t = self.table(h)?;
        let gens = self.group.generators(acting);
        let perms: Vec<Arc<Vec<usize>>> = gens
            .iter()
            .map(|&g| self.row_permutation(h, g))
            .collect::<Result<_>>()?;
        let mut seen = vec![false; t.len()];
        let mut orbits = Vec::new();
        for start in 0..t.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                for p in &perms {
                    let j = p[orbit[i]];
                    if !seen[j] {
                        seen[j] = true;
                        orbit.push(j);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Matrix of multiplicities [χ_i|N, θ_j] for χ_i ∈ Irr(G), θ_j ∈ Irr(N).
    pub fn restriction_matrix(&self, g: &Subgroup, n: &Subgroup) -> Result<Arc<Vec<Vec<i64>>>> {
        let key = (g.key(), n.key());
        if let Some(m) = self.restrictions.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        if !n.is_subset_of(g) {
            return Err(Error::Char(CharError::NotSubgroup));
        }
        let tg = self.table(g)?;
        let tn = self.table(n)?;
        let rows: Vec<ClassFunction> = tg
            .rows()
            .iter()
            .map(|chi| self.restrict(chi, n))
            .collect::<Result<_>>()?;
        let m: Vec<Vec<i64>> = crate::par::map(&rows, |res| tn.decompose(res))
            .into_iter()
            .collect::<std::result::Result<_, _>>()?;
        let m = Arc::new(m);
        self.restrictions.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    /// Rows of Irr(G) lying over row `j` of Irr(N).
    pub fn rows_over(&self, g: &Subgroup, n: &Subgroup, j: usize) -> Result<Vec<usize>> {
        let m = self.restriction_matrix(g, n)?;
        Ok((0..m.len()).filter(|&i| m[i][j] != 0).collect())
    }

    /// The quotient H/N for N ⊴ H.
    pub fn quotient(&self, h: &Subgroup, n: &Subgroup) -> Result<Arc<QuotCtx>> {
        let key = (h.key(), n.key());
        if let Some(q) = self.quotients.lock().unwrap().get(&key) {
            return Ok(q.clone());
        }
        if !self.group.is_normal_in(n, h) {
            return Err(Error::Group(crate::group::GroupError::NotNormal));
        }
        let ctx = self.sub(h)?;
        let own: Vec<usize> = n
            .elements()
            .iter()
            .map(|&x| ctx.emb.from_parent(x).unwrap())
            .collect();
        let n_own = ctx.group().subgroup_unchecked(&own);
        let quotient = ctx.group().quotient(&n_own)?;
        let mut projection = vec![usize::MAX; self.group.order()];
        for (i, &x) in h.elements().iter().enumerate() {
            projection[x] = quotient.projection[i];
        }
        let quotient_group = Arc::new(quotient.quotient.clone());
        let q = Arc::new(QuotCtx {
            h: h.clone(),
            n: n.clone(),
            quotient,
            projection,
            quotient_group,
            table: OnceLock::new(),
        });
        self.quotients.lock().unwrap().insert(key, q.clone());
        Ok(q)
    }

    pub fn quotient_table(&self, q: &QuotCtx) -> Result<Arc<CharacterTable>> {
        q.table
            .get_or_init(|| {
                chartab::character_table_at(q.group(), self.conductor, self.seed).map(Arc::new)
            })
            .clone()
            .map_err(Error::from)
    }

    /// Inflation of a character of H/N to H.
    pub fn inflate(&self, q: &QuotCtx, beta: &ClassFunction) -> Result<ClassFunction> {
        let qg = q.group();
        self.class_function_from(&q.h, |x| beta.value(qg.class_of(q.project(x))).clone())
    }

    /// `h` ⊴ `k` inside the ambient group.
    pub fn is_normal_in(&self, h: &Subgroup, k: &Subgroup) -> bool {
        self.group.is_normal_in(h, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caches_share_tables() {
        let amb = Ambient::new(FiniteGroup::symmetric(4).unwrap());
        let v4 = amb
            .group()
            .minimal_normal_subgroups(&amb.group().trivial_subgroup())
            .unwrap()[0]
            .clone();
        let a = amb.table(&v4).unwrap();
        let b = amb.table(&v4).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(a.conductor(), 12);
        // S4 permutes the three nontrivial characters of V4 transitively
        let orbits = amb.row_orbits(&v4, &amb.whole()).unwrap();
        assert_eq!(orbits, vec![vec![0], vec![1, 2, 3]]);
        let m = amb.restriction_matrix(&amb.whole(), &v4).unwrap();
        assert_eq!(m.len(), 5);
        assert_eq!(amb.rows_over(&amb.whole(), &v4, 0).unwrap().len(), 3);
    }

    #[test]
    fn quotient_inflation() {
        let amb = Ambient::new(FiniteGroup::dicyclic(8).unwrap());
        let z = amb.group().center();
        let q = amb.quotient(&amb.whole(), &z).unwrap();
        let tq = amb.quotient_table(&q).unwrap();
        let tg = amb.table(&amb.whole()).unwrap();
        for beta in tq.rows() {
            let lifted = amb.inflate(&q, beta).unwrap();
            assert!(tg.find(&lifted).is_some());
        }
    }
}
