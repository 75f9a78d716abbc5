//! Deterministic enumeration of hypothesis-satisfying configurations.
//!
//! Each ambient group yields candidate tuples grouped by their leading
//! subgroups; groups are drained round-robin so that one ambient does not
//! contribute a long run of near-identical instances. Ambients are then
//! drained round-robin up to the per-kind bound.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use charlab::clifford::irr_over_index;
use charlab::glauberman::{glauberman_correspondent, CoprimeAction};
use charlab::group::{is_power_of, prime_divisors, Subgroup};
use charlab::Ambient;

use crate::catalog::Catalog;
use crate::dsl;
use crate::instance::{char_ref, InstanceSpec, Kind, Loader};
use crate::util::{abelian_over, normal_subgroups_of, quotient_is_p_solvable, sylow_in};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_per_kind: usize,
    pub per_ambient: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 500,
            max_per_kind: 200,
            per_ambient: 12,
        }
    }
}

/// Drains the lists in turn, taking one element from each per pass.
pub fn round_robin<T>(lists: Vec<Vec<T>>, cap: usize) -> Vec<T> {
    let mut iters: Vec<_> = lists.into_iter().map(Vec::into_iter).collect();
    let mut out = Vec::new();
    loop {
        let mut progressed = false;
        for it in iters.iter_mut() {
            if out.len() >= cap {
                return out;
            }
            if let Some(x) = it.next() {
                out.push(x);
                progressed = true;
            }
        }
        if !progressed {
            return out;
        }
    }
}

struct Ctx {
    text: String,
    amb: Arc<Ambient>,
    a: Subgroup,
    normals: Vec<Subgroup>,
    cap: usize,
}

struct Builder<'a> {
    ctx: &'a Ctx,
    spec: InstanceSpec,
}

impl<'a> Builder<'a> {
    fn new(ctx: &'a Ctx, kind: Kind, prime: Option<u64>) -> Self {
        let spec = InstanceSpec {
            kind,
            ambient: ctx.text.clone(),
            prime,
            subgroups: BTreeMap::new(),
            subgroup_lists: BTreeMap::new(),
            characters: BTreeMap::new(),
        };
        Builder { ctx, spec }
    }

    fn sub(mut self, name: &str, h: &Subgroup) -> Self {
        let sel = dsl::genlist_for(self.ctx.amb.group(), h);
        self.spec.subgroups.insert(name.to_string(), sel);
        self
    }

    fn list(mut self, name: &str, hs: &[Subgroup]) -> Self {
        let sels = hs
            .iter()
            .map(|h| dsl::genlist_for(self.ctx.amb.group(), h))
            .collect();
        self.spec.subgroup_lists.insert(name.to_string(), sels);
        self
    }

    fn chr(mut self, name: &str, on: &str, h: &Subgroup, row: usize) -> Result<Self> {
        let r = char_ref(&self.ctx.amb, on, h, row)?;
        self.spec.characters.insert(name.to_string(), r);
        Ok(self)
    }

    fn done(self) -> InstanceSpec {
        self.spec
    }
}

impl Ctx {
    /// Normal subgroups ordered nontrivial-proper first, then 1, then A.
    fn normals_interesting(&self) -> Vec<Subgroup> {
        let n = self.a.order();
        let mut v: Vec<Subgroup> = self
            .normals
            .iter()
            .filter(|h| !h.is_trivial() && h.order() != n)
            .cloned()
            .collect();
        v.push(self.normals[0].clone());
        if n > 1 {
            v.push(self.a.clone());
        }
        v
    }

    fn invariant_rows(&self, h: &Subgroup, acting: &Subgroup) -> Result<Vec<usize>> {
        let t = self.amb.table(h)?;
        let mut out = Vec::new();
        for i in 0..t.len() {
            if self.amb.is_invariant(h, i, acting)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Least row of each orbit of `b` on the `q`-invariant rows of `k`.
    fn orbit_reps(&self, k: &Subgroup, q: &Subgroup, b: &Subgroup) -> Result<Vec<usize>> {
        let inv: HashSet<usize> = self.invariant_rows(k, q)?.into_iter().collect();
        let mut out = Vec::new();
        for orbit in self.amb.row_orbits(k, b)? {
            if let Some(&i) = orbit.iter().find(|i| inv.contains(i)) {
                out.push(i);
            }
        }
        Ok(out)
    }

    fn primes(&self) -> Vec<u64> {
        prime_divisors(self.a.order() as u64)
    }

    fn p_prime_normals(&self, p: u64) -> Vec<Subgroup> {
        let mut v: Vec<Subgroup> = self
            .normals
            .iter()
            .filter(|h| !(h.order() as u64).is_multiple_of(p) && !h.is_trivial())
            .cloned()
            .collect();
        v.push(self.normals[0].clone());
        v
    }
}

fn mine_invariant(ctx: &Ctx, kind: Kind) -> Result<Vec<InstanceSpec>> {
    let a = &ctx.a;
    let mut groups = Vec::new();
    for n in ctx.normals_interesting() {
        let mut rows = ctx.invariant_rows(&n, a)?;
        rows.reverse();
        // G = A repeats GALLAGHER_1_2, so the largest proper G comes first.
        let targets: Vec<Subgroup> = if kind == Kind::Thm13 {
            let mut t: Vec<Subgroup> = ctx
                .normals
                .iter()
                .rev()
                .filter(|g| n.is_subset_of(g))
                .cloned()
                .collect();
            if t.len() > 1 {
                t.swap(0, 1);
            }
            t
        } else {
            vec![a.clone()]
        };
        let mut group = Vec::new();
        for &j in &rows {
            for g in &targets {
                let mut b = Builder::new(ctx, kind, None).sub("A", a).sub("N", &n);
                if kind == Kind::Thm13 {
                    b = b.sub("G", g);
                }
                group.push(b.chr("theta", "N", &n, j)?.done());
            }
        }
        groups.push(group);
    }
    Ok(round_robin(groups, ctx.cap))
}

fn mine_cor_1_4(ctx: &Ctx) -> Result<Vec<InstanceSpec>> {
    let (amb, a) = (&ctx.amb, &ctx.a);
    let mut groups = Vec::new();
    for n in ctx.normals_interesting() {
        let mut group = Vec::new();
        for orbit in amb.row_orbits(&n, a)? {
            if orbit.len() == 1 {
                continue;
            }
            let j = orbit[0];
            for g in ctx.normals.iter().rev().filter(|g| n.is_subset_of(g)) {
                let over = irr_over_index(amb, a, g, &n, j)?;
                if over.a_invariant(amb)?.is_empty() {
                    continue;
                }
                let b = Builder::new(ctx, Kind::Cor14, None)
                    .sub("A", a)
                    .sub("G", g)
                    .sub("N", &n);
                group.push(b.chr("theta", "N", &n, j)?.done());
            }
        }
        groups.push(group);
    }
    Ok(round_robin(groups, ctx.cap))
}

/// A coprime configuration K, Q (a p-subgroup with KQ ⊴ A), B = N_A(Q)
/// and the Glauberman data of θ.
struct Coprime {
    p: u64,
    k: Subgroup,
    q: Subgroup,
    b: Subgroup,
    action: CoprimeAction,
    thetas: Vec<(usize, usize)>,
}

fn coprime_configs(ctx: &Ctx) -> Result<Vec<Coprime>> {
    let (amb, a) = (&ctx.amb, &ctx.a);
    let grp = amb.group();
    let mut out = Vec::new();
    for p in ctx.primes() {
        for k in ctx.p_prime_normals(p) {
            let mut above: Vec<&Subgroup> = ctx
                .normals
                .iter()
                .filter(|m| k.is_subset_of(m) && is_power_of((m.order() / k.order()) as u64, p))
                .collect();
            // Nontrivial Q first.
            above.rotate_left(1);
            for m in above {
                let q = sylow_in(amb, m, p)?;
                let b = grp.normalizer_in(a, &q).map_err(charlab::Error::from)?;
                let action = CoprimeAction::new(amb, a, &k, &q, p)?;
                let mut thetas = Vec::new();
                for t in ctx.orbit_reps(&k, &q, &b)? {
                    thetas.push((t, glauberman_correspondent(amb, &action, t)?.index));
                }
                out.push(Coprime {
                    p,
                    k: k.clone(),
                    q,
                    b,
                    action,
                    thetas,
                });
            }
        }
    }
    Ok(out)
}

/// Subgroups C⟨x⟩ and (for small B) C⟨x, y⟩ inside B, sorted by order.
fn overgroups(
    amb: &Ambient,
    c: &Subgroup,
    b: &Subgroup,
    abelian: bool,
    cap: usize,
) -> Vec<Subgroup> {
    let grp = amb.group();
    let mut seen = HashSet::new();
    let mut all = Vec::new();
    let mut consider = |u: Subgroup, all: &mut Vec<Subgroup>| {
        if (!abelian || abelian_over(amb, &u, c)) && seen.insert(u.key()) {
            all.push(u);
        }
    };
    consider(c.clone(), &mut all);
    let singles: Vec<Subgroup> = b.elements().iter().map(|&x| grp.closure(c, &[x])).collect();
    for u in &singles {
        consider(u.clone(), &mut all);
    }
    if b.order() <= 48 {
        for (i, &x) in b.elements().iter().enumerate() {
            for &y in &b.elements()[i + 1..] {
                if singles[i].contains(y) {
                    continue;
                }
                consider(grp.closure(c, &[x, y]), &mut all);
            }
        }
    }
    all.sort_by_key(|u| (u.order(), u.key()));
    if all.len() > cap {
        let n = all.len();
        all = (0..cap)
            .map(|i| all[i * (n - 1) / (cap - 1)].clone())
            .collect();
    }
    all
}

fn mine_ow_2_1(ctx: &Ctx) -> Result<Vec<InstanceSpec>> {
    let mut groups = Vec::new();
    for cp in coprime_configs(ctx)? {
        let c = &cp.action.c;
        let us = overgroups(&ctx.amb, c, &cp.b, true, 6);
        let mut group = Vec::new();
        for &(t, s) in &cp.thetas {
            let b = Builder::new(ctx, Kind::Ow21, Some(cp.p))
                .sub("A", &ctx.a)
                .sub("K", &cp.k)
                .sub("Q", &cp.q)
                .sub("B", &cp.b)
                .sub("C", c)
                .list("U", &us)
                .chr("theta", "K", &cp.k, t)?
                .chr("theta_star", "C", c, s)?;
            group.push(b.done());
        }
        groups.push(group);
    }
    Ok(round_robin(groups, ctx.cap))
}

fn mine_cor_2_2(ctx: &Ctx) -> Result<Vec<InstanceSpec>> {
    let amb = &ctx.amb;
    let grp = amb.group();
    let mut groups = Vec::new();
    for cp in coprime_configs(ctx)? {
        let c = &cp.action.c;
        let cq = grp.join(c, &cp.q);
        let mut ds = vec![cp.b.clone()];
        for d in std::iter::once(cq).chain(overgroups(amb, c, &cp.b, false, 4)) {
            if !ds.contains(&d) {
                ds.push(d);
            }
        }
        let mut group = Vec::new();
        for d in &ds {
            let ss: Vec<Subgroup> = normal_subgroups_of(amb, d)?
                .into_iter()
                .filter(|s| c.is_subset_of(s))
                .collect();
            for s in ss.iter().rev().take(3) {
                for &(t, star) in cp.thetas.iter().take(2) {
                    let b = Builder::new(ctx, Kind::Cor22, Some(cp.p))
                        .sub("A", &ctx.a)
                        .sub("K", &cp.k)
                        .sub("P", &cp.q)
                        .sub("B", &cp.b)
                        .sub("C", c)
                        .sub("D", d)
                        .sub("S", s)
                        .chr("theta", "K", &cp.k, t)?
                        .chr("theta_star", "C", c, star)?;
                    group.push(b.done());
                }
            }
        }
        groups.push(group);
    }
    Ok(round_robin(groups, ctx.cap))
}

fn mine_thm_2_4(ctx: &Ctx) -> Result<Vec<InstanceSpec>> {
    let (amb, a) = (&ctx.amb, &ctx.a);
    let grp = amb.group();
    // (priority, candidates); lower priority values are more informative.
    let mut groups: Vec<((bool, bool, bool), Vec<InstanceSpec>)> = Vec::new();
    for p in ctx.primes() {
        for g in ctx
            .normals
            .iter()
            .rev()
            .filter(|g| (g.order() as u64).is_multiple_of(p))
        {
            let pp = sylow_in(amb, g, p)?;
            let b = grp.normalizer_in(a, &pp).map_err(charlab::Error::from)?;
            let h = grp.normalizer_in(g, &pp).map_err(charlab::Error::from)?;
            let ks: Vec<&Subgroup> = ctx
                .normals
                .iter()
                .filter(|k| k.is_subset_of(g) && !(k.order() as u64).is_multiple_of(p))
                .filter(|k| {
                    grp.product_subgroup(k, &pp)
                        .is_some_and(|kp| grp.is_normal_in(&kp, a))
                })
                .collect();
            let zs: Vec<&Subgroup> = ctx
                .normals
                .iter()
                .filter(|z| z.is_subset_of(g) && is_power_of(z.order() as u64, p))
                .collect();
            for k in &ks {
                let action = CoprimeAction::new(amb, a, k, &pp, p)?;
                let c = action.c.clone();
                let thetas = ctx.orbit_reps(k, &pp, &b)?;
                for z in &zs {
                    let mut lambdas = ctx.invariant_rows(z, a)?;
                    lambdas.reverse();
                    for &l in lambdas.iter().take(2) {
                        let mut group = Vec::new();
                        for &t in thetas.iter().rev().take(2) {
                            let star = glauberman_correspondent(amb, &action, t)?.index;
                            let bld = Builder::new(ctx, Kind::Thm24, Some(p))
                                .sub("A", a)
                                .sub("G", g)
                                .sub("K", k)
                                .sub("P", &pp)
                                .sub("Z", z)
                                .sub("B", &b)
                                .sub("H", &h)
                                .sub("C", &c)
                                .chr("theta", "K", k, t)?
                                .chr("theta_star", "C", &c, star)?
                                .chr("lambda", "Z", z, l)?;
                            group.push(bld.done());
                        }
                        let lambda_trivial = l == 0;
                        groups.push(((z.is_trivial(), lambda_trivial, c.is_trivial()), group));
                    }
                }
            }
        }
    }
    groups.sort_by_key(|(key, _)| *key);
    Ok(round_robin(
        groups.into_iter().map(|(_, g)| g).collect(),
        ctx.cap,
    ))
}

fn mine_thm_3_1(ctx: &Ctx) -> Result<Vec<InstanceSpec>> {
    let (amb, a) = (&ctx.amb, &ctx.a);
    let grp = amb.group();
    let mut per_prime = Vec::new();
    for p in ctx.primes() {
        let mut groups = Vec::new();
        for g in ctx
            .normals
            .iter()
            .rev()
            .filter(|g| (g.order() as u64).is_multiple_of(p))
        {
            let pp = sylow_in(amb, g, p)?;
            let b = grp.normalizer_in(a, &pp).map_err(charlab::Error::from)?;
            for n in ctx.normals.iter().filter(|n| n.is_subset_of(g)) {
                if !quotient_is_p_solvable(amb, g, n, p)? {
                    continue;
                }
                let t = amb.table(n)?;
                let mut group = Vec::new();
                for mu in ctx.orbit_reps(n, &pp, &b)? {
                    if (t.row(mu).degree().unwrap_or(0) as u64).is_multiple_of(p) {
                        continue;
                    }
                    let bld = Builder::new(ctx, Kind::Thm31, Some(p))
                        .sub("A", a)
                        .sub("G", g)
                        .sub("N", n)
                        .sub("P", &pp)
                        .sub("B", &b)
                        .chr("mu", "N", n, mu)?;
                    group.push(bld.done());
                }
                groups.push(group);
            }
        }
        per_prime.push(groups);
    }
    let groups = round_robin(per_prime, usize::MAX);
    Ok(round_robin(groups, ctx.cap))
}

/// The fixed instance A = D8 × C2, G = C4 × C2, N = C4, θ faithful.
pub fn counterexample_spec(loader: &Loader) -> Result<InstanceSpec> {
    let text = "D(8) x C(2)";
    let amb = loader.ambient(text)?;
    let grp = amb.group().clone();
    let a = grp.whole();
    // D(8) has rotation 1 and reflection 4; C(2) is the right factor.
    let g = grp
        .subgroup_generated(&[2, 1])
        .map_err(charlab::Error::from)?;
    let n = grp.subgroup_generated(&[2]).map_err(charlab::Error::from)?;
    let t = amb.table(&n)?;
    let theta = (0..t.len())
        .find(|&i| t.row(i).is_faithful())
        .expect("C4 has a faithful character");
    let ctx = Ctx {
        text: text.to_string(),
        amb: amb.clone(),
        a: a.clone(),
        normals: Vec::new(),
        cap: 1,
    };
    Ok(Builder::new(&ctx, Kind::Counterexample1, None)
        .sub("A", &a)
        .sub("G", &g)
        .sub("N", &n)
        .chr("theta", "N", &n, theta)?
        .done())
}

fn mine_ambient(
    loader: &Loader,
    text: &str,
    kind: Kind,
    limits: &Limits,
) -> Result<Vec<InstanceSpec>> {
    let amb = loader.ambient(text)?;
    if amb.group().order() > limits.max_order {
        return Ok(Vec::new());
    }
    let canonical = dsl::parse(text)?.render();
    if kind == Kind::Counterexample1 {
        return Ok(if canonical == "D(8) x C(2)" {
            vec![counterexample_spec(loader)?]
        } else {
            Vec::new()
        });
    }
    let ctx = Ctx {
        text: canonical,
        a: amb.whole(),
        normals: amb.group().normal_subgroups(),
        amb,
        cap: limits.per_ambient,
    };
    match kind {
        Kind::Gallagher12 | Kind::Thm13 | Kind::Lem11 => mine_invariant(&ctx, kind),
        Kind::Cor14 => mine_cor_1_4(&ctx),
        Kind::Ow21 => mine_ow_2_1(&ctx),
        Kind::Cor22 => mine_cor_2_2(&ctx),
        Kind::Thm24 => mine_thm_2_4(&ctx),
        Kind::Thm31 => mine_thm_3_1(&ctx),
        Kind::Counterexample1 => unreachable!(),
    }
}

/// Mines instances of `kind` from every minable catalog entry.
pub fn mine_instances(
    catalog: &Catalog,
    kind: Kind,
    limits: &Limits,
    loader: &Loader,
) -> Result<Vec<InstanceSpec>> {
    let texts: Vec<&str> = catalog
        .groups
        .iter()
        .filter(|e| e.mine)
        .map(|e| e.expr.as_str())
        .collect();
    let per: Vec<Result<Vec<InstanceSpec>>> =
        charlab::par::map(&texts, |t| mine_ambient(loader, t, kind, limits));
    let per = per.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(round_robin(per, limits.max_per_kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mined(expr: &str, kind: Kind) -> Vec<InstanceSpec> {
        let loader = Loader::default();
        mine_instances(
            &Catalog::from_exprs(&[expr]),
            kind,
            &Limits::default(),
            &loader,
        )
        .unwrap()
    }

    #[test]
    fn round_robin_order() {
        let v = round_robin(vec![vec![1, 2, 3], vec![4], vec![5, 6]], 5);
        assert_eq!(v, vec![1, 4, 5, 2, 6]);
    }

    #[test]
    fn q8_thm_1_3_has_faithful_center_case() {
        let loader = Loader::default();
        let specs = mined("Q(8)", Kind::Thm13);
        let found = specs.iter().any(|s| {
            let inst = loader.load(s).unwrap();
            let (g, n) = (inst.sub("G").unwrap(), inst.sub("N").unwrap());
            g.order() == 8 && n.order() == 2 && inst.spec.characters["theta"].det_order == 2
        });
        assert!(found);
    }

    #[test]
    fn s4_thm_3_1_has_v4_case() {
        let loader = Loader::default();
        let found = mined("S(4)", Kind::Thm31).iter().any(|s| {
            let inst = loader.load(s).unwrap();
            s.prime == Some(2)
                && inst.sub("G").unwrap().order() == 24
                && inst.sub("N").unwrap().order() == 4
                && inst.spec.characters["mu"].row == 0
        });
        assert!(found);
    }

    #[test]
    fn wreath_ow_2_1_case() {
        let loader = Loader::default();
        let found = mined("C(3) wr C(2)", Kind::Ow21).iter().any(|s| {
            let inst = loader.load(s).unwrap();
            s.prime == Some(2)
                && inst.sub("K").unwrap().order() == 9
                && inst.sub("Q").unwrap().order() == 2
        });
        assert!(found);
    }

    #[test]
    fn counterexample_only_with_its_ambient() {
        assert_eq!(mined("D(8) x C(2)", Kind::Counterexample1).len(), 1);
        assert!(mined("C(2)", Kind::Counterexample1).is_empty());
    }
}
