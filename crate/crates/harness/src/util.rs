//! Small subgroup helpers shared by mining, loading and checking.

use charlab::group::{is_power_of, p_part, Subgroup};
use charlab::{Ambient, ClassFunction, Cyclotomic};

use crate::{HarnessError, Result};

pub fn hyp(msg: impl Into<String>) -> HarnessError {
    HarnessError::Hypothesis(msg.into())
}

pub fn is_p_group(h: &Subgroup, p: u64) -> bool {
    is_power_of(h.order() as u64, p)
}

pub fn is_p_prime(h: &Subgroup, p: u64) -> bool {
    !(h.order() as u64).is_multiple_of(p)
}

pub fn is_sylow(s: &Subgroup, g: &Subgroup, p: u64) -> bool {
    s.is_subset_of(g) && s.order() as u64 == p_part(g.order() as u64, p)
}

/// The deterministic Sylow p-subgroup of `g`, computed inside `g`.
pub fn sylow_in(amb: &Ambient, g: &Subgroup, p: u64) -> Result<Subgroup> {
    let ctx = amb.sub(g)?;
    let own = ctx
        .group()
        .sylow_subgroup(p)
        .map_err(charlab::Error::from)?;
    Ok(lift(amb, &ctx.emb, &own))
}

/// Normal subgroups of `g` (computed inside `g`), as ambient subgroups.
pub fn normal_subgroups_of(amb: &Ambient, g: &Subgroup) -> Result<Vec<Subgroup>> {
    let ctx = amb.sub(g)?;
    Ok(ctx
        .group()
        .normal_subgroups()
        .iter()
        .map(|h| lift(amb, &ctx.emb, h))
        .collect())
}

fn lift(amb: &Ambient, emb: &charlab::group::Embedded, own: &Subgroup) -> Subgroup {
    let els: Vec<usize> = own.elements().iter().map(|&i| emb.to_parent(i)).collect();
    amb.group().subgroup_unchecked(&els)
}

/// p-solvability of G/N for N ⊴ G.
pub fn quotient_is_p_solvable(amb: &Ambient, g: &Subgroup, n: &Subgroup, p: u64) -> Result<bool> {
    let ctx = amb.sub(g)?;
    let own: Vec<usize> = n
        .elements()
        .iter()
        .map(|&x| {
            ctx.emb
                .from_parent(x)
                .ok_or_else(|| hyp("N is not contained in G"))
        })
        .collect::<Result<_>>()?;
    let n_own = ctx.group().subgroup_unchecked(&own);
    Ok(ctx.group().is_p_solvable_above(&n_own, p))
}

pub fn product(amb: &Ambient, h: &Subgroup, k: &Subgroup, what: &str) -> Result<Subgroup> {
    amb.group()
        .product_subgroup(h, k)
        .ok_or_else(|| hyp(format!("{what} is not a subgroup")))
}

/// Whether U/C is abelian, for C ⊴ U.
pub fn abelian_over(amb: &Ambient, u: &Subgroup, c: &Subgroup) -> bool {
    let g = amb.group();
    let gens = g.generators(u);
    gens.iter()
        .all(|&a| gens.iter().all(|&b| c.contains(g.commutator(a, b))))
}

/// The class function θ × λ on KZ for K ∩ Z = 1 with K and Z commuting.
pub fn product_character(
    amb: &Ambient,
    k: &Subgroup,
    theta: &ClassFunction,
    z: &Subgroup,
    lambda: &ClassFunction,
    kz: &Subgroup,
) -> Result<ClassFunction> {
    let g = amb.group();
    let kctx = amb.sub(k)?;
    let zctx = amb.sub(z)?;
    let mut split = vec![None; g.order()];
    for &a in k.elements() {
        for &b in z.elements() {
            split[g.mul(a, b)] = Some((a, b));
        }
    }
    let missing = std::cell::Cell::new(false);
    let f = amb.class_function_from(kz, |x| match split[x] {
        Some((a, b)) => {
            let va = theta.value_at(kctx.emb.from_parent(a).unwrap());
            let vb = lambda.value_at(zctx.emb.from_parent(b).unwrap());
            va.try_mul(vb).unwrap_or_else(|_| {
                missing.set(true);
                Cyclotomic::zero()
            })
        }
        None => {
            missing.set(true);
            Cyclotomic::zero()
        }
    });
    let f = f?;
    if missing.get() {
        return Err(hyp("KZ is not the internal direct product of K and Z"));
    }
    Ok(f)
}

/// Row index of an irreducible class function on `h`.
pub fn row_of(amb: &Ambient, h: &Subgroup, chi: &ClassFunction) -> Result<usize> {
    amb.table(h)?
        .find(chi)
        .ok_or_else(|| HarnessError::Inconsistent("expected an irreducible character".into()))
}
