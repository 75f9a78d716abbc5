//! One check per kind. Each returns the two sides of the claimed equality
//! plus witness data; the two sides never share a code path.

use charlab::clifford::{
    clifford_correspondence_check, extensions_index, invariant_over, irr_over_index,
    theta_good_classes_with, value_rank, vanishing_check_with, GoodnessOracle,
};
use charlab::glauberman::{correspondence_audit, CoprimeAction};
use charlab::group::Subgroup;
use charlab::Ambient;
use serde::Serialize;
use serde_json::{json, Value};

use crate::instance::{Instance, Kind};
use crate::util::{hyp, product, product_character, row_of};
use crate::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub lhs: i64,
    pub rhs: i64,
    pub passed: bool,
    pub witnesses: Value,
}

impl CheckOutcome {
    fn equality(lhs: usize, rhs: usize, witnesses: Value) -> Self {
        CheckOutcome {
            lhs: lhs as i64,
            rhs: rhs as i64,
            passed: lhs == rhs,
            witnesses,
        }
    }
}

pub fn check(inst: &Instance) -> Result<CheckOutcome> {
    match inst.kind() {
        Kind::Gallagher12 => check_gallagher(inst),
        Kind::Thm13 => check_thm_1_3(inst),
        Kind::Cor14 => check_cor_1_4(inst),
        Kind::Lem11 => check_lemma_1_1(inst),
        Kind::Ow21 => check_ow_2_1(inst),
        Kind::Cor22 => check_cor_2_2(inst),
        Kind::Thm24 => check_thm_2_4(inst),
        Kind::Thm31 => check_thm_3_1(inst),
        Kind::Counterexample1 => check_counterexample(inst),
    }
}

fn subs<const N: usize>(inst: &Instance, names: [&str; N]) -> Result<[Subgroup; N]> {
    let mut out = Vec::with_capacity(N);
    for n in names {
        out.push(inst.sub(n)?.clone());
    }
    Ok(out.try_into().unwrap())
}

/// Ambient elements representing each class of H/N marked good.
fn good_points(amb: &Ambient, h: &Subgroup, n: &Subgroup, good: &[bool]) -> Result<Vec<usize>> {
    let q = amb.quotient(h, n)?;
    let qg = q.group();
    Ok((0..qg.num_classes())
        .filter(|&c| good[c])
        .map(|c| h.elements()[q.quotient.section[qg.class_rep(c)]])
        .collect())
}

pub fn check_gallagher(inst: &Instance) -> Result<CheckOutcome> {
    let amb = &inst.amb;
    let [a, n] = subs(inst, ["A", "N"])?;
    let theta = inst.char("theta")?;
    let over = amb.rows_over(&a, &n, theta)?;
    let oracle = GoodnessOracle::new(amb, &a, &n, theta)?;
    let good = theta_good_classes_with(amb, &oracle, &a)?;
    let mut out = CheckOutcome::equality(
        over.len(),
        good.count,
        json!({ "good_classes": good.good, "elements_checked": good.elements_checked }),
    );
    let central = amb
        .group()
        .centralizer_in(&a, &n)
        .map_err(charlab::Error::from)?
        == a;
    let faithful = amb.character(&n, theta)?.is_faithful();
    if central && faithful {
        let points = good_points(amb, &a, &n, &good.good)?;
        let rank = value_rank(amb, &a, &over, &points)?;
        out.witnesses["value_rank"] = json!(rank);
        out.passed &= rank == over.len();
    }
    Ok(out)
}

/// Number of `acting`-orbits on the given rows of Irr(G).
fn orbits_over(amb: &Ambient, g: &Subgroup, acting: &Subgroup, rows: &[usize]) -> Result<usize> {
    Ok(amb
        .row_orbits(g, acting)?
        .iter()
        .filter(|o| o.iter().any(|i| rows.contains(i)))
        .count())
}

pub fn check_thm_1_3(inst: &Instance) -> Result<CheckOutcome> {
    let amb = &inst.amb;
    let [a, g, n] = subs(inst, ["A", "G", "N"])?;
    let theta = inst.char("theta")?;
    let over = irr_over_index(amb, &a, &g, &n, theta)?;
    let lhs = over.a_invariant(amb)?.len();
    let oracle = GoodnessOracle::new(amb, &a, &n, theta)?;
    let good = theta_good_classes_with(amb, &oracle, &g)?;
    let orbits = orbits_over(amb, &g, &a, &over.members)?;
    Ok(CheckOutcome::equality(
        lhs,
        good.count,
        json!({
            "irr_a_orbits": orbits,
            "orbit_counts_agree": orbits == good.a_orbit_count,
            "good_classes": good.good,
            "good_a_orbits": good.a_orbit_count,
            "good_a_fixed": good.a_fixed_count,
            "elements_checked": good.elements_checked,
        }),
    ))
}

pub fn check_cor_1_4(inst: &Instance) -> Result<CheckOutcome> {
    let amb = &inst.amb;
    let [a, g, n] = subs(inst, ["A", "G", "N"])?;
    let theta = inst.char("theta")?;
    let over = irr_over_index(amb, &a, &g, &n, theta)?;
    let lhs = over.a_invariant(amb)?.len();
    let (at, gt) = (&over.inertia_in_a, &over.inertia_in_g);
    let oracle = GoodnessOracle::new(amb, at, &n, theta)?;
    let good = theta_good_classes_with(amb, &oracle, gt)?;
    let clifford = clifford_correspondence_check(amb, &a, &g, &n, &amb.character(&n, theta)?)?;
    let inertia_count = invariant_over(amb, at, gt, &n, theta, None)?.len();
    let inertia_over = irr_over_index(amb, at, gt, &n, theta)?;
    let orbits = orbits_over(amb, gt, at, &inertia_over.members)?;
    Ok(CheckOutcome::equality(
        lhs,
        good.count,
        json!({
            "inertia_orders": [at.order(), gt.order()],
            "irr_inertia_orbits": orbits,
            "orbit_counts_agree": orbits == good.a_orbit_count,
            "good_classes": good.good,
            "good_a_orbits": good.a_orbit_count,
            "good_a_fixed": good.a_fixed_count,
            "irr_inertia_over_theta": inertia_count,
            "clifford_pairs": clifford.pairs.len(),
            "clifford_equivariance_checks": clifford.equivariance_checks,
        }),
    ))
}

pub fn check_lemma_1_1(inst: &Instance) -> Result<CheckOutcome> {
    let amb = &inst.amb;
    let [a, n] = subs(inst, ["A", "N"])?;
    let oracle = GoodnessOracle::new(amb, &a, &n, inst.char("theta")?)?;
    let v = vanishing_check_with(amb, &oracle)?;
    let checked = v.checked.len();
    Ok(CheckOutcome {
        lhs: (checked - v.failures.len()) as i64,
        rhs: checked as i64,
        passed: v.passed(),
        witnesses: json!({ "bad_elements": v.bad_elements, "failures": v.failures }),
    })
}

pub fn check_counterexample(inst: &Instance) -> Result<CheckOutcome> {
    let amb = &inst.amb;
    let [a, g, n] = subs(inst, ["A", "G", "N"])?;
    let counts = |j: usize| -> Result<(usize, usize)> {
        let over = irr_over_index(amb, &a, &g, &n, j)?;
        let lhs = over.a_invariant(amb)?.len();
        let rhs = invariant_over(amb, &over.inertia_in_a, &over.inertia_in_g, &n, j, None)?.len();
        Ok((lhs, rhs))
    };
    let theta = inst.char("theta")?;
    let (lhs, rhs) = counts(theta)?;
    let conj = amb.character(&n, theta)?.conj();
    let (cl, cr) = counts(row_of(amb, &n, &conj)?)?;
    Ok(CheckOutcome {
        lhs: lhs as i64,
        rhs: rhs as i64,
        passed: (lhs, rhs) == (0, 2) && (cl, cr) == (lhs, rhs),
        witnesses: json!({ "expected": [0, 2], "conjugate_theta": [cl, cr] }),
    })
}

fn audit(amb: &Ambient, action: &CoprimeAction, b: &Subgroup) -> Result<Value> {
    let a = correspondence_audit(amb, action, b)?;
    Ok(json!({ "pairs": a.pairs, "equivariance_checks": a.equivariance_checks }))
}

pub fn check_ow_2_1(inst: &Instance) -> Result<CheckOutcome> {
    let amb = &inst.amb;
    let [a, k, q, b, c] = subs(inst, ["A", "K", "Q", "B", "C"])?;
    let action = CoprimeAction::new(amb, &a, &k, &q, inst.prime()?)?;
    let (theta, star) = (inst.char("theta")?, inst.char("theta_star")?);
    let mut agree = 0;
    let mut rows = Vec::new();
    for u in inst.list("U") {
        let ku = product(amb, &k, u, "KU")?;
        let left = !extensions_index(amb, &k, theta, &ku)?.is_empty();
        let right = !extensions_index(amb, &c, star, u)?.is_empty();
        agree += usize::from(left == right);
        rows.push(
            json!({ "order": u.order(), "theta_extends_to_KU": left, "star_extends_to_U": right }),
        );
    }
    let total = inst.list("U").len();
    Ok(CheckOutcome::equality(
        agree,
        total,
        json!({ "pairs": rows, "glauberman_audit": audit(amb, &action, &b)? }),
    ))
}

/// The cross-check of the reduction lemma: with H = G ∩ B, whenever the
/// inertia-restricted counts agree the full counts must agree too.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCheck {
    pub applies: bool,
    pub inertia: (usize, usize),
    pub full: (usize, usize),
    pub consistent: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn reduction_check(
    amb: &Ambient,
    a: &Subgroup,
    g: &Subgroup,
    b: &Subgroup,
    k: &Subgroup,
    theta: usize,
    c: &Subgroup,
    phi: usize,
    p: Option<(u64, &Subgroup)>,
) -> Result<ReductionCheck> {
    let grp = amb.group();
    let h = grp.intersection(g, b);
    let mut applies = amb.is_normal_in(g, a)
        && b.is_subset_of(a)
        && g.order() * b.order() == a.order() * h.order()
        && k.is_subset_of(g)
        && amb.is_normal_in(k, a)
        && c.is_subset_of(&h)
        && amb.is_normal_in(c, b);
    if !applies {
        return Err(hyp("reduction lemma hypotheses fail"));
    }
    let bt = amb.stabilizer(k, theta, b)?;
    let bp = amb.stabilizer(c, phi, b)?;
    applies &= bt == bp;
    let prime = p.map(|(p, _)| p);
    if let Some((_, pp)) = p {
        applies &= amb.is_invariant(k, theta, pp)? && amb.is_invariant(c, phi, pp)?;
    }
    let at = amb.stabilizer(k, theta, a)?;
    let gt = grp.intersection(g, &at);
    let hp = grp.intersection(&h, &bp);
    let inertia = (
        invariant_over(amb, &at, &gt, k, theta, prime)?.len(),
        invariant_over(amb, &bt, &hp, c, phi, prime)?.len(),
    );
    let full = (
        invariant_over(amb, a, g, k, theta, prime)?.len(),
        invariant_over(amb, b, &h, c, phi, prime)?.len(),
    );
    let consistent = !applies || inertia.0 != inertia.1 || full.0 == full.1;
    Ok(ReductionCheck {
        applies,
        inertia,
        full,
        consistent,
    })
}

pub fn check_cor_2_2(inst: &Instance) -> Result<CheckOutcome> {
    let amb = &inst.amb;
    let [a, k, pp, b, c, d, s] = subs(inst, ["A", "K", "P", "B", "C", "D", "S"])?;
    let action = CoprimeAction::new(amb, &a, &k, &pp, inst.prime()?)?;
    let (theta, star) = (inst.char("theta")?, inst.char("theta_star")?);
    let kd = product(amb, &k, &d, "KD")?;
    let ks = product(amb, &k, &s, "KS")?;
    let lhs = invariant_over(amb, &kd, &ks, &k, theta, None)?.len();
    let rhs = invariant_over(amb, &d, &s, &c, star, None)?.len();
    let red = reduction_check(amb, &kd, &ks, &d, &k, theta, &c, star, None)?;
    let mut out = CheckOutcome::equality(
        lhs,
        rhs,
        json!({ "reduction": red, "glauberman_audit": audit(amb, &action, &b)? }),
    );
    out.passed &= red.consistent;
    Ok(out)
}

pub fn check_thm_2_4(inst: &Instance) -> Result<CheckOutcome> {
    let amb = &inst.amb;
    let [a, g, k, pp, z, b, h, c] = subs(inst, ["A", "G", "K", "P", "Z", "B", "H", "C"])?;
    let p = inst.prime()?;
    let action = CoprimeAction::new(amb, &a, &k, &pp, p)?;
    let kz = product(amb, &k, &z, "KZ")?;
    let cz = product(amb, &c, &z, "CZ")?;
    let lambda = amb.character(&z, inst.char("lambda")?)?;
    let tl = product_character(
        amb,
        &k,
        &amb.character(&k, inst.char("theta")?)?,
        &z,
        &lambda,
        &kz,
    )?;
    let sl = product_character(
        amb,
        &c,
        &amb.character(&c, inst.char("theta_star")?)?,
        &z,
        &lambda,
        &cz,
    )?;
    let (tl, sl) = (row_of(amb, &kz, &tl)?, row_of(amb, &cz, &sl)?);
    let lhs = invariant_over(amb, &a, &g, &kz, tl, Some(p))?.len();
    let rhs = invariant_over(amb, &b, &h, &cz, sl, Some(p))?.len();
    let red = reduction_check(amb, &a, &g, &b, &kz, tl, &cz, sl, Some((p, &pp)))?;
    let mut out = CheckOutcome::equality(
        lhs,
        rhs,
        json!({
            "orders": { "Z": z.order(), "C": c.order(), "KZ": kz.order(), "CZ": cz.order() },
            "lambda_trivial": lambda.kernel().len() == z.order(),
            "reduction": red,
            "glauberman_audit": audit(amb, &action, &b)?,
        }),
    );
    out.passed &= red.consistent;
    Ok(out)
}

/// Point-stabilizer conjugacy classes of `x` acting on `points` (rows of
/// `h`'s table), one per orbit, each class named by its least conjugate.
pub fn stabilizer_classes(
    amb: &Ambient,
    x: &Subgroup,
    h: &Subgroup,
    points: &[usize],
) -> Result<Vec<Vec<u32>>> {
    let grp = amb.group();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let gens = grp.generators(x);
    for &start in points {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        seen.insert(start);
        let mut i = 0;
        while i < orbit.len() {
            for &s in &gens {
                let j = amb.row_permutation(h, s)?[orbit[i]];
                if !points.contains(&j) {
                    return Err(HarnessError::Inconsistent(
                        "acting group moves a point off the set".into(),
                    ));
                }
                if seen.insert(j) {
                    orbit.push(j);
                }
            }
            i += 1;
        }
        let stab = amb.stabilizer(h, start, x)?;
        let key = x
            .elements()
            .iter()
            .map(|&y| grp.conjugate_subgroup(&stab, y).key())
            .min()
            .unwrap();
        out.push(key);
    }
    out.sort();
    Ok(out)
}

pub fn check_thm_3_1(inst: &Instance) -> Result<CheckOutcome> {
    let amb = &inst.amb;
    let [a, g, n, pp, b] = subs(inst, ["A", "G", "N", "P", "B"])?;
    let p = inst.prime()?;
    let mu = inst.char("mu")?;
    let grp = amb.group();
    let h = grp.normalizer_in(&g, &pp).map_err(charlab::Error::from)?;
    let hn = product(amb, &h, &n, "N_G(P)N")?;
    let lhs = invariant_over(amb, &a, &g, &n, mu, Some(p))?.len();
    let rhs = invariant_over(amb, &b, &hn, &n, mu, Some(p))?.len();

    let x = amb.stabilizer(&n, mu, &b)?;
    let left_set = irr_over_index(amb, &a, &g, &n, mu)?.p_prime(p);
    let tables = amb.table(&hn)?;
    let right_set: Vec<usize> = amb
        .rows_over(&hn, &n, mu)?
        .into_iter()
        .filter(|&i| !(tables.row(i).degree().unwrap_or(0) as u64).is_multiple_of(p))
        .collect();
    let left = stabilizer_classes(amb, &x, &g, &left_set)?;
    let right = stabilizer_classes(amb, &x, &hn, &right_set)?;
    let orbits_match = left == right;

    let bn = product(amb, &b, &n, "BN")?;
    let red = reduction_check(amb, &a, &g, &bn, &n, mu, &n, mu, Some((p, &pp)))?;
    let mut out = CheckOutcome::equality(
        lhs,
        rhs,
        json!({
            "acting_order": x.order(),
            "orbits": [left.len(), right.len()],
            "stabilizer_orders": [
                left.iter().map(Vec::len).collect::<Vec<_>>(),
                right.iter().map(Vec::len).collect::<Vec<_>>(),
            ],
            "orbit_structures_match": orbits_match,
            "reduction": red,
        }),
    );
    out.passed &= orbits_match && red.consistent;
    Ok(out)
}
