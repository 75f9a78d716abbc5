//! Character tables and class-function algebra.
//!
//! Tables are computed with the Dixon-Schneider method: simultaneous
//! eigenvectors of the class matrices are found over a prime field GF(ℓ)
//! with ℓ ≡ 1 (mod exponent), then lifted to exact cyclotomic values through
//! the eigenvalue-multiplicity formula on power maps.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::cyclo::{CycloError, Cyclotomic};
use crate::group::{is_prime, Embedded, FiniteGroup};
use crate::par;

/// Default seed for the eigenspace-splitting generator.
pub const DEFAULT_SEED: u64 = 0x00c1_a55e_5eed;

const MAX_ROUNDS: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("expected {expected} class values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("class function is not an irreducible character")]
    NotIrreducible,
    #[error("expected an integer, found {0}")]
    NonIntegral(String),
    #[error("eigenspaces did not split after {0} rounds")]
    SplitFailure(usize),
    #[error("table lift failed: {0}")]
    Lift(String),
    #[error("conductor {conductor} is not a multiple of the exponent {exponent}")]
    Conductor { conductor: u32, exponent: u32 },
    #[error("element {0} does not normalize the group")]
    NotNormalizing(usize),
    #[error("subgroup does not belong to the group of the class function")]
    NotSubgroup,
}

pub type Result<T> = std::result::Result<T, CharError>;

/// A function on the conjugacy classes of a group, one value per class in
/// canonical class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.uid() == other.group.uid() && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(CharError::WrongLength {
                expected: group.num_classes(),
                got: values.len(),
            });
        }
        Ok(ClassFunction { group, values })
    }

    /// The constant function `c` at conductor `e`.
    pub fn constant(group: Arc<FiniteGroup>, c: i64, e: u32) -> Result<Self> {
        let v = Cyclotomic::rational_at(BigRational::from_integer(c.into()), e)?;
        let values = vec![v; group.num_classes()];
        Ok(ClassFunction { group, values })
    }

    pub fn trivial(group: Arc<FiniteGroup>, e: u32) -> Result<Self> {
        Self::constant(group, 1, e)
    }

    /// The regular character, |G| at the identity and 0 elsewhere.
    pub fn regular(group: Arc<FiniteGroup>, e: u32) -> Result<Self> {
        let mut f = Self::constant(group, 0, e)?;
        f.values[0] =
            Cyclotomic::rational_at(BigRational::from_integer(f.group.order().into()), e)?;
        Ok(f)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn value_at(&self, element: usize) -> &Cyclotomic {
        &self.values[self.group.class_of(element)]
    }

    /// Value at the identity as an integer, when it is one.
    pub fn degree(&self) -> Option<i64> {
        self.values[0].as_integer().and_then(|d| d.to_i64())
    }

    pub fn conductor(&self) -> u32 {
        self.values[0].conductor()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    /// The kernel {g : χ(g) = χ(1)} as a sorted element list.
    pub fn kernel(&self) -> Vec<usize> {
        let d = &self.values[0];
        (0..self.group.order())
            .filter(|&x| self.value_at(x) == d)
            .collect()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().len() == 1
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group.uid() == other.group.uid() {
            Ok(())
        } else {
            Err(CharError::GroupMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.try_add(b))
            .collect::<std::result::Result<_, _>>()?;
        Ok(ClassFunction {
            group: self.group.clone(),
            values,
        })
    }

    pub fn scale_int(&self, k: i64) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.scale_int(k)).collect(),
        }
    }

    /// Renders the values, one string per class.
    pub fn rendered(&self) -> Vec<String> {
        self.values.iter().map(ToString::to_string).collect()
    }
}

/// Pointwise product.
pub fn product(a: &ClassFunction, b: &ClassFunction) -> Result<ClassFunction> {
    a.same_group(b)?;
    let values = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| x.try_mul(y))
        .collect::<std::result::Result<_, _>>()?;
    Ok(ClassFunction {
        group: a.group.clone(),
        values,
    })
}

/// (1/|G|) Σ_g α(g) conj(β(g)), summed classwise.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
    a.same_group(b)?;
    let g = &a.group;
    let mut acc = Cyclotomic::zero_at(a.conductor())?;
    for c in 0..g.num_classes() {
        if a.values[c].is_zero() || b.values[c].is_zero() {
            continue;
        }
        let term = a.values[c]
            .try_mul(&b.values[c].conj())?
            .scale_int(g.class_size(c) as i64);
        acc = acc.try_add(&term)?;
    }
    Ok(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(g.order()))))
}

/// Inner product that must be a rational integer.
pub fn multiplicity(a: &ClassFunction, b: &ClassFunction) -> Result<i64> {
    let ip = inner_product(a, b)?;
    ip.as_integer()
        .and_then(|v| v.to_i64())
        .ok_or_else(|| CharError::NonIntegral(ip.to_string()))
}

/// Restriction along an injective homomorphism given as `map[own index of
/// sub] = index in χ's group`.
pub fn restrict_along(
    chi: &ClassFunction,
    sub: &Arc<FiniteGroup>,
    map: &[usize],
) -> Result<ClassFunction> {
    if map.len() != sub.order() {
        return Err(CharError::NotSubgroup);
    }
    let values = (0..sub.num_classes())
        .map(|c| chi.value_at(map[sub.class_rep(c)]).clone())
        .collect();
    Ok(ClassFunction {
        group: sub.clone(),
        values,
    })
}

/// Restriction to an embedded subgroup of χ's group.
pub fn restrict(chi: &ClassFunction, h: &Embedded) -> Result<ClassFunction> {
    if h.subgroup.parent_uid() != chi.group.uid() {
        return Err(CharError::NotSubgroup);
    }
    let map: Vec<usize> = (0..h.order()).map(|i| h.to_parent(i)).collect();
    restrict_along(chi, &h.group, &map)
}

/// Induction along `map` from θ's group into `sup`:
/// Ind θ(g) = |C_G(g)|/|H| · Σ_{y ∈ g^G ∩ H} θ(y).
pub fn induce_along(
    theta: &ClassFunction,
    sup: &Arc<FiniteGroup>,
    map: &[usize],
) -> Result<ClassFunction> {
    let sub = &theta.group;
    if map.len() != sub.order() {
        return Err(CharError::NotSubgroup);
    }
    let e = theta.conductor();
    let mut sums = vec![Cyclotomic::zero_at(e)?; sup.num_classes()];
    for (i, &x) in map.iter().enumerate() {
        let c = sup.class_of(x);
        sums[c] = sums[c].try_add(theta.value_at(i))?;
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(c, s)| {
            s.scale(&BigRational::new(
                BigInt::from(sup.centralizer_order(c)),
                BigInt::from(sub.order()),
            ))
        })
        .collect();
    Ok(ClassFunction {
        group: sup.clone(),
        values,
    })
}

pub fn induce(
    theta: &ClassFunction,
    h: &Embedded,
    parent: &Arc<FiniteGroup>,
) -> Result<ClassFunction> {
    if h.group.uid() != theta.group.uid() || h.subgroup.parent_uid() != parent.uid() {
        return Err(CharError::NotSubgroup);
    }
    let map: Vec<usize> = (0..h.order()).map(|i| h.to_parent(i)).collect();
    induce_along(theta, parent, &map)
}

/// χ^a(g) = χ(a g a⁻¹), where `conj(g)` computes a g a⁻¹ in own indices of
/// χ's group (or `None` if it leaves the group).
pub fn conjugate_along<F>(chi: &ClassFunction, conj: F) -> Option<ClassFunction>
where
    F: Fn(usize) -> Option<usize>,
{
    let g = &chi.group;
    let mut values = Vec::with_capacity(g.num_classes());
    for c in 0..g.num_classes() {
        let y = conj(g.class_rep(c))?;
        values.push(chi.value_at(y).clone());
    }
    Some(ClassFunction {
        group: g.clone(),
        values,
    })
}

/// χ^a for a character of the embedded (normal) subgroup `g` and an element
/// `a` of its parent.
pub fn conjugate_by(
    chi: &ClassFunction,
    g: &Embedded,
    ambient: &FiniteGroup,
    a: usize,
) -> Result<ClassFunction> {
    if g.group.uid() != chi.group.uid() || g.subgroup.parent_uid() != ambient.uid() {
        return Err(CharError::NotSubgroup);
    }
    if a >= ambient.order() || !ambient.normalizes(a, &g.subgroup) {
        return Err(CharError::NotNormalizing(a));
    }
    conjugate_along(chi, |x| g.from_parent(ambient.conj(a, g.to_parent(x))))
        .ok_or(CharError::NotNormalizing(a))
}

/// Exact eigenvalue multiplicities of a representation affording χ at an
/// element of order `o` in class `c`: entry `k` is the multiplicity of ζ_o^k.
pub fn eigenvalue_multiplicities(chi: &ClassFunction, c: usize) -> Result<Vec<i64>> {
    let g = &chi.group;
    let rep = g.class_rep(c);
    let o = g.element_order(rep) as i64;
    let e = chi.conductor();
    let degree = chi.degree().ok_or(CharError::NotIrreducible)?;
    let powers: Vec<&Cyclotomic> = (0..o).map(|t| chi.value_at(g.pow(rep, t))).collect();
    let step = e as i64 / o;
    if e as i64 % o != 0 {
        return Err(CharError::Conductor {
            conductor: e,
            exponent: g.exponent(),
        });
    }
    let mut out = Vec::with_capacity(o as usize);
    let mut total = 0;
    for k in 0..o {
        let mut acc = Cyclotomic::zero_at(e)?;
        for (t, v) in powers.iter().enumerate() {
            let root = Cyclotomic::root_of_unity(e, -(step * k * t as i64))?;
            acc = acc.try_add(&v.try_mul(&root)?)?;
        }
        let m = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(o)));
        let m = m
            .as_integer()
            .and_then(|v| v.to_i64())
            .filter(|&v| (0..=degree).contains(&v))
            .ok_or_else(|| CharError::NonIntegral(format!("eigenvalue multiplicity {m}")))?;
        total += m;
        out.push(m);
    }
    if total != degree {
        return Err(CharError::NonIntegral(format!(
            "multiplicities sum to {total}, not {degree}"
        )));
    }
    Ok(out)
}

/// Order of det χ as a linear character.
pub fn determinantal_order(chi: &ClassFunction) -> Result<u64> {
    if multiplicity(chi, chi)? != 1 || chi.degree().is_none_or(|d| d <= 0) {
        return Err(CharError::NotIrreducible);
    }
    let g = &chi.group;
    let mut order = 1u64;
    for c in 0..g.num_classes() {
        let o = g.element_order(g.class_rep(c)) as u64;
        let m = eigenvalue_multiplicities(chi, c)?;
        let s: u64 = m
            .iter()
            .enumerate()
            .map(|(k, &mk)| k as u64 * mk as u64)
            .sum::<u64>()
            % o;
        order = order.lcm(&(o / o.gcd(&s)));
    }
    Ok(order)
}

/// The irreducible characters of a group in canonical order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    conductor: u32,
    prime: u64,
    rows: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// The prime ℓ used for the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.degree().unwrap()).collect()
    }

    /// Index of the row equal to `chi`, if any.
    pub fn find(&self, chi: &ClassFunction) -> Option<usize> {
        self.rows.iter().position(|r| r == chi)
    }

    /// Multiplicities of each irreducible in `psi`.
    pub fn decompose(&self, psi: &ClassFunction) -> Result<Vec<i64>> {
        self.rows.iter().map(|r| multiplicity(psi, r)).collect()
    }

    /// Checks both orthogonality relations and Σ χ(1)² = |G| exactly.
    pub fn check_orthogonality(&self) -> std::result::Result<(), String> {
        let g = &self.group;
        let r = g.num_classes();
        if self.rows.len() != r {
            return Err(format!("{} rows for {} classes", self.rows.len(), r));
        }
        let sq: i64 = self.degrees().iter().map(|d| d * d).sum();
        if sq != g.order() as i64 {
            return Err(format!("sum of squared degrees {sq} != {}", g.order()));
        }
        for i in 0..r {
            for j in i..r {
                let ip = inner_product(&self.rows[i], &self.rows[j]).map_err(|e| e.to_string())?;
                let want = if i == j { 1 } else { 0 };
                if ip != Cyclotomic::from_integer(want) {
                    return Err(format!("[χ{i}, χ{j}] = {ip}"));
                }
            }
        }
        for a in 0..r {
            for b in a..r {
                let mut acc = Cyclotomic::zero_at(self.conductor).map_err(|e| e.to_string())?;
                for row in &self.rows {
                    let t = row.values[a]
                        .try_mul(&row.values[b].conj())
                        .map_err(|e| e.to_string())?;
                    acc = acc.try_add(&t).map_err(|e| e.to_string())?;
                }
                let want = if a == b {
                    g.centralizer_order(a) as i64
                } else {
                    0
                };
                if acc != Cyclotomic::from_integer(want) {
                    return Err(format!("column sum ({a}, {b}) = {acc}"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g = &self.group;
        let classes: Vec<_> = (0..g.num_classes())
            .map(|c| {
                json!({
                    "representative": g.class_rep(c),
                    "size": g.class_size(c),
                    "element_order": g.element_order(g.class_rep(c)),
                    "centralizer_order": g.centralizer_order(c),
                })
            })
            .collect();
        let rows: Vec<_> = self.rows.iter().map(|r| json!(r.rendered())).collect();
        json!({
            "group": g.name(),
            "order": g.order(),
            "conductor": self.conductor,
            "classes": classes,
            "rows": rows,
        })
    }

    pub fn to_markdown(&self) -> String {
        let g = &self.group;
        let r = g.num_classes();
        let mut out = format!("{} (order {}, {} classes)\n\n", g.name(), g.order(), r);
        let head: Vec<String> = (0..r)
            .map(|c| format!("{}{}", g.element_order(g.class_rep(c)), class_letter(c)))
            .collect();
        out.push_str(&format!("| | {} |\n", head.join(" | ")));
        out.push_str(&format!("|---|{}\n", "---|".repeat(r)));
        let sizes: Vec<String> = (0..r).map(|c| g.class_size(c).to_string()).collect();
        out.push_str(&format!("| size | {} |\n", sizes.join(" | ")));
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&format!("| χ{} | {} |\n", i, row.rendered().join(" | ")));
        }
        out
    }
}

fn class_letter(c: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if c < 26 {
        (letters[c] as char).to_string()
    } else {
        format!("_{c}")
    }
}

/// Character table with conductor equal to the group exponent.
pub fn character_table(g: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    character_table_at(g, g.exponent(), DEFAULT_SEED)
}

/// Character table with all values stored at conductor `conductor`, which
/// must be a multiple of the exponent.
pub fn character_table_at(
    g: &Arc<FiniteGroup>,
    conductor: u32,
    seed: u64,
) -> Result<CharacterTable> {
    if conductor == 0 || !conductor.is_multiple_of(g.exponent()) {
        return Err(CharError::Conductor {
            conductor,
            exponent: g.exponent(),
        });
    }
    let modular = dixon::ModularTable::compute(g, seed)?;
    let mut rows = Vec::with_capacity(modular.rows.len());
    for mod_row in &modular.rows {
        rows.push(modular.lift(g, mod_row, conductor)?);
    }
    let keys: Vec<(i64, Vec<(u32, Vec<BigRational>)>)> = rows
        .iter()
        .map(|r: &ClassFunction| {
            (
                r.degree().unwrap(),
                r.values.iter().map(Cyclotomic::order_key).collect(),
            )
        })
        .collect();
    let trivial: Vec<bool> = rows
        .iter()
        .map(|r| r.values.iter().all(|v| v == &Cyclotomic::one()))
        .collect();
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    idx.sort_by(|&a, &b| row_order(trivial[a], &keys[a], trivial[b], &keys[b]));
    let rows = idx.into_iter().map(|i| rows[i].clone()).collect();
    Ok(CharacterTable {
        group: g.clone(),
        conductor,
        prime: modular.prime,
        rows,
    })
}

/// Canonical row order: the trivial character first, then by degree, then
/// by value keys in descending lexicographic order.
fn row_order(
    ta: bool,
    a: &(i64, Vec<(u32, Vec<BigRational>)>),
    tb: bool,
    b: &(i64, Vec<(u32, Vec<BigRational>)>),
) -> Ordering {
    tb.cmp(&ta).then(a.0.cmp(&b.0)).then_with(|| b.1.cmp(&a.1))
}

mod dixon {
    use super::*;

    pub(super) struct ModularTable {
        pub prime: u64,
        /// Primitive e-th root of unity mod ℓ, e = exponent.
        pub root: u64,
        pub rows: Vec<Vec<u64>>,
    }

    pub(super) fn pow_mod(mut a: u64, mut b: u64, m: u64) -> u64 {
        let mut r = 1 % m;
        a %= m;
        while b > 0 {
            if b & 1 == 1 {
                r = mulm(r, a, m);
            }
            a = mulm(a, a, m);
            b >>= 1;
        }
        r
    }

    #[inline]
    fn mulm(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }

    fn inv_mod(a: u64, m: u64) -> u64 {
        pow_mod(a, m - 2, m)
    }

    /// Smallest prime ℓ ≡ 1 (mod e) with ℓ > 2√n.
    pub(super) fn choose_prime(n: u64, e: u64) -> u64 {
        let mut l = e + 1;
        loop {
            if l * l > 4 * n && is_prime(l) {
                return l;
            }
            l += e;
        }
    }

    fn primitive_root(l: u64) -> u64 {
        let factors = crate::group::prime_divisors(l - 1);
        (2..l)
            .find(|&g| factors.iter().all(|&q| pow_mod(g, (l - 1) / q, l) != 1))
            .unwrap_or(1)
    }

    /// Row-reduces in place; returns pivot columns.
    fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, i);
            let inv = inv_mod(rows[r][c], p);
            for v in rows[r].iter_mut() {
                *v = mulm(*v, inv, p);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + p - mulm(f, y, p)) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Null space basis of a square matrix.
    fn kernel(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
        let n = m.first().map_or(0, Vec::len);
        let pivots = rref(&mut m, p);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; n];
                v[f] = 1;
                for (row, &pc) in m.iter().zip(&pivots) {
                    v[pc] = (p - row[f]) % p;
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial, lowest degree first, via Hessenberg form.
    pub(super) fn charpoly(mut a: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
        let n = a.len();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| a[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                a.swap(i, m);
                for row in a.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = inv_mod(a[m][m - 1], p);
            for i in m + 1..n {
                let u = mulm(a[i][m - 1], inv, p);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = mulm(u, a[m][j], p);
                    a[i][j] = (a[i][j] + p - t) % p;
                }
                for row in a.iter_mut() {
                    let t = mulm(u, row[i], p);
                    row[m] = (row[m] + t) % p;
                }
            }
        }
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            // (x - h[m-1][m-1]) p_{m-1}
            let prev = &polys[m - 1];
            let mut next = vec![0u64; m + 1];
            for (k, &c) in prev.iter().enumerate() {
                next[k + 1] = (next[k + 1] + c) % p;
                next[k] = (next[k] + p - mulm(a[m - 1][m - 1], c, p)) % p;
            }
            let mut t = 1u64;
            for i in 1..m {
                t = mulm(t, a[m - i][m - i - 1], p);
                let coef = mulm(a[m - 1 - i][m - 1], t, p);
                if coef == 0 {
                    continue;
                }
                for (k, &c) in polys[m - 1 - i].iter().enumerate() {
                    next[k] = (next[k] + p - mulm(coef, c, p)) % p;
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
        poly.iter()
            .rev()
            .fold(0, |acc, &c| (mulm(acc, x, p) + c) % p)
    }

    /// M = Σ_j c_j M_j restricted to the pivot rows needed by `split`:
    /// M[l][k] = Σ_{x ∈ G, class(x⁻¹ g_k) = l} c_{class(x)}.
    fn combination_matrix(g: &FiniteGroup, c: &[u64], p: u64) -> Vec<Vec<u64>> {
        let r = g.num_classes();
        let n = g.order();
        let cols: Vec<Vec<u64>> = par::map_range(r, |k| {
            let rep = g.class_rep(k);
            let mut col = vec![0u64; r];
            for x in 0..n {
                let l = g.class_of(g.mul(g.inv(x), rep));
                col[l] = (col[l] + c[g.class_of(x)]) % p;
            }
            col
        });
        (0..r)
            .map(|l| (0..r).map(|k| cols[k][l]).collect())
            .collect()
    }

    /// Splits an invariant subspace (RREF rows) into eigenspaces of `m`.
    fn split(space: Vec<Vec<u64>>, m: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
        let k = space.len();
        let pivots: Vec<usize> = space
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).unwrap())
            .collect();
        // Column j of R holds the coordinates of M w_j, read off at the pivots.
        let mut rmat = vec![vec![0u64; k]; k];
        for (j, w) in space.iter().enumerate() {
            for (i, &pi) in pivots.iter().enumerate() {
                let mut s = 0u64;
                for (&mv, &wv) in m[pi].iter().zip(w) {
                    if wv != 0 {
                        s = (s + mulm(mv, wv, p)) % p;
                    }
                }
                rmat[i][j] = s;
            }
        }
        let poly = charpoly(rmat.clone(), p);
        let roots: Vec<u64> = (0..p).filter(|&x| eval(&poly, x, p) == 0).collect();
        if roots.len() <= 1 {
            return Ok(vec![space]);
        }
        let mut parts = Vec::new();
        let mut total = 0;
        for lam in roots {
            let mut shifted = rmat.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = (row[i] + p - lam) % p;
            }
            let coords = kernel(shifted, p);
            total += coords.len();
            let mut vecs: Vec<Vec<u64>> = coords
                .iter()
                .map(|u| {
                    let mut v = vec![0u64; space[0].len()];
                    for (uj, w) in u.iter().zip(&space) {
                        if *uj != 0 {
                            for (x, &y) in v.iter_mut().zip(w) {
                                *x = (*x + mulm(*uj, y, p)) % p;
                            }
                        }
                    }
                    v
                })
                .collect();
            rref(&mut vecs, p);
            parts.push(vecs);
        }
        if total != k {
            return Err(CharError::Lift(format!(
                "eigenspaces of dimension {total} in a space of dimension {k}"
            )));
        }
        Ok(parts)
    }

    impl ModularTable {
        pub fn compute(g: &FiniteGroup, seed: u64) -> Result<Self> {
            let n = g.order() as u64;
            let e = g.exponent() as u64;
            let p = choose_prime(n, e);
            let root = pow_mod(primitive_root(p), (p - 1) / e, p);
            let r = g.num_classes();
            let mut pending: Vec<Vec<Vec<u64>>> = Vec::new();
            let mut done: Vec<Vec<u64>> = Vec::new();
            let full: Vec<Vec<u64>> = (0..r)
                .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
                .collect();
            if r == 1 {
                done.push(full[0].clone());
            } else {
                pending.push(full);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ g.uid());
            let mut rounds = 0;
            while !pending.is_empty() {
                rounds += 1;
                if rounds > MAX_ROUNDS {
                    return Err(CharError::SplitFailure(MAX_ROUNDS));
                }
                let c: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
                let m = combination_matrix(g, &c, p);
                let mut next = Vec::new();
                for space in pending {
                    for part in split(space, &m, p)? {
                        if part.len() == 1 {
                            done.push(part.into_iter().next().unwrap());
                        } else {
                            next.push(part);
                        }
                    }
                }
                pending = next;
            }
            if done.len() != r {
                return Err(CharError::Lift(format!(
                    "{} eigenvectors for {r} classes",
                    done.len()
                )));
            }
            let sizes: Vec<u64> = (0..r).map(|c| g.class_size(c) as u64).collect();
            let inv_class: Vec<usize> = (0..r).map(|c| g.inverse_class(c)).collect();
            let isqrt = (n as f64).sqrt() as u64 + 1;
            let mut rows = Vec::with_capacity(r);
            for mut v in done {
                if v[0] == 0 {
                    return Err(CharError::Lift(
                        "eigenvector vanishes at the identity".into(),
                    ));
                }
                let inv0 = inv_mod(v[0], p);
                v.iter_mut().for_each(|x| *x = mulm(*x, inv0, p));
                let mut s = 0u64;
                for j in 0..r {
                    s = (s + mulm(mulm(v[j], v[inv_class[j]], p), inv_mod(sizes[j] % p, p), p)) % p;
                }
                if s == 0 {
                    return Err(CharError::Lift("degenerate degree sum".into()));
                }
                let d2 = mulm(n % p, inv_mod(s, p), p);
                let d = (1..=isqrt)
                    .find(|&d| d * d <= n && (d * d) % p == d2)
                    .ok_or_else(|| CharError::Lift("no integral degree".into()))?;
                let row: Vec<u64> = (0..r)
                    .map(|j| mulm(mulm(v[j], d, p), inv_mod(sizes[j] % p, p), p))
                    .collect();
                rows.push(row);
            }
            Ok(ModularTable {
                prime: p,
                root,
                rows,
            })
        }

        /// Exact lift of a modular row at conductor `target`.
        pub fn lift(
            &self,
            g: &Arc<FiniteGroup>,
            row: &[u64],
            target: u32,
        ) -> Result<ClassFunction> {
            let p = self.prime;
            let e = g.exponent() as u64;
            let degree = row[0];
            let mut values = Vec::with_capacity(row.len());
            for c in 0..g.num_classes() {
                let rep = g.class_rep(c);
                let o = g.element_order(rep) as u64;
                let zo = pow_mod(self.root, e / o, p);
                let zo_inv = inv_mod(zo, p);
                let inv_o = inv_mod(o % p, p);
                let powers: Vec<u64> = (0..o)
                    .map(|t| row[g.class_of(g.pow(rep, t as i64))])
                    .collect();
                let mut counts = vec![0u64; target as usize];
                let step = target as u64 / o;
                let mut total = 0;
                for k in 0..o {
                    // Σ_t χ(g^t) ζ_o^{-kt}
                    let w = pow_mod(zo_inv, k, p);
                    let mut acc = 0u64;
                    let mut wt = 1u64;
                    for &val in &powers {
                        acc = (acc + mulm(val, wt, p)) % p;
                        wt = mulm(wt, w, p);
                    }
                    let m = mulm(acc, inv_o, p);
                    if m > degree {
                        return Err(CharError::Lift(format!(
                            "multiplicity {m} exceeds degree {degree} at class {c}"
                        )));
                    }
                    total += m;
                    counts[(step * k) as usize] += m;
                }
                if total != degree {
                    return Err(CharError::Lift(format!(
                        "multiplicities at class {c} sum to {total}"
                    )));
                }
                values.push(Cyclotomic::from_exponent_counts(target, &counts)?);
            }
            ClassFunction::new(g.clone(), values)
        }
    }

}
