//! Finite groups as explicit multiplication tables.
//!
//! Element 0 is always the identity. Groups are immutable once built and
//! carry their conjugacy classes in canonical order: by element order of the
//! representative, then class size, then smallest element index.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default cap on group orders; see [`order_cap`].
pub const DEFAULT_ORDER_CAP: usize = 2000;

/// Current order cap: `CHARLAB_ORDER_CAP` when set, else [`DEFAULT_ORDER_CAP`].
pub fn order_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("CHARLAB_ORDER_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_ORDER_CAP)
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("multiplication table is malformed: {0}")]
    BadTable(String),
    #[error("operation is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("subgroup does not belong to this group")]
    ParentMismatch,
    #[error("the given set is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("action of element {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("action is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

pub type Result<T> = std::result::Result<T, GroupError>;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub fn is_power_of(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    exponent: u32,
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
    uid: u64,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("classes", &self.classes.len())
            .finish()
    }
}

/// A subgroup, as a sorted list of parent element indices plus a membership map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: u64,
    elements: Vec<usize>,
    membership: Vec<bool>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.membership.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn parent_uid(&self) -> u64 {
        self.parent
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Elements as `u32`, handy as hash-map keys.
    pub fn key(&self) -> Vec<u32> {
        self.elements.iter().map(|&x| x as u32).collect()
    }
}

/// A quotient group together with its projection and a section.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub quotient: FiniteGroup,
    /// Parent element to quotient element.
    pub projection: Vec<usize>,
    /// Quotient element to the least parent element of its coset.
    pub section: Vec<usize>,
}

impl QuotientGroup {
    /// Parent elements lying over a quotient element, ascending.
    pub fn coset(&self, q: usize) -> Vec<usize> {
        self.projection
            .iter()
            .enumerate()
            .filter(|&(_, &img)| img == q)
            .map(|(x, _)| x)
            .collect()
    }
}

fn hash_table(mul: &[u32]) -> u64 {
    let mut h = DefaultHasher::new();
    mul.hash(&mut h);
    h.finish()
}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table, validating the group
    /// axioms (exhaustively up to order 256, by 10^5 sampled triples beyond).
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self> {
        check_cap(order)?;
        if order == 0 || table.len() != order * order {
            return Err(GroupError::BadTable(
                "table size does not match order".into(),
            ));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(GroupError::IndexOutOfRange { index: bad, order });
        }
        let mul: Vec<u32> = table.into_iter().map(|x| x as u32).collect();
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(GroupError::BadTable(
                    "element 0 is not a two-sided identity".into(),
                ));
            }
        }
        let g = Self::build(name.into(), order, mul, None)?;
        g.check_associative(100_000, 0)?;
        Ok(g)
    }

    /// Builds a group from a table already known to satisfy the axioms.
    fn trusted(name: String, order: usize, mul: Vec<u32>, uid: Option<u64>) -> Self {
        Self::build(name, order, mul, uid).expect("trusted table is a group")
    }

    fn build(name: String, order: usize, mul: Vec<u32>, uid: Option<u64>) -> Result<Self> {
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            match row.iter().position(|&y| y == 0) {
                Some(y) => {
                    if mul[y * order + x] != 0 {
                        return Err(GroupError::BadTable(format!(
                            "element {x} has no two-sided inverse"
                        )));
                    }
                    inv[x] = y as u32;
                }
                None => return Err(GroupError::BadTable(format!("element {x} has no inverse"))),
            }
        }
        let mut elem_order = vec![0u32; order];
        for x in 0..order {
            let mut y = x;
            let mut k = 1u32;
            while y != 0 {
                y = mul[y * order + x] as usize;
                k += 1;
                if k as usize > order {
                    return Err(GroupError::BadTable(format!(
                        "element {x} has no finite order"
                    )));
                }
            }
            elem_order[x] = k;
        }
        let exponent = elem_order.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64))) as u32;
        let uid = uid.unwrap_or_else(|| hash_table(&mul));
        let mut g = FiniteGroup {
            name,
            order,
            mul,
            inv,
            elem_order,
            exponent,
            classes: Vec::new(),
            class_of: Vec::new(),
            uid,
        };
        g.compute_classes();
        Ok(g)
    }

    fn compute_classes(&mut self) {
        let n = self.order;
        let mut seen = vec![false; n];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class = Vec::new();
            for g in 0..n {
                let y = self.conj(g, x);
                if !seen[y] {
                    seen[y] = true;
                    class.push(y as u32);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes.sort_by_key(|c| (self.elem_order[c[0] as usize], c.len(), c[0]));
        let mut class_of = vec![0u32; n];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = i as u32;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    /// Checks associativity: exhaustively for order ≤ 256, otherwise on
    /// `samples` random triples drawn from a generator seeded with `seed`.
    pub fn check_associative(&self, samples: usize, seed: u64) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(GroupError::NotAssociative(a, b, c))
            } else {
                Ok(())
            }
        };
        if n <= 256 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                check(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// g x g⁻¹
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// a b a⁻¹ b⁻¹
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.elem_order[a] as i64;
        let k = k.rem_euclid(o);
        let mut y = 0;
        for _ in 0..k {
            y = self.mul(y, a);
        }
        y
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.elem_order[a]
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0] as usize
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order / self.classes[c].len()
    }

    /// Class containing g^k for g in class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of(self.pow(self.class_rep(c), k))
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(self.inv(self.class_rep(c)))
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.order {
            Err(GroupError::IndexOutOfRange {
                index: x,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    fn check_owned(&self, h: &Subgroup) -> Result<()> {
        if h.parent != self.uid || h.membership.len() != self.order {
            Err(GroupError::ParentMismatch)
        } else {
            Ok(())
        }
    }

    fn subgroup_from_members(&self, membership: Vec<bool>) -> Subgroup {
        let elements = membership
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(x, _)| x)
            .collect();
        Subgroup {
            parent: self.uid,
            elements,
            membership,
        }
    }

    /// Wraps an element set known to be a subgroup.
    pub fn subgroup_unchecked(&self, elements: &[usize]) -> Subgroup {
        let mut membership = vec![false; self.order];
        for &x in elements {
            membership[x] = true;
        }
        self.subgroup_from_members(membership)
    }

    /// Validates that `elements` form a subgroup.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<Subgroup> {
        for &x in elements {
            self.check_index(x)?;
        }
        let s = self.subgroup_unchecked(elements);
        if !s.contains(0) {
            return Err(GroupError::NotSubgroup);
        }
        for &a in &s.elements {
            for &b in &s.elements {
                if !s.contains(self.mul(a, self.inv(b))) {
                    return Err(GroupError::NotSubgroup);
                }
            }
        }
        Ok(s)
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_from_members(vec![true; self.order])
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut m = vec![false; self.order];
        m[0] = true;
        self.subgroup_from_members(m)
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Result<Subgroup> {
        for &g in gens {
            self.check_index(g)?;
        }
        Ok(self.closure(&self.trivial_subgroup(), gens))
    }

    /// Smallest subgroup containing `base` and `extra`.
    pub fn closure(&self, base: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut membership = base.membership.clone();
        let mut list: Vec<usize> = base.elements.clone();
        let mut gens: Vec<usize> = extra.iter().copied().filter(|&g| !membership[g]).collect();
        if gens.is_empty() {
            return base.clone();
        }
        // The closure must be stable under right multiplication by base
        // generators as well as the new ones.
        gens.extend(self.generators(base));
        let mut i = 0;
        for &g in extra {
            if !membership[g] {
                membership[g] = true;
                list.push(g);
            }
        }
        while i < list.len() {
            let x = list[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if !membership[y] {
                    membership[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        self.subgroup_from_members(membership)
    }

    /// Subgroup generated by two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens = self.generators(b);
        self.closure(a, &gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let m = (0..self.order)
            .map(|x| a.contains(x) && b.contains(x))
            .collect();
        self.subgroup_from_members(m)
    }

    /// The product set HK, when it is a subgroup.
    pub fn product_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Option<Subgroup> {
        let mut m = vec![false; self.order];
        for &x in &h.elements {
            for &y in &k.elements {
                m[self.mul(x, y)] = true;
            }
        }
        let s = self.subgroup_from_members(m);
        let expected = h.order() * k.order() / self.intersection(h, k).order();
        if s.order() != expected {
            return None;
        }
        let joined = self.join(h, k);
        (joined.order() == s.order()).then_some(s)
    }

    /// A deterministic generating set: greedily add the least element not
    /// yet generated.
    pub fn generators(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[0] = true;
        let mut list = vec![0usize];
        for &x in &h.elements {
            if span[x] {
                continue;
            }
            gens.push(x);
            // Rebuild the span from scratch for the enlarged generating set.
            span.iter_mut().for_each(|s| *s = false);
            span[0] = true;
            list.clear();
            list.push(0);
            let mut i = 0;
            while i < list.len() {
                let y = list[i];
                for &g in &gens {
                    let z = self.mul(y, g);
                    if !span[z] {
                        span[z] = true;
                        list.push(z);
                    }
                }
                i += 1;
            }
        }
        gens
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens = self.generators(&self.whole());
        gens.iter()
            .all(|&g| h.elements.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// `h` ⊴ `k`, both subgroups of this group.
    pub fn is_normal_in(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.is_subset_of(k) && self.generators(k).iter().all(|&g| self.normalizes(g, h))
    }

    /// True when `x` normalizes `h`.
    pub fn normalizes(&self, x: usize, h: &Subgroup) -> bool {
        h.elements.iter().all(|&y| h.contains(self.conj(x, y)))
    }

    pub fn centralizer_of_element(&self, x: usize) -> Result<Subgroup> {
        self.check_index(x)?;
        let m = (0..self.order)
            .map(|g| self.mul(g, x) == self.mul(x, g))
            .collect();
        Ok(self.subgroup_from_members(m))
    }

    /// Elements of the whole group commuting with every element of `h`.
    pub fn centralizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check_owned(h)?;
        let gens = self.generators(h);
        let m = (0..self.order)
            .map(|g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Ok(self.subgroup_from_members(m))
    }

    /// Centralizer of `h` inside the subgroup `within`.
    pub fn centralizer_in(&self, within: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
        Ok(self.intersection(within, &self.centralizer(h)?))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check_owned(h)?;
        let gens = self.generators(h);
        let m = (0..self.order)
            .map(|g| gens.iter().all(|&x| h.contains(self.conj(g, x))))
            .collect();
        Ok(self.subgroup_from_members(m))
    }

    pub fn normalizer_in(&self, within: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
        Ok(self.intersection(within, &self.normalizer(h)?))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole()).unwrap()
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generators(&self.whole());
        let mut comms = Vec::new();
        for &a in &gens {
            for &b in &gens {
                comms.push(self.commutator(a, b));
            }
        }
        // Normal closure of the generator commutators is the derived subgroup.
        let mut h = self.closure(&self.trivial_subgroup(), &comms);
        loop {
            let conj: Vec<usize> = h
                .elements
                .iter()
                .flat_map(|&x| gens.iter().map(move |&g| (g, x)))
                .map(|(g, x)| self.conj(g, x))
                .filter(|&y| !h.contains(y))
                .collect();
            if conj.is_empty() {
                return h;
            }
            h = self.closure(&h, &conj);
        }
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let els: Vec<usize> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
        self.subgroup_unchecked(&els)
    }

    /// A Sylow p-subgroup, grown greedily from the least p-element by
    /// adjoining the least p-element of the normalizer not yet included.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let target = p_part(self.order as u64, p) as usize;
        let is_p_elt = |x: usize| x != 0 && is_power_of(self.elem_order[x] as u64, p);
        let mut current = self.trivial_subgroup();
        while current.order() < target {
            let norm = self.normalizer(&current)?;
            let next = norm
                .elements
                .iter()
                .copied()
                .find(|&x| is_p_elt(x) && !current.contains(x))
                .expect(
                    "a p-subgroup below Sylow order has a p-element in its normalizer outside it",
                );
            current = self.closure(&current, &[next]);
        }
        Ok(current)
    }

    /// All Sylow p-subgroups, as conjugates of [`sylow_subgroup`](Self::sylow_subgroup).
    pub fn sylow_subgroups(&self, p: u64) -> Result<Vec<Subgroup>> {
        let p0 = self.sylow_subgroup(p)?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.order {
            let c = self.conjugate_subgroup(&p0, g);
            if seen.insert(c.key()) {
                out.push(c);
            }
        }
        Ok(out)
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientGroup> {
        self.check_owned(n)?;
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut section = Vec::new();
        for x in 0..self.order {
            if projection[x] != usize::MAX {
                continue;
            }
            let q = section.len();
            section.push(x);
            for &m in &n.elements {
                projection[self.mul(x, m)] = q;
            }
        }
        let k = section.len();
        let mut mul = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                mul[a * k + b] = projection[self.mul(section[a], section[b])] as u32;
            }
        }
        let uid = {
            let mut h = DefaultHasher::new();
            ("quotient", self.uid, n.key()).hash(&mut h);
            h.finish()
        };
        let name = format!("{}/N{}", self.name, n.order());
        let quotient = FiniteGroup::trusted(name, k, mul, Some(uid));
        Ok(QuotientGroup {
            quotient,
            projection,
            section,
        })
    }

    /// Normal subgroup generated by `above` and the conjugacy class `c`.
    fn normal_closure_with_class(&self, above: &Subgroup, c: usize) -> Subgroup {
        let extra: Vec<usize> = self.classes[c].iter().map(|&x| x as usize).collect();
        self.closure(above, &extra)
    }

    /// The normal subgroups M with `above` < M that are minimal with this property.
    pub fn minimal_normal_subgroups(&self, above: &Subgroup) -> Result<Vec<Subgroup>> {
        self.check_owned(above)?;
        if !self.is_normal(above) {
            return Err(GroupError::NotNormal);
        }
        let mut candidates: Vec<Subgroup> = Vec::new();
        for c in 0..self.classes.len() {
            if above.contains(self.class_rep(c)) {
                continue;
            }
            let m = self.normal_closure_with_class(above, c);
            if !candidates.iter().any(|x| x.elements == m.elements) {
                candidates.push(m);
            }
        }
        let minimal: Vec<Subgroup> = candidates
            .iter()
            .filter(|m| {
                !candidates
                    .iter()
                    .any(|o| o.order() < m.order() && o.is_subset_of(m))
            })
            .cloned()
            .collect();
        let mut minimal = minimal;
        minimal.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        Ok(minimal)
    }

    /// All normal subgroups, sorted by (order, elements).
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let mut found: HashMap<Vec<u32>, Subgroup> = HashMap::new();
        let triv = self.trivial_subgroup();
        found.insert(triv.key(), triv.clone());
        let mut frontier = vec![triv];
        while let Some(l) = frontier.pop() {
            for c in 0..self.classes.len() {
                if l.contains(self.class_rep(c)) {
                    continue;
                }
                let m = self.normal_closure_with_class(&l, c);
                let key = m.key();
                if let std::collections::hash_map::Entry::Vacant(e) = found.entry(key) {
                    e.insert(m.clone());
                    frontier.push(m);
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_values().collect();
        all.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        all
    }

    pub fn socle(&self) -> Subgroup {
        let mins = self
            .minimal_normal_subgroups(&self.trivial_subgroup())
            .unwrap();
        mins.iter()
            .fold(self.trivial_subgroup(), |acc, m| self.join(&acc, m))
    }

    /// True iff every chief factor is a p-group or a p′-group.
    pub fn is_p_solvable(&self, p: u64) -> bool {
        self.is_p_solvable_above(&self.trivial_subgroup(), p)
    }

    /// p-solvability of G/L for a normal subgroup L.
    pub fn is_p_solvable_above(&self, l: &Subgroup, p: u64) -> bool {
        let mut current = l.clone();
        while current.order() < self.order {
            let mins = match self.minimal_normal_subgroups(&current) {
                Ok(m) => m,
                Err(_) => return false,
            };
            let m = &mins[0];
            let factor = (m.order() / current.order()) as u64;
            if !(is_power_of(factor, p) || !factor.is_multiple_of(p)) {
                return false;
            }
            current = m.clone();
        }
        true
    }

    /// The subgroup realized as a group in its own right.
    pub fn embed(&self, h: &Subgroup) -> Result<Embedded> {
        self.check_owned(h)?;
        let k = h.order();
        let mut position = vec![u32::MAX; self.order];
        for (i, &x) in h.elements.iter().enumerate() {
            position[x] = i as u32;
        }
        let mut mul = vec![0u32; k * k];
        for (i, &a) in h.elements.iter().enumerate() {
            for (j, &b) in h.elements.iter().enumerate() {
                let p = position[self.mul(a, b)];
                if p == u32::MAX {
                    return Err(GroupError::NotSubgroup);
                }
                mul[i * k + j] = p;
            }
        }
        let uid = if k == self.order {
            self.uid
        } else {
            let mut hs = DefaultHasher::new();
            ("sub", self.uid, h.key()).hash(&mut hs);
            hs.finish()
        };
        let name = if k == self.order {
            self.name.clone()
        } else {
            format!("{}[{}]", self.name, k)
        };
        let group = FiniteGroup::trusted(name, k, mul, Some(uid));
        Ok(Embedded {
            group: std::sync::Arc::new(group),
            subgroup: h.clone(),
            position,
        })
    }

    // ----- constructions -----

    pub fn cyclic(n: usize) -> Result<Self> {
        check_cap(n)?;
        if n == 0 {
            return Err(GroupError::BadTable("cyclic group of order 0".into()));
        }
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        Ok(Self::trusted(format!("C({n})"), n, mul, None))
    }

    /// Dihedral group of the given order (even, ≥ 4). Element `j*m + i`
    /// is r^i s^j with m = order/2.
    pub fn dihedral(order: usize) -> Result<Self> {
        check_cap(order)?;
        if order < 4 || !order.is_multiple_of(2) {
            return Err(GroupError::BadTable(format!(
                "dihedral order {order} must be even and at least 4"
            )));
        }
        let m = order / 2;
        let idx = |i: usize, j: usize| j * m + i;
        let mut mul = vec![0u32; order * order];
        for j1 in 0..2 {
            for i1 in 0..m {
                for j2 in 0..2 {
                    for i2 in 0..m {
                        let i = if j1 == 0 {
                            (i1 + i2) % m
                        } else {
                            (i1 + m - i2) % m
                        };
                        let j = (j1 + j2) % 2;
                        mul[idx(i1, j1) * order + idx(i2, j2)] = idx(i, j) as u32;
                    }
                }
            }
        }
        Ok(Self::trusted(format!("D({order})"), order, mul, None))
    }

    /// Dicyclic group of order 4m (m ≥ 2): ⟨a, b | a^{2m}, b² = a^m, b a b⁻¹ = a⁻¹⟩.
    /// Order 8 gives the quaternion group.
    pub fn dicyclic(order: usize) -> Result<Self> {
        check_cap(order)?;
        if order < 8 || !order.is_multiple_of(4) {
            return Err(GroupError::BadTable(format!(
                "dicyclic order {order} must be a multiple of 4, at least 8"
            )));
        }
        let n2 = order / 2;
        let m = order / 4;
        let idx = |i: usize, j: usize| j * n2 + i;
        let mut mul = vec![0u32; order * order];
        for j1 in 0..2 {
            for i1 in 0..n2 {
                for j2 in 0..2 {
                    for i2 in 0..n2 {
                        let (i, j) = match (j1, j2) {
                            (0, _) => ((i1 + i2) % n2, j2),
                            (1, 0) => ((i1 + n2 - i2) % n2, 1),
                            _ => ((i1 + n2 - i2 + m) % n2, 0),
                        };
                        mul[idx(i1, j1) * order + idx(i2, j2)] = idx(i, j) as u32;
                    }
                }
            }
        }
        Ok(Self::trusted(format!("Q({order})"), order, mul, None))
    }

    /// Builds a group from an explicit element list closed under `op`, with
    /// the identity first.
    pub fn from_elements<T, F>(name: impl Into<String>, elements: Vec<T>, op: F) -> Result<Self>
    where
        T: Eq + Hash + Clone,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        check_cap(n)?;
        let index: HashMap<T, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();
        if index.len() != n {
            return Err(GroupError::BadTable("duplicate elements".into()));
        }
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c = op(a, b);
                let k = *index
                    .get(&c)
                    .ok_or_else(|| GroupError::BadTable("element set not closed".into()))?;
                mul[i * n + j] = k as u32;
            }
        }
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(GroupError::BadTable(
                    "first element is not the identity".into(),
                ));
            }
        }
        Self::build(name.into(), n, mul, None)
    }

    /// Symmetric group on n points; permutations in lexicographic order.
    pub fn symmetric(n: usize) -> Result<Self> {
        let perms = permutations(n);
        check_cap(perms.len())?;
        Self::from_elements(format!("S({n})"), perms, compose)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let perms: Vec<Vec<u8>> = permutations(n)
            .into_iter()
            .filter(|p| parity(p) == 0)
            .collect();
        check_cap(perms.len())?;
        Self::from_elements(format!("A({n})"), perms, compose)
    }

    /// SL(2, q) for a prime q; matrices (a, b, c, d) with the identity
    /// first, the rest lexicographic.
    pub fn special_linear_2(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(GroupError::NotPrime(q));
        }
        let q = q as u32;
        let size = (q as usize) * (q as usize * q as usize - 1);
        check_cap(size)?;
        let mut mats = vec![[1u32, 0, 0, 1]];
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        let m = [a, b, c, d];
                        if (a * d + q * q - (b * c) % q) % q == 1 && m != [1, 0, 0, 1] {
                            mats.push(m);
                        }
                    }
                }
            }
        }
        Self::from_elements(
            format!("SL(2,{q})"),
            mats,
            move |x: &[u32; 4], y: &[u32; 4]| {
                [
                    (x[0] * y[0] + x[1] * y[2]) % q,
                    (x[0] * y[1] + x[1] * y[3]) % q,
                    (x[2] * y[0] + x[3] * y[2]) % q,
                    (x[2] * y[1] + x[3] * y[3]) % q,
                ]
            },
        )
    }

    /// Frobenius group C_p ⋊ C_q of order pq (q | p-1), the generator of C_q
    /// acting as x ↦ x^r for the least r of multiplicative order q mod p.
    pub fn frobenius(order: usize) -> Result<Self> {
        let bad = || GroupError::BadTable(format!("F({order}) needs order p*q with q | p-1"));
        let primes = prime_divisors(order as u64);
        let p = *primes.last().ok_or_else(bad)? as usize;
        let q = order / p;
        if q < 2 || !(p - 1).is_multiple_of(q) || !order.is_multiple_of(p) {
            return Err(bad());
        }
        let r = (2..p).find(|&r| mult_order(r, p) == q).ok_or_else(bad)?;
        let k = Self::cyclic(p)?;
        let c = Self::cyclic(q)?;
        let act = |x: usize| (x * r) % p;
        let action = power_action(&k, &c, &(0..p).map(act).collect::<Vec<_>>())?;
        Ok(Self::semidirect_product(&k, &c, &action)?.with_name(format!("F({order})")))
    }

    /// G1 × G2 with (a, b) ↦ a·|G2| + b.
    pub fn direct_product(g1: &Self, g2: &Self) -> Result<Self> {
        let n1 = g1.order;
        let n2 = g2.order;
        let n = n1 * n2;
        check_cap(n)?;
        let mut mul = vec![0u32; n * n];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                let x = a1 * n2 + b1;
                for a2 in 0..n1 {
                    for b2 in 0..n2 {
                        let y = a2 * n2 + b2;
                        mul[x * n + y] = (g1.mul(a1, a2) * n2 + g2.mul(b1, b2)) as u32;
                    }
                }
            }
        }
        Ok(Self::trusted(
            format!("{} x {}", g1.name, g2.name),
            n,
            mul,
            None,
        ))
    }

    /// K ⋊ Q where `action[q]` is the permutation of K induced by q;
    /// elements (k, q) ↦ k·|Q| + q and (k1,q1)(k2,q2) = (k1·q1(k2), q1q2).
    pub fn semidirect_product(k: &Self, q: &Self, action: &[Vec<usize>]) -> Result<Self> {
        let nk = k.order;
        let nq = q.order;
        if action.len() != nq || action.iter().any(|a| a.len() != nk) {
            return Err(GroupError::BadTable(
                "action table has the wrong shape".into(),
            ));
        }
        for (qi, perm) in action.iter().enumerate() {
            let mut seen = vec![false; nk];
            for &img in perm {
                if img >= nk || seen[img] {
                    return Err(GroupError::NotAutomorphism(qi));
                }
                seen[img] = true;
            }
            for a in 0..nk {
                for b in 0..nk {
                    if perm[k.mul(a, b)] != k.mul(perm[a], perm[b]) {
                        return Err(GroupError::NotAutomorphism(qi));
                    }
                }
            }
        }
        for q1 in 0..nq {
            for q2 in 0..nq {
                let q12 = q.mul(q1, q2);
                if (0..nk).any(|x| action[q12][x] != action[q1][action[q2][x]]) {
                    return Err(GroupError::NotHomomorphism(q1, q2));
                }
            }
        }
        let n = nk * nq;
        check_cap(n)?;
        let mut mul = vec![0u32; n * n];
        for k1 in 0..nk {
            for q1 in 0..nq {
                let x = k1 * nq + q1;
                for k2 in 0..nk {
                    for q2 in 0..nq {
                        let y = k2 * nq + q2;
                        let kk = k.mul(k1, action[q1][k2]);
                        mul[x * n + y] = (kk * nq + q.mul(q1, q2)) as u32;
                    }
                }
            }
        }
        Ok(Self::trusted(
            format!("{} : {}", k.name, q.name),
            n,
            mul,
            None,
        ))
    }
}

fn check_cap(order: usize) -> Result<()> {
    let cap = order_cap();
    if order > cap {
        Err(GroupError::OrderCap { order, cap })
    } else {
        Ok(())
    }
}

fn mult_order(r: usize, p: usize) -> usize {
    let mut x = r % p;
    let mut k = 1;
    while x != 1 {
        x = x * r % p;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

fn compose(x: &Vec<u8>, y: &Vec<u8>) -> Vec<u8> {
    y.iter().map(|&i| x[i as usize]).collect()
}

fn parity(p: &[u8]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// Action table of a cyclic group `q` on `k` where the least element of
/// maximal order acts by the automorphism `gen_image`.
pub fn power_action(
    k: &FiniteGroup,
    q: &FiniteGroup,
    gen_image: &[usize],
) -> Result<Vec<Vec<usize>>> {
    let nq = q.order();
    let gen = (0..nq)
        .find(|&x| q.element_order(x) as usize == nq)
        .ok_or_else(|| GroupError::BadTable("acting group is not cyclic".into()))?;
    let mut action = vec![Vec::new(); nq];
    let mut cur: Vec<usize> = (0..k.order()).collect();
    let mut elt = 0;
    for _ in 0..nq {
        action[elt] = cur.clone();
        cur = cur.iter().map(|&x| gen_image[x]).collect();
        elt = q.mul(elt, gen);
    }
    if cur.iter().enumerate().any(|(i, &x)| i != x) {
        return Err(GroupError::NotHomomorphism(gen, nq));
    }
    Ok(action)
}

/// A subgroup of some parent realized as its own group.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub group: std::sync::Arc<FiniteGroup>,
    pub subgroup: Subgroup,
    position: Vec<u32>,
}

impl Embedded {
    /// Own index to parent index.
    pub fn to_parent(&self, i: usize) -> usize {
        self.subgroup.elements[i]
    }

    /// Parent index to own index.
    pub fn from_parent(&self, x: usize) -> Option<usize> {
        match self.position.get(x) {
            Some(&p) if p != u32::MAX => Some(p as usize),
            _ => None,
        }
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    /// Own class index of a parent element of the subgroup.
    pub fn class_of_parent(&self, x: usize) -> Option<usize> {
        self.from_parent(x).map(|i| self.group.class_of(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut v: Vec<usize> = (0..g.num_classes()).map(|c| g.class_size(c)).collect();
        v.sort();
        v
    }

    #[test]
    fn generated_subgroups() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(c4.subgroup_generated(&[]).unwrap().order(), 1);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let three_cycle = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        assert_eq!(s3.subgroup_generated(&[three_cycle]).unwrap().order(), 3);
        let d8 = FiniteGroup::dihedral(8).unwrap();
        // rotation r = 1, reflection s = 4
        assert_eq!(d8.subgroup_generated(&[1, 4]).unwrap().order(), 8);
        assert!(matches!(
            d8.subgroup_generated(&[9]),
            Err(GroupError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn class_structure() {
        assert_eq!(
            class_sizes(&FiniteGroup::cyclic(4).unwrap()),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            class_sizes(&FiniteGroup::symmetric(3).unwrap()),
            vec![1, 2, 3]
        );
        assert_eq!(
            class_sizes(&FiniteGroup::dicyclic(8).unwrap()),
            vec![1, 1, 2, 2, 2]
        );
    }

    #[test]
    fn canonical_class_order() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert_eq!(s4.classes()[0], vec![0]);
        let keys: Vec<_> = (0..s4.num_classes())
            .map(|c| {
                (
                    s4.element_order(s4.class_rep(c)),
                    s4.class_size(c),
                    s4.class_rep(c),
                )
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn normalizers_and_centralizers() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let p = s4.sylow_subgroup(2).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(s4.normalizer(&p).unwrap(), p);
        let v4 = s4.minimal_normal_subgroups(&s4.trivial_subgroup()).unwrap();
        assert_eq!(s4.normalizer(&v4[0]).unwrap().order(), 24);
        let d8 = FiniteGroup::dihedral(8).unwrap();
        assert_eq!(d8.centralizer(&d8.center()).unwrap().order(), 8);
    }

    #[test]
    fn sylow_choices() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(c6.sylow_subgroup(3).unwrap().order(), 3);
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let p = s4.sylow_subgroup(2).unwrap();
        let e = s4.embed(&p).unwrap();
        // D8: five classes, exponent 4, non-abelian
        assert_eq!(e.group.num_classes(), 5);
        assert_eq!(e.group.exponent(), 4);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert!(s3.sylow_subgroup(5).unwrap().is_trivial());
        assert!(s3.sylow_subgroup(4).is_err());
        assert_eq!(s4.sylow_subgroups(3).unwrap().len(), 4);
    }

    #[test]
    fn quotients() {
        let q8 = FiniteGroup::dicyclic(8).unwrap();
        let z = q8.center();
        assert_eq!(z.order(), 2);
        let q = q8.quotient(&z).unwrap();
        assert_eq!(q.quotient.order(), 4);
        assert!((1..4).all(|x| q.quotient.element_order(x) == 2));
        for x in 0..4 {
            assert_eq!(q.projection[q.section[x]], x);
        }
        let triv = q8.quotient(&q8.trivial_subgroup()).unwrap();
        assert_eq!(triv.quotient.order(), 8);
        assert_eq!(q8.quotient(&q8.whole()).unwrap().quotient.order(), 1);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let refl = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = s3.subgroup_generated(&[refl]).unwrap();
        assert_eq!(s3.quotient(&h).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn p_solvability() {
        let d8 = FiniteGroup::dihedral(8).unwrap();
        assert!(d8.is_p_solvable(2));
        let a5 = FiniteGroup::alternating(5).unwrap();
        assert!(!a5.is_p_solvable(2));
        assert!(!a5.is_p_solvable(5));
        assert!(a5.is_p_solvable(7));
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert!(s4.is_p_solvable(2));
        assert!(s4.is_p_solvable(3));
    }

    #[test]
    fn minimal_normals() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let mins = c6.minimal_normal_subgroups(&c6.trivial_subgroup()).unwrap();
        let orders: Vec<usize> = mins.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![2, 3]);
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let mins = s4.minimal_normal_subgroups(&s4.trivial_subgroup()).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(
            c2.minimal_normal_subgroups(&c2.trivial_subgroup())
                .unwrap()
                .len(),
            1
        );
        assert_eq!(s4.normal_subgroups().len(), 4);
    }

    #[test]
    fn products() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let v = FiniteGroup::direct_product(&c2, &c2).unwrap();
        assert_eq!(v.order(), 4);
        assert!(v.is_abelian());
        assert_eq!(v.exponent(), 2);

        let c3 = FiniteGroup::cyclic(3).unwrap();
        let inv: Vec<usize> = (0..3).map(|x| c3.inv(x)).collect();
        let s3 = FiniteGroup::semidirect_product(&c3, &c2, &[vec![0, 1, 2], inv]).unwrap();
        let mut orders: Vec<u32> = (0..6).map(|x| s3.element_order(x)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);

        let c33 = FiniteGroup::direct_product(&c3, &c3).unwrap();
        let swap: Vec<usize> = (0..9).map(|x| (x % 3) * 3 + x / 3).collect();
        let w = FiniteGroup::semidirect_product(&c33, &c2, &[(0..9).collect(), swap]).unwrap();
        assert_eq!(w.order(), 18);
        assert_eq!(w.num_classes(), 9);

        let bad = vec![(0..3).collect(), vec![0, 0, 1]];
        assert!(matches!(
            FiniteGroup::semidirect_product(&c3, &c2, &bad),
            Err(GroupError::NotAutomorphism(1))
        ));
        // an order-3 automorphism cannot be the image of an involution
        let c7 = FiniteGroup::cyclic(7).unwrap();
        let sq: Vec<usize> = (0..7).map(|x| x * 2 % 7).collect();
        let id: Vec<usize> = (0..7).collect();
        assert!(matches!(
            FiniteGroup::semidirect_product(&c7, &c2, &[id, sq]),
            Err(GroupError::NotHomomorphism(..))
        ));
    }

    #[test]
    fn named_atoms() {
        assert_eq!(FiniteGroup::special_linear_2(3).unwrap().order(), 24);
        assert_eq!(FiniteGroup::special_linear_2(3).unwrap().num_classes(), 7);
        let f21 = FiniteGroup::frobenius(21).unwrap();
        assert_eq!(f21.num_classes(), 5);
        assert_eq!(FiniteGroup::alternating(5).unwrap().num_classes(), 5);
        assert_eq!(FiniteGroup::symmetric(5).unwrap().num_classes(), 7);
        assert!(FiniteGroup::dihedral(7).is_err());
        assert!(FiniteGroup::frobenius(15).is_err());
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table("bad", 2, vec![0, 1, 1, 1]).is_err());
        let ok = FiniteGroup::from_table("C2", 2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(ok.order(), 2);
        // latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0,
        ];
        assert!(FiniteGroup::from_table("loop", 5, loop5).is_err());
    }

    #[test]
    fn derived_and_socle() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert_eq!(s4.derived_subgroup().order(), 12);
        assert_eq!(s4.socle().order(), 4);
        let q8 = FiniteGroup::dicyclic(8).unwrap();
        assert_eq!(q8.derived_subgroup().order(), 2);
    }
}
