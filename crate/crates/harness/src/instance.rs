//! Verification instances: the JSON form, loading, and hypothesis checks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use charlab::chartab::determinantal_order;
use charlab::clifford::irr_over_index;
use charlab::glauberman::{glauberman_correspondent, CoprimeAction};
use charlab::group::{is_prime, Subgroup};
use charlab::Ambient;
use serde::{Deserialize, Serialize};

use crate::dsl;
use crate::util::{
    abelian_over, hyp, is_p_group, is_p_prime, is_sylow, product, quotient_is_p_solvable,
};
use crate::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "GALLAGHER_1_2")]
    Gallagher12,
    #[serde(rename = "THM_1_3")]
    Thm13,
    #[serde(rename = "COR_1_4")]
    Cor14,
    #[serde(rename = "LEM_1_1")]
    Lem11,
    #[serde(rename = "OW_2_1")]
    Ow21,
    #[serde(rename = "COR_2_2")]
    Cor22,
    #[serde(rename = "THM_2_4")]
    Thm24,
    #[serde(rename = "THM_3_1")]
    Thm31,
    #[serde(rename = "COUNTEREXAMPLE_1")]
    Counterexample1,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Gallagher12,
        Kind::Thm13,
        Kind::Cor14,
        Kind::Lem11,
        Kind::Ow21,
        Kind::Cor22,
        Kind::Thm24,
        Kind::Thm31,
        Kind::Counterexample1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Gallagher12 => "GALLAGHER_1_2",
            Kind::Thm13 => "THM_1_3",
            Kind::Cor14 => "COR_1_4",
            Kind::Lem11 => "LEM_1_1",
            Kind::Ow21 => "OW_2_1",
            Kind::Cor22 => "COR_2_2",
            Kind::Thm24 => "THM_2_4",
            Kind::Thm31 => "THM_3_1",
            Kind::Counterexample1 => "COUNTEREXAMPLE_1",
        }
    }

    pub fn needs_prime(self) -> bool {
        matches!(self, Kind::Ow21 | Kind::Cor22 | Kind::Thm24 | Kind::Thm31)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HarnessError::Format(format!("unknown kind `{s}`")))
    }
}

/// A character named by its group, its row in canonical order, and two
/// fingerprints that are re-checked at load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharRef {
    pub on: String,
    pub row: usize,
    pub degree: i64,
    pub det_order: u64,
}

/// The serialized form of an instance. Subgroups are selector chains applied
/// to the ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub kind: Kind,
    pub ambient: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub subgroups: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subgroup_lists: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub characters: BTreeMap<String, CharRef>,
}

/// A loaded instance whose hypotheses have been verified.
#[derive(Clone)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub amb: Arc<Ambient>,
    pub subs: BTreeMap<String, Subgroup>,
    pub lists: BTreeMap<String, Vec<Subgroup>>,
    pub chars: BTreeMap<String, usize>,
    /// The hypotheses that were verified, as readable statements.
    pub hypotheses: Vec<String>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.amb.group().uid() == other.amb.group().uid()
            && self.subs == other.subs
            && self.lists == other.lists
            && self.chars == other.chars
            && self.hypotheses == other.hypotheses
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("spec", &self.spec)
            .finish()
    }
}

impl Instance {
    pub fn kind(&self) -> Kind {
        self.spec.kind
    }

    pub fn sub(&self, name: &str) -> Result<&Subgroup> {
        self.subs.get(name).ok_or_else(|| {
            HarnessError::Format(format!("{}: missing subgroup `{name}`", self.spec.kind))
        })
    }

    pub fn list(&self, name: &str) -> &[Subgroup] {
        self.lists.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn char(&self, name: &str) -> Result<usize> {
        self.chars.get(name).copied().ok_or_else(|| {
            HarnessError::Format(format!("{}: missing character `{name}`", self.spec.kind))
        })
    }

    pub fn prime(&self) -> Result<u64> {
        self.spec
            .prime
            .ok_or_else(|| HarnessError::Format(format!("{}: missing prime", self.spec.kind)))
    }

    /// Group names for the report: the ambient followed by each named
    /// subgroup with its order.
    pub fn group_names(&self) -> Vec<String> {
        let mut out = vec![format!("ambient = {}", self.spec.ambient)];
        for (name, sel) in &self.spec.subgroups {
            out.push(format!(
                "{name} = {sel} (order {})",
                self.subs[name].order()
            ));
        }
        for (name, sels) in &self.spec.subgroup_lists {
            out.push(format!("{name}: {} subgroups", sels.len()));
        }
        out
    }
}

/// Loads instances, sharing one [`Ambient`] per ambient expression.
pub struct Loader {
    seed: u64,
    ambients: Mutex<HashMap<String, Arc<Ambient>>>,
}

impl Default for Loader {
    fn default() -> Self {
        Loader::new(charlab::chartab::DEFAULT_SEED)
    }
}

impl Loader {
    pub fn new(seed: u64) -> Self {
        Loader {
            seed,
            ambients: Mutex::new(HashMap::new()),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ambient(&self, text: &str) -> Result<Arc<Ambient>> {
        let expr = dsl::parse(text)?;
        let key = expr.render();
        if let Some(a) = self.ambients.lock().unwrap().get(&key) {
            return Ok(a.clone());
        }
        let g = dsl::eval_group(&expr)?;
        let amb = Arc::new(Ambient::with_seed(g, self.seed));
        Ok(self
            .ambients
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(amb)
            .clone())
    }

    pub fn load(&self, spec: &InstanceSpec) -> Result<Instance> {
        let amb = self.ambient(&spec.ambient)?;
        let g = amb.group().clone();
        let mut subs = BTreeMap::new();
        for (name, sel) in &spec.subgroups {
            subs.insert(name.clone(), dsl::select_text(&g, sel)?);
        }
        let mut lists = BTreeMap::new();
        for (name, sels) in &spec.subgroup_lists {
            let v = sels
                .iter()
                .map(|s| dsl::select_text(&g, s))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            lists.insert(name.clone(), v);
        }
        let mut chars = BTreeMap::new();
        for (name, c) in &spec.characters {
            let h = subs.get(&c.on).ok_or_else(|| {
                HarnessError::Format(format!(
                    "character `{name}` lives on unknown subgroup `{}`",
                    c.on
                ))
            })?;
            let t = amb.table(h)?;
            if c.row >= t.len() {
                return Err(hyp(format!(
                    "{name}: row {} out of range ({} rows)",
                    c.row,
                    t.len()
                )));
            }
            let chi = t.row(c.row);
            let degree = chi.degree().unwrap_or(0);
            let det = determinantal_order(chi).map_err(charlab::Error::from)?;
            if degree != c.degree || det != c.det_order {
                return Err(hyp(format!(
                    "{name}: fingerprint mismatch (stored degree {} / det order {}, computed {degree} / {det})",
                    c.degree, c.det_order
                )));
            }
            chars.insert(name.clone(), c.row);
        }
        let mut inst = Instance {
            spec: spec.clone(),
            amb,
            subs,
            lists,
            chars,
            hypotheses: Vec::new(),
        };
        inst.hypotheses = verify_hypotheses(&inst)?;
        Ok(inst)
    }
}

/// Builds the fingerprinted reference to row `row` of `h`.
pub fn char_ref(amb: &Ambient, on: &str, h: &Subgroup, row: usize) -> Result<CharRef> {
    let t = amb.table(h)?;
    let chi = t.row(row);
    Ok(CharRef {
        on: on.to_string(),
        row,
        degree: chi.degree().unwrap_or(0),
        det_order: determinantal_order(chi).map_err(charlab::Error::from)?,
    })
}

struct Hyps<'a> {
    inst: &'a Instance,
    done: Vec<String>,
}

impl<'a> Hyps<'a> {
    fn amb(&self) -> &Ambient {
        &self.inst.amb
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) -> Result<()> {
        let what = what.into();
        if !ok {
            return Err(hyp(format!("{}: {what} fails", self.inst.spec.kind)));
        }
        self.done.push(what);
        Ok(())
    }

    fn sub(&self, name: &str) -> Result<Subgroup> {
        self.inst.sub(name).cloned()
    }

    fn normal(&mut self, h: &str, k: &str) -> Result<()> {
        let ok = self.amb().is_normal_in(&self.sub(h)?, &self.sub(k)?);
        self.require(ok, format!("{h} ⊴ {k}"))
    }

    fn subset(&mut self, h: &str, k: &str) -> Result<()> {
        let ok = self.sub(h)?.is_subset_of(&self.sub(k)?);
        self.require(ok, format!("{h} ≤ {k}"))
    }

    fn equals(&mut self, h: &str, computed: &Subgroup, what: &str) -> Result<()> {
        let ok = &self.sub(h)? == computed;
        self.require(ok, format!("{h} = {what}"))
    }

    fn invariant(&mut self, chr: &str, on: &str, acting: &str) -> Result<()> {
        let j = self.inst.char(chr)?;
        let ok = self
            .amb()
            .is_invariant(&self.sub(on)?, j, &self.sub(acting)?)?;
        self.require(ok, format!("{chr} is {acting}-invariant"))
    }

    fn on(&mut self, chr: &str, h: &str) -> Result<()> {
        let ok = self
            .inst
            .spec
            .characters
            .get(chr)
            .is_some_and(|c| c.on == h);
        self.require(ok, format!("{chr} ∈ Irr({h})"))
    }

    fn prime(&mut self) -> Result<u64> {
        let p = self.inst.prime()?;
        self.require(is_prime(p), format!("p = {p} is prime"))?;
        Ok(p)
    }

    /// The coprime-action block shared by OW_2_1 and COR_2_2:
    /// K ⊴ A of p′-order, Q a p-subgroup with KQ ⊴ A, B = N_A(Q),
    /// C = C_K(Q), θ ∈ Irr_Q(K) and θ* its correspondent.
    fn coprime_block(&mut self, q: &str) -> Result<CoprimeAction> {
        let p = self.prime()?;
        let (a, k, qs) = (self.sub("A")?, self.sub("K")?, self.sub(q)?);
        self.normal("K", "A")?;
        self.require(is_p_prime(&k, p), "p ∤ |K|")?;
        self.subset(q, "A")?;
        self.require(is_p_group(&qs, p), format!("{q} is a p-group"))?;
        let kq = product(self.amb(), &k, &qs, &format!("K{q}"))?;
        let ok = self.amb().is_normal_in(&kq, &a);
        self.require(ok, format!("K{q} ⊴ A"))?;
        let b = self
            .amb()
            .group()
            .normalizer_in(&a, &qs)
            .map_err(charlab::Error::from)?;
        self.equals("B", &b, &format!("N_A({q})"))?;
        let action = CoprimeAction::new(self.amb(), &a, &k, &qs, p)?;
        self.equals("C", &action.c, &format!("C_K({q})"))?;
        self.on("theta", "K")?;
        self.invariant("theta", "K", q)?;
        self.star(&action)?;
        Ok(action)
    }

    fn star(&mut self, action: &CoprimeAction) -> Result<()> {
        self.on("theta_star", "C")?;
        let star = glauberman_correspondent(self.amb(), action, self.inst.char("theta")?)?;
        let ok = star.index == self.inst.char("theta_star")?;
        self.require(ok, "theta_star is the Glauberman correspondent of theta")
    }
}

/// Re-verifies every hypothesis of the instance's theorem.
pub fn verify_hypotheses(inst: &Instance) -> Result<Vec<String>> {
    let mut h = Hyps {
        inst,
        done: Vec::new(),
    };
    match inst.spec.kind {
        Kind::Gallagher12 | Kind::Lem11 => {
            h.normal("N", "A")?;
            h.on("theta", "N")?;
            h.invariant("theta", "N", "A")?;
        }
        Kind::Thm13 => {
            h.normal("N", "A")?;
            h.normal("G", "A")?;
            h.subset("N", "G")?;
            h.on("theta", "N")?;
            h.invariant("theta", "N", "A")?;
        }
        Kind::Cor14 | Kind::Counterexample1 => {
            h.normal("N", "A")?;
            h.normal("G", "A")?;
            h.subset("N", "G")?;
            h.on("theta", "N")?;
            if inst.spec.kind == Kind::Cor14 {
                let (a, g, n) = (h.sub("A")?, h.sub("G")?, h.sub("N")?);
                let over = irr_over_index(&inst.amb, &a, &g, &n, inst.char("theta")?)?;
                let nonempty = !over.a_invariant(&inst.amb)?.is_empty();
                h.require(nonempty, "Irr_A(G|theta) is non-empty")?;
            }
        }
        Kind::Ow21 => {
            h.coprime_block("Q")?;
            let (b, c) = (h.sub("B")?, h.sub("C")?);
            for (i, u) in inst.list("U").iter().enumerate() {
                let ok = c.is_subset_of(u) && u.is_subset_of(&b) && inst.amb.is_normal_in(&c, u);
                h.require(ok, format!("C ⊴ U{i} ≤ B"))?;
                h.require(abelian_over(&inst.amb, u, &c), format!("U{i}/C is abelian"))?;
            }
        }
        Kind::Cor22 => {
            h.coprime_block("P")?;
            h.subset("C", "S")?;
            h.subset("S", "D")?;
            h.subset("D", "B")?;
            h.normal("S", "D")?;
        }
        Kind::Thm24 => {
            let p = h.prime()?;
            let (a, g, k, pp, z) = (
                h.sub("A")?,
                h.sub("G")?,
                h.sub("K")?,
                h.sub("P")?,
                h.sub("Z")?,
            );
            h.normal("G", "A")?;
            h.subset("K", "G")?;
            h.normal("K", "A")?;
            h.require(is_p_prime(&k, p), "p ∤ |K|")?;
            h.require(is_sylow(&pp, &g, p), "P ∈ Syl_p(G)")?;
            let kp = product(&inst.amb, &k, &pp, "KP")?;
            h.require(inst.amb.is_normal_in(&kp, &a), "KP ⊴ A")?;
            h.subset("Z", "G")?;
            h.require(is_p_group(&z, p), "Z is a p-group")?;
            h.normal("Z", "A")?;
            h.on("lambda", "Z")?;
            h.invariant("lambda", "Z", "A")?;
            let grp = inst.amb.group();
            let b = grp.normalizer_in(&a, &pp).map_err(charlab::Error::from)?;
            h.equals("B", &b, "N_A(P)")?;
            let hh = grp.normalizer_in(&g, &pp).map_err(charlab::Error::from)?;
            h.equals("H", &hh, "N_G(P)")?;
            let action = CoprimeAction::new(&inst.amb, &a, &k, &pp, p)?;
            h.equals("C", &action.c, "C_K(P)")?;
            h.on("theta", "K")?;
            h.invariant("theta", "K", "P")?;
            h.star(&action)?;
        }
        Kind::Thm31 => {
            let p = h.prime()?;
            let (a, g, n, pp) = (h.sub("A")?, h.sub("G")?, h.sub("N")?, h.sub("P")?);
            h.normal("G", "A")?;
            h.require(is_sylow(&pp, &g, p), "P ∈ Syl_p(G)")?;
            h.normal("N", "A")?;
            h.subset("N", "G")?;
            h.on("mu", "N")?;
            let mu = inst.char("mu")?;
            let deg = inst.amb.table(&n)?.row(mu).degree().unwrap_or(0);
            h.require(!(deg as u64).is_multiple_of(p), "mu has p′-degree")?;
            h.invariant("mu", "N", "P")?;
            h.require(
                quotient_is_p_solvable(&inst.amb, &g, &n, p)?,
                "G/N is p-solvable",
            )?;
            let grp = inst.amb.group();
            let b = grp.normalizer_in(&a, &pp).map_err(charlab::Error::from)?;
            h.equals("B", &b, "N_A(P)")?;
        }
    }
    Ok(h.done)
}

/// Serializes a list of instance specs.
pub fn to_json(specs: &[InstanceSpec]) -> String {
    serde_json::to_string_pretty(specs).expect("instance specs serialize")
}

pub fn from_json(text: &str) -> Result<Vec<InstanceSpec>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        One(InstanceSpec),
        Many(Vec<InstanceSpec>),
    }
    match serde_json::from_str(text).map_err(|e| HarnessError::Format(e.to_string()))? {
        Repr::One(s) => Ok(vec![s]),
        Repr::Many(v) => Ok(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counterexample_spec() -> InstanceSpec {
        let text = r#"{
            "kind": "COUNTEREXAMPLE_1",
            "ambient": "D(8) x C(2)",
            "subgroups": {"A": "genlist([1,2,8])", "G": "genlist([1,2])", "N": "genlist([2])"},
            "characters": {"theta": {"on": "N", "row": 2, "degree": 1, "det_order": 4}}
        }"#;
        from_json(text).unwrap().remove(0)
    }

    #[test]
    fn kind_names() {
        for k in Kind::ALL {
            assert_eq!(k.name().parse::<Kind>().unwrap(), k);
            assert_eq!(
                serde_json::to_string(&k).unwrap(),
                format!("\"{}\"", k.name())
            );
        }
        assert!("THM_9_9".parse::<Kind>().is_err());
    }

    #[test]
    fn load_and_fingerprint() {
        let loader = Loader::default();
        let spec = counterexample_spec();
        let inst = loader.load(&spec).unwrap();
        assert_eq!(inst.sub("G").unwrap().order(), 8);
        assert_eq!(inst.sub("N").unwrap().order(), 4);
        let mut bad = spec.clone();
        bad.characters.get_mut("theta").unwrap().det_order = 2;
        assert!(matches!(
            loader.load(&bad),
            Err(HarnessError::Hypothesis(_))
        ));
        let mut bad = spec;
        bad.subgroups.insert("N".into(), "genlist([1])".into());
        assert!(loader.load(&bad).is_err());
    }

    #[test]
    fn round_trip() {
        let loader = Loader::default();
        let spec = counterexample_spec();
        let a = loader.load(&spec).unwrap();
        let text = to_json(std::slice::from_ref(&a.spec));
        let b = loader.load(&from_json(&text).unwrap()[0]).unwrap();
        assert_eq!(a, b);
        assert_eq!(text, to_json(std::slice::from_ref(&b.spec)));
    }
}
