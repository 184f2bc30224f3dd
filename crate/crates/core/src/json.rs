//! JSON input and output for every object kind.
//!
//! **Input.**  A document is a JSON object describing one value, with an
//! optional `"defs"` table of named objects; any position expecting an
//! object also accepts a string naming a def (references may nest; cycles
//! are detected).  `"kind"` selects the type (`"ring"`, `"ideal"`,
//! `"hom"`, `"module"`, `"amalgam"`, `"poset"`, `"specdata"`) and may be
//! omitted where the shape is unambiguous.  Shapes:
//!
//! * ring: `{"zn": 6}`, `{"product": [A, B]}`, `{"quotient": [A, ideal]}`,
//!   `{"trivext": [A, module]}`, or explicit tables
//!   `{"name", "zero", "one", "add", "mul"}`;
//! * ideal: `{"ring": A, "members": [..]}` or `{"ring": A, "generators":
//!   [..]}` (inside a context that fixes the ambient ring, `"ring"` may be
//!   left out);
//! * hom: `{"domain": A, "codomain": B, "map": [..]}` or `{"identity": A}`;
//! * module: `{"regular": A}` or explicit `{"ring", "zero", "add",
//!   "action"}`;
//! * amalgam: `{"hom": f, "ideal": J}` or the duplication shorthand
//!   `{"ring": A, "ideal": I}`; an optional `"carrier"` with `"pairs"` is
//!   verified against the construction;
//! * poset: `{"elements": ["a", ..], "le": [["a","b"], ..]}` (edges by
//!   label or index; reflexive-transitive closure is applied);
//! * specdata: `{"pr": poset, "ps": poset, "vj": [..], "c": [[q,p], ..],
//!   "kappa": {q: p, ..} | null}`.
//!
//! **Output.**  The `*_to_value` functions emit self-contained documents
//! that round-trip through the loader, with referenced rings placed in
//! `"defs"` under role names (`"R"`, `"S"`).  `serde_json` maps are
//! BTree-backed, so serialization is key-sorted and byte-stable.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::amalgam::{amalgamate, duplicate, AmalgamationRing, ClassifiedAmalgam, PrimeTag};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::{ideal_generate, IdealSet};
use crate::module::FiniteModule;
use crate::poset::{AmalgamSpectrumData, SpectralPoset};
use crate::ring::{
    make_product, make_quotient, make_trivial_extension, make_zn, same_ring, Elem, FiniteRing,
};

/// Any object the loader can produce.
#[derive(Clone)]
pub enum Loaded {
    Ring(Arc<FiniteRing>),
    Ideal(IdealSet),
    Hom(RingHom),
    Module(FiniteModule),
    Amalgam(AmalgamationRing),
    Poset(SpectralPoset),
    SpecData(AmalgamSpectrumData),
}

impl std::fmt::Debug for Loaded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Loaded::{}", self.kind_name())
    }
}

impl Loaded {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Loaded::Ring(_) => "ring",
            Loaded::Ideal(_) => "ideal",
            Loaded::Hom(_) => "hom",
            Loaded::Module(_) => "module",
            Loaded::Amalgam(_) => "amalgam",
            Loaded::Poset(_) => "poset",
            Loaded::SpecData(_) => "specdata",
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::invalid("json", msg)
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(format!("{what} must be a non-negative integer, got {v}")))
}

fn as_elem_rows(v: &Value, what: &str) -> Result<Vec<Vec<Elem>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad(format!("{what} must be an array of rows")))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad(format!("{what} rows must be arrays")))?
                .iter()
                .map(|x| as_usize(x, what))
                .collect()
        })
        .collect()
}

fn as_elems(v: &Value, what: &str) -> Result<Vec<Elem>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))?
        .iter()
        .map(|x| as_usize(x, what))
        .collect()
}

struct Resolver<'a> {
    defs: &'a Map<String, Value>,
    cache: HashMap<String, Loaded>,
    stack: Vec<String>,
}

impl<'a> Resolver<'a> {
    fn new(defs: &'a Map<String, Value>) -> Self {
        Resolver {
            defs,
            cache: HashMap::new(),
            stack: Vec::new(),
        }
    }

    fn named(&mut self, name: &str) -> Result<Loaded> {
        if let Some(l) = self.cache.get(name) {
            return Ok(l.clone());
        }
        if self.stack.iter().any(|n| n == name) {
            return Err(bad(format!(
                "reference cycle: {} -> {name:?}",
                self.stack
                    .iter()
                    .map(|n| format!("{n:?}"))
                    .collect::<Vec<_>>()
                    .join(" -> ")
            )));
        }
        let v = self
            .defs
            .get(name)
            .ok_or_else(|| bad(format!("no definition named {name:?}")))?
            .clone();
        self.stack.push(name.to_string());
        let loaded = self.any(&v)?;
        self.stack.pop();
        self.cache.insert(name.to_string(), loaded.clone());
        Ok(loaded)
    }

    fn any(&mut self, v: &Value) -> Result<Loaded> {
        match v {
            Value::String(s) => self.named(s),
            Value::Object(o) => self.object(o),
            other => Err(bad(format!(
                "expected an object or a def name, got {other}"
            ))),
        }
    }

    fn object(&mut self, o: &Map<String, Value>) -> Result<Loaded> {
        let kind = match o.get("kind") {
            Some(Value::String(k)) => Some(k.as_str()),
            Some(other) => return Err(bad(format!("\"kind\" must be a string, got {other}"))),
            None => {
                // Infer from shape.
                if o.contains_key("zn")
                    || o.contains_key("product")
                    || o.contains_key("quotient")
                    || o.contains_key("trivext")
                    || (o.contains_key("add") && o.contains_key("mul"))
                {
                    Some("ring")
                } else if o.contains_key("regular") || o.contains_key("action") {
                    Some("module")
                } else if o.contains_key("identity")
                    || (o.contains_key("domain") && o.contains_key("codomain"))
                {
                    Some("hom")
                } else if o.contains_key("members") || o.contains_key("generators") {
                    Some("ideal")
                } else if (o.contains_key("pr") && o.contains_key("ps"))
                    || (o.contains_key("PR") && o.contains_key("PS"))
                {
                    Some("specdata")
                } else if o.contains_key("elements")
                    && (o.contains_key("le") || o.contains_key("leq"))
                {
                    Some("poset")
                } else if o.contains_key("ideal") {
                    Some("amalgam")
                } else {
                    None
                }
            }
        };
        match kind {
            Some("ring") => self.ring_object(o).map(Loaded::Ring),
            Some("ideal") => self.ideal_object(o, None).map(Loaded::Ideal),
            Some("hom") => self.hom_object(o).map(Loaded::Hom),
            Some("module") => self.module_object(o, None).map(Loaded::Module),
            Some("amalgam") => self.amalgam_object(o).map(Loaded::Amalgam),
            Some("poset") => self.poset_object(o).map(Loaded::Poset),
            Some("specdata") => self.specdata_object(o).map(Loaded::SpecData),
            Some(other) => Err(bad(format!("unknown kind {other:?}"))),
            None => Err(bad("cannot infer the kind of this object; add \"kind\"")),
        }
    }

    fn ring(&mut self, v: &Value) -> Result<Arc<FiniteRing>> {
        match self.any(v)? {
            Loaded::Ring(r) => Ok(r),
            other => Err(bad(format!("expected a ring, found {}", other.kind_name()))),
        }
    }

    fn ring_object(&mut self, o: &Map<String, Value>) -> Result<Arc<FiniteRing>> {
        if let Some(n) = o.get("zn") {
            return make_zn(as_usize(n, "zn")?);
        }
        if let Some(pair) = o.get("product") {
            let parts = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("\"product\" takes [ring, ring]"))?;
            let a = self.ring(&parts[0])?;
            let b = self.ring(&parts[1])?;
            return make_product(&a, &b);
        }
        if let Some(pair) = o.get("quotient") {
            let parts = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("\"quotient\" takes [ring, ideal]"))?;
            let a = self.ring(&parts[0])?;
            let i = self.ideal(&parts[1], Some(&a))?;
            return Ok(make_quotient(&a, &i)?.0);
        }
        if let Some(pair) = o.get("trivext") {
            let parts = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("\"trivext\" takes [ring, module]"))?;
            let a = self.ring(&parts[0])?;
            let m = self.module(&parts[1], Some(&a))?;
            return Ok(make_trivial_extension(&a, &m)?.ring);
        }
        let name = o
            .get("name")
            .and_then(Value::as_str)
            .unwrap_or("ring")
            .to_string();
        let zero = as_usize(o.get("zero").ok_or_else(|| bad("ring needs \"zero\""))?, "zero")?;
        let one = as_usize(o.get("one").ok_or_else(|| bad("ring needs \"one\""))?, "one")?;
        let add = as_elem_rows(o.get("add").ok_or_else(|| bad("ring needs \"add\""))?, "add")?;
        let mul = as_elem_rows(o.get("mul").ok_or_else(|| bad("ring needs \"mul\""))?, "mul")?;
        FiniteRing::from_tables(name, zero, one, add, mul)
    }

    /// `ambient` supplies the ring when the object omits `"ring"`.
    fn ideal(&mut self, v: &Value, ambient: Option<&Arc<FiniteRing>>) -> Result<IdealSet> {
        let loaded = match v {
            Value::Object(o) if !o.contains_key("kind") || o.get("kind").and_then(Value::as_str) == Some("ideal") => {
                return self.ideal_object(o, ambient);
            }
            other => self.any(other)?,
        };
        match loaded {
            Loaded::Ideal(i) => {
                if let Some(r) = ambient {
                    if !same_ring(i.ring(), r) {
                        return Err(Error::AmbientMismatch(format!(
                            "ideal lives over {}, expected {}",
                            i.ring().name(),
                            r.name()
                        )));
                    }
                }
                Ok(i)
            }
            other => Err(bad(format!("expected an ideal, found {}", other.kind_name()))),
        }
    }

    fn ideal_object(
        &mut self,
        o: &Map<String, Value>,
        ambient: Option<&Arc<FiniteRing>>,
    ) -> Result<IdealSet> {
        let ring = match o.get("ring") {
            Some(v) => self.ring(v)?,
            None => ambient
                .cloned()
                .ok_or_else(|| bad("ideal needs \"ring\" (no ambient ring in this position)"))?,
        };
        if let Some(amb) = ambient {
            if !same_ring(&ring, amb) {
                return Err(Error::AmbientMismatch(format!(
                    "ideal declared over {}, expected {}",
                    ring.name(),
                    amb.name()
                )));
            }
        }
        match (o.get("members"), o.get("generators")) {
            (Some(m), None) => {
                let members = as_elems(m, "members")?;
                for &x in &members {
                    if x >= ring.size() {
                        return Err(bad(format!(
                            "member {x} out of range for {}",
                            ring.name()
                        )));
                    }
                }
                IdealSet::new(ring.clone(), Bitset::from_indices(ring.size(), members))
            }
            (None, Some(g)) => {
                let gens = as_elems(g, "generators")?;
                for &x in &gens {
                    if x >= ring.size() {
                        return Err(bad(format!(
                            "generator {x} out of range for {}",
                            ring.name()
                        )));
                    }
                }
                Ok(ideal_generate(&ring, &gens))
            }
            _ => Err(bad("ideal needs exactly one of \"members\" or \"generators\"")),
        }
    }

    fn hom_object(&mut self, o: &Map<String, Value>) -> Result<RingHom> {
        if let Some(r) = o.get("identity") {
            return Ok(RingHom::identity(&self.ring(r)?));
        }
        let domain = self.ring(o.get("domain").ok_or_else(|| bad("hom needs \"domain\""))?)?;
        let codomain =
            self.ring(o.get("codomain").ok_or_else(|| bad("hom needs \"codomain\""))?)?;
        let map = as_elems(o.get("map").ok_or_else(|| bad("hom needs \"map\""))?, "map")?;
        RingHom::new(domain, codomain, map)
    }

    fn module(&mut self, v: &Value, ambient: Option<&Arc<FiniteRing>>) -> Result<FiniteModule> {
        match v {
            Value::Object(o) if !o.contains_key("kind") || o.get("kind").and_then(Value::as_str) == Some("module") => {
                self.module_object(o, ambient)
            }
            other => match self.any(other)? {
                Loaded::Module(m) => Ok(m),
                other => Err(bad(format!(
                    "expected a module, found {}",
                    other.kind_name()
                ))),
            },
        }
    }

    fn module_object(
        &mut self,
        o: &Map<String, Value>,
        ambient: Option<&Arc<FiniteRing>>,
    ) -> Result<FiniteModule> {
        if let Some(r) = o.get("regular") {
            return Ok(FiniteModule::regular(&self.ring(r)?));
        }
        let ring = match o.get("ring") {
            Some(v) => self.ring(v)?,
            None => ambient
                .cloned()
                .ok_or_else(|| bad("module needs \"ring\" (no ambient ring in this position)"))?,
        };
        let name = o
            .get("name")
            .and_then(Value::as_str)
            .unwrap_or("module")
            .to_string();
        let zero = as_usize(
            o.get("zero").ok_or_else(|| bad("module needs \"zero\""))?,
            "zero",
        )?;
        let add = as_elem_rows(
            o.get("add").ok_or_else(|| bad("module needs \"add\""))?,
            "add",
        )?;
        let action = as_elem_rows(
            o.get("action")
                .ok_or_else(|| bad("module needs \"action\""))?,
            "action",
        )?;
        FiniteModule::new(name, ring, zero, add, action)
    }

    fn amalgam_object(&mut self, o: &Map<String, Value>) -> Result<AmalgamationRing> {
        let ideal_v = o
            .get("ideal")
            .ok_or_else(|| bad("amalgam needs \"ideal\""))?;
        let a = match (o.get("hom"), o.get("ring")) {
            (Some(h), None) => {
                let f = match self.any(h)? {
                    Loaded::Hom(f) => f,
                    other => {
                        return Err(bad(format!(
                            "expected a hom, found {}",
                            other.kind_name()
                        )))
                    }
                };
                let j = self.ideal(ideal_v, Some(f.codomain()))?;
                amalgamate(f, j)?
            }
            (None, Some(r)) => {
                let ring = self.ring(r)?;
                let i = self.ideal(ideal_v, Some(&ring))?;
                duplicate(&ring, &i)?
            }
            _ => return Err(bad("amalgam needs exactly one of \"hom\" or \"ring\"")),
        };
        if let Some(carrier) = o.get("carrier") {
            verify_declared_carrier(&a, carrier)?;
        }
        Ok(a)
    }

    fn poset_object(&mut self, o: &Map<String, Value>) -> Result<SpectralPoset> {
        let labels: Vec<String> = o
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("poset needs \"elements\""))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| bad("poset elements must be strings"))
            })
            .collect::<Result<_>>()?;
        let index = |v: &Value| -> Result<usize> {
            match v {
                Value::String(s) => labels
                    .iter()
                    .position(|l| l == s)
                    .ok_or_else(|| bad(format!("unknown poset element {s:?}"))),
                other => {
                    let i = as_usize(other, "poset edge endpoint")?;
                    if i < labels.len() {
                        Ok(i)
                    } else {
                        Err(bad(format!("poset edge endpoint {i} out of range")))
                    }
                }
            }
        };
        if let Some(matrix) = o.get("leq") {
            // Alternative form: the full relation as a boolean matrix.
            let rows = matrix
                .as_array()
                .ok_or_else(|| bad("\"leq\" must be a boolean matrix"))?;
            if rows.len() != labels.len() {
                return Err(bad(format!(
                    "\"leq\" has {} rows, expected {}",
                    rows.len(),
                    labels.len()
                )));
            }
            let mut le = Vec::with_capacity(labels.len() * labels.len());
            for row in rows {
                let row = row
                    .as_array()
                    .filter(|r| r.len() == labels.len())
                    .ok_or_else(|| bad("\"leq\" rows must match the element count"))?;
                for v in row {
                    le.push(v.as_bool().ok_or_else(|| bad("\"leq\" entries are booleans"))?);
                }
            }
            return SpectralPoset::new(labels, le);
        }
        let edges: Vec<(usize, usize)> = o
            .get("le")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("poset needs \"le\" edges or a \"leq\" matrix"))?
            .iter()
            .map(|pair| {
                let pair = pair
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| bad("poset edges are [lower, upper] pairs"))?;
                Ok((index(&pair[0])?, index(&pair[1])?))
            })
            .collect::<Result<_>>()?;
        SpectralPoset::from_edges(labels, &edges)
    }

    fn specdata_object(&mut self, o: &Map<String, Value>) -> Result<AmalgamSpectrumData> {
        // Uppercase aliases are accepted on input; serialization is lowercase.
        let get = |lower: &str, upper: &str| o.get(lower).or_else(|| o.get(upper));
        let pr = match self.any(get("pr", "PR").ok_or_else(|| bad("specdata needs \"pr\""))?)? {
            Loaded::Poset(p) => p,
            other => return Err(bad(format!("\"pr\" must be a poset, found {}", other.kind_name()))),
        };
        let ps = match self.any(get("ps", "PS").ok_or_else(|| bad("specdata needs \"ps\""))?)? {
            Loaded::Poset(p) => p,
            other => return Err(bad(format!("\"ps\" must be a poset, found {}", other.kind_name()))),
        };
        let ps_index = |v: &Value| -> Result<usize> {
            match v {
                Value::String(s) => ps
                    .index_of(s)
                    .ok_or_else(|| bad(format!("unknown source element {s:?}"))),
                other => as_usize(other, "source index"),
            }
        };
        let pr_index = |v: &Value| -> Result<usize> {
            match v {
                Value::String(s) => pr
                    .index_of(s)
                    .ok_or_else(|| bad(format!("unknown base element {s:?}"))),
                other => as_usize(other, "base index"),
            }
        };
        let mut vj = Bitset::new(ps.len());
        for v in get("vj", "VJ")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("specdata needs \"vj\""))?
        {
            let q = ps_index(v)?;
            if q >= ps.len() {
                return Err(bad(format!("vj index {q} out of range")));
            }
            vj.insert(q);
        }
        let mut c = vec![false; ps.len() * pr.len()];
        if let Some(edges) = get("c", "C") {
            for pair in edges
                .as_array()
                .ok_or_else(|| bad("\"c\" must be an array of [source, base] pairs"))?
            {
                let pair = pair
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| bad("\"c\" entries are [source, base] pairs"))?;
                let q = ps_index(&pair[0])?;
                let p = pr_index(&pair[1])?;
                if q >= ps.len() || p >= pr.len() {
                    return Err(bad(format!("contraction pair ({q}, {p}) out of range")));
                }
                c[q * pr.len() + p] = true;
            }
        }
        let kappa = match o.get("kappa") {
            None | Some(Value::Null) => None,
            Some(Value::Object(m)) => {
                let mut map = vec![usize::MAX; ps.len()];
                for (k, v) in m {
                    let q = ps
                        .index_of(k)
                        .ok_or_else(|| bad(format!("unknown source element {k:?}")))?;
                    map[q] = pr_index(v)?;
                }
                if let Some(q) = map.iter().position(|&p| p == usize::MAX) {
                    return Err(bad(format!(
                        "kappa is missing source element {:?}",
                        ps.label(q)
                    )));
                }
                Some(map)
            }
            Some(Value::Array(a)) => Some(
                a.iter()
                    .map(pr_index)
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(other) => return Err(bad(format!("\"kappa\" must be a map or array, got {other}"))),
        };
        AmalgamSpectrumData::new(pr, ps, vj, c, kappa)
    }
}

fn verify_declared_carrier(a: &AmalgamationRing, carrier: &Value) -> Result<()> {
    let o = carrier
        .as_object()
        .ok_or_else(|| bad("\"carrier\" must be an object"))?;
    if let Some(size) = o.get("size") {
        let declared = as_usize(size, "carrier size")?;
        if declared != a.carrier().size() {
            return Err(bad(format!(
                "declared carrier size {declared} differs from constructed {}",
                a.carrier().size()
            )));
        }
    }
    if let Some(pairs) = o.get("pairs") {
        let declared = as_elem_rows(pairs, "carrier pairs")?;
        if declared.len() != a.carrier().size() {
            return Err(bad(format!(
                "declared {} carrier pairs, constructed {}",
                declared.len(),
                a.carrier().size()
            )));
        }
        for (idx, pair) in declared.iter().enumerate() {
            if pair.len() != 2 {
                return Err(bad("carrier pairs are [r, s] pairs"));
            }
            if a.pair(idx) != (pair[0], pair[1]) {
                return Err(bad(format!(
                    "carrier pair {idx} declared as ({}, {}) but constructed as {:?}",
                    pair[0],
                    pair[1],
                    a.pair(idx)
                )));
            }
        }
    }
    Ok(())
}

/// Loads a document from a JSON string.
pub fn load_str(s: &str) -> Result<Loaded> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| bad(format!("not valid JSON: {e}")))?;
    load_value(&v)
}

/// Loads a document from a parsed JSON value.
pub fn load_value(v: &Value) -> Result<Loaded> {
    let top = v
        .as_object()
        .ok_or_else(|| bad("top-level document must be an object"))?;
    let empty = Map::new();
    let defs = match top.get("defs") {
        Some(Value::Object(d)) => d,
        Some(other) => return Err(bad(format!("\"defs\" must be an object, got {other}"))),
        None => &empty,
    };
    let mut body = top.clone();
    body.remove("defs");
    Resolver::new(defs).object(&body)
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

pub fn ring_to_value(r: &FiniteRing) -> Value {
    json!({
        "kind": "ring",
        "name": r.name(),
        "size": r.size(),
        "zero": r.zero(),
        "one": r.one(),
        "add": r.add_table(),
        "mul": r.mul_table(),
    })
}

pub fn ideal_to_value(i: &IdealSet) -> Value {
    json!({
        "kind": "ideal",
        "ring": "R",
        "members": i.elements(),
        "defs": { "R": ring_to_value(i.ring()) },
    })
}

pub fn hom_to_value(f: &RingHom) -> Value {
    json!({
        "kind": "hom",
        "domain": "R",
        "codomain": "S",
        "map": f.map(),
        "defs": {
            "R": ring_to_value(f.domain()),
            "S": ring_to_value(f.codomain()),
        },
    })
}

pub fn module_to_value(m: &FiniteModule) -> Value {
    json!({
        "kind": "module",
        "name": m.name(),
        "ring": "R",
        "zero": m.zero(),
        "add": m.add_table(),
        "action": m.action_table(),
        "defs": { "R": ring_to_value(m.ring()) },
    })
}

pub fn amalgam_to_value(a: &AmalgamationRing) -> Value {
    let pairs: Vec<[usize; 2]> = (0..a.carrier().size())
        .map(|i| {
            let (r, s) = a.pair(i);
            [r, s]
        })
        .collect();
    let carrier = json!({
        "name": a.carrier().name(),
        "size": a.carrier().size(),
        "pairs": pairs,
    });
    if a.is_duplication() {
        json!({
            "kind": "amalgam",
            "ring": "R",
            "ideal": { "members": a.ideal_j().elements() },
            "carrier": carrier,
            "defs": { "R": ring_to_value(a.ring_r()) },
        })
    } else {
        json!({
            "kind": "amalgam",
            "hom": { "domain": "R", "codomain": "S", "map": a.hom().map() },
            "ideal": { "ring": "S", "members": a.ideal_j().elements() },
            "carrier": carrier,
            "defs": {
                "R": ring_to_value(a.ring_r()),
                "S": ring_to_value(a.ring_s()),
            },
        })
    }
}

pub fn poset_to_value(p: &SpectralPoset) -> Value {
    let mut edges: Vec<[&str; 2]> = Vec::new();
    for i in 0..p.len() {
        for j in 0..p.len() {
            if i != j && p.le(i, j) {
                edges.push([p.label(i), p.label(j)]);
            }
        }
    }
    json!({
        "kind": "poset",
        "elements": p.labels(),
        "le": edges,
    })
}

pub fn specdata_to_value(d: &AmalgamSpectrumData) -> Value {
    let mut c_edges: Vec<[&str; 2]> = Vec::new();
    for q in 0..d.ps().len() {
        for p in 0..d.pr().len() {
            if d.contracts(q, p) {
                c_edges.push([d.ps().label(q), d.pr().label(p)]);
            }
        }
    }
    let vj: Vec<&str> = d.vj().iter().map(|q| d.ps().label(q)).collect();
    let kappa: Value = match d.kappa() {
        None => Value::Null,
        Some(map) => {
            let mut m = Map::new();
            for (q, &p) in map.iter().enumerate() {
                m.insert(
                    d.ps().label(q).to_string(),
                    Value::String(d.pr().label(p).to_string()),
                );
            }
            Value::Object(m)
        }
    };
    json!({
        "kind": "specdata",
        "pr": poset_to_value(d.pr()),
        "ps": poset_to_value(d.ps()),
        "vj": vj,
        "c": c_edges,
        "kappa": kappa,
    })
}

/// The classified spectrum of an amalgamation, with one entry per carrier
/// prime: members, family tag, source prime downstairs, and maximality.
pub fn classified_to_value(c: &ClassifiedAmalgam) -> Value {
    let primes: Vec<Value> = c
        .tagged()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let (tag, source_ring, source) = match t.tag {
                PrimeTag::Type1 => ("type1", "R", c.spec_r().prime(t.source)),
                PrimeTag::Type2 => ("type2", "S", c.spec_s().prime(t.source)),
            };
            json!({
                "members": t.ideal.elements(),
                "tag": tag,
                "source_ring": source_ring,
                "source_members": source.elements(),
                "maximal": c.carrier_spec().is_max(i),
            })
        })
        .collect();
    json!({
        "kind": "spectrum",
        "carrier": c.amalgam().carrier().name(),
        "carrier_size": c.amalgam().carrier().size(),
        "primes": primes,
    })
}
