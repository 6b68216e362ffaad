//! JSON interchange formats.
//!
//! Every document kind is recognised by its keys:
//!
//! | kind       | keys                                              |
//! |------------|---------------------------------------------------|
//! | group      | `free_rank`, `torsion`                            |
//! | hom        | `source`, `target`, `matrix`                      |
//! | ring       | `group`, `field`, `basis`, `mul`, `unit`          |
//! | monoid     | `monoid`, `mode`, optional `base` or `field`      |
//! | module     | `ring`, `basis`, `action`                         |
//! | principal  | `var_degree`, `ambient`, `gens`, optional `group` |
//!
//! Scalars are JSON integers or strings `"n"` / `"n/d"`. Degrees are
//! coordinate arrays in invariant-factor form. Parsing never panics: every
//! problem is reported as a [`Violation`] naming the JSON path and the rule.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::abgroups::{FGAbelianGroup, GroupElement, GroupHom, IntMatrix};
use crate::exactla::{format_scalar, Field, Scalar};
use crate::gcore::{AffineMonoid, GradedAlgebra, GradingMode, MonoidAlgebra};
use crate::gmod::{GradedModule, Monomial, PrincipalPresentation};
use crate::samples;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub path: String,
    pub rule: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "(document): {}", self.rule)
        } else {
            write!(f, "{}: {}", self.path, self.rule)
        }
    }
}

/// Violations of a rejected document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invalid(pub Vec<Violation>);

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Invalid {}

impl From<Invalid> for crate::Error {
    fn from(e: Invalid) -> Self {
        crate::Error::Parse(e.to_string())
    }
}

pub type Parsed<T> = std::result::Result<T, Invalid>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Group,
    Hom,
    Ring,
    Monoid,
    Module,
    Principal,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Group(FGAbelianGroup),
    Hom(GroupHom),
    Ring(GradedAlgebra),
    Monoid(MonoidAlgebra),
    Module(GradedModule),
    Principal(PrincipalPresentation),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Group(_) => Kind::Group,
            Document::Hom(_) => Kind::Hom,
            Document::Ring(_) => Kind::Ring,
            Document::Monoid(_) => Kind::Monoid,
            Document::Module(_) => Kind::Module,
            Document::Principal(_) => Kind::Principal,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Group(g) => group_to_json(g),
            Document::Hom(h) => hom_to_json(h),
            Document::Ring(r) => ring_to_json(r),
            Document::Monoid(m) => monoid_algebra_to_json(m),
            Document::Module(m) => module_to_json(m),
            Document::Principal(p) => principal_to_json(p),
        }
    }
}

pub fn detect_kind(v: &Value) -> Option<Kind> {
    let o = v.as_object()?;
    let has = |k: &str| o.contains_key(k);
    Some(if has("monoid") {
        Kind::Monoid
    } else if has("var_degree") {
        Kind::Principal
    } else if has("action") || has("ring") {
        Kind::Module
    } else if has("mul") || has("basis") {
        Kind::Ring
    } else if has("matrix") {
        Kind::Hom
    } else if has("free_rank") || has("torsion") {
        Kind::Group
    } else {
        return None;
    })
}

/// Checks a document against the format of its kind; empty means valid.
pub fn schema_validate(v: &Value) -> Vec<Violation> {
    match parse_document(v, None) {
        Ok(_) => Vec::new(),
        Err(Invalid(v)) => v,
    }
}

/// Parses any document. `field` overrides the scalar field of rings and
/// presentations.
pub fn parse_document(v: &Value, field: Option<Field>) -> Parsed<Document> {
    let mut cx = Cx::new(field);
    let doc = match detect_kind(v) {
        None => {
            cx.fail("", "unrecognised document: expected a group, hom, ring, monoid, module or principal form");
            None
        }
        Some(Kind::Group) => cx.group(v, "").map(Document::Group),
        Some(Kind::Hom) => cx.hom(v, "").map(Document::Hom),
        Some(Kind::Ring) => cx.ring(v, "").map(Document::Ring),
        Some(Kind::Monoid) => cx.monoid_algebra(v, "").map(Document::Monoid),
        Some(Kind::Module) => cx.module(v, "").map(Document::Module),
        Some(Kind::Principal) => cx.principal(v, "").map(Document::Principal),
    };
    cx.finish(doc)
}

pub fn parse_group(v: &Value) -> Parsed<FGAbelianGroup> {
    let mut cx = Cx::new(None);
    let r = cx.group(v, "");
    cx.finish(r)
}

pub fn parse_hom(v: &Value) -> Parsed<GroupHom> {
    let mut cx = Cx::new(None);
    let r = cx.hom(v, "");
    cx.finish(r)
}

pub fn parse_ring(v: &Value, field: Option<Field>) -> Parsed<GradedAlgebra> {
    let mut cx = Cx::new(field);
    let r = cx.ring(v, "");
    cx.finish(r)
}

pub fn parse_monoid_algebra(v: &Value, field: Option<Field>) -> Parsed<MonoidAlgebra> {
    let mut cx = Cx::new(field);
    let r = cx.monoid_algebra(v, "");
    cx.finish(r)
}

pub fn parse_module(v: &Value, field: Option<Field>) -> Parsed<GradedModule> {
    let mut cx = Cx::new(field);
    let r = cx.module(v, "");
    cx.finish(r)
}

pub fn parse_principal(v: &Value, field: Option<Field>) -> Parsed<PrincipalPresentation> {
    let mut cx = Cx::new(field);
    let r = cx.principal(v, "");
    cx.finish(r)
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

struct Cx {
    field: Option<Field>,
    out: Vec<Violation>,
}

impl Cx {
    fn new(field: Option<Field>) -> Self {
        Cx {
            field,
            out: Vec::new(),
        }
    }

    fn fail(&mut self, path: &str, rule: impl Into<String>) {
        self.out.push(Violation {
            path: path.to_string(),
            rule: rule.into(),
        });
    }

    fn finish<T>(self, r: Option<T>) -> Parsed<T> {
        match r {
            Some(t) if self.out.is_empty() => Ok(t),
            _ if self.out.is_empty() => Err(Invalid(vec![Violation {
                path: String::new(),
                rule: "invalid document".into(),
            }])),
            _ => Err(Invalid(self.out)),
        }
    }

    fn object<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a Map<String, Value>> {
        let o = v.as_object();
        if o.is_none() {
            self.fail(path, "expected an object");
        }
        o
    }

    fn key<'a>(&mut self, o: &'a Map<String, Value>, path: &str, key: &str) -> Option<&'a Value> {
        let v = o.get(key);
        if v.is_none() {
            self.fail(path, format!("missing key \"{key}\""));
        }
        v
    }

    fn array<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a Vec<Value>> {
        let a = v.as_array();
        if a.is_none() {
            self.fail(path, "expected an array");
        }
        a
    }

    fn usize(&mut self, v: &Value, path: &str) -> Option<usize> {
        let r = v.as_u64().and_then(|x| usize::try_from(x).ok());
        if r.is_none() {
            self.fail(path, "expected a non-negative integer");
        }
        r
    }

    fn index(&mut self, v: &Value, path: &str, bound: usize, what: &str) -> Option<usize> {
        let i = self.usize(v, path)?;
        if i >= bound {
            self.fail(
                path,
                format!("{what} index {i} out of range (size {bound})"),
            );
            return None;
        }
        Some(i)
    }

    fn bigint(&mut self, v: &Value, path: &str) -> Option<BigInt> {
        let r = match v {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .or_else(|| n.as_u64().map(BigInt::from)),
            Value::String(s) => s.trim().parse::<BigInt>().ok(),
            _ => None,
        };
        if r.is_none() {
            self.fail(path, "expected an integer");
        }
        r
    }

    fn i64(&mut self, v: &Value, path: &str) -> Option<i64> {
        let r = v.as_i64();
        if r.is_none() {
            self.fail(path, "expected a 64-bit integer");
        }
        r
    }

    fn int_vec(&mut self, v: &Value, path: &str) -> Option<Vec<BigInt>> {
        let a = self.array(v, path)?;
        let xs: Vec<Option<BigInt>> = a
            .iter()
            .enumerate()
            .map(|(i, x)| self.bigint(x, &index(path, i)))
            .collect();
        xs.into_iter().collect()
    }

    fn scalar(&mut self, v: &Value, path: &str, f: Field) -> Option<Scalar> {
        let raw: Option<Scalar> = match v {
            Value::Number(n) => n.as_i64().map(|x| Scalar::from_integer(BigInt::from(x))),
            Value::String(s) => s.trim().parse::<Scalar>().ok(),
            _ => None,
        };
        let Some(raw) = raw else {
            self.fail(path, "expected a scalar (integer or \"n/d\" string)");
            return None;
        };
        if let Field::Prime(p) = f {
            if num_integer::Integer::is_multiple_of(raw.denom(), &BigInt::from(p)) {
                self.fail(path, format!("denominator is not invertible in {f}"));
                return None;
            }
        }
        Some(f.normalize(raw))
    }

    fn scalar_vec(&mut self, v: &Value, path: &str, f: Field, len: usize) -> Option<Vec<Scalar>> {
        let a = self.array(v, path)?;
        if a.len() != len {
            self.fail(path, format!("expected {len} entries, found {}", a.len()));
            return None;
        }
        let xs: Vec<Option<Scalar>> = a
            .iter()
            .enumerate()
            .map(|(i, x)| self.scalar(x, &index(path, i), f))
            .collect();
        xs.into_iter().collect()
    }

    fn field(&mut self, o: &Map<String, Value>, path: &str) -> Option<Field> {
        if let Some(f) = self.field {
            return Some(f);
        }
        let p = join(path, "field");
        match o.get("field") {
            None => Some(Field::Rational),
            Some(Value::String(s)) => match s.parse::<Field>() {
                Ok(f) => Some(f),
                Err(e) => {
                    self.fail(&p, e.to_string());
                    None
                }
            },
            Some(Value::Object(m)) => {
                let q = self.key(m, &p, "p")?;
                let q = self.usize(q, &join(&p, "p"))?;
                match Field::prime(q as u64) {
                    Ok(f) => Some(f),
                    Err(_) => {
                        self.fail(&join(&p, "p"), format!("characteristic {q} is not prime"));
                        None
                    }
                }
            }
            Some(_) => {
                self.fail(&p, "expected \"Q\" or {\"p\": prime}");
                None
            }
        }
    }

    fn group(&mut self, v: &Value, path: &str) -> Option<FGAbelianGroup> {
        let o = self.object(v, path)?;
        let fr = match o.get("free_rank") {
            Some(x) => self.usize(x, &join(path, "free_rank")),
            None => Some(0),
        };
        let tp = join(path, "torsion");
        let torsion = match o.get("torsion") {
            Some(x) => self.int_vec(x, &tp),
            None => Some(Vec::new()),
        };
        let (fr, torsion) = (fr?, torsion?);
        let mut ok = true;
        for (i, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                self.fail(
                    &index(&tp, i),
                    format!("torsion factor {d} must be at least 2"),
                );
                ok = false;
            } else if i > 0
                && torsion[i - 1] >= BigInt::from(2)
                && !num_integer::Integer::is_multiple_of(d, &torsion[i - 1])
            {
                self.fail(
                    &index(&tp, i),
                    format!("torsion factor {} must divide {d}", torsion[i - 1]),
                );
                ok = false;
            }
        }
        if !ok {
            return None;
        }
        FGAbelianGroup::new(fr, torsion).ok()
    }

    fn degree(&mut self, v: &Value, path: &str, g: &FGAbelianGroup) -> Option<GroupElement> {
        let c = self.int_vec(v, path)?;
        if c.len() != g.ngens() {
            self.fail(
                path,
                format!(
                    "degree has {} coordinates, group {g} needs {}",
                    c.len(),
                    g.ngens()
                ),
            );
            return None;
        }
        g.element(c).ok()
    }

    fn degrees(
        &mut self,
        v: &Value,
        path: &str,
        g: &FGAbelianGroup,
        wrapped: bool,
    ) -> Option<Vec<GroupElement>> {
        let a = self.array(v, path)?;
        let ds: Vec<Option<GroupElement>> = a
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let p = index(path, i);
                if wrapped {
                    let o = self.object(x, &p)?;
                    let d = self.key(o, &p, "degree")?;
                    self.degree(d, &join(&p, "degree"), g)
                } else {
                    self.degree(x, &p, g)
                }
            })
            .collect();
        ds.into_iter().collect()
    }

    fn int_matrix(&mut self, v: &Value, path: &str, rows: usize, cols: usize) -> Option<IntMatrix> {
        let a = self.array(v, path)?;
        if a.len() != rows {
            self.fail(path, format!("expected {rows} rows, found {}", a.len()));
            return None;
        }
        let mut m = IntMatrix::zeros(rows, cols);
        let mut ok = true;
        for (i, r) in a.iter().enumerate() {
            let p = index(path, i);
            let Some(r) = self.int_vec(r, &p) else {
                ok = false;
                continue;
            };
            if r.len() != cols {
                self.fail(&p, format!("expected {cols} columns, found {}", r.len()));
                ok = false;
                continue;
            }
            for (j, x) in r.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        ok.then_some(m)
    }

    fn hom(&mut self, v: &Value, path: &str) -> Option<GroupHom> {
        let o = self.object(v, path)?;
        let src = self
            .key(o, path, "source")
            .and_then(|s| self.group(s, &join(path, "source")));
        let tgt = self
            .key(o, path, "target")
            .and_then(|t| self.group(t, &join(path, "target")));
        let (src, tgt) = (src?, tgt?);
        let mp = join(path, "matrix");
        let m = self.key(o, path, "matrix")?;
        let m = self.int_matrix(m, &mp, tgt.ngens(), src.ngens())?;
        match GroupHom::new(src, tgt, m) {
            Ok(h) => Some(h),
            Err(e) => {
                self.fail(&mp, e.to_string());
                None
            }
        }
    }

    /// `[[i, j, [[k, c], ...]], ...]` as a map `(i, j) → coordinates`.
    #[allow(clippy::too_many_arguments)]
    fn table(
        &mut self,
        v: &Value,
        path: &str,
        f: Field,
        left: &[GroupElement],
        right: &[GroupElement],
        group: &FGAbelianGroup,
        what: &str,
    ) -> Option<BTreeMap<(usize, usize), Vec<Scalar>>> {
        let a = self.array(v, path)?;
        let mut out = BTreeMap::new();
        let mut ok = true;
        for (n, e) in a.iter().enumerate() {
            let p = index(path, n);
            let Some(e) = self.array(e, &p) else {
                ok = false;
                continue;
            };
            if e.len() != 3 {
                self.fail(&p, "expected [i, j, [[k, c], ...]]");
                ok = false;
                continue;
            }
            let i = self.index(&e[0], &index(&p, 0), left.len(), what);
            let j = self.index(&e[1], &index(&p, 1), right.len(), "basis");
            let terms = self.array(&e[2], &index(&p, 2));
            let (Some(i), Some(j), Some(terms)) = (i, j, terms) else {
                ok = false;
                continue;
            };
            let mut coords = vec![f.zero(); right.len()];
            for (t, term) in terms.iter().enumerate() {
                let tp = index(&index(&p, 2), t);
                let Some(pair) = self.array(term, &tp) else {
                    ok = false;
                    continue;
                };
                if pair.len() != 2 {
                    self.fail(&tp, "expected [k, c]");
                    ok = false;
                    continue;
                }
                let k = self.index(&pair[0], &index(&tp, 0), right.len(), "basis");
                let c = self.scalar(&pair[1], &index(&tp, 1), f);
                let (Some(k), Some(c)) = (k, c) else {
                    ok = false;
                    continue;
                };
                if !num_traits::Zero::is_zero(&c) && group.add(&left[i], &right[j]) != right[k] {
                    self.fail(
                        &p,
                        format!(
                            "structure constant ({i},{j},{k}) links degrees {} + {} != {}",
                            left[i], right[j], right[k]
                        ),
                    );
                    ok = false;
                }
                coords[k] = f.add(&coords[k], &c);
            }
            if out.insert((i, j), coords).is_some() {
                self.fail(&p, format!("duplicate entry for ({i},{j})"));
                ok = false;
            }
        }
        ok.then_some(out)
    }

    fn ring(&mut self, v: &Value, path: &str) -> Option<GradedAlgebra> {
        let o = self.object(v, path)?;
        let f = self.field(o, path);
        let group = match o.get("group") {
            Some(g) => self.group(g, &join(path, "group")),
            None => Some(FGAbelianGroup::trivial()),
        };
        let (f, group) = (f?, group?);
        let basis = self.key(o, path, "basis")?;
        let degrees = self.degrees(basis, &join(path, "basis"), &group, true)?;
        let n = degrees.len();
        let mul = match o.get("mul") {
            Some(m) => self.table(
                m,
                &join(path, "mul"),
                f,
                &degrees,
                &degrees,
                &group,
                "basis",
            )?,
            None => BTreeMap::new(),
        };
        let unit = self.key(o, path, "unit")?;
        let unit = self.scalar_vec(unit, &join(path, "unit"), f, n)?;
        let mut structure = vec![vec![vec![f.zero(); n]; n]; n];
        for (&(i, j), c) in &mul {
            structure[i][j] = c.clone();
            if !mul.contains_key(&(j, i)) {
                structure[j][i] = c.clone();
            }
        }
        match GradedAlgebra::new(group, f, degrees, structure, unit) {
            Ok(r) => Some(r),
            Err(e) => {
                let p = match e {
                    crate::Error::BadUnit(_) => join(path, "unit"),
                    _ => join(path, "mul"),
                };
                self.fail(&p, e.to_string());
                None
            }
        }
    }

    fn monoid_algebra(&mut self, v: &Value, path: &str) -> Option<MonoidAlgebra> {
        let o = self.object(v, path)?;
        let base = match o.get("base") {
            Some(b) => self.ring(b, &join(path, "base")),
            None => {
                let f = self.field(o, path)?;
                Some(samples::trivial_field(f, FGAbelianGroup::trivial()))
            }
        };
        let mp = join(path, "monoid");
        let monoid = self.key(o, path, "monoid").and_then(|m| {
            let mo = self.object(m, &mp)?;
            let dim = self
                .key(mo, &mp, "dim")
                .and_then(|d| self.usize(d, &join(&mp, "dim")));
            let gp = join(&mp, "gens");
            let gens = self.key(mo, &mp, "gens").and_then(|g| {
                let a = self.array(g, &gp)?;
                let rows: Vec<Option<Vec<i64>>> = a
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        let rp = index(&gp, i);
                        let r = self.array(r, &rp)?;
                        let xs: Vec<Option<i64>> = r
                            .iter()
                            .enumerate()
                            .map(|(j, x)| self.i64(x, &index(&rp, j)))
                            .collect();
                        xs.into_iter().collect()
                    })
                    .collect();
                rows.into_iter().collect::<Option<Vec<_>>>()
            });
            let (dim, gens) = (dim?, gens?);
            match AffineMonoid::new(dim, gens) {
                Ok(m) => Some(m),
                Err(e) => {
                    self.fail(&gp, e.to_string());
                    None
                }
            }
        });
        let (base, monoid) = (base?, monoid?);
        let dp = join(path, "mode");
        let mode = match o.get("mode") {
            None => GradingMode::Fine,
            Some(Value::String(s)) if s == "fine" => GradingMode::Fine,
            Some(Value::String(s)) if s == "coarse" => GradingMode::Coarse,
            Some(Value::Object(m)) if m.contains_key("d") => {
                let src = FGAbelianGroup::free(monoid.ambient_dim());
                let tgt = base.group().clone();
                let mat = self.int_matrix(&m["d"], &join(&dp, "d"), tgt.ngens(), src.ngens())?;
                match GroupHom::new(src, tgt, mat) {
                    Ok(h) => GradingMode::DGraded(h),
                    Err(e) => {
                        self.fail(&join(&dp, "d"), e.to_string());
                        return None;
                    }
                }
            }
            Some(_) => {
                self.fail(&dp, "expected \"fine\", \"coarse\" or {\"d\": matrix}");
                return None;
            }
        };
        match MonoidAlgebra::new(base, monoid, mode) {
            Ok(m) => Some(m),
            Err(e) => {
                self.fail(path, e.to_string());
                None
            }
        }
    }

    fn module(&mut self, v: &Value, path: &str) -> Option<GradedModule> {
        let o = self.object(v, path)?;
        let rp = join(path, "ring");
        let ring = self.key(o, path, "ring").and_then(|r| self.ring(r, &rp))?;
        let f = ring.field();
        let group = ring.group().clone();
        let basis = self.key(o, path, "basis")?;
        let degrees = self.degrees(basis, &join(path, "basis"), &group, true)?;
        let m = degrees.len();
        let n = ring.dim();
        let act = match o.get("action") {
            Some(a) => self.table(
                a,
                &join(path, "action"),
                f,
                ring.degrees(),
                &degrees,
                &group,
                "ring basis",
            )?,
            None => BTreeMap::new(),
        };
        let mut action = vec![vec![vec![f.zero(); m]; m]; n];
        for (&(i, j), c) in &act {
            action[i][j] = c.clone();
        }
        // The unit acts as the identity unless the document says otherwise.
        if let Some(u) = (0..n).find(|&i| ring.unit() == ring.basis_vector(i).as_slice()) {
            if !act.keys().any(|&(i, _)| i == u) {
                for (j, col) in action[u].iter_mut().enumerate() {
                    col[j] = f.one();
                }
            }
        }
        match GradedModule::new(Arc::new(ring), degrees, action) {
            Ok(m) => Some(m),
            Err(e) => {
                self.fail(&join(path, "action"), e.to_string());
                None
            }
        }
    }

    fn principal(&mut self, v: &Value, path: &str) -> Option<PrincipalPresentation> {
        let o = self.object(v, path)?;
        let f = self.field(o, path);
        let vp = join(path, "var_degree");
        let raw_var = self
            .key(o, path, "var_degree")
            .and_then(|x| self.int_vec(x, &vp));
        let group = match o.get("group") {
            Some(g) => self.group(g, &join(path, "group")),
            None => raw_var.as_ref().map(|c| FGAbelianGroup::free(c.len())),
        };
        let (f, group, raw_var) = (f?, group?, raw_var?);
        if raw_var.len() != group.ngens() {
            self.fail(
                &vp,
                format!(
                    "degree has {} coordinates, group {group} needs {}",
                    raw_var.len(),
                    group.ngens()
                ),
            );
            return None;
        }
        let var = group.element(raw_var).ok()?;
        let ap = join(path, "ambient");
        let ambient = self
            .key(o, path, "ambient")
            .and_then(|a| self.degrees(a, &ap, &group, false))?;
        let gp = join(path, "gens");
        let gens = self.key(o, path, "gens").and_then(|g| self.array(g, &gp))?;
        let mut cols = Vec::new();
        let mut ok = true;
        for (c, col) in gens.iter().enumerate() {
            let cp = index(&gp, c);
            let Some(col) = self.array(col, &cp) else {
                ok = false;
                continue;
            };
            if col.len() != ambient.len() {
                self.fail(
                    &cp,
                    format!("expected {} entries, found {}", ambient.len(), col.len()),
                );
                ok = false;
                continue;
            }
            let mut entries: Vec<Monomial> = Vec::new();
            for (j, e) in col.iter().enumerate() {
                let ep = index(&cp, j);
                let pair = self.array(e, &ep);
                let Some(pair) = pair.filter(|p| p.len() == 2) else {
                    if pair.is_some() {
                        self.fail(&ep, "expected [c, k]");
                    }
                    ok = false;
                    continue;
                };
                let s = self.scalar(&pair[0], &index(&ep, 0), f);
                let k = self.usize(&pair[1], &index(&ep, 1));
                match (s, k) {
                    (Some(s), Some(k)) => entries.push((s, k as u64)),
                    _ => ok = false,
                }
            }
            cols.push(entries);
        }
        if !ok {
            return None;
        }
        match PrincipalPresentation::new(f, group, var, ambient, cols) {
            Ok(p) => Some(p),
            Err(e) => {
                self.fail(&gp, e.to_string());
                None
            }
        }
    }
}

pub use crate::serhelp::degree_key;

/// Hilbert function as `{degree: dim}`.
pub fn hilbert_json(h: &crate::gmod::HilbertFunction) -> Value {
    Value::Object(h.iter().map(|(g, n)| (degree_key(g), json!(n))).collect())
}

/// Betti table as `{step: {degree: rank}}`.
pub fn betti_json(t: &crate::ghom::BettiTable) -> Value {
    Value::Object(
        t.iter()
            .enumerate()
            .map(|(i, row)| (i.to_string(), hilbert_json(row)))
            .collect(),
    )
}

fn coords_json(g: &GroupElement) -> Value {
    Value::Array(g.coords().iter().map(bigint_json).collect())
}

fn bigint_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn scalar_json(x: &Scalar) -> Value {
    json!(format_scalar(x))
}

pub fn field_to_json(f: Field) -> Value {
    match f {
        Field::Rational => json!("Q"),
        Field::Prime(p) => json!({ "p": p }),
    }
}

pub fn group_to_json(g: &FGAbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.torsion().iter().map(bigint_json).collect::<Vec<_>>(),
    })
}

pub fn hom_to_json(h: &GroupHom) -> Value {
    let rows: Vec<Value> = h
        .matrix()
        .to_rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(bigint_json).collect()))
        .collect();
    json!({
        "source": group_to_json(h.source()),
        "target": group_to_json(h.target()),
        "matrix": rows,
    })
}

fn basis_json(degrees: &[GroupElement]) -> Value {
    Value::Array(
        degrees
            .iter()
            .map(|d| json!({ "degree": coords_json(d) }))
            .collect(),
    )
}

fn terms_json(v: &[Scalar]) -> Value {
    Value::Array(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(k, c)| json!([k, scalar_json(c)]))
            .collect(),
    )
}

pub fn ring_to_json(r: &GradedAlgebra) -> Value {
    let n = r.dim();
    let mut mul = Vec::new();
    for i in 0..n {
        for j in i..n {
            let c = r.product_of_basis(i, j);
            if c.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                mul.push(json!([i, j, terms_json(&c)]));
            }
        }
    }
    json!({
        "group": group_to_json(r.group()),
        "field": field_to_json(r.field()),
        "basis": basis_json(r.degrees()),
        "mul": mul,
        "unit": r.unit().iter().map(scalar_json).collect::<Vec<_>>(),
    })
}

pub fn monoid_algebra_to_json(m: &MonoidAlgebra) -> Value {
    let mode = match m.mode() {
        GradingMode::Fine => json!("fine"),
        GradingMode::Coarse => json!("coarse"),
        GradingMode::DGraded(d) => {
            let rows: Vec<Value> = d
                .matrix()
                .to_rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(bigint_json).collect()))
                .collect();
            json!({ "d": rows })
        }
    };
    json!({
        "base": ring_to_json(m.base()),
        "monoid": { "dim": m.monoid().ambient_dim(), "gens": m.monoid().generators() },
        "mode": mode,
    })
}

pub fn module_to_json(m: &GradedModule) -> Value {
    let mut action = Vec::new();
    for i in 0..m.algebra().dim() {
        let a = m.action(i);
        for j in 0..m.dim() {
            let col = a.col(j);
            if col.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                action.push(json!([i, j, terms_json(&col)]));
            }
        }
    }
    json!({
        "ring": ring_to_json(m.algebra()),
        "basis": basis_json(m.degrees()),
        "action": action,
    })
}

pub fn principal_to_json(p: &PrincipalPresentation) -> Value {
    let gens: Vec<Value> = p
        .gens
        .iter()
        .map(|col| {
            Value::Array(
                col.iter()
                    .map(|(c, k)| json!([scalar_json(c), k]))
                    .collect(),
            )
        })
        .collect();
    json!({
        "field": field_to_json(p.field),
        "group": group_to_json(&p.group),
        "var_degree": coords_json(&p.var_degree),
        "ambient": p.ambient.iter().map(coords_json).collect::<Vec<_>>(),
        "gens": gens,
    })
}
