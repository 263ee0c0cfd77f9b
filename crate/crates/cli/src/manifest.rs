//! Line-oriented text format for rings, modules, morphisms, complexes and short exact
//! sequences.
//!
//! ```text
//! ring Z
//! module A 2 1
//!   2
//!   0
//! module B = Z/2 + Z^2
//! morphism f A B
//!   1 0
//!   0 1
//!   0 0
//! complex C
//!   deg 0 B
//!   deg 1 A
//!   d 1 f
//! ses S f g
//! ```
//!
//! `module <name> <gens> <rels>` is followed by `gens` rows of `rels` integers, and
//! `morphism <name> <src> <dst>` by one row per generator of `dst`. Rows are omitted when they
//! would be empty. `d n f` is the differential out of degree `n`. `#` starts a comment.
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use homalg::chaincx::ChainComplex;
use homalg::exactlin::{Int, IntMatrix};
use homalg::fgmod::{FgModule, ModMorphism, Ring, SesWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    Unresolved,
    Invariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::Unresolved => "unresolved reference",
            DiagnosticKind::Invariant => "invariant violation",
        };
        write!(f, "line {}, col {}: {kind}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: ModMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedComplex {
    pub name: String,
    pub terms: BTreeMap<i64, String>,
    pub diffs: BTreeMap<i64, String>,
    pub complex: ChainComplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSes {
    pub name: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub ring: Ring,
    pub modules: Vec<(String, FgModule)>,
    pub morphisms: Vec<NamedMorphism>,
    pub complexes: Vec<NamedComplex>,
    pub sequences: Vec<NamedSes>,
}

impl Manifest {
    pub fn new(ring: Ring) -> Self {
        Self { ring, modules: Vec::new(), morphisms: Vec::new(), complexes: Vec::new(), sequences: Vec::new() }
    }

    pub fn module(&self, name: &str) -> Option<&FgModule> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn morphism(&self, name: &str) -> Option<&NamedMorphism> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    pub fn complex(&self, name: &str) -> Option<&NamedComplex> {
        self.complexes.iter().find(|c| c.name == name)
    }

    pub fn add_module(&mut self, name: &str, m: &FgModule) {
        self.modules.push((name.to_string(), m.clone()));
    }

    /// Adds a morphism together with fresh modules for its ends.
    pub fn add_morphism(&mut self, name: &str, f: &ModMorphism) {
        let (s, t) = (format!("{name}_src"), format!("{name}_dst"));
        self.add_module(&s, f.source());
        self.add_module(&t, f.target());
        self.morphisms.push(NamedMorphism { name: name.into(), source: s, target: t, map: f.clone() });
    }

    /// Adds a complex with one module per degree and one morphism per differential.
    pub fn add_complex(&mut self, name: &str, c: &ChainComplex) {
        let tag = |n: i64| if n < 0 { format!("m{}", -n) } else { n.to_string() };
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        if !c.is_empty_support() {
            for n in c.degrees() {
                let m = format!("{name}_{}", tag(n));
                self.add_module(&m, &c.term(n));
                terms.insert(n, m);
            }
            for n in c.lo() + 1..=c.hi() {
                let f = format!("{name}_d{}", tag(n));
                self.morphisms.push(NamedMorphism {
                    name: f.clone(),
                    source: terms[&n].clone(),
                    target: terms[&(n - 1)].clone(),
                    map: c.d(n),
                });
                diffs.insert(n, f);
            }
        }
        self.complexes.push(NamedComplex { name: name.into(), terms, diffs, complex: c.clone() });
    }

    pub fn print(&self) -> String {
        let mut out = format!("ring {}\n", self.ring);
        for (name, m) in &self.modules {
            let r = m.relations();
            out += &format!("module {name} {} {}\n", m.num_generators(), r.cols());
            out += &rows(r);
        }
        for f in &self.morphisms {
            out += &format!("morphism {} {} {}\n", f.name, f.source, f.target);
            out += &rows(f.map.matrix());
        }
        for c in &self.complexes {
            out += &format!("complex {}\n", c.name);
            for (n, m) in &c.terms {
                out += &format!("  deg {n} {m}\n");
            }
            for (n, f) in &c.diffs {
                out += &format!("  d {n} {f}\n");
            }
        }
        for s in &self.sequences {
            out += &format!("ses {} {} {}\n", s.name, s.left, s.right);
        }
        out
    }
}

/// Header line, name, and raw `(line, degree, name, is_deg)` entries of a complex block.
type PendingComplex = (usize, String, Vec<(usize, i64, String, bool)>);

fn rows(m: &IntMatrix) -> String {
    if m.cols() == 0 {
        return String::new();
    }
    let mut out = String::new();
    for i in 0..m.rows() {
        let r: Vec<String> = m.row(i).iter().map(Int::to_string).collect();
        out += &format!("  {}\n", r.join(" "));
    }
    out
}

/// `0`, `Z`, `Z^k`, `Z/n`, `Z/n^k` joined by `+`. `Z` is the ring itself.
pub fn parse_module_description(ring: Ring, s: &str) -> Result<FgModule, String> {
    let mut factors: Vec<Int> = Vec::new();
    for part in s.split('+') {
        let part = part.trim();
        if part == "0" {
            continue;
        }
        let (base, count) = match part.rsplit_once('^') {
            Some((b, k)) => (b.trim(), k.trim().parse::<usize>().map_err(|_| format!("bad exponent in `{part}`"))?),
            None => (part, 1),
        };
        let d = if base == "Z" {
            ring.free_factor()
        } else if let Some(n) = base.strip_prefix("Z/") {
            let n: Int = n.trim().parse().map_err(|_| format!("bad modulus in `{part}`"))?;
            if n < Int::from(1) {
                return Err(format!("modulus must be positive in `{part}`"));
            }
            n
        } else {
            return Err(format!("cannot read module `{part}`"));
        };
        if let Some(q) = ring.modulus() {
            if &q % &d != Int::from(0) {
                return Err(format!("Z/{d} is not a module over {ring}"));
            }
        }
        factors.extend(std::iter::repeat_n(d, count));
    }
    Ok(FgModule::from_factors(ring, &factors))
}

#[derive(Clone)]
struct Line<'a> {
    no: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, ch) in body.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s, &body[s..j]));
                }
            } else if start.is_none() {
                start = Some(j);
            }
        }
        if let Some(s) = start {
            tokens.push((s, &body[s..]));
        }
        if !tokens.is_empty() {
            out.push(Line { no: i + 1, tokens });
        }
    }
    out
}

fn diag(line: &Line, tok: usize, kind: DiagnosticKind, message: impl Into<String>) -> Diagnostic {
    let col = line.tokens.get(tok).map_or_else(|| line.tokens.last().map_or(0, |t| t.0 + t.1.len()), |t| t.0) + 1;
    Diagnostic { line: line.no, col, kind, message: message.into() }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-')
}

fn is_row(line: &Line) -> bool {
    line.tokens.iter().all(|(_, t)| t.parse::<Int>().is_ok())
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn name(&self, line: &Line, tok: usize) -> Result<String, Diagnostic> {
        match line.tokens.get(tok) {
            Some((_, t)) if valid_name(t) => Ok(t.to_string()),
            Some((_, t)) => Err(diag(line, tok, DiagnosticKind::Syntax, format!("invalid name `{t}`"))),
            None => Err(diag(line, tok, DiagnosticKind::Syntax, "expected a name")),
        }
    }

    fn count(&self, line: &Line, tok: usize) -> Result<usize, Diagnostic> {
        match line.tokens.get(tok) {
            Some((_, t)) => t.parse().map_err(|_| diag(line, tok, DiagnosticKind::Syntax, format!("expected a count, found `{t}`"))),
            None => Err(diag(line, tok, DiagnosticKind::Syntax, "expected a count")),
        }
    }

    fn arity(&self, line: &Line, n: usize) -> Result<(), Diagnostic> {
        if line.tokens.len() > n {
            return Err(diag(line, n, DiagnosticKind::Syntax, "unexpected token"));
        }
        if line.tokens.len() < n {
            return Err(diag(line, line.tokens.len(), DiagnosticKind::Syntax, "missing argument"));
        }
        Ok(())
    }

    /// `rows` lines of `cols` integers.
    fn matrix(&mut self, header: usize, rows: usize, cols: usize) -> Result<IntMatrix, Diagnostic> {
        let mut m = IntMatrix::zeros(rows, cols);
        if cols == 0 {
            return Ok(m);
        }
        for i in 0..rows {
            let Some(line) = self.lines.get(self.pos) else {
                let h = &self.lines[header];
                return Err(diag(h, 0, DiagnosticKind::Syntax, format!("expected {rows} rows, found {i}")));
            };
            if !is_row(line) {
                let bad = line.tokens.iter().position(|(_, t)| t.parse::<Int>().is_err()).unwrap_or(0);
                return Err(diag(line, bad, DiagnosticKind::Syntax, format!("expected row {} of {rows}", i + 1)));
            }
            if line.tokens.len() != cols {
                let tok = line.tokens.len().min(cols);
                return Err(diag(line, tok, DiagnosticKind::Syntax, format!("expected {cols} entries, found {}", line.tokens.len())));
            }
            for (j, (_, t)) in line.tokens.iter().enumerate() {
                m.set(i, j, t.parse().expect("checked"));
            }
            self.pos += 1;
        }
        Ok(m)
    }
}

pub fn parse(text: &str) -> Result<Manifest, Diagnostic> {
    let mut p = Parser { lines: tokenize(text), pos: 0 };
    let first = p.lines.first().ok_or(Diagnostic {
        line: 1,
        col: 1,
        kind: DiagnosticKind::Syntax,
        message: "empty manifest; expected `ring`".into(),
    })?;
    if first.tokens[0].1 != "ring" {
        return Err(diag(first, 0, DiagnosticKind::Syntax, "manifest must start with `ring`"));
    }
    p.arity(first, 2)?;
    let ring: Ring = first.tokens[1].1.parse().map_err(|e| diag(first, 1, DiagnosticKind::Syntax, format!("{e}")))?;
    let mut man = Manifest::new(ring);
    let mut seen: HashMap<String, (usize, usize)> = HashMap::new();
    p.pos = 1;
    let mut current_complex: Option<(usize, usize)> = None;
    let mut pending: Vec<PendingComplex> = Vec::new();
    while p.pos < p.lines.len() {
        let idx = p.pos;
        let line = &p.lines[idx].clone();
        let kw = line.tokens[0].1;
        p.pos += 1;
        let fresh = |name: &str, seen: &mut HashMap<String, (usize, usize)>, line: &Line| -> Result<(), Diagnostic> {
            if let Some((l, _)) = seen.get(name) {
                return Err(diag(line, 1, DiagnosticKind::Syntax, format!("`{name}` already declared on line {l}")));
            }
            seen.insert(name.to_string(), (line.no, 0));
            Ok(())
        };
        match kw {
            "module" => {
                current_complex = None;
                let name = p.name(line, 1)?;
                if line.tokens.get(2).map(|t| t.1) == Some("=") {
                    if line.tokens.len() < 4 {
                        return Err(diag(line, 3, DiagnosticKind::Syntax, "expected a module description"));
                    }
                    let desc: Vec<&str> = line.tokens[3..].iter().map(|t| t.1).collect();
                    let m = parse_module_description(ring, &desc.join(" ")).map_err(|e| diag(line, 3, DiagnosticKind::Syntax, e))?;
                    fresh(&name, &mut seen, line)?;
                    man.modules.push((name, m));
                } else {
                    p.arity(line, 4)?;
                    let (gens, rels) = (p.count(line, 2)?, p.count(line, 3)?);
                    fresh(&name, &mut seen, line)?;
                    let m = p.matrix(idx, gens, rels)?;
                    man.modules.push((name, FgModule::new(ring, m)));
                }
            }
            "morphism" => {
                current_complex = None;
                p.arity(line, 4)?;
                let name = p.name(line, 1)?;
                let (src, dst) = (p.name(line, 2)?, p.name(line, 3)?);
                let a = man.module(&src).cloned().ok_or_else(|| diag(line, 2, DiagnosticKind::Unresolved, format!("no module `{src}`")))?;
                let b = man.module(&dst).cloned().ok_or_else(|| diag(line, 3, DiagnosticKind::Unresolved, format!("no module `{dst}`")))?;
                fresh(&name, &mut seen, line)?;
                let rows = if a.num_generators() == 0 { 0 } else { b.num_generators() };
                let m = p.matrix(idx, rows, a.num_generators())?;
                let m = if rows == 0 { IntMatrix::zeros(b.num_generators(), a.num_generators()) } else { m };
                let map = ModMorphism::new(&a, &b, m).map_err(|e| diag(line, 1, DiagnosticKind::Invariant, format!("`{name}`: {e}")))?;
                man.morphisms.push(NamedMorphism { name, source: src, target: dst, map });
            }
            "complex" => {
                p.arity(line, 2)?;
                let name = p.name(line, 1)?;
                fresh(&name, &mut seen, line)?;
                pending.push((idx, name, Vec::new()));
                current_complex = Some((idx, pending.len() - 1));
            }
            "deg" | "d" => {
                let Some((_, k)) = current_complex else {
                    return Err(diag(line, 0, DiagnosticKind::Syntax, format!("`{kw}` outside a complex")));
                };
                p.arity(line, 3)?;
                let n: i64 = line.tokens[1].1.parse().map_err(|_| diag(line, 1, DiagnosticKind::Syntax, "expected a degree"))?;
                let target = p.name(line, 2)?;
                let entries = &mut pending[k].2;
                if entries.iter().any(|(_, m, _, is_d)| *m == n && *is_d == (kw == "d")) {
                    return Err(diag(line, 1, DiagnosticKind::Syntax, format!("degree {n} given twice")));
                }
                entries.push((idx, n, target, kw == "d"));
            }
            "ses" => {
                current_complex = None;
                p.arity(line, 4)?;
                let name = p.name(line, 1)?;
                let (l, r) = (p.name(line, 2)?, p.name(line, 3)?);
                let u = man.morphism(&l).ok_or_else(|| diag(line, 2, DiagnosticKind::Unresolved, format!("no morphism `{l}`")))?;
                let v = man.morphism(&r).ok_or_else(|| diag(line, 3, DiagnosticKind::Unresolved, format!("no morphism `{r}`")))?;
                SesWitness::new(u.map.clone(), v.map.clone())
                    .map_err(|e| diag(line, 1, DiagnosticKind::Invariant, format!("`{name}` is not short exact: {e}")))?;
                fresh(&name, &mut seen, line)?;
                man.sequences.push(NamedSes { name, left: l, right: r });
            }
            _ if is_row(line) => return Err(diag(line, 0, DiagnosticKind::Syntax, "unexpected row")),
            _ => return Err(diag(line, 0, DiagnosticKind::Syntax, format!("unknown keyword `{kw}`"))),
        }
    }
    for (header, name, entries) in pending {
        man.complexes.push(build_complex(&p.lines, &man, header, name, entries)?);
    }
    Ok(man)
}

fn build_complex(
    lines: &[Line],
    man: &Manifest,
    header: usize,
    name: String,
    entries: Vec<(usize, i64, String, bool)>,
) -> Result<NamedComplex, Diagnostic> {
    let mut terms = BTreeMap::new();
    let mut term_names = BTreeMap::new();
    for (i, n, m, is_d) in &entries {
        if *is_d {
            continue;
        }
        let module = man.module(m).ok_or_else(|| diag(&lines[*i], 2, DiagnosticKind::Unresolved, format!("no module `{m}`")))?;
        terms.insert(*n, module.clone());
        term_names.insert(*n, m.clone());
    }
    let mut diffs = BTreeMap::new();
    let mut diff_names = BTreeMap::new();
    for (i, n, f, is_d) in &entries {
        if !*is_d {
            continue;
        }
        let line = &lines[*i];
        let g = man.morphism(f).ok_or_else(|| diag(line, 2, DiagnosticKind::Unresolved, format!("no morphism `{f}`")))?;
        let zero = FgModule::zero(man.ring);
        let (s, t) = (terms.get(n).unwrap_or(&zero), terms.get(&(n - 1)).unwrap_or(&zero));
        if g.map.source() != s || g.map.target() != t {
            return Err(diag(line, 2, DiagnosticKind::Invariant, format!("`{f}` does not map degree {n} to degree {}", n - 1)));
        }
        diffs.insert(*n, g.map.clone());
        diff_names.insert(*n, f.clone());
    }
    for (&n, d) in &diffs {
        if let Some(below) = diffs.get(&(n - 1)) {
            if !below.after(d).is_zero() {
                let i = entries.iter().find(|e| e.3 && e.1 == n).expect("entry").0;
                return Err(diag(&lines[i], 1, DiagnosticKind::Invariant, format!("d∘d != 0 in degree {n} of `{name}`")));
            }
        }
    }
    let complex =
        ChainComplex::from_maps(man.ring, &terms, &diffs).map_err(|e| diag(&lines[header], 1, DiagnosticKind::Invariant, e.to_string()))?;
    Ok(NamedComplex { name, terms: term_names, diffs: diff_names, complex })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "ring Z
module Z1 1 0
module Z2 1 1
  2
morphism two Z1 Z1
  2
morphism q Z1 Z2
  1
complex C
  deg 0 Z1
  deg 1 Z1
  d 1 two
";

    #[test]
    fn minimal() {
        let m = parse("ring Z\nmodule A = Z\n").unwrap();
        assert_eq!(m.module("A").unwrap().num_generators(), 1);
    }

    #[test]
    fn round_trip() {
        let m = parse(SAMPLE).unwrap();
        assert_eq!(m.print(), SAMPLE);
        assert_eq!(parse(&m.print()).unwrap(), m);
    }

    #[test]
    fn descriptions() {
        let m = parse_module_description(Ring::Integers, "Z/2 + Z^2").unwrap();
        assert_eq!(m.describe(), "Z/2 + Z^2");
        assert!(parse_module_description(Ring::from_modulus(4).unwrap(), "Z/3").is_err());
        assert_eq!(parse_module_description(Ring::Integers, "0").unwrap().num_generators(), 0);
    }

    #[test]
    fn square_nonzero_names_degree() {
        let text = "ring Z\nmodule A = Z\nmorphism one A A\n  1\ncomplex C\n  deg 0 A\n  deg 1 A\n  deg 2 A\n  d 1 one\n  d 2 one\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::Invariant);
        assert!(e.message.contains("degree 2"), "{e}");
        assert_eq!(e.line, 10);
    }

    #[test]
    fn diagnostics() {
        let e = parse("ring Z\nmodule A 1 1\n  x\n").unwrap_err();
        assert_eq!((e.line, e.col, e.kind), (3, 3, DiagnosticKind::Syntax));
        let e = parse("ring Z\nmorphism f A A\n").unwrap_err();
        assert_eq!((e.line, e.col, e.kind), (2, 12, DiagnosticKind::Unresolved));
        let e = parse("ring Z\nmodule A = Z\nmorphism f A A\n  1\nmodule B = Z/2\nmorphism g A B\n  1\nses S f g\n").unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::Invariant);
        let e = parse("ring Z/6\n").unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::Syntax);
        assert!(parse("").is_err());
    }

    #[test]
    fn generated_complexes_round_trip() {
        let mut r = homalg::random::rng(2);
        for ring in [Ring::Integers, Ring::from_modulus(4).unwrap()] {
            let c = homalg::random::bounded_free_complex(&mut r, ring, -2..=1, 4, 3, 4);
            let mut m = Manifest::new(ring);
            m.add_complex("C", &c);
            let back = parse(&m.print()).unwrap();
            assert_eq!(back, m);
            assert_eq!(back.complex("C").unwrap().complex, c);
        }
    }
}
