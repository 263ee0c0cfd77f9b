use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;

use homalg::chaincx::{homology, ChainComplex};
use homalg::exactlin::{snf, Int};
use homalg::fgmod::{FgModule, Ring};
use homalg::torkun::{kunneth_report, kunneth_splits, tor};
use homalg::verify::{self, Failure, SuiteReport};

use crate::manifest::{parse, parse_module_description, Manifest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "homalg", version, about = "Exact homological algebra over Z and Z/p^k")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Ring for commands that take one, `Z` or `Z/p^k`.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub cases: Option<usize>,
    #[arg(long, global = true)]
    pub bound: Option<i64>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homology of the complexes in a manifest.
    Homology {
        manifest: PathBuf,
        #[arg(long)]
        complex: Option<String>,
    },
    /// Tor_n of two modules given as descriptions such as `Z/2 + Z`.
    Tor {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        /// Tabulate Tor_1 and Tor_2 of Z/a, Z/b for 1 <= a, b <= TABLE against gcd(a, b).
        #[arg(long)]
        table: Option<i64>,
    },
    /// The Kunneth sequence for the first complexes of two manifests.
    Kunneth {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Smith normal form of each morphism in a manifest, or the random suite without one.
    Snf { manifest: Option<PathBuf> },
    /// Random tensor-hom and cotensor round trips.
    VerifyAdjunctions,
    /// Differentials, adjunctions, Leibniz, translations, cones and connecting maps.
    VerifySigns,
    /// Kunneth on random pairs of free complexes over Z.
    VerifyKunnethRandom,
    /// Exhaustive orthogonality checks over all modules of order at most `--bound`.
    OrthlabSweep,
}

/// Text and exit code of one run.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self { text: format!("error: {}\n", msg.into()), code: 2 }
    }
}

fn read_manifest(path: &Path) -> Result<Manifest, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|d| Outcome::usage(format!("{}: {d}", path.display())))
}

fn ring_flag(cli: &Cli, default: Ring) -> Result<Ring, Outcome> {
    match &cli.ring {
        None => Ok(default),
        Some(s) => s.parse().map_err(|e| Outcome::usage(format!("--ring: {e}"))),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let out = match &cli.command {
        Command::Homology { manifest, complex } => cmd_homology(cli, manifest, complex.as_deref()),
        Command::Tor { n, left, right, table } => cmd_tor(cli, *n, left.as_deref(), right.as_deref(), *table),
        Command::Kunneth { left, right } => cmd_kunneth(cli, left, right),
        Command::Snf { manifest } => cmd_snf(cli, manifest.as_deref()),
        Command::VerifyAdjunctions => Ok(suite(cli, &[verify::adjunction_suite(cli.seed, cli.cases.unwrap_or(200))])),
        Command::VerifySigns => {
            let cases = cli.cases.unwrap_or(200);
            Ok(suite(cli, &[verify::sign_suite(cli.seed, cases), verify::connecting_suite(cli.seed, cases / 2)]))
        }
        Command::VerifyKunnethRandom => Ok(suite(cli, &[verify::kunneth_random(cli.seed, cli.cases.unwrap_or(200))])),
        Command::OrthlabSweep => cmd_orthlab(cli),
    };
    let out = out.unwrap_or_else(|o| o);
    if let (Some(path), true) = (&cli.report, out.code != 2) {
        let path = match std::env::var_os("HOMALG_REPORT_DIR") {
            Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
            _ => path.clone(),
        };
        if let Err(e) = std::fs::write(&path, &out.text) {
            return Outcome::usage(format!("{}: {e}", path.display()));
        }
    }
    out
}

fn cmd_homology(cli: &Cli, path: &Path, only: Option<&str>) -> Result<Outcome, Outcome> {
    let man = read_manifest(path)?;
    let selected: Vec<_> = man.complexes.iter().filter(|c| only.is_none_or(|o| o == c.name)).collect();
    if selected.is_empty() {
        return Err(Outcome::usage("no matching complex"));
    }
    let mut human = String::new();
    let mut machine = Manifest::new(man.ring);
    for c in selected {
        let h = homology(&c.complex);
        for n in c.complex.degrees() {
            let m = h.module(n).canonical_module();
            human += &format!("{}: H_{n} = {}\n", c.name, m.describe());
            machine.add_module(&format!("H_{}_{}", c.name, tag(n)), &m);
        }
    }
    Ok(Outcome::ok(match cli.format {
        Format::Human => human,
        Format::Machine => format!("# command: homology\n{}", machine.print()),
    }))
}

fn tag(n: i64) -> String {
    if n < 0 {
        format!("m{}", -n)
    } else {
        n.to_string()
    }
}

fn cmd_tor(cli: &Cli, n: usize, left: Option<&str>, right: Option<&str>, table: Option<i64>) -> Result<Outcome, Outcome> {
    let ring = ring_flag(cli, Ring::Integers)?;
    if let Some(max) = table {
        return Ok(tor_table(cli, max));
    }
    let (Some(l), Some(r)) = (left, right) else {
        return Err(Outcome::usage("tor needs --left and --right, or --table"));
    };
    let a = parse_module_description(ring, l).map_err(|e| Outcome::usage(format!("--left: {e}")))?;
    let b = parse_module_description(ring, r).map_err(|e| Outcome::usage(format!("--right: {e}")))?;
    let t = tor(n, &a, &b).map_err(|e| Outcome { text: format!("error: {e}\n"), code: 1 })?.canonical_module();
    Ok(Outcome::ok(match cli.format {
        Format::Human => format!("{}\n", t.describe()),
        Format::Machine => {
            let mut m = Manifest::new(ring);
            m.add_module("left", &a);
            m.add_module("right", &b);
            m.add_module(&format!("tor{n}"), &t);
            format!("# command: tor\n# n: {n}\n{}", m.print())
        }
    }))
}

fn tor_table(cli: &Cli, max: i64) -> Outcome {
    let z = Ring::Integers;
    let mut text = String::new();
    let mut failures = 0;
    for a in 1..=max {
        for b in 1..=max {
            let (ma, mb) = (FgModule::cyclic(z, a), FgModule::cyclic(z, b));
            let t1 = tor(1, &ma, &mb).map(|t| t.describe()).unwrap_or_else(|e| format!("error {e}"));
            let t2 = tor(2, &ma, &mb).map(|t| t.describe()).unwrap_or_else(|e| format!("error {e}"));
            let expected = FgModule::cyclic(z, a.gcd(&b)).describe();
            let ok = t1 == expected && t2 == "0";
            failures += usize::from(!ok);
            text += &match cli.format {
                Format::Human => format!("Tor1(Z/{a}, Z/{b}) = {t1}; Tor2 = {t2}{}\n", if ok { "" } else { "  MISMATCH" }),
                Format::Machine => format!("# tor {a} {b} {t1} | {t2} | {}\n", if ok { "ok" } else { "fail" }),
            };
        }
    }
    let pairs = max * max;
    text += &format!("{}{pairs} pairs, {failures} failures\n", if cli.format == Format::Machine { "# " } else { "" });
    Outcome { text, code: i32::from(failures > 0) }
}

fn first_complex(path: &Path) -> Result<(String, ChainComplex), Outcome> {
    let man = read_manifest(path)?;
    let c = man.complexes.first().ok_or_else(|| Outcome::usage(format!("{}: no complex", path.display())))?;
    Ok((c.name.clone(), c.complex.clone()))
}

fn cmd_kunneth(cli: &Cli, left: &Path, right: &Path) -> Result<Outcome, Outcome> {
    let (ln, l) = first_complex(left)?;
    let (rn, r) = first_complex(right)?;
    if l.ring() != r.ring() {
        return Err(Outcome::usage("complexes over different rings"));
    }
    let violation = |e: homalg::error::Error| Outcome { text: format!("error: {e}\n"), code: 1 };
    let rep = kunneth_report(&l, &r).map_err(violation)?;
    let splits = kunneth_splits(&l, &r).map_err(violation)?;
    let ok = rep.exact() && splits;
    let mut text = String::new();
    match cli.format {
        Format::Human => {
            text += &format!("kunneth {ln} (x) {rn} over {}\n", l.ring());
            for d in &rep.degrees {
                text += &format!(
                    "degree {}: T(H,H) = {}, H(T) = {}, Tor = {}, gamma mono: {}, cokernel = Tor: {}\n",
                    d.n,
                    d.left_term.describe(),
                    d.middle.describe(),
                    d.right_term.describe(),
                    yes(d.gamma_mono),
                    yes(d.cokernel_matches)
                );
            }
            text += &format!("exact: {}\nsplits: {}\n", yes(rep.exact()), yes(splits));
        }
        Format::Machine => {
            text += &format!("# command: kunneth\n# exact: {}\n# splits: {}\n", yes(rep.exact()), yes(splits));
            let mut m = Manifest::new(l.ring());
            for d in &rep.degrees {
                text += &format!("# degree {}: gamma_mono {} cokernel_matches {}\n", d.n, yes(d.gamma_mono), yes(d.cokernel_matches));
                let t = tag(d.n);
                m.add_module(&format!("left_{t}"), &d.left_term.canonical_module());
                m.add_module(&format!("middle_{t}"), &d.middle.canonical_module());
                m.add_module(&format!("right_{t}"), &d.right_term.canonical_module());
            }
            text += &m.print();
        }
    }
    if !ok {
        let mut m = Manifest::new(l.ring());
        m.add_complex("left", &l);
        m.add_complex("right", &r);
        text += &format!("counterexample:\n{}", m.print());
    }
    Ok(Outcome { text, code: i32::from(!ok) })
}

fn cmd_snf(cli: &Cli, path: Option<&Path>) -> Result<Outcome, Outcome> {
    let Some(path) = path else {
        let r = verify::snf_suite(cli.seed, cli.cases.unwrap_or(500), 8, cli.bound.unwrap_or(9));
        return Ok(suite(cli, &[r]));
    };
    let man = read_manifest(path)?;
    let mut text = String::new();
    for f in &man.morphisms {
        let s = snf(f.map.matrix());
        let d: Vec<String> = s.diagonal().iter().map(Int::to_string).collect();
        text += &match cli.format {
            Format::Human => format!("{}: rank {}, invariant factors [{}]\n", f.name, s.rank(), d.join(", ")),
            Format::Machine => format!("# snf {} rank {} factors {}\n", f.name, s.rank(), d.join(" ")),
        };
    }
    Ok(Outcome::ok(text))
}

fn cmd_orthlab(cli: &Cli) -> Result<Outcome, Outcome> {
    let ring = ring_flag(cli, Ring::from_modulus(4).expect("ring"))?;
    if ring.is_integers() {
        return Err(Outcome::usage("orthlab-sweep needs --ring Z/p^k"));
    }
    let max = cli.bound.unwrap_or(16);
    if max < 1 {
        return Err(Outcome::usage("--bound must be positive"));
    }
    Ok(suite(cli, &[verify::orthlab_sweep(ring, max as u64)]))
}

/// Replayable manifest for a failure.
pub fn failure_manifest(f: &Failure) -> Manifest {
    let ring = f
        .complexes
        .first()
        .map(|c| c.1.ring())
        .or_else(|| f.modules.first().map(|m| m.1.ring()))
        .or_else(|| f.morphisms.first().map(|m| m.1.source().ring()))
        .unwrap_or(Ring::Integers);
    let mut m = Manifest::new(ring);
    for (name, c) in &f.complexes {
        m.add_complex(name, c);
    }
    for (name, x) in &f.modules {
        m.add_module(name, x);
    }
    for (name, x) in &f.morphisms {
        m.add_morphism(name, x);
    }
    m
}

fn suite(cli: &Cli, reports: &[SuiteReport]) -> Outcome {
    let mut text = String::new();
    let mut failed = false;
    for r in reports {
        failed |= !r.passed();
        match cli.format {
            Format::Human => {
                text += &format!("{} [{}]\n", r.summary(), if r.passed() { "PASS" } else { "FAIL" });
                for f in &r.failures {
                    text += &format!("failure in case {}: {}\nreplay manifest:\n{}", f.case, f.check, failure_manifest(f).print());
                }
            }
            Format::Machine => {
                text += &format!("# suite: {}\n# cases: {}\n# checks: {}\n# failures: {}\n", r.name, r.cases, r.checks, r.failures.len());
                for f in &r.failures {
                    text += &format!("# failure case {}: {}\n{}", f.case, f.check, failure_manifest(f).print());
                }
            }
        }
    }
    Outcome { text, code: i32::from(failed) }
}
