//! The `lietor` command line: one subcommand per operation family, JSON
//! reports on stdout.
//!
//! Exit codes: 0 when every verification passes, 2 when one fails, 1 for
//! usage errors, malformed input and window misconfiguration.

use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::galg::examples;
use crate::galg::{check_graded_form, AlgebraElement, GradedAlgebra, Twist, TwistedLoopPair};
use crate::lattice::{CosetUnion, LatticePoint, Window};
use crate::refspace::{self, GeneratorSet, Rule, ZKind};
use crate::rootsys::{RootSystem, RootType};
use crate::torus::{self, Classification, ShiftHom, Status};

/// Seed for randomized checks when `LIETOR_SEED` is unset.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// The seed from `LIETOR_SEED`, or [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("LIETOR_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

#[derive(Parser, Debug)]
#[command(name = "lietor", version, about = "Reflection spaces, graded loop algebras and Lie tori in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closure of a generator set under a reflection rule, restricted to an inner box.
    Closure {
        #[arg(long)]
        gens: String,
        #[arg(long, default_value = "reflection")]
        rule: Rule,
        /// Outer box: a radius or a JSON window.
        #[arg(long = "box")]
        outer: String,
        /// Inner box; defaults to a quarter of the outer box.
        #[arg(long)]
        inner: Option<String>,
    },
    /// Closed form of a space generated in Z.
    Classify {
        #[arg(long)]
        gens: String,
        #[arg(long, default_value = "reflection")]
        rule: Rule,
    },
    /// Closed form of the space generated by two points.
    Formula {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "reflection")]
        rule: Rule,
        /// Window used for the brute-force comparison.
        #[arg(long)]
        inner: Option<String>,
    },
    /// Membership and enumeration for a coset union.
    CosetCheck {
        #[arg(long)]
        union: String,
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        window: Option<String>,
    },
    /// A classical root system and its standard reflectable base.
    Rootsys {
        #[arg(long = "type")]
        kind: RootType,
        #[arg(long)]
        rank: usize,
        /// Candidate base to test, as a JSON list of roots.
        #[arg(long)]
        base: Option<String>,
    },
    /// Support of one weight of an algebra.
    Support {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        inner: Option<String>,
    },
    /// Subalgebra generated by homogeneous elements.
    Subalgebra {
        #[arg(long)]
        algebra: String,
        /// JSON list of elements, each a list of [i, j, exponent, coefficient].
        #[arg(long)]
        gens: String,
        #[arg(long)]
        window: Option<String>,
    },
    /// Isotope by a shift given on a reflectable base.
    Isotope {
        #[arg(long)]
        algebra: String,
        /// JSON {"base": [...], "images": [...]}, or just the images on the standard base.
        #[arg(long)]
        shift: String,
    },
    /// Shift to a normal torus.
    Normalize {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        inner: Option<String>,
    },
    /// Lie torus axioms on an inner window.
    CheckAxioms {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        inner: Option<String>,
    },
    /// LEARS pairs and axioms A1-A4.
    Lears {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        inner: Option<String>,
    },
    /// Twisted loop algebras T(D), T(C) and the isotopy between them.
    Twisted {
        #[arg(long)]
        ell: usize,
        /// Inner degree window (radius or JSON); the algebras are built on three times it.
        #[arg(long)]
        window: String,
        /// Write the dimension table as CSV to this path ("-" for stdout, report to stderr).
        #[arg(long)]
        csv: Option<String>,
    },
    /// Graded trace form and coroot identity checks.
    FormCheck {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        inner: Option<String>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), status: if ok { Status::Pass } else { Status::Fail } }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub results: Value,
    pub verification: Vec<Check>,
    pub verified: bool,
    pub duration_ms: u128,
}

/// What a subcommand produced before timing and the verdict are attached.
struct Outcome {
    results: Value,
    checks: Vec<Check>,
    csv: Option<(String, String)>,
}

impl Outcome {
    fn new(results: Value, checks: Vec<Check>) -> Self {
        Outcome { results, checks, csv: None }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    match execute(cli.command) {
        Ok(out) => {
            let verified = out.checks.iter().all(|c| c.status != Status::Fail);
            let report = RunReport {
                command: echo.join(" "),
                results: out.results,
                verification: out.checks,
                verified,
                duration_ms: start.elapsed().as_millis(),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            match out.csv {
                Some((path, table)) if path == "-" => {
                    emit(&table);
                    eprintln!("{text}");
                }
                Some((path, table)) => {
                    if let Err(e) = std::fs::write(&path, table) {
                        eprintln!("error: cannot write {path}: {e}");
                        return 1;
                    }
                    emit(&format!("{text}\n"));
                }
                None => emit(&format!("{text}\n")),
            }
            if verified {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn read_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(flag: &str, arg: &str) -> Result<T> {
    let text = read_input(arg)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("--{flag}: {e}")))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WindowArg {
    Radius(i64),
    Box(Window),
}

impl WindowArg {
    fn resolve(self, rank: usize) -> Result<Window> {
        let w = match self {
            WindowArg::Radius(r) => Window::cube(rank, r)?,
            WindowArg::Box(w) => w,
        };
        if w.rank() != rank {
            return Err(Error::DimensionMismatch { expected: rank, found: w.rank() });
        }
        Ok(w)
    }
}

fn parse_window(flag: &str, arg: &str, rank: usize) -> Result<Window> {
    parse_json::<WindowArg>(flag, arg)?.resolve(rank)
}

/// `inner` if given, else the outer window scaled down by 4 (rounded toward zero).
fn inner_or_quarter(arg: Option<&str>, outer: &Window) -> Result<Window> {
    match arg {
        Some(a) => parse_window("inner", a, outer.rank()),
        None => Window::new(
            outer.lo().iter().map(|x| x / 4).collect(),
            outer.hi().iter().map(|x| x / 4).collect(),
        ),
    }
}

/// Constructions that can be named instead of passing a JSON dump.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum Construction {
    Multiloop { matrix_size: usize, group_rank: usize, window: WindowArg },
    LoopExample { p: i64, r: i64, window: WindowArg },
    DoubleLoopExample { p: [i64; 2], r: [i64; 2], window: WindowArg },
    Sl3Example { p: i64, r: [i64; 2], window: WindowArg },
    TwoGenerators { x: Vec<i64>, y: Vec<i64>, window: WindowArg },
    PmTwoGenerators { x: Vec<i64>, y: Vec<i64>, window: WindowArg },
    Twisted { ell: usize, twist: Twist, window: WindowArg },
}

impl Construction {
    fn build(self) -> Result<GradedAlgebra> {
        match self {
            Construction::Multiloop { matrix_size, group_rank, window } => {
                GradedAlgebra::multiloop(matrix_size, group_rank, &window.resolve(group_rank)?)
            }
            Construction::LoopExample { p, r, window } => examples::sl2_loop_example(p, r, &window.resolve(1)?),
            Construction::DoubleLoopExample { p, r, window } => {
                examples::sl2_double_loop_example(p, r, &window.resolve(2)?)
            }
            Construction::Sl3Example { p, r, window } => examples::sl3_loop_example(p, r, &window.resolve(1)?),
            Construction::TwoGenerators { x, y, window } => {
                let w = window.resolve(x.len())?;
                examples::two_generators(&x, &y, &w)
            }
            Construction::PmTwoGenerators { x, y, window } => {
                let w = window.resolve(x.len())?;
                examples::pm_two_generators(&x, &y, &w)
            }
            Construction::Twisted { ell, twist, window } => {
                let pair = TwistedLoopPair::build(ell, &window.resolve(1)?)?;
                Ok(pair.algebra(twist).clone())
            }
        }
    }
}

/// An algebra given either as a construction (with `"kind"`) or as a dump.
fn load_algebra(arg: &str) -> Result<GradedAlgebra> {
    let value: Value = parse_json("algebra", arg)?;
    if value.get("kind").is_some() {
        let c: Construction =
            serde_json::from_value(value).map_err(|e| Error::Parse(format!("--algebra: {e}")))?;
        c.build()
    } else {
        serde_json::from_value(value).map_err(|e| Error::Parse(format!("--algebra: {e}")))
    }
}

fn points_json(points: &[LatticePoint]) -> Value {
    serde_json::to_value(points).expect("points serialize")
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Closure { gens, rule, outer, inner } => closure(&gens, rule, &outer, inner.as_deref()),
        Command::Classify { gens, rule } => classify(&gens, rule),
        Command::Formula { x, y, rule, inner } => formula(&x, &y, rule, inner.as_deref()),
        Command::CosetCheck { union, point, window } => coset_check(&union, point.as_deref(), window.as_deref()),
        Command::Rootsys { kind, rank, base } => rootsys(kind, rank, base.as_deref()),
        Command::Support { algebra, weight, inner } => support(&algebra, &weight, inner.as_deref()),
        Command::Subalgebra { algebra, gens, window } => subalgebra(&algebra, &gens, window.as_deref()),
        Command::Isotope { algebra, shift } => isotope(&algebra, &shift),
        Command::Normalize { algebra, inner } => normalize(&algebra, inner.as_deref()),
        Command::CheckAxioms { algebra, inner } => check_axioms(&algebra, inner.as_deref()),
        Command::Lears { algebra, inner } => lears(&algebra, inner.as_deref()),
        Command::Twisted { ell, window, csv } => twisted(ell, &window, csv),
        Command::FormCheck { algebra, inner, samples } => form_check(&algebra, inner.as_deref(), samples),
    }
}

/// The closure predicate that matches a rule.
fn predicate_holds(points: &[LatticePoint], rule: Rule, b: &Window) -> Result<bool> {
    Ok(match rule {
        Rule::Reflection => refspace::is_reflection_space_in_box(points, b)?.holds,
        Rule::Symmetric | Rule::Pointed => refspace::is_symmetric_reflection_space_in_box(points, b)?.holds,
    })
}

fn closed_form(gens: &GeneratorSet, rule: Rule) -> Result<Option<CosetUnion>> {
    if gens.rank() == 1 {
        return Ok(Some(refspace::classify_z(gens, rule)?.to_coset_union()?));
    }
    if let [x, y] = gens.points() {
        return Ok(Some(match rule {
            Rule::Reflection => refspace::two_gen_reflection(x, y)?,
            Rule::Symmetric => refspace::two_gen_symmetric(x, y)?,
            Rule::Pointed => refspace::two_gen_pointed(x, y)?,
        }));
    }
    Ok(None)
}

fn closure(gens: &str, rule: Rule, outer: &str, inner: Option<&str>) -> Result<Outcome> {
    let gens: GeneratorSet = parse_json("gens", gens)?;
    let outer = parse_window("box", outer, gens.rank())?;
    let inner = inner_or_quarter(inner, &outer)?;
    refspace::check_margins(&gens, &inner, &outer)?;
    let points = refspace::restrict(&refspace::closure(&gens, rule, &outer)?, &inner);
    let mut checks = vec![Check::new("closed under the rule on the inner box", predicate_holds(&points, rule, &inner)?)];
    let mut results = json!({
        "rule": rule,
        "box": outer,
        "inner": inner,
        "count": points.len(),
        "points": points_json(&points),
    });
    if let Some(form) = closed_form(&gens, rule)? {
        let expected = form.enumerate(&inner)?;
        checks.push(Check::new("matches the closed form", expected == points));
        results["closed_form"] = to_value(&form);
    }
    Ok(Outcome::new(results, checks))
}

fn classify(gens: &str, rule: Rule) -> Result<Outcome> {
    let gens: GeneratorSet = parse_json("gens", gens)?;
    let c = refspace::classify_z(&gens, rule)?;
    let radius = gens.bounding_box()?.lo().iter().chain(gens.bounding_box()?.hi()).map(|x| x.abs()).max().unwrap_or(0).max(1);
    let inner = Window::cube(1, 3 * radius)?;
    let outer = Window::cube(1, 12 * radius)?;
    let brute = refspace::restrict(&refspace::closure(&gens, rule, &outer)?, &inner);
    let matches = c.to_coset_union()?.enumerate(&inner)? == brute;
    let form = match (c.kind, c.odd) {
        (ZKind::Symmetric, true) => "odd",
        (ZKind::Symmetric, false) => "all",
        (ZKind::Reflection, _) => "coset",
    };
    // Report the set as a single coset pZ+e: d(2Z+1) becomes 2dZ+d.
    let (p, e) = match form {
        "odd" => (&c.p * 2, c.p.clone()),
        _ => (c.p.clone(), c.e.clone()),
    };
    let results = json!({
        "kind": c.kind,
        "p": to_value(&LatticePoint(vec![p.clone()]))[0],
        "e": to_value(&LatticePoint(vec![e.clone()]))[0],
        "form": form,
        "text": format!("{p}Z+{e}"),
        "closed_form": c.to_string(),
    });
    Ok(Outcome::new(results, vec![Check::new(format!("agrees with brute force on {inner}"), matches)]))
}

fn formula(x: &str, y: &str, rule: Rule, inner: Option<&str>) -> Result<Outcome> {
    let x: LatticePoint = parse_json("x", x)?;
    let y: LatticePoint = parse_json("y", y)?;
    if x.rank() != y.rank() {
        return Err(Error::DimensionMismatch { expected: x.rank(), found: y.rank() });
    }
    let gens = GeneratorSet::new(vec![x.clone(), y.clone()])?;
    let inner = match inner {
        Some(a) => parse_window("inner", a, x.rank())?,
        None => {
            let b = gens.bounding_box()?;
            let r = b.lo().iter().chain(b.hi()).map(|v| v.abs()).max().unwrap_or(0).max(1);
            Window::cube(x.rank(), 3 * r)?
        }
    };
    let outer = inner.scaled(4)?;
    refspace::check_margins(&gens, &inner, &outer)?;
    let form = match rule {
        Rule::Reflection => refspace::two_gen_reflection(&x, &y)?,
        Rule::Symmetric => refspace::two_gen_symmetric(&x, &y)?,
        Rule::Pointed => refspace::two_gen_pointed(&x, &y)?,
    };
    let brute = refspace::restrict(&refspace::closure(&gens, rule, &outer)?, &inner);
    let matches = form.enumerate(&inner)? == brute;
    let results = json!({ "rule": rule, "formula": to_value(&form), "text": form.to_string(), "inner": inner });
    Ok(Outcome::new(results, vec![Check::new("closure equals the formula on the inner box", matches)]))
}

fn coset_check(union: &str, point: Option<&str>, window: Option<&str>) -> Result<Outcome> {
    let c: CosetUnion = parse_json("union", union)?;
    let canon = c.canonical()?;
    let mut results = json!({
        "canonical": to_value(&canon),
        "is_reflection_space": refspace::coset_union_is_reflection_space(&canon)?,
    });
    if let Some(p) = point {
        let p: LatticePoint = parse_json("point", p)?;
        results["contains"] = json!(c.contains(&p)?);
    }
    if let Some(w) = window {
        let w = parse_window("window", w, c.ambient_rank())?;
        results["points"] = points_json(&c.enumerate(&w)?);
    }
    let stable = canon.canonical()? == canon && refspace::coset_union_is_reflection_space(&canon)? == refspace::coset_union_is_reflection_space(&c)?;
    Ok(Outcome::new(results, vec![Check::new("canonical form is stable", stable)]))
}

fn rootsys(kind: RootType, rank: usize, base: Option<&str>) -> Result<Outcome> {
    let rs = RootSystem::build(kind, rank)?;
    let std_base = rs.standard_reflectable_base();
    let mut closed = true;
    for a in rs.roots() {
        for b in rs.roots() {
            closed &= rs.contains(&rs.reflect(a, b)?);
        }
    }
    let mut checks = vec![
        Check::new("reflections stay in the system", closed),
        Check::new("standard base is reflectable", rs.is_reflectable_base(&std_base)),
    ];
    let mut results = json!({
        "system": to_value(&rs),
        "count": rs.len(),
        "reduced": rs.reduced(),
        "irreducible": rs.is_irreducible(),
        "standard_base": std_base,
    });
    if let Some(b) = base {
        let b: Vec<Vec<i64>> = parse_json("base", b)?;
        let ok = rs.is_reflectable_base(&b);
        results["base_is_reflectable"] = json!(ok);
        checks.push(Check::new("given base is reflectable", ok));
    }
    Ok(Outcome::new(results, checks))
}

fn default_inner(l: &GradedAlgebra, inner: Option<&str>) -> Result<Window> {
    inner_or_quarter(inner, l.window())
}

fn support(algebra: &str, weight: &str, inner: Option<&str>) -> Result<Outcome> {
    let l = load_algebra(algebra)?;
    let mu: Vec<i64> = parse_json("weight", weight)?;
    let inner = default_inner(&l, inner)?;
    let restrict = |pts: Vec<LatticePoint>| -> Vec<LatticePoint> { refspace::restrict(&pts, &inner) };
    let supp = restrict(l.support(&mu)?);
    let neg: Vec<i64> = mu.iter().map(|x| -x).collect();
    let mut minus: Vec<LatticePoint> = restrict(l.support(&neg)?).iter().map(LatticePoint::neg).collect();
    minus.sort();
    let symmetric_window = inner.lo().iter().zip(inner.hi()).all(|(a, b)| *a == -b);
    let mut checks = vec![Check::new("reflection space on the inner window", refspace::is_reflection_space_in_box(&supp, &inner)?.holds)];
    if symmetric_window && l.offsets().is_empty() {
        checks.push(Check::new("support of -weight is the negated support", minus == supp));
    }
    let results = json!({ "weight": mu, "inner": inner, "count": supp.len(), "support": points_json(&supp) });
    Ok(Outcome::new(results, checks))
}

fn subalgebra(algebra: &str, gens: &str, window: Option<&str>) -> Result<Outcome> {
    let l = load_algebra(algebra)?;
    let gens: Vec<AlgebraElement> = parse_json("gens", gens)?;
    let window = window.map(|w| parse_window("window", w, l.group_rank())).transpose()?;
    let s = l.generate_subalgebra(&gens, window.as_ref())?;
    let mut contained = true;
    for g in &gens {
        contained &= s.contains(g)?;
    }
    Ok(Outcome::new(to_value(&s), vec![Check::new("generators lie in the result", contained)]))
}

fn parse_shift(l: &GradedAlgebra, arg: &str) -> Result<ShiftHom> {
    let value: Value = parse_json("shift", arg)?;
    if value.is_array() {
        let images: Vec<Vec<i64>> = serde_json::from_value(value).map_err(|e| Error::Parse(format!("--shift: {e}")))?;
        ShiftHom::new(l.root_system(), l.root_system().standard_reflectable_base(), images)
    } else {
        #[derive(Deserialize)]
        struct Raw {
            base: Vec<Vec<i64>>,
            images: Vec<Vec<i64>>,
        }
        let raw: Raw = serde_json::from_value(value).map_err(|e| Error::Parse(format!("--shift: {e}")))?;
        ShiftHom::new(l.root_system(), raw.base, raw.images)
    }
}

fn isotope(algebra: &str, shift: &str) -> Result<Outcome> {
    let l = load_algebra(algebra)?;
    let s = parse_shift(&l, shift)?;
    let iso = torus::isotope(&l, &s)?;
    let back = torus::isotope(&iso, &s.neg())?;
    let inverse_ok = back.spaces().collect::<Vec<_>>() == l.spaces().collect::<Vec<_>>();
    Ok(Outcome::new(to_value(&iso), vec![Check::new("shifting back recovers the grading", inverse_ok)]))
}

fn normalize(algebra: &str, inner: Option<&str>) -> Result<Outcome> {
    let l = load_algebra(algebra)?;
    let inner = default_inner(&l, inner)?;
    let n = torus::normalize(&l)?;
    let report = torus::check_axioms(&n.algebra, &inner)?;
    let prop = torus::check_reflection_propagation(&l, &n.shift, &inner)?;
    let results = json!({
        "shift": to_value(&n.shift),
        "group": to_value(&n.group),
        "classification": report.classification,
        "propagation": to_value(&prop),
    });
    let checks = vec![
        Check::new("isotope is normal on the inner window", report.classification == Classification::Normal),
        Check::new("reflection propagation", prop.holds),
    ];
    Ok(Outcome::new(results, checks))
}

fn check_axioms(algebra: &str, inner: Option<&str>) -> Result<Outcome> {
    let l = load_algebra(algebra)?;
    let inner = default_inner(&l, inner)?;
    let report = torus::check_axioms(&l, &inner)?;
    let checks = vec![
        Check::new("is a torus", report.classification != Classification::NotATorus),
        Check::new("report is consistent", report.is_consistent()),
    ];
    Ok(Outcome::new(to_value(&report), checks))
}

fn lears(algebra: &str, inner: Option<&str>) -> Result<Outcome> {
    let l = load_algebra(algebra)?;
    let inner = default_inner(&l, inner)?;
    let report = torus::extract_lears(&l, &inner)?;
    let checks = report
        .entries
        .iter()
        .map(|e| Check { name: e.axiom.clone(), status: e.status })
        .collect();
    Ok(Outcome::new(to_value(&report), checks))
}

fn twisted(ell: usize, window: &str, csv: Option<String>) -> Result<Outcome> {
    let inner = parse_window("window", window, 1)?;
    let outer = inner.scaled(3)?;
    let pair = TwistedLoopPair::build(ell, &outer)?;
    let identities = pair.identity_checks();
    let report = torus::verify_twisted_isotopy(&pair, &inner)?;
    let td = torus::check_axioms(&pair.td, &inner)?;
    let mut checks: Vec<Check> = identities.iter().map(|c| Check::new(c.name.clone(), c.holds)).collect();
    checks.push(Check::new("T(D)^(s) is graded isomorphic to T(C)", report.verified));
    checks.push(Check::new("T(D) is a general torus of type C", td.classification == Classification::GeneralNotNormal));
    let table = report.to_csv();
    let mut results = json!({
        "ell": ell,
        "inner": inner,
        "outer": outer,
        "verified": report.verified,
        "isotopy": to_value(&report),
        "td_classification": td.classification,
        "root_type": td.root_type,
    });
    if csv.is_none() {
        results["csv"] = json!(table);
    }
    let mut out = Outcome::new(results, checks);
    out.csv = csv.map(|p| (p, table));
    Ok(out)
}

fn form_check(algebra: &str, inner: Option<&str>, samples: usize) -> Result<Outcome> {
    let l = load_algebra(algebra)?;
    let inner = default_inner(&l, inner)?;
    let seed = seed_from_env();
    let form = check_graded_form(&l, l.window(), samples, seed);
    let coroot = torus::check_coroot_form_identity(&l, &inner)?;
    let checks = vec![
        Check::new("form is nonzero", form.nonzero),
        Check::new("form is symmetric", form.symmetric),
        Check::new("form is invariant", form.invariant),
        Check::new("graded orthogonality", form.orthogonal),
        Check::new("coroot identity", coroot.holds),
    ];
    let results = json!({ "seed": seed, "form": to_value(&form), "coroot": to_value(&coroot) });
    Ok(Outcome::new(results, checks))
}
