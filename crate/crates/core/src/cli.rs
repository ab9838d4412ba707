//! Command-line driver.
//!
//! Every subcommand reads its inputs, runs one library operation and returns
//! a plain-text report of `key: value` lines. Exit status is 0 on success,
//! 1 when the answer is a mathematical failure (a failed cone test, an
//! infeasible obstruction system, a false identity) and 2 on bad input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algschemes::{
    self, corollary_check, dim_identity_check, efor_report, g22_commutativity_check, gen_scheme_ideal,
    quadratic_obstruction, scheme_tangent_space, solve_chain, split_blocks, substitution_identity, thm1_test,
    AlgError, AlgebraPoint, BilinearMap, ChainOutcome, ObstructionOutcome, SchemeKind, Splitting, Thm1Verdict,
};
use crate::conecurve::{
    construct_curve3, cone_necessary_test, hypersurface_lowest_form, multiplicity, tangent_space, ConeError,
    IdealPresentation, Verdict,
};
use crate::exactla::SubspaceBasis;
use crate::formats::{self, format_vector, FormatError};
use crate::polyring::{OrderResult, Scalar, DEFAULT_TRUNC};

#[derive(Debug, Parser)]
#[command(name = "tancone", version, about = "Exact contact orders and obstruction systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Assoc,
    Nilp3,
}

impl From<Kind> for SchemeKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Assoc => SchemeKind::Assoc,
            Kind::Nilp3 => SchemeKind::Nilp3,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection multiplicity of a curve germ with a variety.
    Imult {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        /// Overrides the truncation degree of the curve file.
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Tangent space at the base point.
    Tspace {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Quadratic necessary test for a direction to lie in the tangent cone.
    Conetest {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Curve `p + t·v + t²·γ` meeting the variety with multiplicity at least 3.
    Curve3 {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = DEFAULT_TRUNC)]
        trunc: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Lowest-degree form of each generator.
    Lowestform {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Ideal of the scheme of commutative associative (or nilpotent) multiplications.
    SchemeGen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Assoc)]
        kind: Kind,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Tangent space of a structure-constant scheme at an algebra.
    SchemeTangent {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Assoc)]
        kind: Kind,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Compares the scheme tangent space with the orbit, F and L(S², N²) pieces.
    Spaces {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Solves the block obstruction systems for a given f11.
    Chain {
        #[arg(long)]
        algebra: PathBuf,
        /// A map on N (its f11 block is used) or on N₁ in adapted coordinates.
        #[arg(long)]
        map: PathBuf,
    },
    /// Looks for the second-order term of a first-order deformation.
    Obstruct {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Whether every solution of the obstruction systems vanishes on ker μ.
    Thm1 {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// d·(d(d+1)/2 − r) against d(d+1)(d+2)/6.
    Dimcheck {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
    },
    /// Checks that the paired equations force f = 0.
    Corollary {
        #[arg(long)]
        algebra: PathBuf,
        /// Pairs `u-v` of 1-based generator indices, comma separated.
        #[arg(long)]
        pairs: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub report: String,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome { status: 0, report }
    }

    fn infeasible(report: String) -> Self {
        Outcome { status: 1, report }
    }

    fn input(message: impl Into<String>) -> Self {
        let mut report = message.into();
        report.insert_str(0, "error: ");
        report.push('\n');
        Outcome { status: 2, report }
    }
}

/// Input problems; all map to exit status 2.
#[derive(Debug)]
enum Fail {
    Input(String),
}

impl From<FormatError> for Fail {
    fn from(e: FormatError) -> Self {
        Fail::Input(e.to_string())
    }
}

impl From<ConeError> for Fail {
    fn from(e: ConeError) -> Self {
        Fail::Input(e.to_string())
    }
}

impl From<AlgError> for Fail {
    fn from(e: AlgError) -> Self {
        Fail::Input(e.to_string())
    }
}

impl From<std::fmt::Error> for Fail {
    fn from(e: std::fmt::Error) -> Self {
        Fail::Input(e.to_string())
    }
}

type Res = Result<Outcome, Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, Fail> {
    r.map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn load_ideal(path: &Path) -> Result<IdealPresentation, Fail> {
    with_path(path, formats::parse_ideal(&read(path)?))
}

fn load_algebra(path: &Path) -> Result<AlgebraPoint, Fail> {
    with_path(path, formats::parse_algebra(&read(path)?))
}

fn load_map(path: &Path) -> Result<BilinearMap, Fail> {
    with_path(path, formats::parse_map(&read(path)?))
}

fn write_emit(path: &Option<PathBuf>, contents: &str, report: &mut String) -> Result<(), Fail> {
    if let Some(p) = path {
        fs::write(p, contents).map_err(|e| Fail::Input(format!("{}: {e}", p.display())))?;
        writeln!(report, "emitted: {}", p.display())?;
    }
    Ok(())
}

fn parse_direction(s: &str, n: usize) -> Result<Vec<Scalar>, Fail> {
    let v = formats::parse_vector(s).map_err(|e| Fail::Input(format!("--v: {}", e.message)))?;
    if v.len() != n {
        return Err(Fail::Input(format!("--v has {} coordinates, the ideal has {n} variables", v.len())));
    }
    Ok(v)
}

fn basis_lines(out: &mut String, b: &SubspaceBasis) -> Result<(), Fail> {
    writeln!(out, "dim: {}", b.dim())?;
    for v in b.vectors() {
        writeln!(out, "vec: {}", format_vector(v))?;
    }
    Ok(())
}

fn contact(m: &OrderResult) -> String {
    match m {
        OrderResult::Exact(k) => format!("= {k}"),
        other => other.to_string(),
    }
}

fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>, Fail> {
    s.split(',')
        .map(|p| {
            let bad = || Fail::Input(format!("--pairs: expected `u-v` with 1-based indices, found `{p}`"));
            let (u, v) = p.trim().split_once('-').ok_or_else(bad)?;
            let u: usize = u.trim().parse().map_err(|_| bad())?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            if u == 0 || v == 0 {
                return Err(bad());
            }
            Ok((u - 1, v - 1))
        })
        .collect()
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli.command),
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            Outcome { status, report: e.render().to_string() }
        }
    }
}

pub fn dispatch(cmd: &Command) -> Outcome {
    match execute(cmd) {
        Ok(o) => o,
        Err(Fail::Input(m)) => Outcome::input(m),
    }
}

fn execute(cmd: &Command) -> Res {
    match cmd {
        Command::Imult { ideal, curve, trunc } => imult(ideal, curve, *trunc),
        Command::Tspace { ideal, emit } => tspace(ideal, emit),
        Command::Conetest { ideal, v, emit } => conetest(ideal, v, emit),
        Command::Curve3 { ideal, v, trunc, emit } => curve3(ideal, v, *trunc, emit),
        Command::Lowestform { ideal } => lowestform(ideal),
        Command::SchemeGen { n, kind, emit } => scheme_gen(*n, *kind, emit),
        Command::SchemeTangent { algebra, kind, emit } => scheme_tangent(algebra, *kind, emit),
        Command::Spaces { algebra } => spaces(algebra),
        Command::Chain { algebra, map } => chain(algebra, map),
        Command::Obstruct { algebra, map, emit } => obstruct(algebra, map, emit),
        Command::Thm1 { algebra } => thm1(algebra),
        Command::Dimcheck { d, r } => dimcheck(*d, *r),
        Command::Corollary { algebra, pairs } => corollary(algebra, pairs),
    }
}

fn imult(ideal: &Path, curve: &Path, trunc: Option<usize>) -> Res {
    let id = load_ideal(ideal)?;
    let mut c = with_path(curve, formats::parse_curve(&read(curve)?))?;
    if let Some(t) = trunc {
        c = c.with_trunc(t);
    }
    let m = multiplicity(&id, &c)?;
    let mut out = String::new();
    writeln!(out, "multiplicity {}", contact(&m))?;
    writeln!(out, "trunc: {}", c.trunc())?;
    Ok(Outcome::ok(out))
}

fn tspace(ideal: &Path, emit: &Option<PathBuf>) -> Res {
    let id = load_ideal(ideal)?;
    let t = tangent_space(&id)?;
    let mut out = String::new();
    writeln!(out, "ambient: {}", t.ambient_dim())?;
    basis_lines(&mut out, &t)?;
    write_emit(emit, &formats::emit_basis(&t), &mut out)?;
    Ok(Outcome::ok(out))
}

fn conetest(ideal: &Path, v: &str, emit: &Option<PathBuf>) -> Res {
    let id = load_ideal(ideal)?;
    let v = parse_direction(v, id.nvars())?;
    let rep = cone_necessary_test(&id, &v)?;
    let mut out = String::new();
    let pass = rep.verdict == Verdict::Pass;
    writeln!(out, "verdict: {}", if pass { "pass" } else { "fail" })?;
    writeln!(out, "W dim: {}", rep.w.dim())?;
    for w in rep.w.vectors() {
        writeln!(out, "W vec: {}", format_vector(w))?;
    }
    if let Some(w) = &rep.witness {
        writeln!(out, "witness: {}", format_vector(w))?;
    }
    write_emit(emit, &formats::emit_basis(&rep.w), &mut out)?;
    Ok(if pass { Outcome::ok(out) } else { Outcome::infeasible(out) })
}

fn curve3(ideal: &Path, v: &str, trunc: usize, emit: &Option<PathBuf>) -> Res {
    let id = load_ideal(ideal)?;
    let v = parse_direction(v, id.nvars())?;
    let res = match construct_curve3(&id, &v, trunc) {
        Ok(r) => r,
        Err(ConeError::ConeTestFailed { witness }) => {
            let out = format!("verdict: cone test failed\nwitness: {}\n", witness.join(","));
            return Ok(Outcome::infeasible(out));
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = String::new();
    writeln!(out, "gamma: {}", format_vector(&res.gamma))?;
    writeln!(out, "gamma kernel dim: {}", res.gamma_kernel_dim)?;
    writeln!(out, "contact {}", contact(&res.multiplicity))?;
    write_emit(emit, &formats::emit_curve(&res.curve), &mut out)?;
    Ok(if res.multiplicity.at_least(3) { Outcome::ok(out) } else { Outcome::infeasible(out) })
}

fn lowestform(ideal: &Path) -> Res {
    let id = load_ideal(ideal)?;
    let mut out = String::new();
    for (i, g) in id.centered_generators()?.iter().enumerate() {
        writeln!(out, "gen {}: {}", i + 1, hypersurface_lowest_form(g)?)?;
    }
    Ok(Outcome::ok(out))
}

fn scheme_gen(n: usize, kind: Kind, emit: &Option<PathBuf>) -> Res {
    let id = gen_scheme_ideal(n, kind.into())?;
    let mut out = String::new();
    writeln!(out, "vars: {}", id.nvars())?;
    writeln!(out, "generators: {}", id.generators().len())?;
    writeln!(out, "nonzero generators: {}", id.generators().iter().filter(|g| !g.is_zero()).count())?;
    write_emit(emit, &formats::emit_ideal(&id), &mut out)?;
    Ok(Outcome::ok(out))
}

fn scheme_tangent(algebra: &Path, kind: Kind, emit: &Option<PathBuf>) -> Res {
    let a = load_algebra(algebra)?;
    let id = gen_scheme_ideal(a.dim(), kind.into())?;
    let t = scheme_tangent_space(&id, &a)?;
    let mut out = String::new();
    writeln!(out, "ambient: {}", t.ambient_dim())?;
    writeln!(out, "dim: {}", t.dim())?;
    write_emit(emit, &formats::emit_basis(&t), &mut out)?;
    Ok(Outcome::ok(out))
}

fn spaces(algebra: &Path) -> Res {
    let a = load_algebra(algebra)?;
    let s = Splitting::new(&a)?;
    let rep = efor_report(&a, &s)?;
    let inv = algschemes::algebra_invariants(&a)?;
    let mut out = String::new();
    writeln!(out, "n: {}", a.dim())?;
    writeln!(out, "dim N1: {}", s.d())?;
    writeln!(out, "dim N2: {}", s.r())?;
    writeln!(out, "dim Ann: {}", inv.annihilator.dim())?;
    writeln!(out, "tangent dim: {}", rep.tangent_dim)?;
    writeln!(out, "L(S2(N/N2),N2) dim: {}", rep.lsym_dim)?;
    writeln!(out, "orbit dim: {}", rep.orbit_dim)?;
    writeln!(out, "F dim: {}", rep.f_dim)?;
    writeln!(out, "L + orbit dim: {}", rep.base_dim)?;
    writeln!(out, "L + orbit + F dim: {}", rep.base_f_dim)?;
    writeln!(out, "L(S2N1,N1) dim: {}", rep.lsym11_dim)?;
    writeln!(out, "full sum dim: {}", rep.sum_dim)?;
    writeln!(out, "L + orbit in tangent: {}", rep.base_contained)?;
    writeln!(out, "F in tangent: {}", rep.f_contained)?;
    writeln!(out, "f11 projection rank: {}", rep.f11_projection_rank)?;
    writeln!(out, "equality: {}", rep.equality)?;
    writeln!(out, "graded equality: {}", rep.graded_equality)?;
    Ok(if rep.base_contained && rep.f_contained { Outcome::ok(out) } else { Outcome::infeasible(out) })
}

/// The f11 block in adapted coordinates from a map on `N` or on `N₁`.
fn f11_block(m: &BilinearMap, split: &Splitting) -> Result<BilinearMap, Fail> {
    if m.left() == split.n() {
        Ok(split_blocks(m, split)?.f11_1)
    } else if m.left() == split.d() {
        Ok(m.clone())
    } else {
        Err(Fail::Input(format!(
            "map has dimension {}, expected n = {} or d = {}",
            m.left(),
            split.n(),
            split.d()
        )))
    }
}

fn show_map(out: &mut String, name: &str, m: &BilinearMap) -> Result<(), Fail> {
    for a in 0..m.left() {
        for b in 0..m.right() {
            let v = m.on_basis(a, b);
            if v.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                writeln!(out, "{name}({},{}): {}", a + 1, b + 1, format_vector(v))?;
            }
        }
    }
    Ok(())
}

fn chain(algebra: &Path, map: &Path) -> Res {
    let a = load_algebra(algebra)?;
    let s = Splitting::new(&a)?;
    let f11 = f11_block(&load_map(map)?, &s)?;
    let mut out = String::new();
    writeln!(out, "d: {}", s.d())?;
    writeln!(out, "r: {}", s.r())?;
    match solve_chain(&a, &s, &f11)? {
        ChainOutcome::Solved(ch) => {
            writeln!(out, "status: solved")?;
            writeln!(out, "f12 kernel dim: {}", ch.f12_kernel_dim)?;
            writeln!(out, "g12 kernel dim: {}", ch.g12_kernel_dim)?;
            writeln!(out, "g22 symmetric: {}", g22_commutativity_check(&ch))?;
            show_map(&mut out, "f12", &ch.f12)?;
            show_map(&mut out, "g12", &ch.g12)?;
            show_map(&mut out, "g22", &ch.g22)?;
            Ok(Outcome::ok(out))
        }
        ChainOutcome::Infeasible { stage, f12_kernel_dim } => {
            writeln!(out, "status: infeasible")?;
            writeln!(out, "stage: {stage}")?;
            if let Some(k) = f12_kernel_dim {
                writeln!(out, "f12 kernel dim: {k}")?;
            }
            Ok(Outcome::infeasible(out))
        }
    }
}

fn obstruct(algebra: &Path, map: &Path, emit: &Option<PathBuf>) -> Res {
    let a = load_algebra(algebra)?;
    let m = load_map(map)?;
    let mut out = String::new();
    match quadratic_obstruction(&a, &m)? {
        ObstructionOutcome::Feasible(star) => {
            writeln!(out, "status: unobstructed")?;
            show_map(&mut out, "star", &star)?;
            write_emit(emit, &formats::emit_map(&star), &mut out)?;
            Ok(Outcome::ok(out))
        }
        ObstructionOutcome::Infeasible => {
            writeln!(out, "status: obstructed")?;
            Ok(Outcome::infeasible(out))
        }
    }
}

fn thm1(algebra: &Path) -> Res {
    let a = load_algebra(algebra)?;
    let s = Splitting::new(&a)?;
    let rep = thm1_test(&a, &s)?;
    let mut out = String::new();
    let d = rep.dims;
    writeln!(out, "d: {}", d.d)?;
    writeln!(out, "r: {}", d.r)?;
    writeln!(out, "ker mu dim: {}", d.kernel_mu)?;
    writeln!(out, "co solutions dim: {}", d.co_solutions)?;
    writeln!(out, "vanishing on ker mu dim: {}", d.vanishing_on_kernel)?;
    writeln!(out, "forced directions: {}", d.forced)?;
    let (verdict, status) = match &rep.verdict {
        Thm1Verdict::HoldsLinear => ("holds (linear)", 0),
        Thm1Verdict::HoldsQuadratic => ("holds (quadratic)", 0),
        Thm1Verdict::Fails { .. } => ("fails", 1),
        Thm1Verdict::Inconclusive => ("inconclusive", 0),
    };
    writeln!(out, "verdict: {verdict}")?;
    if let Thm1Verdict::Fails { f11, f12, g12 } = &rep.verdict {
        show_map(&mut out, "f11", f11)?;
        show_map(&mut out, "f12", f12)?;
        show_map(&mut out, "g12", g12)?;
    }
    Ok(Outcome { status, report: out })
}

fn dimcheck(d: u64, r: u64) -> Res {
    let id = dim_identity_check(d, r);
    let out = format!(
        "{} {} {} : identity {}\n",
        id.lhs,
        if id.equal { "=" } else { "≠" },
        id.rhs,
        if id.equal { "holds" } else { "fails" }
    );
    Ok(if id.equal { Outcome::ok(out) } else { Outcome::infeasible(out) })
}

fn corollary(algebra: &Path, pairs: &str) -> Res {
    let a = load_algebra(algebra)?;
    let pairing = parse_pairs(pairs)?;
    let s = Splitting::new(&a)?;
    let rep = corollary_check(&a, &s, &pairing)?;
    let mut out = String::new();
    let names: Vec<String> = (0..s.d()).map(|i| format!("f{}", i + 1)).collect();
    for (u, v, eq) in &rep.equations {
        let shown: Vec<String> = eq.iter().map(|p| p.format_with(|i| names[i].clone())).collect();
        writeln!(out, "equation ({},{}): [{}]", u + 1, v + 1, shown.join(", "))?;
    }
    let forced: Vec<String> = (0..s.d()).filter(|&i| rep.forced[i]).map(|i| names[i].clone()).collect();
    writeln!(out, "forced zero: {}", forced.join(","))?;
    writeln!(out, "forces f = 0: {}", rep.forces_zero)?;
    let ident = substitution_identity();
    writeln!(out, "substitution identity: {}", ident.holds)?;
    Ok(if rep.forces_zero && ident.holds { Outcome::ok(out) } else { Outcome::infeasible(out) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimcheck_reports() {
        let o = run(["tancone", "dimcheck", "--d", "4", "--r", "5"]);
        assert_eq!(o.status, 0);
        assert_eq!(o.report, "20 = 20 : identity holds\n");
        let o = run(["tancone", "dimcheck", "--d", "3", "--r", "2"]);
        assert_eq!(o.status, 1);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["tancone", "dimcheck", "--d", "4"]).status, 2);
        assert_eq!(run(["tancone", "dimcheck", "--d", "4", "--r", "5", "--bogus", "1"]).status, 2);
        assert_eq!(run(["tancone", "frobnicate"]).status, 2);
        assert_eq!(run(["tancone", "tspace", "--ideal", "/nonexistent/x.id"]).status, 2);
    }

    #[test]
    fn pairs_parse() {
        assert_eq!(parse_pairs("1-2, 2-1").unwrap(), vec![(0, 1), (1, 0)]);
        assert!(parse_pairs("0-1").is_err());
        assert!(parse_pairs("1:2").is_err());
    }
}
