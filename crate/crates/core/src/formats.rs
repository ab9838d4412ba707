//! Plain-text file formats.
//!
//! Every format is line based. Blank lines and anything after `#` are
//! ignored, and errors carry the 1-based line number they refer to.
//!
//! ```text
//! # ideal                # curve              # algebra            # basis
//! vars 2                 trunc 6              dim 3                basis 3 1
//! gen x1^2 - x2^3        comp 0               prod 1 1 : 0 0 1     vec 0 0 1
//! point 0 0              comp t               prod 2 2 : 0 0 1
//! ```
//!
//! A symmetric map uses the algebra syntax with the header `map n`.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::algschemes::{AlgebraPoint, BilinearMap};
use crate::conecurve::IdealPresentation;
use crate::exactla::SubspaceBasis;
use crate::polyring::{parse_poly, parse_scalar, CurveGerm, Jet, MultiPoly, Scalar, VarNames};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

/// Non-empty lines with comments stripped, as `(line number, keyword, rest)`.
fn records(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            return None;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        Some((i + 1, key, rest.trim()))
    })
}

fn parse_count(line: usize, s: &str, what: &str) -> Result<usize, FormatError> {
    s.trim().parse().map_err(|_| err(line, format!("expected a natural number for {what}, found `{s}`")))
}

fn parse_scalars(line: usize, s: &str) -> Result<Vec<Scalar>, FormatError> {
    s.split_whitespace()
        .map(|tok| parse_scalar(tok).map_err(|e| err(line, e.to_string())))
        .collect()
}

fn join(v: &[Scalar]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Parses a comma-separated vector such as `1,-1/2,0`.
pub fn parse_vector(s: &str) -> Result<Vec<Scalar>, FormatError> {
    s.split(',').map(|tok| parse_scalar(tok).map_err(|e| err(1, format!("`{s}`: {e}")))).collect()
}

pub fn format_vector(v: &[Scalar]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_ideal(text: &str) -> Result<IdealPresentation, FormatError> {
    let mut nvars = None;
    let mut gens = Vec::new();
    let mut point = None;
    for (line, key, rest) in records(text) {
        match key {
            "vars" if nvars.is_none() => nvars = Some(parse_count(line, rest, "vars")?),
            "vars" => return Err(err(line, "duplicate `vars` line")),
            "gen" => {
                let n = nvars.ok_or_else(|| err(line, "`gen` before `vars`"))?;
                gens.push(parse_poly(rest, &VarNames::indexed(n)).map_err(|e| err(line, e.to_string()))?);
            }
            "point" => {
                let n = nvars.ok_or_else(|| err(line, "`point` before `vars`"))?;
                let p = parse_scalars(line, rest)?;
                if p.len() != n {
                    return Err(err(line, format!("point has {} coordinates, expected {n}", p.len())));
                }
                if point.replace(p).is_some() {
                    return Err(err(line, "duplicate `point` line"));
                }
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let end = text.lines().count().max(1);
    let n = nvars.ok_or_else(|| err(end, "missing `vars` line"))?;
    if gens.is_empty() {
        return Err(err(end, "no `gen` lines"));
    }
    IdealPresentation::new(n, gens, point).map_err(|e| err(end, e.to_string()))
}

pub fn emit_ideal(ideal: &IdealPresentation) -> String {
    let mut out = format!("vars {}\n", ideal.nvars());
    for g in ideal.generators() {
        out.push_str(&format!("gen {g}\n"));
    }
    if ideal.base_point().iter().any(|c| !c.is_zero()) {
        out.push_str(&format!("point {}\n", join(ideal.base_point())));
    }
    out
}

pub fn parse_curve(text: &str) -> Result<CurveGerm, FormatError> {
    let mut trunc = None;
    let mut comps = Vec::new();
    let names = VarNames::Single("t".into());
    for (line, key, rest) in records(text) {
        match key {
            "trunc" if trunc.is_none() => trunc = Some(parse_count(line, rest, "trunc")?),
            "trunc" => return Err(err(line, "duplicate `trunc` line")),
            "comp" => {
                let d = trunc.ok_or_else(|| err(line, "`comp` before `trunc`"))?;
                let p = parse_poly(rest, &names).map_err(|e| err(line, e.to_string()))?;
                if p.degree().unwrap_or(0) as usize > d {
                    return Err(err(line, format!("component has degree above the truncation {d}")));
                }
                comps.push(Jet::from_poly(d, &p).map_err(|e| err(line, e.to_string()))?);
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let end = text.lines().count().max(1);
    trunc.ok_or_else(|| err(end, "missing `trunc` line"))?;
    CurveGerm::new(comps).map_err(|e| err(end, e.to_string()))
}

pub fn emit_curve(curve: &CurveGerm) -> String {
    let mut out = format!("trunc {}\n", curve.trunc());
    for c in curve.components() {
        out.push_str(&format!("comp {}\n", c.to_poly().format_with(|_| "t".into())));
    }
    out
}

fn parse_table(text: &str, header: &str) -> Result<BilinearMap, FormatError> {
    let mut n = None;
    let mut entries: BTreeMap<(usize, usize), (usize, Vec<Scalar>)> = BTreeMap::new();
    for (line, key, rest) in records(text) {
        match key {
            k if k == header && n.is_none() => n = Some(parse_count(line, rest, header)?),
            k if k == header => return Err(err(line, format!("duplicate `{header}` line"))),
            "prod" => {
                let n = n.ok_or_else(|| err(line, format!("`prod` before `{header}`")))?;
                let (idx, coeffs) = rest.split_once(':').ok_or_else(|| err(line, "expected `prod i j : a1 … an`"))?;
                let idx: Vec<&str> = idx.split_whitespace().collect();
                if idx.len() != 2 {
                    return Err(err(line, "expected two indices before `:`"));
                }
                let i = parse_count(line, idx[0], "i")?;
                let j = parse_count(line, idx[1], "j")?;
                if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                    return Err(err(line, format!("index out of range 1..{n}")));
                }
                let v = parse_scalars(line, coeffs)?;
                if v.len() != n {
                    return Err(err(line, format!("product has {} coordinates, expected {n}", v.len())));
                }
                let key = (i.min(j) - 1, i.max(j) - 1);
                if let Some((first, old)) = entries.get(&key) {
                    if *old != v {
                        return Err(err(line, format!("conflicts with the product given on line {first}")));
                    }
                } else {
                    entries.insert(key, (line, v));
                }
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let end = text.lines().count().max(1);
    let n = n.ok_or_else(|| err(end, format!("missing `{header}` line")))?;
    let mut m = BilinearMap::square(n);
    for ((i, j), (_, v)) in entries {
        m.set_sym(i, j, &v);
    }
    Ok(m)
}

fn emit_table(m: &BilinearMap, header: &str) -> String {
    let n = m.left();
    let mut out = format!("{header} {n}\n");
    for i in 0..n {
        for j in i..n {
            let v = m.on_basis(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                out.push_str(&format!("prod {} {} : {}\n", i + 1, j + 1, join(v)));
            }
        }
    }
    out
}

pub fn parse_algebra(text: &str) -> Result<AlgebraPoint, FormatError> {
    let table = parse_table(text, "dim")?;
    AlgebraPoint::new(table).map_err(|e| err(1, e.to_string()))
}

pub fn emit_algebra(alg: &AlgebraPoint) -> String {
    emit_table(alg.table(), "dim")
}

/// Parses a symmetric map `Qⁿ × Qⁿ → Qⁿ` written with the `map n` header.
pub fn parse_map(text: &str) -> Result<BilinearMap, FormatError> {
    let m = parse_table(text, "map")?;
    if m.left() == 0 {
        return Err(err(1, "map dimension must be positive"));
    }
    Ok(m)
}

/// Writes a square symmetric map; entries `(i, j)` with `i > j` are taken from `(j, i)`.
pub fn emit_map(m: &BilinearMap) -> String {
    emit_table(m, "map")
}

pub fn parse_basis(text: &str) -> Result<SubspaceBasis, FormatError> {
    let mut header = None;
    let mut vectors = Vec::new();
    for (line, key, rest) in records(text) {
        match key {
            "basis" if header.is_none() => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(err(line, "expected `basis <ambient> <dim>`"));
                }
                header = Some((parse_count(line, parts[0], "ambient")?, parse_count(line, parts[1], "dim")?, line));
            }
            "basis" => return Err(err(line, "duplicate `basis` line")),
            "vec" => {
                let (ambient, _, _) = header.ok_or_else(|| err(line, "`vec` before `basis`"))?;
                let v = parse_scalars(line, rest)?;
                if v.len() != ambient {
                    return Err(err(line, format!("vector has {} coordinates, expected {ambient}", v.len())));
                }
                vectors.push(v);
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let end = text.lines().count().max(1);
    let (ambient, dim, hline) = header.ok_or_else(|| err(end, "missing `basis` line"))?;
    if vectors.len() != dim {
        return Err(err(hline, format!("declared {dim} vectors, found {}", vectors.len())));
    }
    let basis = SubspaceBasis::span(ambient, vectors).map_err(|e| err(hline, e.to_string()))?;
    if basis.dim() != dim {
        return Err(err(hline, "vectors are linearly dependent"));
    }
    Ok(basis)
}

pub fn emit_basis(b: &SubspaceBasis) -> String {
    let mut out = format!("basis {} {}\n", b.ambient_dim(), b.dim());
    for v in b.vectors() {
        out.push_str(&format!("vec {}\n", join(v)));
    }
    out
}

/// Writes a polynomial in `x1, …, xn`.
pub fn emit_poly(p: &MultiPoly) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, ints, DEFAULT_TRUNC};

    #[test]
    fn ideal_round_trip_and_comments() {
        let text = "# cusp\nvars 2\n\ngen x1^2 - x2^3   # the curve\npoint 0 0\n";
        let id = parse_ideal(text).unwrap();
        assert_eq!(id.nvars(), 2);
        assert_eq!(id.generators().len(), 1);
        assert_eq!(parse_ideal(&emit_ideal(&id)).unwrap(), id);
        let moved = parse_ideal("vars 2\ngen x1 - 1\npoint 1 1/2\n").unwrap();
        assert_eq!(moved.base_point(), &[int(1), crate::polyring::frac(1, 2)][..]);
        assert_eq!(parse_ideal(&emit_ideal(&moved)).unwrap(), moved);
    }

    #[test]
    fn ideal_errors_name_the_line() {
        let e = parse_ideal("vars 2\ngen x1^2 +\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_ideal("vars 2\ngen x3\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_ideal("gen x1\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_ideal("vars 2\ngen x1\npoint 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_ideal("vars 2\n").is_err());
        assert!(parse_ideal("vars 2\nfoo\n").unwrap_err().message.contains("foo"));
    }

    #[test]
    fn curve_round_trip() {
        let c = parse_curve("trunc 6\ncomp 0\ncomp t\n").unwrap();
        assert_eq!(c.trunc(), 6);
        assert_eq!(c.velocity(), ints(&[0, 1]));
        assert_eq!(parse_curve(&emit_curve(&c)).unwrap(), c);
        let g = CurveGerm::from_taylor(DEFAULT_TRUNC, &[ints(&[1, 0]), ints(&[2, -1]), vec![crate::polyring::frac(-3, 4), int(0)]])
            .unwrap();
        assert_eq!(parse_curve(&emit_curve(&g)).unwrap(), g);
        assert_eq!(parse_curve("trunc 2\ncomp t^3\n").unwrap_err().line, 2);
    }

    #[test]
    fn algebra_symmetry_and_conflicts() {
        let a = parse_algebra("dim 3\nprod 1 1 : 0 0 1\nprod 2 1 : 0 0 2\nprod 1 2 : 0 0 2\n").unwrap();
        assert_eq!(a.product(0, 1), &ints(&[0, 0, 2])[..]);
        assert_eq!(parse_algebra(&emit_algebra(&a)).unwrap(), a);
        let e = parse_algebra("dim 2\nprod 1 2 : 0 1\n# swap\nprod 2 1 : 1 0\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("line 2"));
        assert_eq!(parse_algebra("dim 2\nprod 1 3 : 0 1\n").unwrap_err().line, 2);
        assert_eq!(parse_algebra("dim 2\nprod 1 1 : 0\n").unwrap_err().line, 2);
    }

    #[test]
    fn map_and_basis_round_trip() {
        let m = parse_map("map 2\nprod 1 2 : 1/2 -1\n").unwrap();
        assert!(m.is_symmetric());
        assert_eq!(parse_map(&emit_map(&m)).unwrap(), m);
        assert!(parse_map("dim 2\n").is_err());
        let b = SubspaceBasis::span(3, vec![ints(&[1, 0, 2]), ints(&[0, 1, -1])]).unwrap();
        assert_eq!(parse_basis(&emit_basis(&b)).unwrap(), b);
        let z = SubspaceBasis::zero(4);
        assert_eq!(parse_basis(&emit_basis(&z)).unwrap(), z);
        assert_eq!(parse_basis("basis 2 2\nvec 1 0\n").unwrap_err().line, 1);
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("1, -1/2,0").unwrap(), vec![int(1), crate::polyring::frac(-1, 2), int(0)]);
        assert!(parse_vector("1,,2").is_err());
        assert_eq!(format_vector(&ints(&[3, -1])), "3,-1");
    }
}
