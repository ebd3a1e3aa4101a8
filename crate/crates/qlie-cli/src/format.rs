//! The spec file grammar.
//!
//! A file is a sequence of sections. `[bialgebra]` opens the file and carries
//! `dim_h = N` and `dim_v = N`. The four tensor sections `[C]`, `[A]`,
//! `[gamma]`, `[alpha]` hold entry lines `i j k = p/q` with zero-based
//! indices; omitted entries are zero and duplicate index triples are an
//! error. An optional `[r]` marker introduces the two r-matrix blocks `[P]`
//! and `[Q]`, whose entry lines are `i j = p/q`. Blank lines and `#` comments
//! are ignored. Output files use the same grammar, so they parse back.

use qlie::bialg::{ClassicalRMatrix, LieBialgebraSpec};
use qlie::rat::{format_rat, parse_rat, RatParseError};
use qlie::Rat;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Bialgebra,
    C,
    A,
    Gamma,
    Alpha,
    R,
    P,
    Q,
}

#[derive(Debug)]
pub struct SpecFile {
    pub spec: LieBialgebraSpec,
    pub r: Option<ClassicalRMatrix>,
}

pub fn parse_spec(text: &str) -> Result<SpecFile, ParseError> {
    let mut section = Section::None;
    let mut dim_h: Option<usize> = None;
    let mut dim_v: Option<usize> = None;
    let mut spec: Option<LieBialgebraSpec> = None;
    let mut r: Option<ClassicalRMatrix> = None;
    let mut seen: std::collections::HashSet<(u8, usize, usize, usize)> =
        std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }

        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name {
                "bialgebra" => Section::Bialgebra,
                "C" => Section::C,
                "A" => Section::A,
                "gamma" => Section::Gamma,
                "alpha" => Section::Alpha,
                "r" => Section::R,
                "P" => Section::P,
                "Q" => Section::Q,
                other => return Err(err(lineno, format!("unknown section `[{other}]`"))),
            };
            if section != Section::Bialgebra && spec.is_none() {
                if let (Some(h), Some(v)) = (dim_h, dim_v) {
                    spec = Some(LieBialgebraSpec::zero(h, v));
                } else {
                    return Err(err(
                        lineno,
                        "the [bialgebra] section with dim_h and dim_v must come first",
                    ));
                }
            }
            if matches!(section, Section::P | Section::Q) && r.is_none() {
                let s = spec.as_ref().unwrap();
                r = Some(ClassicalRMatrix::zero(s.dim_h, s.dim_v));
            }
            continue;
        }

        match section {
            Section::None => {
                return Err(err(lineno, "content before the first section header"));
            }
            Section::Bialgebra => {
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| err(lineno, "expected `dim_h = N` or `dim_v = N`"))?;
                let n: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| err(lineno, format!("bad dimension `{}`", value.trim())))?;
                match key.trim() {
                    "dim_h" => dim_h = Some(n),
                    "dim_v" => dim_v = Some(n),
                    other => return Err(err(lineno, format!("unknown key `{other}`"))),
                }
            }
            Section::R => {
                return Err(err(lineno, "the [r] section takes no entries; use [P] and [Q]"));
            }
            Section::C | Section::A | Section::Gamma | Section::Alpha => {
                let (i, j, k, v) = parse_tensor_line(line, lineno)?;
                let s = spec.as_mut().unwrap();
                let (tag, t, dims) = match section {
                    Section::C => (0u8, &mut s.c, [s.dim_h, s.dim_h, s.dim_h]),
                    Section::A => (1, &mut s.a, [s.dim_h, s.dim_v, s.dim_v]),
                    Section::Gamma => (2, &mut s.gamma, [s.dim_v, s.dim_v, s.dim_v]),
                    Section::Alpha => (3, &mut s.alpha, [s.dim_v, s.dim_h, s.dim_h]),
                    _ => unreachable!(),
                };
                for (pos, (&have, want)) in [i, j, k].iter().zip(dims).enumerate() {
                    if have >= want {
                        return Err(err(
                            lineno,
                            format!("index {have} at position {pos} out of range (< {want})"),
                        ));
                    }
                }
                if !seen.insert((tag, i, j, k)) {
                    return Err(err(lineno, format!("duplicate entry for indices {i} {j} {k}")));
                }
                t.set(i, j, k, v);
            }
            Section::P | Section::Q => {
                let (i, j, v) = parse_matrix_line(line, lineno)?;
                let rm = r.as_mut().unwrap();
                let s = spec.as_ref().unwrap();
                let (tag, rows, cols) = if section == Section::P {
                    (4u8, s.dim_h, s.dim_v)
                } else {
                    (5, s.dim_v, s.dim_h)
                };
                if i >= rows || j >= cols {
                    return Err(err(
                        lineno,
                        format!("index ({i},{j}) out of range for a {rows}x{cols} block"),
                    ));
                }
                if !seen.insert((tag, i, j, 0)) {
                    return Err(err(lineno, format!("duplicate entry for indices {i} {j}")));
                }
                if section == Section::P {
                    rm.p[i][j] = v;
                } else {
                    rm.q[i][j] = v;
                }
            }
        }
    }

    let spec = match spec {
        Some(s) => s,
        None => match (dim_h, dim_v) {
            (Some(h), Some(v)) => LieBialgebraSpec::zero(h, v),
            _ => return Err(err(0, "missing [bialgebra] section")),
        },
    };
    Ok(SpecFile { spec, r })
}

fn parse_rat_field(field: &str, lineno: usize) -> Result<Rat, ParseError> {
    parse_rat(field).map_err(|e| match e {
        RatParseError::ZeroDenominator => err(lineno, "zero denominator"),
        other => err(lineno, other.to_string()),
    })
}

fn parse_tensor_line(line: &str, lineno: usize) -> Result<(usize, usize, usize, Rat), ParseError> {
    let (lhs, rhs) = line
        .split_once('=')
        .ok_or_else(|| err(lineno, "expected `i j k = p/q`"))?;
    let idx: Vec<&str> = lhs.split_whitespace().collect();
    if idx.len() != 3 {
        return Err(err(lineno, "expected three indices before `=`"));
    }
    let parse_idx = |s: &str| -> Result<usize, ParseError> {
        s.parse().map_err(|_| err(lineno, format!("bad index `{s}`")))
    };
    Ok((
        parse_idx(idx[0])?,
        parse_idx(idx[1])?,
        parse_idx(idx[2])?,
        parse_rat_field(rhs, lineno)?,
    ))
}

fn parse_matrix_line(line: &str, lineno: usize) -> Result<(usize, usize, Rat), ParseError> {
    let (lhs, rhs) = line
        .split_once('=')
        .ok_or_else(|| err(lineno, "expected `i j = p/q`"))?;
    let idx: Vec<&str> = lhs.split_whitespace().collect();
    if idx.len() != 2 {
        return Err(err(lineno, "expected two indices before `=`"));
    }
    let parse_idx = |s: &str| -> Result<usize, ParseError> {
        s.parse().map_err(|_| err(lineno, format!("bad index `{s}`")))
    };
    Ok((parse_idx(idx[0])?, parse_idx(idx[1])?, parse_rat_field(rhs, lineno)?))
}

pub fn print_spec(file: &SpecFile) -> String {
    let s = &file.spec;
    let mut out = String::new();
    out.push_str("[bialgebra]\n");
    out.push_str(&format!("dim_h = {}\n", s.dim_h));
    out.push_str(&format!("dim_v = {}\n", s.dim_v));
    for (name, t) in [("C", &s.c), ("A", &s.a), ("gamma", &s.gamma), ("alpha", &s.alpha)] {
        out.push('\n');
        out.push_str(&format!("[{name}]\n"));
        for ([i, j, k], v) in t.entries() {
            out.push_str(&format!("{i} {j} {k} = {}\n", format_rat(v)));
        }
    }
    if let Some(r) = &file.r {
        let zero = qlie::rint(0);
        out.push_str("\n[r]\n\n[P]\n");
        for (i, row) in r.p.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != zero {
                    out.push_str(&format!("{i} {j} = {}\n", format_rat(v)));
                }
            }
        }
        out.push_str("\n[Q]\n");
        for (i, row) in r.q.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != zero {
                    out.push_str(&format!("{i} {j} = {}\n", format_rat(v)));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qlie::rat::{rat, rint};
    use qlie::samples;

    #[test]
    fn parse_minimal_jordanian() {
        let text = "[bialgebra]\ndim_h = 1\ndim_v = 1\n[A]\n0 0 0 = 1\n[alpha]\n0 0 0 = 1\n";
        let f = parse_spec(text).unwrap();
        assert_eq!(f.spec, samples::jordanian());
        assert!(f.r.is_none());
    }

    #[test]
    fn round_trip_golden_specs() {
        for (name, spec) in samples::golden_library() {
            let mut file = SpecFile { spec, r: None };
            let text = print_spec(&file);
            let back = parse_spec(&text).unwrap();
            assert_eq!(back.spec, file.spec, "{name}");
            file.r = Some({
                let mut r = ClassicalRMatrix::zero(file.spec.dim_h, file.spec.dim_v);
                if file.spec.dim_h > 0 && file.spec.dim_v > 0 {
                    r.p[0][0] = rat(-1, 2);
                    r.q[0][0] = rint(3);
                }
                r
            });
            let text = print_spec(&file);
            let back = parse_spec(&text).unwrap();
            assert_eq!(back.r, file.r, "{name} r-matrix");
        }
    }

    #[test]
    fn zero_denominator_is_named() {
        let text = "[bialgebra]\ndim_h = 1\ndim_v = 1\n[A]\n0 0 0 = 1/0\n";
        let e = parse_spec(text).unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("zero denominator"));
    }

    #[test]
    fn range_violation_is_named() {
        let text = "[bialgebra]\ndim_h = 1\ndim_v = 1\n[A]\n0 0 1 = 1\n";
        let e = parse_spec(text).unwrap_err();
        assert!(e.message.contains("out of range"));
    }

    #[test]
    fn duplicate_entry_rejected() {
        let text = "[bialgebra]\ndim_h = 1\ndim_v = 1\n[A]\n0 0 0 = 1\n0 0 0 = 2\n";
        let e = parse_spec(text).unwrap_err();
        assert!(e.message.contains("duplicate"));
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# header\n[bialgebra]\ndim_h = 1 # trailing\ndim_v = 1\n\n[A]\n0 0 0 = 1\n";
        let f = parse_spec(text).unwrap();
        assert_eq!(*f.spec.a.get(0, 0, 0), rint(1));
    }
}
