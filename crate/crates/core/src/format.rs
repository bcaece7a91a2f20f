//! Text formats for instances and schemes.
//!
//! Both are UTF-8, whitespace separated, with `#` starting a comment that
//! runs to the end of the line. Blank lines are ignored.
//!
//! ```text
//! INSTANCE v1
//! n m
//! <n x labels>
//! <m y labels>
//! <n rows of m probabilities>
//! ```
//!
//! ```text
//! SCHEME v1
//! n m p
//! <n x labels>
//! <m y labels>
//! <n probabilities: P_X>
//! <p lines: z-label weight σ(1) … σ(m)>     # σ is 1-based
//! ```
//!
//! Probabilities are written as `a/b`; the parser also accepts integers and
//! finite decimals.

use std::fmt::Write as _;

use crate::construction::Scheme;
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::rational::{rat_parse, Rational};

pub const INSTANCE_HEADER: &str = "INSTANCE v1";
pub const SCHEME_HEADER: &str = "SCHEME v1";

type NumberedTokens<'a> = Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>;

struct Lines<'a> {
    inner: std::iter::Peekable<NumberedTokens<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let iter: Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
                .filter(|(_, tokens)| !tokens.is_empty()),
        );
        Lines { inner: iter.peekable() }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.inner.next().ok_or_else(|| Error::Format { line: 0, message: format!("unexpected end of input, expected {what}") })
    }

    fn expect_len(&mut self, what: &str, len: usize) -> Result<(usize, Vec<&'a str>)> {
        let (line, tokens) = self.next(what)?;
        if tokens.len() != len {
            return Err(Error::Format {
                line,
                message: format!("expected {len} tokens for {what}, found {}", tokens.len()),
            });
        }
        Ok((line, tokens))
    }

    fn finish(&mut self) -> Result<()> {
        match self.inner.next() {
            None => Ok(()),
            Some((line, _)) => Err(Error::Format { line, message: "unexpected trailing content".into() }),
        }
    }
}

fn header(lines: &mut Lines<'_>, expected: &str) -> Result<()> {
    let (line, tokens) = lines.next("header")?;
    if tokens.join(" ") != expected {
        return Err(Error::Format { line, message: format!("bad header, expected `{expected}`") });
    }
    Ok(())
}

fn count(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::Format { line, message: format!("{what} must be a non-negative integer, got `{token}`") })
}

fn rationals(tokens: &[&str], line: usize) -> Result<Vec<Rational>> {
    tokens
        .iter()
        .map(|t| rat_parse(t).map_err(|e| Error::Format { line, message: e.to_string() }))
        .collect()
}

fn owned(tokens: Vec<&str>) -> Vec<String> {
    tokens.into_iter().map(str::to_string).collect()
}

fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Format { .. } => e,
        other => Error::Format { line, message: other.to_string() },
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);
    header(&mut lines, INSTANCE_HEADER)?;
    let (line, dims) = lines.expect_len("dimensions `n m`", 2)?;
    let (n, m) = (count(dims[0], line, "n")?, count(dims[1], line, "m")?);
    if n == 0 || m == 0 {
        return Err(Error::Format { line, message: "n and m must be at least 1".into() });
    }
    let (_, x_labels) = lines.expect_len("x labels", n)?;
    let (_, y_labels) = lines.expect_len("y labels", m)?;
    let mut grid = Vec::with_capacity(n);
    let mut last = line;
    for _ in 0..n {
        let (line, tokens) = lines.expect_len("a probability row", m)?;
        grid.push(rationals(&tokens, line)?);
        last = line;
    }
    lines.finish()?;
    Instance::new(owned(x_labels), owned(y_labels), grid).map_err(at_line(last))
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "{INSTANCE_HEADER}").unwrap();
    writeln!(out, "{} {}", inst.n(), inst.m()).unwrap();
    writeln!(out, "{}", inst.x_labels().join(" ")).unwrap();
    writeln!(out, "{}", inst.y_labels().join(" ")).unwrap();
    for row in inst.p_xy() {
        writeln!(out, "{}", fractions(row)).unwrap();
    }
    out
}

pub fn parse_scheme(text: &str) -> Result<Scheme> {
    let mut lines = Lines::new(text);
    header(&mut lines, SCHEME_HEADER)?;
    let (line, dims) = lines.expect_len("dimensions `n m p`", 3)?;
    let n = count(dims[0], line, "n")?;
    let m = count(dims[1], line, "m")?;
    let p = count(dims[2], line, "p")?;
    let (_, x_labels) = lines.expect_len("x labels", n)?;
    let (_, y_labels) = lines.expect_len("y labels", m)?;
    let (line, px) = lines.expect_len("the state prior", n)?;
    let px = rationals(&px, line)?;
    let mut z_labels = Vec::with_capacity(p);
    let mut weights = Vec::with_capacity(p);
    let mut perms = Vec::with_capacity(p);
    let mut last = line;
    for _ in 0..p {
        let (line, tokens) = lines.expect_len("a signal line `z weight σ(1) … σ(m)`", m + 2)?;
        z_labels.push(tokens[0].to_string());
        weights.push(rationals(&tokens[1..2], line)?.remove(0));
        let sigma = tokens[2..]
            .iter()
            .map(|t| match count(t, line, "column index")? {
                0 => Err(Error::Format { line, message: "column indices are 1-based".into() }),
                j => Ok(j - 1),
            })
            .collect::<Result<Vec<_>>>()?;
        perms.push(sigma);
        last = line;
    }
    lines.finish()?;
    Scheme::new(owned(x_labels), owned(y_labels), z_labels, px, weights, perms).map_err(at_line(last))
}

pub fn write_scheme(s: &Scheme) -> String {
    let mut out = String::new();
    writeln!(out, "{SCHEME_HEADER}").unwrap();
    writeln!(out, "{} {} {}", s.n(), s.m(), s.p()).unwrap();
    writeln!(out, "{}", s.x_labels().join(" ")).unwrap();
    writeln!(out, "{}", s.y_labels().join(" ")).unwrap();
    writeln!(out, "{}", fractions(s.px())).unwrap();
    for ((z, w), sigma) in s.z_labels().iter().zip(s.weights()).zip(s.perms()) {
        let cols: Vec<String> = sigma.iter().map(|j| (j + 1).to_string()).collect();
        writeln!(out, "{z} {} {}", w.to_fraction_string(), cols.join(" ")).unwrap();
    }
    out
}

fn fractions(values: &[Rational]) -> String {
    values.iter().map(Rational::to_fraction_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_scheme;
    use crate::test_support::{arb_feasible_instance, arb_instance};
    use proptest::prelude::*;

    const CORR23: &str = "\
# correlated key
INSTANCE v1
2 3
x1 x2
y1 y2 y3   # three keys
1/4 0.25 0
0 1/4 2/8
";

    #[test]
    fn parses_with_comments_and_decimals() {
        let inst = parse_instance(CORR23).unwrap();
        assert_eq!((inst.n(), inst.m()), (2, 3));
        assert_eq!(inst.get(1, 2), &Rational::new(1, 4));
        assert_eq!(
            write_instance(&inst),
            "INSTANCE v1\n2 3\nx1 x2\ny1 y2 y3\n1/4 1/4 0/1\n0/1 1/4 1/4\n"
        );
    }

    #[test]
    fn instance_errors() {
        let bad_header = CORR23.replace("INSTANCE v1", "INSTANCE v2");
        assert!(matches!(parse_instance(&bad_header), Err(Error::Format { line: 2, .. })));
        let short_row = CORR23.replace("0 1/4 2/8", "0 1/4");
        assert!(matches!(parse_instance(&short_row), Err(Error::Format { line: 7, .. })));
        let negative = CORR23.replace("0 1/4 2/8", "-1/4 3/4 1/4");
        assert!(parse_instance(&negative).unwrap_err().to_string().contains("negative"));
        let light = CORR23.replace("2/8", "1/8");
        assert!(parse_instance(&light).unwrap_err().to_string().contains("mass ≠ 1"));
        let dup = CORR23.replace("y1 y2 y3", "y1 y1 y3");
        assert!(parse_instance(&dup).unwrap_err().to_string().contains("duplicate"));
        let trailing = format!("{CORR23}1 2 3\n");
        assert!(matches!(parse_instance(&trailing), Err(Error::Format { line: 8, .. })));
        assert!(matches!(parse_instance(""), Err(Error::Format { line: 0, .. })));
        assert!(parse_instance(&CORR23.replace("1/4 0.25 0", "1/4 1/0 0")).is_err());
    }

    #[test]
    fn scheme_text() {
        let inst = parse_instance(CORR23).unwrap();
        let s = build_scheme(&inst).unwrap();
        let text = write_scheme(&s);
        assert_eq!(
            text,
            "SCHEME v1\n2 3 2\nx1 x2\ny1 y2 y3\n1/2 1/2\nz1 1/2 1 2 3\nz2 1/2 2 3 1\n"
        );
        assert_eq!(parse_scheme(&text).unwrap(), s);
    }

    #[test]
    fn scheme_errors() {
        let with_signal = |line: &str| format!("SCHEME v1\n1 2 1\nx\na b\n1\n{line}\n");
        assert!(parse_scheme(&with_signal("z1 1 2 1")).is_ok());
        // 0 is not a 1-based column.
        assert!(matches!(parse_scheme(&with_signal("z1 1 0 1")), Err(Error::Format { line: 6, .. })));
        // Not a permutation.
        assert!(matches!(parse_scheme(&with_signal("z1 1 1 1")), Err(Error::Format { line: 6, .. })));
        // Weights must sum to one.
        assert!(parse_scheme(&with_signal("z1 1/2 2 1")).is_err());
        assert!(matches!(parse_scheme(&with_signal("z1 1 2")), Err(Error::Format { line: 6, .. })));
    }

    proptest! {
        #[test]
        fn instance_round_trip(inst in arb_instance(4, 4, 12)) {
            prop_assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
        }

        #[test]
        fn scheme_round_trip(inst in arb_feasible_instance(4, 6)) {
            let s = build_scheme(&inst).unwrap();
            prop_assert_eq!(parse_scheme(&write_scheme(&s)).unwrap(), s);
        }
    }
}
