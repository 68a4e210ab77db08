//! Matrix files: a header line `n n`, then `n` rows of whitespace-separated
//! entries. Entries are signed decimal integers or fractions `p/q`. Blank
//! lines and lines starting with `#` are ignored.

use std::str::FromStr;

use adjx_core::matrix::Matrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

pub fn parse_entry(s: &str) -> Result<BigRational, ParseError> {
    match s.split_once('/') {
        None => parse_integer(s)
            .map(BigRational::from_integer)
            .ok_or_else(|| ParseError(format!("bad entry {s:?}"))),
        Some((p, q)) => {
            let (Some(p), true, Some(q)) = (
                parse_integer(p),
                q.bytes().all(|b| b.is_ascii_digit()),
                parse_integer(q),
            ) else {
                return err(format!("bad entry {s:?}"));
            };
            if q.is_zero() {
                return err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

pub fn parse(text: &str) -> Result<Matrix<BigRational>, ParseError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let Some(header) = lines.next() else {
        return err("empty matrix file");
    };
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [r, c] = dims[..] else {
        return err(format!("header must be \"n n\", got {header:?}"));
    };
    let (Ok(rows), Ok(cols)) = (r.parse::<usize>(), c.parse::<usize>()) else {
        return err(format!("bad header {header:?}"));
    };
    if rows != cols || rows == 0 {
        return err(format!("expected a nonempty square matrix, got {rows}x{cols}"));
    }
    let n = rows;
    let mut data = Vec::with_capacity(n * n);
    let mut row_count = 0;
    for line in lines {
        let row = line
            .split_whitespace()
            .map(parse_entry)
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return err(format!("row {} has {} entries, expected {n}", row_count + 1, row.len()));
        }
        data.extend(row);
        row_count += 1;
    }
    if row_count != n {
        return err(format!("found {row_count} rows, expected {n}"));
    }
    Ok(Matrix::from_vec(n, n, data))
}

pub fn render_entry(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn render(m: &Matrix<BigRational>) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(render_entry).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn parses_integers_and_fractions() {
        let m = parse("2 2\n1 -2/4\n+3 0\n").unwrap();
        assert_eq!(m.data(), &[q(1, 1), q(-1, 2), q(3, 1), q(0, 1)]);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let m = parse("# a comment\n\n1 1\n\n7\n").unwrap();
        assert_eq!(m.data(), &[q(7, 1)]);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "",
            "2\n1 2\n3 4\n",
            "2 3\n1 2 3\n4 5 6\n",
            "2 2\n1 2\n3\n",
            "2 2\n1 2\n",
            "2 2\n1 2\n3 4\n5 6\n",
            "1 1\n1.5\n",
            "1 1\n1e3\n",
            "1 1\n1/0\n",
            "1 1\n1/-2\n",
            "1 1\n--1\n",
            "0 0\n",
        ] {
            assert!(parse(bad).is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn renders_reduced_fractions() {
        let m = Matrix::from_vec(1, 2, vec![q(2, 4), q(-6, 3)]);
        assert_eq!(render(&m), "1 2\n1/2 -2\n");
    }
}
