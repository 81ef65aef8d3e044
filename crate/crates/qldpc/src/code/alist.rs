//! The alist sparse-matrix text format.
//!
//! ```text
//! N M                      columns, rows
//! max_col_deg max_row_deg
//! <N column degrees>
//! <M row degrees>
//! <N lines: 1-based row indices of each column>
//! <M lines: 1-based column indices of each row>
//! ```
//!
//! Zero padding at the end of a support line is accepted on input. Output
//! is canonical: sorted supports, no padding, single spaces, `\n` line ends.

use std::fmt::Write as _;

use crate::gf2::SparseGf2Matrix;
use crate::{Error, Result};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next line as numbers, with its 1-based line number.
    fn numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        let Some((idx, line)) = self.inner.next() else {
            return Err(Error::Alist {
                line: self.last + 1,
                message: format!("unexpected end of input, expected {what}"),
            });
        };
        self.last = idx + 1;
        let nums = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Alist {
                    line: idx + 1,
                    message: format!("expected a non-negative integer in {what}, found {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((idx + 1, nums))
    }
}

fn alist_err(line: usize, message: impl Into<String>) -> Error {
    Error::Alist {
        line,
        message: message.into(),
    }
}

fn expect_len(line: usize, nums: &[usize], len: usize, what: &str) -> Result<()> {
    if nums.len() != len {
        return Err(alist_err(line, format!("{what}: expected {len} values, found {}", nums.len())));
    }
    Ok(())
}

/// Reads one block of support lines, returning 0-based supports and the line
/// number each came from.
fn read_supports(
    lines: &mut Lines<'_>,
    degrees: &[usize],
    bound: usize,
    what: &str,
) -> Result<Vec<(usize, Vec<usize>)>> {
    let mut out = Vec::with_capacity(degrees.len());
    for (i, &deg) in degrees.iter().enumerate() {
        let (line, mut nums) = lines.numbers(&format!("{what} {} support", i + 1))?;
        while nums.len() > deg && nums.last() == Some(&0) {
            nums.pop();
        }
        if nums.len() != deg {
            return Err(alist_err(
                line,
                format!("{what} {} declares degree {deg} but lists {} entries", i + 1, nums.len()),
            ));
        }
        let mut support = Vec::with_capacity(deg);
        for &x in &nums {
            if x == 0 || x > bound {
                return Err(alist_err(line, format!("index {x} out of range 1..={bound}")));
            }
            support.push(x - 1);
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(alist_err(line, format!("duplicate index in {what} {}", i + 1)));
        }
        out.push((line, support));
    }
    Ok(out)
}

pub fn load_alist(text: &str) -> Result<SparseGf2Matrix> {
    let mut lines = Lines::new(text);
    let (l1, dims) = lines.numbers("dimensions")?;
    expect_len(l1, &dims, 2, "dimensions line")?;
    let (n, m) = (dims[0], dims[1]);
    let (l2, maxes) = lines.numbers("maximum degrees")?;
    expect_len(l2, &maxes, 2, "maximum degrees line")?;
    let (l3, col_deg) = lines.numbers("column degrees")?;
    expect_len(l3, &col_deg, n, "column degrees")?;
    let (l4, row_deg) = lines.numbers("row degrees")?;
    expect_len(l4, &row_deg, m, "row degrees")?;
    if let Some(&d) = col_deg.iter().find(|&&d| d > maxes[0]) {
        return Err(alist_err(l3, format!("column degree {d} exceeds declared maximum {}", maxes[0])));
    }
    if let Some(&d) = row_deg.iter().find(|&&d| d > maxes[1]) {
        return Err(alist_err(l4, format!("row degree {d} exceeds declared maximum {}", maxes[1])));
    }
    let (cs, rs): (usize, usize) = (col_deg.iter().sum(), row_deg.iter().sum());
    if cs != rs {
        return Err(alist_err(l4, format!("column degrees sum to {cs} but row degrees sum to {rs}")));
    }

    let cols = read_supports(&mut lines, &col_deg, m, "column")?;
    let rows = read_supports(&mut lines, &row_deg, n, "row")?;
    let h = SparseGf2Matrix::from_col_supports(m, n, cols.into_iter().map(|(_, s)| s).collect())?;
    for (r, (line, mut support)) in rows.into_iter().enumerate() {
        support.sort_unstable();
        if support != h.row(r) {
            return Err(alist_err(
                line,
                format!("row {} support disagrees with the column supports", r + 1),
            ));
        }
    }
    Ok(h)
}

pub fn save_alist(h: &SparseGf2Matrix) -> String {
    let mut out = String::new();
    let max_col = h.col_supports().map(<[usize]>::len).max().unwrap_or(0);
    let max_row = h.row_supports().map(<[usize]>::len).max().unwrap_or(0);
    let join = |it: &mut dyn Iterator<Item = usize>| it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "{} {}", h.cols(), h.rows());
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(&mut h.col_supports().map(<[usize]>::len)));
    let _ = writeln!(out, "{}", join(&mut h.row_supports().map(<[usize]>::len)));
    for c in h.col_supports() {
        let _ = writeln!(out, "{}", join(&mut c.iter().map(|x| x + 1)));
    }
    for r in h.row_supports() {
        let _ = writeln!(out, "{}", join(&mut r.iter().map(|x| x + 1)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::toy_code;

    // Eq. (1) encoded by hand.
    const TOY_ALIST: &str = "6 3\n2 4\n2 2 2 2 2 2\n4 4 4\n1 2\n2 3\n1 3\n1 2\n2 3\n1 3\n1 3 4 6\n1 2 4 5\n2 3 5 6\n";

    #[test]
    fn toy_fixture_loads() {
        assert_eq!(load_alist(TOY_ALIST).unwrap(), toy_code());
        assert_eq!(save_alist(&toy_code()), TOY_ALIST);
    }

    #[test]
    fn zero_padding_accepted() {
        let padded = "2 2\n2 2\n1 2\n2 1\n1 0\n1 2\n1 2\n2 0\n";
        let h = load_alist(padded).unwrap();
        assert_eq!(h.row(0), &[0, 1]);
        assert_eq!(h.row(1), &[1]);
    }

    #[test]
    fn empty_input() {
        let err = load_alist("").unwrap_err();
        assert!(matches!(err, Error::Alist { line: 1, .. }), "{err}");
    }

    #[test]
    fn truncated_input() {
        let truncated: String = TOY_ALIST.lines().take(8).map(|l| format!("{l}\n")).collect();
        let err = load_alist(&truncated).unwrap_err();
        assert!(matches!(err, Error::Alist { line: 9, .. }), "{err}");
    }

    #[test]
    fn inconsistent_row_support() {
        // row 1 lists column 5 instead of 6
        let bad = TOY_ALIST.replace("1 3 4 6\n", "1 3 4 5\n");
        let err = load_alist(&bad).unwrap_err();
        assert!(matches!(err, Error::Alist { line: 11, .. }), "{err}");
        assert!(err.to_string().contains("disagrees"));
    }

    #[test]
    fn out_of_range_index() {
        let bad = TOY_ALIST.replace("1 2\n2 3\n1 3\n1 2", "1 2\n2 4\n1 3\n1 2");
        let err = load_alist(&bad).unwrap_err();
        assert!(matches!(err, Error::Alist { line: 6, .. }), "{err}");
    }

    #[test]
    fn identity_round_trip() {
        let i = SparseGf2Matrix::identity(5);
        assert_eq!(load_alist(&save_alist(&i)).unwrap(), i);
    }
}
