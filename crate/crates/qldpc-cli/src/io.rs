use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use qldpc::code::{builtin, load_css_json_file, BbCodeSpec};
use qldpc::{CssCode, Gf2Vector};

/// Environment variable naming the directory searched for `<name>.json`.
pub const CODE_DIR_ENV: &str = "QLDPC_CODE_DIR";

/// Resolves `--code`: an existing JSON file, then a built-in name, then
/// `<name>.json` in the code directory.
pub fn resolve_code(arg: &str) -> Result<CssCode> {
    let path = Path::new(arg);
    if path.is_file() {
        return load_css_json_file(path).with_context(|| format!("loading {arg}"));
    }
    if builtin::names().contains(&arg) {
        return Ok(builtin::code(arg)?);
    }
    if let Ok(dir) = std::env::var(CODE_DIR_ENV) {
        let candidate = PathBuf::from(dir).join(format!("{arg}.json"));
        if candidate.is_file() {
            return load_css_json_file(&candidate).with_context(|| format!("loading {}", candidate.display()));
        }
    }
    bail!(
        "no code file or built-in code named {arg:?} (built-ins: {})",
        builtin::names().join(", ")
    )
}

/// Parses `x^3+y+y^2` style polynomials; `1` is the constant term and a
/// missing exponent means 1.
pub fn parse_polynomial(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split('+')
        .map(|term| {
            let term = term.trim();
            if term.is_empty() {
                bail!("empty term in polynomial {text:?}");
            }
            let (mut a, mut b) = (0, 0);
            if term == "1" {
                return Ok((a, b));
            }
            let mut rest = term;
            while !rest.is_empty() {
                let var = rest.as_bytes()[0];
                rest = rest[1..].trim_start_matches('*');
                let digits_start = usize::from(rest.starts_with('^'));
                let digits: String = rest[digits_start..].chars().take_while(char::is_ascii_digit).collect();
                let exp = if digits.is_empty() {
                    1
                } else {
                    digits.parse().map_err(|_| anyhow!("bad exponent in {term:?}"))?
                };
                rest = rest[digits_start + digits.len()..].trim_start_matches('*');
                match var {
                    b'x' => a += exp,
                    b'y' => b += exp,
                    _ => bail!("unexpected symbol in term {term:?} (use x, y and ^)"),
                }
            }
            Ok((a, b))
        })
        .collect()
}

/// Parses `l,m,A,B`, e.g. `6,6,x^3+y+y^2,y^3+x+x^2`.
pub fn parse_bb_spec(text: &str) -> Result<BbCodeSpec> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [l, m, a, b] = parts[..] else {
        bail!("expected l,m,A,B but got {} fields", parts.len());
    };
    let l: usize = l.parse().with_context(|| format!("bad l {l:?}"))?;
    let m: usize = m.parse().with_context(|| format!("bad m {m:?}"))?;
    Ok(BbCodeSpec::new(l, m, &parse_polynomial(a)?, &parse_polynomial(b)?)?)
}

/// One syndrome per line as a `01` string. Blank lines and `#` comments are
/// skipped; rows are numbered from 0 among the syndromes themselves.
pub fn read_syndromes(path: &Path, expected_len: usize) -> Result<Vec<Gf2Vector>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_syndromes(&text, expected_len)
}

pub fn parse_syndromes(text: &str, expected_len: usize) -> Result<Vec<Gf2Vector>> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let row = out.len();
        let s: Gf2Vector = body
            .parse()
            .map_err(|e| anyhow!("syndrome row {row} (line {}): {e}", line_no + 1))?;
        if s.len() != expected_len {
            bail!(
                "syndrome row {row} (line {}) has length {}, expected {expected_len}",
                line_no + 1,
                s.len()
            );
        }
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(parse_polynomial("x^3+y+y^2").unwrap(), vec![(3, 0), (0, 1), (0, 2)]);
        assert_eq!(parse_polynomial("1 + x2y3 + x*y").unwrap(), vec![(0, 0), (2, 3), (1, 1)]);
        assert!(parse_polynomial("x+z").is_err());
        assert!(parse_polynomial("x++y").is_err());
    }

    #[test]
    fn bb_spec() {
        let spec = parse_bb_spec("6,6,x^3+y+y^2,y^3+x+x^2").unwrap();
        assert_eq!(spec.num_qubits(), 72);
        assert!(parse_bb_spec("6,6,x").is_err());
    }

    #[test]
    fn syndrome_file() {
        let s = parse_syndromes("# header\n010\n\n111 # trailing\n", 3).unwrap();
        assert_eq!(s.len(), 2);
        let err = parse_syndromes("010\n01\n", 3).unwrap_err().to_string();
        assert!(err.contains("row 1"), "{err}");
    }
}
