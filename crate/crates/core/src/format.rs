//! Plain-text tensor format.
//!
//! ```text
//! 3 3            <- order m, dimension n
//! 1 2 2 3.72     <- i1 ... im value, indices 1-based
//! 2 1 1 9.02
//! 3 1 1 9.55
//! ```
//!
//! Positions that are not listed are zero. Blank lines and lines starting
//! with `#` are ignored. Listing the same index tuple twice is an error.

use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{advance, DenseTensor};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a tensor from the text format. Line numbers in errors are 1-based.
pub fn parse_tensor<T: Scalar>(text: &str) -> Result<DenseTensor<T>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header `m n`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(
            hline,
            format!("header must be `m n`, got `{header}`"),
        ));
    }
    let order: usize = fields[0]
        .parse()
        .map_err(|_| parse_err(hline, format!("invalid order `{}`", fields[0])))?;
    let dim: usize = fields[1]
        .parse()
        .map_err(|_| parse_err(hline, format!("invalid dimension `{}`", fields[1])))?;
    let tensor =
        DenseTensor::<T>::zeros(order, dim).map_err(|e| parse_err(hline, e.to_string()))?;
    let mut entries = tensor.entries().to_vec();

    let mut seen = HashSet::new();
    let mut idx = vec![0usize; order];
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != order + 1 {
            return Err(parse_err(
                lineno,
                format!(
                    "expected {} indices and a value, found {} fields",
                    order,
                    fields.len()
                ),
            ));
        }
        for (slot, f) in idx.iter_mut().zip(&fields[..order]) {
            let i: usize = f
                .parse()
                .map_err(|_| parse_err(lineno, format!("invalid index `{f}`")))?;
            if i < 1 || i > dim {
                return Err(parse_err(lineno, format!("index {i} outside 1..={dim}")));
            }
            *slot = i - 1;
        }
        let raw = fields[order];
        let value: T = raw
            .parse()
            .map_err(|_| parse_err(lineno, format!("invalid value `{raw}`")))?;
        if !(value.is_finite() && value >= T::zero()) {
            return Err(parse_err(
                lineno,
                format!("value {raw} must be finite and nonnegative"),
            ));
        }
        let off = tensor.offset(&idx);
        if !seen.insert(off) {
            return Err(parse_err(lineno, "duplicate index tuple"));
        }
        entries[off] = value;
    }
    DenseTensor::from_entries(order, dim, entries)
}

pub fn read_tensor<T: Scalar>(path: impl AsRef<Path>) -> Result<DenseTensor<T>> {
    let text = std::fs::read_to_string(path)?;
    parse_tensor(&text)
}

/// Writes the nonzero entries of `t`. Values use the shortest decimal form
/// that parses back to the same bits.
pub fn write_tensor<T: Scalar, W: Write>(t: &DenseTensor<T>, mut w: W) -> Result<()> {
    writeln!(w, "{} {}", t.order(), t.dim())?;
    let mut idx = vec![0usize; t.order()];
    for v in t.entries() {
        if *v != T::zero() {
            for i in &idx {
                write!(w, "{} ", i + 1)?;
            }
            writeln!(w, "{v}")?;
        }
        advance(&mut idx, t.dim());
    }
    w.flush()?;
    Ok(())
}

/// Reads a tensor from any buffered reader.
pub fn read_tensor_from<T: Scalar, R: BufRead>(mut r: R) -> Result<DenseTensor<T>> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    parse_tensor(&text)
}

/// Formats `x` with `digits` significant digits in the style of C's `%g`:
/// trailing zeros are dropped and very large or small magnitudes switch to
/// scientific notation with a two-digit exponent.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
