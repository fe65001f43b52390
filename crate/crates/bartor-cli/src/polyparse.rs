//! Parser for integer polynomials in x as written on a command line:
//! "x^2 - 2", "3x^2-x+17", "x". Errors carry the byte offset of the
//! offending character.

use std::collections::BTreeMap;

const MAX_EXPONENT: u32 = 10_000;

/// Ascending coefficients; like terms are combined.
pub fn parse(input: &str) -> Result<Vec<i64>, String> {
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut i = 0usize;
    let mut coeffs: BTreeMap<u32, i64> = BTreeMap::new();
    let at = |i: usize| -> String {
        match chars.get(i) {
            Some(&(pos, c)) => format!("{c:?} at byte {pos}"),
            None => "end of input".to_string(),
        }
    };
    skip_ws(&chars, &mut i);
    if i == chars.len() {
        return Err("empty polynomial".to_string());
    }
    let mut first = true;
    while i < chars.len() {
        let sign = match chars[i].1 {
            '+' => {
                i += 1;
                1i64
            }
            '-' => {
                i += 1;
                -1i64
            }
            _ if first => 1,
            _ => return Err(format!("expected '+' or '-', found {}", at(i))),
        };
        first = false;
        skip_ws(&chars, &mut i);
        let coeff = take_number::<i64>(&chars, &mut i, "coefficient")?;
        skip_ws(&chars, &mut i);
        let exponent = if matches!(chars.get(i), Some(&(_, 'x' | 'X'))) {
            i += 1;
            if matches!(chars.get(i), Some(&(_, '^'))) {
                i += 1;
                match take_number::<u32>(&chars, &mut i, "exponent")? {
                    Some(e) if e <= MAX_EXPONENT => e,
                    Some(e) => return Err(format!("exponent {e} is too large")),
                    None => return Err(format!("expected an exponent, found {}", at(i))),
                }
            } else {
                1
            }
        } else {
            if coeff.is_none() {
                return Err(format!("expected a term, found {}", at(i)));
            }
            0
        };
        let term = sign * coeff.unwrap_or(1);
        let slot = coeffs.entry(exponent).or_insert(0);
        *slot = slot
            .checked_add(term)
            .ok_or_else(|| "coefficient overflow".to_string())?;
        skip_ws(&chars, &mut i);
    }
    let degree = *coeffs.keys().last().expect("at least one term");
    let mut out = vec![0i64; degree as usize + 1];
    for (e, c) in coeffs {
        out[e as usize] = c;
    }
    Ok(out)
}

fn skip_ws(chars: &[(usize, char)], i: &mut usize) {
    while matches!(chars.get(*i), Some(&(_, c)) if c.is_whitespace()) {
        *i += 1;
    }
}

fn take_number<T: std::str::FromStr>(
    chars: &[(usize, char)],
    i: &mut usize,
    what: &str,
) -> Result<Option<T>, String> {
    let start = *i;
    let mut digits = String::new();
    while matches!(chars.get(*i), Some(&(_, c)) if c.is_ascii_digit()) {
        digits.push(chars[*i].1);
        *i += 1;
    }
    if *i == start {
        return Ok(None);
    }
    digits
        .parse::<T>()
        .map(Some)
        .map_err(|_| format!("{what} out of range at byte {}", chars[start].0))
}
