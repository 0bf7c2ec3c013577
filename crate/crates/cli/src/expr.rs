//! Tiny operator-expression language for the `star-eval` subcommand.
//!
//! Grammar:
//!   expression := term (';' term)*
//!   term       := (coeff '*')? word
//!   coeff      := float (',' float)?      real part, optional imaginary part
//!   word       := one or more of the letters r l g n 1
//!
//! Letters name the generators on the truncated space: `r` raising, `l`
//! lowering, `g` level gap, `n` number, `1` identity. A word multiplies its
//! letters left to right, terms add. Examples: `r;l` is the sum of the two
//! ladder operators, `2*rl` is twice the product raising * lowering,
//! `0,1*g` is i times the gap operator.

use fockstar::{FockOperator, FockSpace, SpectrumParams};
use num_complex::Complex64;

pub fn parse_operator(
    src: &str,
    params: &SpectrumParams,
    space: FockSpace,
) -> Result<FockOperator, String> {
    let mut acc = FockOperator::identity(space).scale(Complex64::new(0.0, 0.0));
    let mut parsed_any = false;
    for raw in src.split(';') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(format!("empty term in operator expression {src:?}"));
        }
        let (coeff, word) = match term.split_once('*') {
            Some((c, w)) => (parse_coefficient(c.trim())?, w.trim()),
            None => (Complex64::new(1.0, 0.0), term),
        };
        if word.is_empty() {
            return Err(format!("missing operator word after '*' in {term:?}"));
        }
        let mut prod = FockOperator::identity(space);
        for letter in word.chars() {
            let factor = match letter {
                'r' => FockOperator::raising(params, space),
                'l' => FockOperator::lowering(params, space),
                'g' => FockOperator::level_gap(params, space),
                'n' => FockOperator::number(space),
                '1' => continue,
                other => {
                    return Err(format!(
                        "unknown operator letter {other:?} (expected r, l, g, n or 1)"
                    ));
                }
            };
            prod = &prod * &factor;
        }
        acc = &acc + &prod.scale(coeff);
        parsed_any = true;
    }
    if parsed_any {
        Ok(acc)
    } else {
        Err("empty operator expression".into())
    }
}

/// Complex evaluation point given as `re` or `re,im`.
pub fn parse_point(src: &str) -> Result<Complex64, String> {
    parse_coefficient(src.trim())
}

fn parse_coefficient(src: &str) -> Result<Complex64, String> {
    let (re, im) = match src.split_once(',') {
        Some((re, im)) => (re.trim(), Some(im.trim())),
        None => (src, None),
    };
    let re: f64 = re
        .parse()
        .map_err(|_| format!("invalid real part {re:?}"))?;
    let im: f64 = match im {
        Some(im) => im
            .parse()
            .map_err(|_| format!("invalid imaginary part {im:?}"))?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}
