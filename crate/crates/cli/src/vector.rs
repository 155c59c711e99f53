//! Vector syntax on the command line and number formatting for text output.
//!
//! `x,y,z` is a real vector; `x,y,z;ix,iy,iz` gives real then imaginary
//! parts.

use velcomp_core::{CScalar, CVec3};

pub fn parse_vector(s: &str) -> Result<CVec3, String> {
    let (re, im) = match s.split_once(';') {
        Some((re, im)) => (re, Some(im)),
        None => (s, None),
    };
    let re = parse_triple(re)?;
    let im = match im {
        Some(im) => parse_triple(im)?,
        None => [0.0; 3],
    };
    CVec3::try_from_parts(re, im).map_err(|_| format!("non-finite component in `{s}`"))
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p
            .parse::<f64>()
            .map_err(|e| format!("bad number `{p}`: {e}"))?;
    }
    Ok(out)
}

/// Canonical command-line spelling; `parse_vector` inverts it exactly.
pub fn canonical(v: &CVec3) -> String {
    let join = |t: [f64; 3]| format!("{},{},{}", t[0], t[1], t[2]);
    if v.is_real() {
        join(v.re())
    } else {
        format!("{};{}", join(v.re()), join(v.im()))
    }
}

/// `x` rounded to `digits` significant digits, trailing zeros dropped.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn scalar_text(z: CScalar) -> String {
    if z.im == 0.0 {
        sig(z.re, 9)
    } else {
        let im = sig(z.im, 9);
        let sign = if im.starts_with('-') { "" } else { "+" };
        format!("{}{sign}{im}i", sig(z.re, 9))
    }
}

pub fn vector_text(v: &CVec3) -> String {
    let [x, y, z] = v.components().map(scalar_text);
    format!("({x}, {y}, {z})")
}
