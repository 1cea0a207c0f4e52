use entangle_core::Complex64;
use serde::Serialize;

/// `%.12g`-style rendering: 12 significant digits, trailing zeros dropped.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').unwrap();
        return format!("{}e{e}", trim_zeros(mantissa));
    }
    let s = format!("{:.*}", (11 - exp).max(0) as usize, x);
    trim_zeros(&s).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn sig_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return sig(z.re);
    }
    if z.re == 0.0 {
        return format!("{}i", sig(z.im));
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", sig(z.re), sig(z.im.abs()))
}

/// Complex number in JSON output.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

pub fn cx_vec(v: &[Complex64]) -> Vec<Cx> {
    v.iter().map(|&z| z.into()).collect()
}

/// Left-aligned two-column table.
pub fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}
