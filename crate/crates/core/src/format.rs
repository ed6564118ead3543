//! Locale-independent number formatting for machine-readable output.

/// Significant digits used by the CSV writer and the CLI's `kv` format.
pub const SIG_DIGITS: usize = 9;

/// Plain decimal notation (never exponent form) with `digits` significant
/// digits.
pub fn sig(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "nan".to_owned();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_owned();
    }
    let digits = digits.max(1);
    if v == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = |e: i32| (digits as i32 - 1 - e).max(0) as usize;
    let mut s = format!("{:.*}", decimals(exp), v);
    // rounding can carry into a new leading digit (9.99… → 10.0…)
    if s.trim_start_matches('-')
        .parse::<f64>()
        .is_ok_and(|r| r >= 10f64.powi(exp + 1))
    {
        s = format!("{:.*}", decimals(exp + 1), v);
    }
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s.remove(0);
    }
    s
}

/// [`sig`] at [`SIG_DIGITS`].
pub fn num(v: f64) -> String {
    sig(v, SIG_DIGITS)
}
