//! Lexical forms for literals: canonical decimal rendering and the escape
//! rules of the statement line grammar.

/// Render a finite decimal canonically: shortest digits that round-trip,
/// never an exponent, and `-0` normalized to `0`.
pub fn format_decimal(value: f64) -> String {
    debug_assert!(value.is_finite());
    if value == 0.0 {
        return "0".to_owned();
    }
    // Rust's float Display is shortest-round-trip and never scientific.
    value.to_string()
}

/// Parse a decimal lexical, insisting the result is finite. Exponent forms
/// are accepted on input; only rendering is canonical.
pub fn parse_decimal(lexical: &str) -> Option<f64> {
    let value: f64 = lexical.parse().ok()?;
    // f64::from_str admits "inf"/"NaN" spellings; those are not decimals.
    value.is_finite().then_some(value)
}

/// Escape a literal lexical for the line grammar: `"`, `\`, newline,
/// carriage return, and tab become two-character sequences; everything else
/// passes through.
pub fn escape(lexical: &str) -> String {
    let mut out = String::with_capacity(lexical.len());
    for c in lexical.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            other => out.push(other),
        }
    }
    out
}

/// Inverse of [`escape`]. Returns the byte offset of the offending character
/// on failure (a lone backslash or an unknown escape).
pub fn unescape(escaped: &str) -> Result<String, usize> {
    let mut out = String::with_capacity(escaped.len());
    let mut chars = escaped.char_indices();
    while let Some((pos, c)) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some((_, '"')) => out.push('"'),
            Some((_, '\\')) => out.push('\\'),
            Some((_, 'n')) => out.push('\n'),
            Some((_, 'r')) => out.push('\r'),
            Some((_, 't')) => out.push('\t'),
            _ => return Err(pos),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering_is_canonical() {
        assert_eq!(format_decimal(0.0), "0");
        assert_eq!(format_decimal(-0.0), "0");
        assert_eq!(format_decimal(1.5), "1.5");
        assert_eq!(format_decimal(-273.15), "-273.15");
        assert_eq!(format_decimal(1e21), "1000000000000000000000");
        assert_eq!(format_decimal(1e-7), "0.0000001");
        assert!(!format_decimal(f64::MAX).contains(['e', 'E']));
    }

    #[test]
    fn decimal_parsing_rejects_non_finite() {
        assert_eq!(parse_decimal("1.5"), Some(1.5));
        assert_eq!(parse_decimal("-0"), Some(0.0));
        assert_eq!(parse_decimal("2e3"), Some(2000.0));
        assert_eq!(parse_decimal("inf"), None);
        assert_eq!(parse_decimal("NaN"), None);
        assert_eq!(parse_decimal(""), None);
        assert_eq!(parse_decimal(" 1"), None);
        assert_eq!(parse_decimal("abc"), None);
    }

    #[test]
    fn escape_round_trips_the_tricky_characters() {
        let nasty = "a\"b\\c\nd\re\tf";
        let escaped = escape(nasty);
        assert!(!escaped.contains('\n'));
        assert!(!escaped.contains('\r'));
        assert_eq!(unescape(&escaped).unwrap(), nasty);
    }

    #[test]
    fn unescape_rejects_unknown_sequences() {
        assert!(unescape("a\\z").is_err());
        assert!(unescape("trailing\\").is_err());
    }
}
