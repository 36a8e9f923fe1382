use std::fmt::Display;

use serde_json::{json, Value};

/// A JSON number when the integer fits in 64 bits, a decimal string otherwise.
pub fn int_value(n: impl Display) -> Value {
    let s = n.to_string();
    match s.parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(s),
    }
}

/// Left-aligned text columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_integers_become_strings() {
        assert_eq!(int_value(-42), json!(-42));
        assert_eq!(int_value(i64::MAX), json!(i64::MAX));
        assert_eq!(int_value(u64::MAX), json!("18446744073709551615"));
    }

    #[test]
    fn table_alignment() {
        let t = table(
            &["q", "count"],
            &[
                vec!["2".into(), "9".into()],
                vec!["13".into(), "256".into()],
            ],
        );
        assert_eq!(t, "q   count\n2   9\n13  256\n");
    }
}
