//! Printing of linear combinations in the shared expression grammar.

use std::fmt;


use crate::scalar::Coeff;

/// Renders `c * mon`; an empty monomial stands for the unit.
pub(crate) fn term_string<C: Coeff>(c: &C, mon: &str) -> String {
    if c.is_one() {
        return if mon.is_empty() { "1".into() } else { mon.into() };
    }
    if (-c.clone()).is_one() {
        return if mon.is_empty() { "-1".into() } else { format!("-{mon}") };
    }
    let s = c.to_string();
    // fractions print as `(num)/(den)` and need no further grouping
    let atomic = s.starts_with('(') || (!s.contains(' ') && !s.contains('/'));
    match (mon.is_empty(), atomic) {
        (true, true) => s,
        (true, false) => format!("({s})"),
        (false, true) => format!("{s}*{mon}"),
        (false, false) => format!("({s})*{mon}"),
    }
}

/// Joins terms with ` + ` / ` - `; the empty sum prints as `0`.
pub(crate) fn write_sum<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = String>,
{
    let mut first = true;
    for t in terms {
        if first {
            write!(f, "{t}")?;
            first = false;
        } else if let Some(rest) = t.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {t}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `t1*t2*t1` for a word; empty for the identity.
pub(crate) fn t_word(word: &[usize]) -> String {
    word.iter().map(|i| format!("t{i}")).collect::<Vec<_>>().join("*")
}
